// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pencilops/detail/numeric.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/homogeneous.hpp"
#include "pencilops/pencil.hpp"

namespace pencilops {

/// Default relative tolerance for duality identities, measured against
/// ||row{M}||_F * ||col{L}||_F (1e-10 at unit scale).
inline constexpr double duality_tol = 1e-10;

/// The completion pair (V, B) for operands W (m x (m+n), full row rank) and
/// A ((m+n) x n, full column rank) with W A = 0:
///     [V; W] [A  B] = I_{m+n}.
struct BasisCompletion {
    cmat V; // n x (m+n)
    cmat B; // (m+n) x m
    double identity_residual; // ||[V;W][A B] - I||_F at construction
};

/// Builds (V, B) by completing the columns of A and of W^* with orthonormal
/// bases, forming the triangular block factor [[R11, R12], [0, R22]] of the
/// product of the completed matrices, and correcting both completions so the
/// product becomes the identity. With orthonormal completions R12 = 0 and the
/// corrections reduce to B = Bhat R22^{-1}, V = R11^{-1} Vhat; the general
/// correction used here stays exact for any completion.
inline BasisCompletion bases_completion(const cmat& W, const cmat& A) {
    const Eigen::Index m = W.rows();
    const Eigen::Index n = A.cols();
    if (W.cols() != m + n || A.rows() != m + n)
        throw precondition_error("bases_completion: W must be m x (m+n) and A (m+n) x n");

    {
        const auto svA = detail::singular_values(A);
        if (svA(svA.size() - 1) <= detail::rank_tolerance(A, svA(0)))
            throw rank_error("bases_completion: A is column rank deficient");
        const auto svW = detail::singular_values(W);
        if (svW(svW.size() - 1) <= detail::rank_tolerance(W, svW(0)))
            throw rank_error("bases_completion: W is row rank deficient");
        const double prod = (W * A).norm();
        if (prod > 1e-8 * std::max(1.0, W.norm() * A.norm()))
            throw precondition_error("bases_completion: W A != 0");
    }

    // Orthonormal completion of range(A): trailing m columns of A's full Q.
    Eigen::HouseholderQR<cmat> qa(A);
    const cmat Qa = qa.householderQ() * cmat::Identity(m + n, m + n);
    const cmat Bhat = Qa.rightCols(m);

    // Orthonormal completion of range(W^*), conjugate-transposed.
    Eigen::HouseholderQR<cmat> qw(W.adjoint());
    const cmat Qw = qw.householderQ() * cmat::Identity(m + n, m + n);
    const cmat Vhat = Qw.rightCols(n).adjoint();

    const cmat R11 = Vhat * A;   // n x n, invertible
    const cmat R12 = Vhat * Bhat; // n x m, zero for orthonormal completions
    const cmat R22 = W * Bhat;   // m x m, invertible

    const cmat X = -detail::solve(R11, R12); // n x m
    BasisCompletion out;
    out.B = detail::solve(R22.transpose(), (A * X + Bhat).transpose()).transpose();
    out.V = detail::solve(R11, Vhat);

    cmat VW(m + n, m + n);
    VW.topRows(n) = out.V;
    VW.bottomRows(m) = W;
    cmat AB(m + n, m + n);
    AB.leftCols(n) = A;
    AB.rightCols(m) = out.B;
    out.identity_residual = (VW * AB - cmat::Identity(m + n, m + n)).norm();
    return out;
}

/// Outcome of testing M as a dual candidate of L.
struct DualityCertificate {
    enum class Verdict { left_dual, right_dual, both, neither };

    double commute_residual;       // ||M1 L0 - M0 L1||_F   (left orientation)
    double commute_residual_right; // ||L0 M1 - L1 M0||_F   (right orientation)
    double row_rank_margin;        // sigma_min([M0  M1])
    double col_rank_margin;        // sigma_min([M0; M1])
    double scale;                  // ||[M0 M1]||_F * ||[L0; L1]||_F
    Verdict verdict;

    bool is_left() const { return verdict == Verdict::left_dual || verdict == Verdict::both; }
    bool is_right() const { return verdict == Verdict::right_dual || verdict == Verdict::both; }
};

inline const char* to_string(DualityCertificate::Verdict v) {
    switch (v) {
        case DualityCertificate::Verdict::left_dual: return "left_dual";
        case DualityCertificate::Verdict::right_dual: return "right_dual";
        case DualityCertificate::Verdict::both: return "both";
        default: return "neither";
    }
}

/// Tests the two duality conditions:
///   left:  M1 L0 = M0 L1 and [M0 M1] has full row rank,
///   right: L0 M1 = L1 M0 and [M0; M1] has full column rank.
/// A verdict other than `neither` certifies strong equivalence of M and L.
inline DualityCertificate verify_dual(const Pencil& M, const Pencil& L, double tol = duality_tol) {
    if (M.N() != L.N()) throw precondition_error("verify_dual: size mismatch");
    const Eigen::Index N = M.N();

    cmat rowM(N, 2 * N);
    rowM.leftCols(N) = M.P0();
    rowM.rightCols(N) = M.P1();
    cmat colM(2 * N, N);
    colM.topRows(N) = M.P0();
    colM.bottomRows(N) = M.P1();
    cmat colL(2 * N, N);
    colL.topRows(N) = L.P0();
    colL.bottomRows(N) = L.P1();

    DualityCertificate cert{};
    cert.commute_residual = (M.P1() * L.P0() - M.P0() * L.P1()).norm();
    cert.commute_residual_right = (L.P0() * M.P1() - L.P1() * M.P0()).norm();
    cert.row_rank_margin = detail::sigma_min(rowM);
    cert.col_rank_margin = detail::sigma_min(colM);
    cert.scale = std::max(rowM.norm() * colL.norm(), 1e-300);

    const double row_tol = detail::rank_tolerance(rowM, detail::spectral_norm(rowM));
    const double col_tol = detail::rank_tolerance(colM, detail::spectral_norm(colM));
    const bool left = cert.commute_residual <= tol * cert.scale && cert.row_rank_margin > row_tol;
    const bool right = cert.commute_residual_right <= tol * cert.scale && cert.col_rank_margin > col_tol;
    cert.verdict = left && right ? DualityCertificate::Verdict::both
                 : left          ? DualityCertificate::Verdict::left_dual
                 : right         ? DualityCertificate::Verdict::right_dual
                                 : DualityCertificate::Verdict::neither;
    return cert;
}

/// Left dual via a column-pivoted QR of the stack [L0; L1]: the trailing N
/// columns of Q span the left null space of the stack, and
/// (M0, M1) = (-Q22^*, Q12^*) satisfies M1 L0 = M0 L1 with orthonormal
/// row-stack. Pivoting is used because a nearly rank-deficient stack is the
/// dangerous case.
inline Pencil left_dual_qr(const Pencil& L) {
    const Eigen::Index N = L.N();
    cmat stack(2 * N, N);
    stack.topRows(N) = L.P0();
    stack.bottomRows(N) = L.P1();
    if (!detail::full_rank(stack))
        throw rank_error("left_dual_qr: [L0; L1] is column rank deficient "
                         "(the pencil has a constant right kernel direction)");
    Eigen::ColPivHouseholderQR<cmat> qr(stack);
    const cmat Q = qr.householderQ() * cmat::Identity(2 * N, 2 * N);
    const cmat Q2 = Q.rightCols(N);
    return Pencil(-Q2.bottomRows(N).adjoint(), Q2.topRows(N).adjoint());
}

/// Right dual: mirror construction on the adjoint stack [L0^*; L1^*]; the
/// result satisfies L0 M1 = L1 M0 with orthonormal column-stack.
inline Pencil right_dual_qr(const Pencil& L) {
    const Eigen::Index N = L.N();
    cmat rowL(N, 2 * N);
    rowL.leftCols(N) = L.P0();
    rowL.rightCols(N) = L.P1();
    if (!detail::full_rank(rowL))
        throw rank_error("right_dual_qr: [L0 L1] is row rank deficient "
                         "(the pencil has a constant left kernel direction)");
    cmat stack(2 * N, N);
    stack.topRows(N) = L.P0().adjoint();
    stack.bottomRows(N) = L.P1().adjoint();
    Eigen::ColPivHouseholderQR<cmat> qr(stack);
    const cmat Q = qr.householderQ() * cmat::Identity(2 * N, 2 * N);
    const cmat Q2 = Q.rightCols(N);
    return Pencil(-Q2.bottomRows(N), Q2.topRows(N));
}

enum class IdentityBlockMode { exact_identity, invert_Y };

struct IdentityBlockDual {
    Pencil dual;
    double y_condition; // cond_2 of the selected block (1 in exact mode)
};

/// Dual from an identity (or invertible) submatrix of the stack [L0; L1].
/// `perm` has 2N zero-based entries; row j of the reordered stack is row
/// perm[j] of [L0; L1]. The first N reordered rows must form I_N exactly
/// (exact mode) or an invertible Y (invert mode); with Z the remaining rows,
///     [M1  -M0] = [-Z Y^{-1}  I] Pi^{-1},
/// which places column j of that block row at output column perm[j].
inline IdentityBlockDual dual_identity_block(const Pencil& L, const std::vector<int>& perm,
                                             IdentityBlockMode mode) {
    const Eigen::Index N = L.N();
    if (perm.size() != static_cast<std::size_t>(2 * N))
        throw precondition_error("dual_identity_block: permutation must have 2N entries");
    {
        std::vector<int> sorted(perm);
        std::sort(sorted.begin(), sorted.end());
        for (Eigen::Index i = 0; i < 2 * N; ++i)
            if (sorted[static_cast<std::size_t>(i)] != static_cast<int>(i))
                throw precondition_error("dual_identity_block: not a permutation of 0..2N-1");
    }

    cmat stack(2 * N, N);
    stack.topRows(N) = L.P0();
    stack.bottomRows(N) = L.P1();
    cmat T(2 * N, N);
    for (Eigen::Index j = 0; j < 2 * N; ++j) T.row(j) = stack.row(perm[static_cast<std::size_t>(j)]);

    const cmat Y = T.topRows(N);
    const cmat Z = T.bottomRows(N);

    cmat ZYinv;
    double ycond = 1.0;
    if (mode == IdentityBlockMode::exact_identity) {
        const double dev = (Y - cmat::Identity(N, N)).cwiseAbs().maxCoeff();
        if (dev != 0.0)
            throw precondition_error("dual_identity_block: selected block is not the identity "
                                     "(max deviation " + std::to_string(dev) + ")");
        ZYinv = Z;
    } else {
        ycond = detail::cond2(Y);
        if (!(ycond < 1.0 / (100.0 * detail::eps)))
            throw rank_error("dual_identity_block: selected block Y is numerically singular "
                             "(cond " + std::to_string(ycond) + ")");
        // Right division Z Y^{-1} via the transposed system (plain transpose).
        ZYinv = detail::solve(Y.transpose(), Z.transpose()).transpose();
    }

    cmat G(N, 2 * N);
    G.leftCols(N) = -ZYinv;
    G.rightCols(N) = cmat::Identity(N, N);
    cmat H(N, 2 * N);
    for (Eigen::Index j = 0; j < 2 * N; ++j) H.col(perm[static_cast<std::size_t>(j)]) = G.col(j);

    return IdentityBlockDual{Pencil(-H.rightCols(N), H.leftCols(N)), ycond};
}

/// Constant strong-equivalence witness E M(lambda, mu) F = L(lambda, mu).
struct EquivalenceWitness {
    cmat E, F;
    HomogeneousPoint anchor;
    double residual; // max relative residual over the verification samples
};

/// For a certified dual pair, the conjugation identity pins the witness at
/// any anchor where both pencils are nonsingular:
///   left dual:  E = M(a,b)^{-1}, F = L(a,b);
///   right dual: E = L(a,b),      F = M(a,b)^{-1}.
/// The anchor is chosen on the deterministic sphere grid maximizing
/// min(sigma_min(M(a,b)), sigma_min(L(a,b))), and the identity is verified at
/// grid sample points.
inline EquivalenceWitness equivalence_witness(const Pencil& M, const Pencil& L,
                                              const DualityCertificate& cert) {
    if (cert.verdict == DualityCertificate::Verdict::neither)
        throw precondition_error("equivalence_witness: certificate verdict is neither");
    if (M.N() != L.N()) throw precondition_error("equivalence_witness: size mismatch");

    const auto& grid = sphere_grid();
    double best = -1.0;
    HomogeneousPoint anchor = grid.front();
    for (const auto& pt : grid) {
        const double s = std::min(detail::sigma_min(M.evaluate(pt)), detail::sigma_min(L.evaluate(pt)));
        if (s > best) {
            best = s;
            anchor = pt;
        }
    }
    const double mscale = std::max(M.P0().norm() + M.P1().norm(), 1e-300);
    if (best <= 1e4 * detail::eps * mscale)
        throw construction_error("equivalence_witness: no anchor with both pencils nonsingular "
                                 "found on the grid (singular pencil?)");

    EquivalenceWitness w;
    w.anchor = anchor;
    if (cert.is_left()) {
        w.E = detail::inverse(M.evaluate(anchor));
        w.F = L.evaluate(anchor);
    } else {
        w.E = L.evaluate(anchor);
        w.F = detail::inverse(M.evaluate(anchor));
    }

    w.residual = 0.0;
    for (int k = 0; k < 5; ++k) {
        const auto& pt = grid[static_cast<std::size_t>(3 * k + 1)];
        const cmat lhs = w.E * M.evaluate(pt) * w.F;
        const cmat rhs = L.evaluate(pt);
        const double rel = (lhs - rhs).norm() / std::max(rhs.norm(), 1e-300);
        w.residual = std::max(w.residual, rel);
    }
    if (w.residual > 1e-6)
        throw construction_error("equivalence_witness: identity fails at sample points "
                                 "(residual " + std::to_string(w.residual) + ")");
    return w;
}

} // namespace pencilops
