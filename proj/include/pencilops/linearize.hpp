// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pencilops/detail/lapack.hpp"
#include "pencilops/detail/numeric.hpp"
#include "pencilops/duality.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/matrix_polynomial.hpp"
#include "pencilops/pencil.hpp"

namespace pencilops {

/// Second companion form, stored as (C0, C1) with
///   C0 = diag(A_0, I, ..., I),
///   C1 = first block column [-A_1; ...; -A_d] plus the superdiagonal
///        identity pattern.
/// The stored pencil mu*C0 - lambda*C1 is the global negative of the
/// companion pencil lambda*C1 - mu*C0, which leaves the eigenstructure and
/// determinant proportionality unchanged.
inline Pencil companion_second_form(const MatrixPolynomial& A) {
    const int d = A.degree(), n = A.n();
    if (d < 1) throw precondition_error("companion_second_form: degree must be at least 1");
    const int N = d * n;
    cmat C0 = cmat::Identity(N, N);
    C0.topLeftCorner(n, n) = A.coeff(0);
    cmat C1 = cmat::Zero(N, N);
    for (int k = 1; k <= d; ++k) C1.block((k - 1) * n, 0, n, n) = -A.coeff(k);
    for (int k = 1; k <= d - 1; ++k) C1.block((k - 1) * n, k * n, n, n) = cmat::Identity(n, n);
    return Pencil(std::move(C0), std::move(C1));
}

/// Pencil built from a full-row-rank left annihilator W of the stacked
/// coefficients, together with everything eigenvector recovery needs later.
struct WLinearization {
    Pencil pencil;              // (W0, W1) = (W [0; I], W [I; 0])
    cmat W;                     // dn x (d+1)n, W * col_stack(A) = 0
    BasisCompletion completion; // (V, B) completing (W, col_stack(A))
    bool orthonormal;           // W W^* = I (holds for the QR route)
};

namespace detail {

inline WLinearization make_w_linearization(const MatrixPolynomial& A, cmat W, bool orthonormal) {
    const int d = A.degree(), n = A.n();
    const int N = d * n;
    cmat W1 = W.leftCols(N);  // W [I; 0]
    cmat W0 = W.rightCols(N); // W [0; I]
    BasisCompletion bc = bases_completion(W, col_stack(A));
    return WLinearization{Pencil(std::move(W0), std::move(W1)), std::move(W), std::move(bc), orthonormal};
}

} // namespace detail

/// Annihilator from a column-pivoted QR of col_stack(A): W is the conjugate
/// transpose of the trailing dn columns of the Q factor, so it has
/// orthonormal rows and annihilates the stack. Requires the stack to have
/// full column rank n (implied by regularity; fails exactly when the
/// coefficients share a right kernel).
inline WLinearization w_linearization(const MatrixPolynomial& A) {
    const int d = A.degree(), n = A.n();
    if (d < 1) throw precondition_error("w_linearization: degree must be at least 1");
    const cmat S = col_stack(A);
    {
        const auto sv = detail::singular_values(S);
        if (sv(sv.size() - 1) <= detail::rank_tolerance(S, sv(0)))
            throw common_kernel_error("w_linearization: col_stack(A) is column rank deficient; "
                                      "the coefficients share a common right kernel");
    }
    Eigen::ColPivHouseholderQR<cmat> qr(S);
    const cmat Q = qr.householderQ() * cmat::Identity((d + 1) * n, (d + 1) * n);
    cmat W = Q.rightCols(d * n).adjoint();
    return detail::make_w_linearization(A, std::move(W), true);
}

/// User-supplied annihilator variant; validates both annihilator checks and
/// names the violated one.
inline WLinearization w_linearization(const MatrixPolynomial& A, const cmat& W) {
    const int d = A.degree(), n = A.n();
    if (d < 1) throw precondition_error("w_linearization: degree must be at least 1");
    if (W.rows() != d * n || W.cols() != (d + 1) * n)
        throw invalid_annihilator_error("w_linearization: W must be dn x (d+1)n");
    const cmat S = col_stack(A);
    const double prod = (W * S).norm();
    if (prod > 1e-8 * std::max(1.0, W.norm() * S.norm()))
        throw invalid_annihilator_error("w_linearization: violated check W * col_stack(A) = 0 "
                                        "(residual " + std::to_string(prod) + ")");
    if (!detail::full_rank(W))
        throw invalid_annihilator_error("w_linearization: violated check full row rank of W");
    const cmat G = W * W.adjoint();
    const bool orthonormal =
        (G - cmat::Identity(d * n, d * n)).cwiseAbs().maxCoeff() <= 10.0 * detail::eps * d * n;
    return detail::make_w_linearization(A, W, orthonormal);
}

namespace detail {

/// Elementary factor carrying -A_i: for 1 <= i < d a 2n x 2n core
/// [[-A_i, I], [I, 0]] at block position i, for i = d the trailing block
/// -A_d. Fixed so that the reversal permutation reproduces the second
/// companion form entrywise.
inline cmat fiedler_factor(const MatrixPolynomial& A, int i) {
    const int d = A.degree(), n = A.n();
    const int N = d * n;
    cmat F = cmat::Identity(N, N);
    if (i == d) {
        F.bottomRightCorner(n, n) = -A.coeff(d);
        return F;
    }
    const int off = (i - 1) * n;
    F.block(off, off, n, n) = -A.coeff(i);
    F.block(off, off + n, n, n) = cmat::Identity(n, n);
    F.block(off + n, off, n, n) = cmat::Identity(n, n);
    F.block(off + n, off + n, n, n).setZero();
    return F;
}

inline void check_permutation_1based(const std::vector<int>& sigma, int d, const char* who) {
    if (sigma.size() != static_cast<std::size_t>(d))
        throw precondition_error(std::string(who) + ": permutation must have d entries");
    std::vector<int> s(sigma);
    std::sort(s.begin(), s.end());
    for (int i = 0; i < d; ++i)
        if (s[static_cast<std::size_t>(i)] != i + 1)
            throw precondition_error(std::string(who) + ": not a permutation of 1..d");
}

} // namespace detail

/// Fiedler-family pencil (C0, F_{sigma(1)} ... F_{sigma(d)}), the product
/// taken left to right in the listed order (the factors do not commute, so
/// the order is part of the contract). sigma = (d, ..., 1) gives the second
/// companion form exactly; sigma = (1, ..., d) the row-spike variant.
inline Pencil fiedler_pencil(const MatrixPolynomial& A, const std::vector<int>& sigma) {
    const int d = A.degree(), n = A.n();
    if (d < 2) throw precondition_error("fiedler_pencil: degree must be at least 2");
    detail::check_permutation_1based(sigma, d, "fiedler_pencil");
    const int N = d * n;
    cmat C0 = cmat::Identity(N, N);
    C0.topLeftCorner(n, n) = A.coeff(0);
    cmat P = detail::fiedler_factor(A, sigma.front());
    for (std::size_t k = 1; k < sigma.size(); ++k)
        P = (P * detail::fiedler_factor(A, sigma[k])).eval();
    return Pencil(std::move(C0), std::move(P));
}

/// The cubic Fiedler variant with the coefficients split between the two
/// pencil matrices,
///   P0 = [[I, 0, 0], [0, -A_1, -A_0], [0, I, 0]],
///   P1 = [[0, A_3, 0], [I, A_2, 0], [0, 0, I]],
/// so that mu*P0 - lambda*P1 linearizes A. It does not factor over the
/// single-product family above; it arises instead as the right dual of a
/// sign-changed companion form, which is how the identity-block method
/// recovers a companion form from it.
inline Pencil fiedler_split_cubic(const MatrixPolynomial& A) {
    const int d = A.degree(), n = A.n();
    if (d != 3) throw precondition_error("fiedler_split_cubic: degree must be 3");
    const cmat I = cmat::Identity(n, n);
    cmat P0 = cmat::Zero(3 * n, 3 * n);
    P0.block(0, 0, n, n) = I;
    P0.block(n, n, n, n) = -A.coeff(1);
    P0.block(n, 2 * n, n, n) = -A.coeff(0);
    P0.block(2 * n, n, n, n) = I;
    cmat P1 = cmat::Zero(3 * n, 3 * n);
    P1.block(0, n, n, n) = A.coeff(3);
    P1.block(n, 0, n, n) = I;
    P1.block(n, n, n, n) = A.coeff(2);
    P1.block(2 * n, 2 * n, n, n) = I;
    return Pencil(std::move(P0), std::move(P1));
}

/// Row-shifted-sum consistency of a pencil against A:
///   [I; 0] L0 - [0; I] L1 = col_stack(A) Z
/// solved for Z in the least-squares sense. A small residual certifies L as
/// a right-dual candidate of the annihilator pencil; the ansatz pencils for
/// vector v recover Z = v^* (x) I_n.
struct ShiftedSumFit {
    double residual; // Frobenius norm of the mismatch
    cmat Z;          // n x dn
};

inline ShiftedSumFit l2_residual(const Pencil& L, const MatrixPolynomial& A) {
    const int d = A.degree(), n = A.n();
    const int N = d * n;
    if (L.N() != N) throw precondition_error("l2_residual: pencil size must be d*n");
    cmat S = cmat::Zero((d + 1) * n, N);
    S.topRows(N) += L.P0();
    S.bottomRows(N) -= L.P1();
    const cmat CA = col_stack(A);
    ShiftedSumFit fit;
    fit.Z = detail::lstsq(CA, S);
    fit.residual = (CA * fit.Z - S).norm();
    return fit;
}

/// Ansatz-vector pencil satisfying both shifted-sum conditions for v:
///   row form:    [I; 0] L0 - [0; I] L1 = col_stack(A) (v^* (x) I_n)
///   column form: L0 [I 0] - L1 [0 I] = (v (x) I_n) row_stack(A)
/// The combined linear system is solved exactly: the row form eliminates L0
/// and the bottom rows of L1, the rest of L1 comes from a least-squares
/// solve of the column form, and both defining residuals are reported. An
/// inconsistent system is surfaced as construction_error, never patched.
struct DlPencil {
    Pencil pencil;
    double rowshift_residual;
    double colshift_residual;
};

inline DlPencil dl_pencil(const MatrixPolynomial& A, const cvec& v) {
    const int d = A.degree(), n = A.n();
    if (d < 1) throw precondition_error("dl_pencil: degree must be at least 1");
    if (v.size() != d) throw precondition_error("dl_pencil: ansatz vector must have d entries");
    if (v.norm() == 0.0) throw precondition_error("dl_pencil: ansatz vector must be nonzero");
    const int N = d * n;

    const cmat CA = col_stack(A);
    const cmat RA = row_stack(A);
    const cmat In = cmat::Identity(n, n);
    const cmat Ra = CA * detail::kron(v.adjoint(), In);     // (d+1)n x dn
    const cmat Rb = detail::kron(v.conjugate(), In) * RA;   // dn x (d+1)n

    // Row form, by block rows: L0 rows = Ra rows + shifted L1 rows; the
    // bottom n rows of L1 are pinned to -Ra's trailing block.
    const int nu_rows = (d - 1) * n; // unknown L1 rows
    const cmat L1_bottom = -Ra.bottomRows(n);

    // Column form as a dense least-squares system in the unknown L1 rows.
    const int n_unknown = nu_rows * N;
    const int n_eq = N * (d + 1) * n;
    cmat M = cmat::Zero(n_eq, std::max(n_unknown, 1));
    cvec rhs(n_eq);
    auto unknown_index = [N](int r, int c) { return r * N + c; };
    int eq = 0;
    for (int col = 0; col < (d + 1) * n; ++col) {
        const int j = col / n; // block column of the padded matrices
        for (int r = 0; r < N; ++r, ++eq) {
            cplx known = Rb(r, col);
            // term +L0(r, col) when j < d: L0(r, col) = Ra(r, col) + L1(r - n, col)
            if (j < d) {
                known -= Ra(r, col);
                if (r >= n) {
                    const int rr = r - n;
                    if (rr < nu_rows)
                        M(eq, unknown_index(rr, col)) += 1.0;
                    else
                        known -= L1_bottom(rr - nu_rows, col);
                }
            }
            // term -L1(r, col - n) when j >= 1
            if (j >= 1) {
                const int cc = col - n;
                if (r < nu_rows)
                    M(eq, unknown_index(r, cc)) -= 1.0;
                else
                    known += L1_bottom(r - nu_rows, cc);
            }
            rhs(eq) = known;
        }
    }

    cmat L1(N, N);
    L1.bottomRows(n) = L1_bottom;
    if (n_unknown > 0) {
        cvec u;
        try {
            u = detail::zgels(M, rhs);
        } catch (const rank_error& e) {
            throw construction_error(std::string("dl_pencil: singular constraint system (") + e.what() + ")");
        }
        for (int r = 0; r < nu_rows; ++r)
            for (int c = 0; c < N; ++c) L1(r, c) = u(unknown_index(r, c));
    }
    cmat L0(N, N);
    L0.topRows(n) = Ra.topRows(n);
    if (d > 1) L0.bottomRows(N - n) = Ra.middleRows(n, N - n) + L1.topRows(N - n);

    // Residuals of both defining conditions, on the full matrices.
    cmat Srow = cmat::Zero((d + 1) * n, N);
    Srow.topRows(N) += L0;
    Srow.bottomRows(N) -= L1;
    const double res_row = (Srow - Ra).norm();
    cmat Scol = cmat::Zero(N, (d + 1) * n);
    Scol.leftCols(N) += L0;
    Scol.rightCols(N) -= L1;
    const double res_col = (Scol - Rb).norm();

    const double scale = std::max(1.0, CA.norm() * v.norm());
    if (std::max(res_row, res_col) > 1e-8 * scale)
        throw construction_error("dl_pencil: combined shifted-sum system is inconsistent "
                                 "(row residual " + std::to_string(res_row) + ", column residual " +
                                 std::to_string(res_col) + ")");
    return DlPencil{Pencil(std::move(L0), std::move(L1)), res_row, res_col};
}

/// Companion-style pencil for a degree-graded basis phi_0, phi_1, ... given
/// by the three-term recurrence
///   x phi_0 = phi_1 + beta_0 phi_0,
///   x phi_j = gamma_j phi_{j+1} + beta_j phi_j + alpha_{j-1} phi_{j-1},
/// with lists alpha_0..alpha_{d-2}, beta_0..beta_{d-1}, gamma_1..gamma_{d-1}
/// (gamma_0 is normalized to 1). The monomial coefficients of A are first
/// converted into this basis; the spike entries of the x-coefficient then
/// follow a backward recurrence so that the pencil linearizes A. With the
/// monomial recurrence (all beta = alpha = 0, gamma = 1) the result equals
/// the second companion form entrywise.
inline Pencil orthobasis_companion(const MatrixPolynomial& A, const std::vector<double>& alpha,
                                   const std::vector<double>& beta, const std::vector<double>& gamma) {
    const int d = A.degree(), n = A.n();
    if (d < 2) throw precondition_error("orthobasis_companion: degree must be at least 2");
    if (alpha.size() != static_cast<std::size_t>(d - 1))
        throw precondition_error("orthobasis_companion: alpha must have d-1 entries");
    if (beta.size() != static_cast<std::size_t>(d))
        throw precondition_error("orthobasis_companion: beta must have d entries");
    if (gamma.size() != static_cast<std::size_t>(d - 1))
        throw precondition_error("orthobasis_companion: gamma must have d-1 entries");
    for (double g : gamma)
        if (g == 0.0) throw precondition_error("orthobasis_companion: gamma entries must be nonzero");
    auto gam = [&](int j) { return j == 0 ? 1.0 : gamma[static_cast<std::size_t>(j - 1)]; };

    // Monomial coefficient columns of phi_0..phi_d.
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d + 1, d + 1);
    G(0, 0) = 1.0;
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(d + 1);
        next.segment(1, d) += G.col(j).head(d);               // x * phi_j
        next -= beta[static_cast<std::size_t>(j)] * G.col(j); // - beta_j phi_j
        if (j >= 1) next -= alpha[static_cast<std::size_t>(j - 1)] * G.col(j - 1);
        G.col(j + 1) = next / gam(j);
    }

    // Basis coefficients B_j with sum_j B_j phi_j = sum_i A_i x^i
    // (triangular back substitution; G(j,j) != 0 by construction).
    std::vector<cmat> B(static_cast<std::size_t>(d + 1));
    std::vector<cmat> residual(A.coeffs());
    for (int j = d; j >= 0; --j) {
        cmat Bj = residual[static_cast<std::size_t>(j)] / G(j, j);
        for (int i = 0; i <= j; ++i) residual[static_cast<std::size_t>(i)] -= G(i, j) * Bj;
        B[static_cast<std::size_t>(j)] = std::move(Bj);
    }

    // Spike entries s_1..s_d of the x-coefficient, from the top down,
    // chosen so the constant coefficient keeps the companion-style shape.
    std::vector<cmat> s(static_cast<std::size_t>(d + 2), cmat::Zero(n, n));
    s[static_cast<std::size_t>(d)] = -B[static_cast<std::size_t>(d)] / gam(d - 1);
    for (int m = d - 1; m >= 1; --m) {
        cmat t = B[static_cast<std::size_t>(m)];
        t += beta[static_cast<std::size_t>(m)] * s[static_cast<std::size_t>(m + 1)];
        if (m + 2 <= d) t += alpha[static_cast<std::size_t>(m)] * s[static_cast<std::size_t>(m + 2)];
        s[static_cast<std::size_t>(m)] = -t / gam(m - 1);
    }
    cmat t1 = B[0] + beta[0] * s[1];
    if (d >= 2) t1 += alpha[0] * s[2];

    const int N = d * n;
    const cmat In = cmat::Identity(n, n);
    cmat C1 = cmat::Zero(N, N); // spike + superdiagonal identities
    for (int j = 1; j <= d; ++j) C1.block((j - 1) * n, 0, n, n) = s[static_cast<std::size_t>(j)];
    for (int k = 1; k <= d - 1; ++k) C1.block((k - 1) * n, k * n, n, n) = In;
    cmat C0 = cmat::Zero(N, N); // t1 + the recurrence weights in the upper band
    C0.block(0, 0, n, n) = t1;
    for (int c = 1; c <= d - 1; ++c) {
        C0.block(c * n, c * n, n, n) = gam(c - 1) * In;
        C0.block((c - 1) * n, c * n, n, n) = beta[static_cast<std::size_t>(c - 1)] * In;
        if (c >= 2) C0.block((c - 2) * n, c * n, n, n) = alpha[static_cast<std::size_t>(c - 2)] * In;
    }
    return Pencil(std::move(C0), std::move(C1));
}

} // namespace pencilops
