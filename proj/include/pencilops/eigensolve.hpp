// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pencilops/detail/lapack.hpp"
#include "pencilops/detail/numeric.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/homogeneous.hpp"
#include "pencilops/linearize.hpp"
#include "pencilops/matrix_polynomial.hpp"
#include "pencilops/pencil.hpp"

namespace pencilops {

/// Eigenvalue with unit right and left eigenvectors and their certified
/// residuals. The residual fields are the actual norms ||P(l,m) x|| and
/// ||y^* P(l,m)|| of the object the triple was computed on; residual_norm
/// recomputes them on demand.
struct EigenTriple {
    HomogeneousPoint point;
    cvec x; // right eigenvector, unit 2-norm
    cvec y; // left eigenvector (stored as a column; acts as y^*), unit 2-norm
    double residual_right = 0.0;
    double residual_left = 0.0;
};

inline std::pair<double, double> residual_norm(const Pencil& P, const HomogeneousPoint& pt,
                                               const cvec& x, const cvec& y) {
    const cmat E = P.evaluate(pt);
    return {(E * x).norm(), (E.adjoint() * y).norm()};
}

inline std::pair<double, double> residual_norm(const MatrixPolynomial& A, const HomogeneousPoint& pt,
                                               const cvec& x, const cvec& y) {
    const cmat E = evaluate(A, pt);
    return {(E * x).norm(), (E.adjoint() * y).norm()};
}

/// Full eigensolution of a regular pencil: N homogeneous eigenvalues in a
/// deterministic order, with unit eigenvectors and residuals.
struct PencilEigenSolution {
    std::vector<EigenTriple> triples;
    std::string source;        // callers may tag the pencil's origin
    double max_residual_right = 0.0;
    double max_residual_left = 0.0;
};

/// Wraps the QZ-style generalized eigensolver. Eigenvalues are returned as
/// normalized homogeneous pairs, so zero and infinity are the ordinary
/// points (0,1) and (1,0) and no overflow floats are produced. Safe to call
/// concurrently on distinct inputs (the workspace is per call).
inline PencilEigenSolution solve_pencil(const Pencil& P, std::string source = {}) {
    const int N = P.N();
    auto qz = detail::zggev(P.P0(), P.P1());

    double smax = 0.0;
    for (int j = 0; j < N; ++j)
        smax = std::max(smax, std::hypot(std::abs(qz.alpha(j)), std::abs(qz.beta(j))));
    if (smax == 0.0) throw singular_pencil_error("solve_pencil: pencil is singular");

    PencilEigenSolution sol;
    sol.source = std::move(source);
    sol.triples.reserve(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double s = std::hypot(std::abs(qz.alpha(j)), std::abs(qz.beta(j)));
        if (s <= 1e-12 * smax)
            throw singular_pencil_error("solve_pencil: indeterminate eigenvalue pair detected "
                                        "(singular pencil)");
        EigenTriple t;
        t.point = HomogeneousPoint(qz.alpha(j), qz.beta(j));
        t.x = qz.vr.col(j) / qz.vr.col(j).norm();
        t.y = qz.vl.col(j) / qz.vl.col(j).norm();
        std::tie(t.residual_right, t.residual_left) = residual_norm(P, t.point, t.x, t.y);
        sol.max_residual_right = std::max(sol.max_residual_right, t.residual_right);
        sol.max_residual_left = std::max(sol.max_residual_left, t.residual_left);
        sol.triples.push_back(std::move(t));
    }
    std::stable_sort(sol.triples.begin(), sol.triples.end(), [](const EigenTriple& a, const EigenTriple& b) {
        return detail::ordering_key(a.point) < detail::ordering_key(b.point);
    });
    return sol;
}

namespace detail {

/// Companion right eigenvector, fraction-cleared: the lambda branch uses the
/// partial sums A_k + t A_{k-1} + ... with t = mu/lambda, the mu branch the
/// complementary tail sums with s = lambda/mu. Both are the same vector
/// where both are defined; the branch choice |lambda| >= |mu| keeps |ratio|
/// at most 1.
inline cvec companion_xhat(const MatrixPolynomial& A, const cvec& x, const HomogeneousPoint& pt) {
    const int d = A.degree(), n = A.n();
    cvec xhat(d * n);
    xhat.head(n) = x;
    if (std::abs(pt.lambda) >= std::abs(pt.mu)) {
        const cplx t = pt.mu / pt.lambda;
        cvec w = A.coeff(0) * x;
        for (int k = 1; k <= d - 1; ++k) {
            w = (A.coeff(k) * x + t * w).eval();
            xhat.segment(k * n, n) = w;
        }
    } else {
        const cplx s = pt.lambda / pt.mu;
        cvec z = cvec::Zero(n);
        for (int k = d - 1; k >= 1; --k) {
            z = (s * (A.coeff(k + 1) * x + z)).eval();
            xhat.segment(k * n, n) = -z;
        }
    }
    return xhat;
}

/// Companion left eigenvector: block k carries conj(mu^(d-1-k) lambda^k) y.
inline cvec companion_yhat(const cvec& y, const HomogeneousPoint& pt, int d) {
    const int n = static_cast<int>(y.size());
    cvec yhat(d * n);
    for (int k = 0; k <= d - 1; ++k) {
        const cplx f = detail::ipow(pt.mu, d - 1 - k) * detail::ipow(pt.lambda, k);
        yhat.segment(k * n, n) = std::conj(f) * y;
    }
    return yhat;
}

} // namespace detail

/// Companion eigenvectors built from a polynomial eigentriple.
struct CompanionVectors {
    cvec xhat, yhat;          // eigenvectors of the companion pencil of A
    double residual_right;    // relative residuals on the companion pencil
    double residual_left;
    double formula_agreement; // angle between the two xhat constructions
                              // (NaN when only one branch is defined)
};

inline CompanionVectors companion_vectors_forward(const MatrixPolynomial& A, const cvec& x,
                                                  const cvec& y, const HomogeneousPoint& pt,
                                                  double pre_tol = 1e-6) {
    const int d = A.degree();
    if (d < 1) throw precondition_error("companion_vectors_forward: degree must be at least 1");
    if (x.size() != A.n() || y.size() != A.n())
        throw precondition_error("companion_vectors_forward: vector size mismatch");
    double ascale = 0.0;
    for (const cmat& c : A.coeffs()) ascale = std::max(ascale, c.norm());
    const auto [rr, rl] = residual_norm(A, pt, x, y);
    if (rr > pre_tol * ascale * x.norm() || rl > pre_tol * ascale * y.norm())
        throw precondition_error("companion_vectors_forward: (x, y, pt) is not an eigentriple of A "
                                 "(residuals " + std::to_string(rr) + ", " + std::to_string(rl) + ")");

    CompanionVectors out;
    out.xhat = detail::companion_xhat(A, x, pt);
    out.yhat = detail::companion_yhat(y, pt, d);

    out.formula_agreement = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(pt.lambda) > 1e-8 && std::abs(pt.mu) > 1e-8) {
        // Evaluate the non-selected formula as well; the two coincide where
        // both are defined.
        const int n = A.n();
        cvec alt(d * n);
        alt.head(n) = x;
        if (std::abs(pt.lambda) >= std::abs(pt.mu)) {
            const cplx s = pt.lambda / pt.mu;
            cvec z = cvec::Zero(n);
            for (int k = d - 1; k >= 1; --k) {
                z = (s * (A.coeff(k + 1) * x + z)).eval();
                alt.segment(k * n, n) = -z;
            }
        } else {
            const cplx t = pt.mu / pt.lambda;
            cvec w = A.coeff(0) * x;
            for (int k = 1; k <= d - 1; ++k) {
                w = (A.coeff(k) * x + t * w).eval();
                alt.segment(k * n, n) = w;
            }
        }
        out.formula_agreement = subspace_angle(out.xhat, alt);
    }

    const Pencil C = companion_second_form(A);
    const auto [crr, crl] = residual_norm(C, pt, out.xhat / out.xhat.norm(), out.yhat / out.yhat.norm());
    const double cscale = std::abs(pt.mu) * C.P0().norm() + std::abs(pt.lambda) * C.P1().norm();
    out.residual_right = crr / std::max(cscale, 1e-300);
    out.residual_left = crl / std::max(cscale, 1e-300);
    return out;
}

/// Consistency report for a triple computed on the companion pencil: the
/// polynomial eigenvector is read off the leading block of xhat, the forward
/// map is rebuilt from it, and both are compared.
struct CompanionConsistency {
    cvec x;                        // leading block, unit norm
    double leading_block_agreement; // angle(xhat, rebuilt xhat)
    double poly_residual;          // ||A(pt) x||
};

inline CompanionConsistency companion_right_vector(const MatrixPolynomial& A, const EigenTriple& t) {
    const int n = A.n();
    if (t.x.size() != A.degree() * n)
        throw precondition_error("companion_right_vector: triple does not match the companion size");
    cvec lead = t.x.head(n);
    if (lead.norm() <= 1e-12 * t.x.norm())
        throw precondition_error("companion_right_vector: vanishing leading block");
    lead /= lead.norm();
    CompanionConsistency rep;
    rep.x = lead;
    const cvec rebuilt = detail::companion_xhat(A, lead, t.point);
    rep.leading_block_agreement = subspace_angle(rebuilt, t.x);
    rep.poly_residual = (evaluate(A, t.point) * lead).norm();
    return rep;
}

/// Eigenvectors of the annihilator pencil recovered from a polynomial
/// eigentriple, by two independent routes, with their agreement certified.
struct WRecovery {
    cvec x_check, y_check;               // anchor route (primary output)
    cvec x_check_closed, y_check_closed; // closed-form route
    HomogeneousPoint anchor, anchor2;
    double route_agreement_x, route_agreement_y;   // angle between routes
    double anchor_agreement_x, anchor_agreement_y; // angle across the two anchors
    double residual_right, residual_left;          // relative, on the W pencil
    double norm_product_drift; // anchor drift of ||x||*||y|| from closed forms
};

namespace detail {

/// Closed-form W right eigenvector for anchor (a, b): fraction-cleared
/// evaluation of the banded partial-sum matrix applied to col_stack(A) x,
/// scaled by the anchor factor (b*lambda - a*mu). Matches the anchor route
/// C(a,b) xhat exactly (same vector, not just the same direction).
inline cvec w_xcheck_closed(const MatrixPolynomial& A, const cvec& x, const HomogeneousPoint& pt,
                            const HomogeneousPoint& anchor) {
    const int d = A.degree(), n = A.n();
    const cplx factor = anchor.mu * pt.lambda - anchor.lambda * pt.mu;
    cvec out(d * n);
    if (std::abs(pt.mu) >= std::abs(pt.lambda)) {
        const cplx t = pt.lambda / pt.mu;
        const cplx inv = 1.0 / pt.mu;
        cvec g = A.coeff(d) * x;
        out.segment((d - 1) * n, n) = inv * g;
        for (int i = d - 2; i >= 0; --i) {
            g = (A.coeff(i + 1) * x + t * g).eval();
            out.segment(i * n, n) = inv * g;
        }
        return (-factor) * out;
    }
    const cplx s = pt.mu / pt.lambda;
    const cplx inv = 1.0 / pt.lambda;
    cvec h = A.coeff(0) * x;
    out.head(n) = inv * h;
    for (int i = 1; i <= d - 1; ++i) {
        h = (A.coeff(i) * x + s * h).eval();
        out.segment(i * n, n) = inv * h;
    }
    return factor * out;
}

/// Closed-form W left eigenvector: y_check^* = (b l - a m)^{-1} [m^d y^*,
/// ..., l^d y^*] B, returned as a column.
inline cvec w_ycheck_closed(const cvec& y, const HomogeneousPoint& pt, const HomogeneousPoint& anchor,
                            const cmat& B, int d) {
    const int n = static_cast<int>(y.size());
    const cplx factor = anchor.mu * pt.lambda - anchor.lambda * pt.mu;
    cvec big((d + 1) * n);
    for (int k = 0; k <= d; ++k) {
        const cplx f = detail::ipow(pt.mu, d - k) * detail::ipow(pt.lambda, k);
        big.segment(k * n, n) = std::conj(f) * y;
    }
    return B.adjoint() * big / std::conj(factor);
}

} // namespace detail

/// Anchor route per the conjugation identity (x_check = C(a,b) xhat in the
/// stored sign convention, y_check^* = yhat^* W(a,b)^{-1}) plus the closed
/// forms; the two routes and two anchors are cross-certified. Anchors are
/// picked on the deterministic grid maximizing sigma_min(A(a,b)) unless the
/// caller supplies them.
inline WRecovery recover_w_vectors(const WLinearization& WL, const Pencil& C, const MatrixPolynomial& A,
                                   const cvec& x, const cvec& y, const HomogeneousPoint& pt,
                                   std::optional<std::pair<HomogeneousPoint, HomogeneousPoint>> anchors = {}) {
    const int d = A.degree();
    if (C.N() != WL.pencil.N())
        throw precondition_error("recover_w_vectors: companion/W size mismatch");

    HomogeneousPoint a1, a2;
    if (anchors) {
        a1 = anchors->first;
        a2 = anchors->second;
    } else {
        double s1 = -1.0, s2 = -2.0;
        for (const auto& g : sphere_grid()) {
            const double s = detail::sigma_min(evaluate(A, g));
            if (s > s1) {
                s2 = s1; a2 = a1;
                s1 = s; a1 = g;
            } else if (s > s2) {
                s2 = s; a2 = g;
            }
        }
        double ascale = 0.0;
        for (const cmat& c : A.coeffs()) ascale = std::max(ascale, c.norm());
        if (s1 <= 1e4 * detail::eps * std::max(ascale, 1e-300))
            throw construction_error("recover_w_vectors: no anchor with A(a,b) nonsingular on the grid");
    }

    const cvec xhat = detail::companion_xhat(A, x, pt);
    const cvec yhat = detail::companion_yhat(y, pt, d);

    auto anchor_route = [&](const HomogeneousPoint& a) {
        const cvec xc = C.evaluate(a) * xhat;
        const cmat Wa = WL.pencil.evaluate(a);
        const cvec yc = Wa.adjoint().partialPivLu().solve(yhat);
        return std::make_pair(xc, yc);
    };

    WRecovery rec;
    rec.anchor = a1;
    rec.anchor2 = a2;
    auto [xc1, yc1] = anchor_route(a1);
    auto [xc2, yc2] = anchor_route(a2);
    rec.x_check = xc1;
    rec.y_check = yc1;
    rec.x_check_closed = detail::w_xcheck_closed(A, x, pt, a1);
    rec.y_check_closed = detail::w_ycheck_closed(y, pt, a1, WL.completion.B, d);
    rec.route_agreement_x = subspace_angle(rec.x_check, rec.x_check_closed);
    rec.route_agreement_y = subspace_angle(rec.y_check, rec.y_check_closed);
    rec.anchor_agreement_x = subspace_angle(xc1, xc2);
    rec.anchor_agreement_y = subspace_angle(yc1, yc2);

    const cvec xc_b = detail::w_xcheck_closed(A, x, pt, a2);
    const cvec yc_b = detail::w_ycheck_closed(y, pt, a2, WL.completion.B, d);
    const double p1 = rec.x_check_closed.norm() * rec.y_check_closed.norm();
    const double p2 = xc_b.norm() * yc_b.norm();
    rec.norm_product_drift = std::abs(p1 - p2) / std::max(p1, 1e-300);

    const auto [rr, rl] =
        residual_norm(WL.pencil, pt, rec.x_check / rec.x_check.norm(), rec.y_check / rec.y_check.norm());
    const double wscale = std::abs(pt.mu) * WL.pencil.P0().norm() +
                          std::abs(pt.lambda) * WL.pencil.P1().norm();
    rec.residual_right = rr / std::max(wscale, 1e-300);
    rec.residual_left = rl / std::max(wscale, 1e-300);
    return rec;
}

/// Variant starting from a triple computed on the companion pencil: the
/// polynomial vectors are read off the companion structure (leading block on
/// the right, the largest power block on the left) and the primary overload
/// does the rest.
inline WRecovery recover_w_vectors(const WLinearization& WL, const Pencil& C, const MatrixPolynomial& A,
                                   const EigenTriple& on_companion) {
    const int n = A.n(), d = A.degree();
    cvec x = on_companion.x.head(n);
    if (x.norm() == 0.0)
        throw precondition_error("recover_w_vectors: vanishing leading block in companion vector");
    x /= x.norm();
    // yhat block k is conj(mu^(d-1-k) lambda^k) y; read the best-scaled one.
    const HomogeneousPoint& pt = on_companion.point;
    const int k = std::abs(pt.mu) >= std::abs(pt.lambda) ? 0 : d - 1;
    cvec y = on_companion.y.segment(k * n, n);
    if (y.norm() == 0.0)
        throw precondition_error("recover_w_vectors: vanishing power block in companion left vector");
    y /= y.norm();
    return recover_w_vectors(WL, C, A, x, y, pt);
}

} // namespace pencilops
