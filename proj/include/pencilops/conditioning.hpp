// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include "pencilops/detail/numeric.hpp"
#include "pencilops/eigensolve.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/linearize.hpp"
#include "pencilops/matrix_polynomial.hpp"

namespace pencilops {

/// Largest singular value of the d x d upper-triangular all-ones matrix,
/// computed by SVD. This value is authoritative; t_of_d_closed reports the
/// matching closed form for cross-checks. Grows like 2d/pi.
inline double t_of_d(int d) {
    if (d < 1) throw precondition_error("t_of_d: d must be positive");
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) T(i, j) = 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
    return svd.singularValues()(0);
}

/// Closed form 1 / (2 sin(pi / (4d+2))); agrees with the SVD value
/// (d=1 -> 1, d=2 -> golden ratio) and with the 2d/pi growth rate.
inline double t_of_d_closed(int d) {
    if (d < 1) throw precondition_error("t_of_d_closed: d must be positive");
    const double pi = std::acos(-1.0);
    return 1.0 / (2.0 * std::sin(pi / (4.0 * d + 2.0)));
}

/// Normwise condition number of a simple eigenvalue of the pencil
/// mu*P0 - lambda*P1 at a normalized point, with coefficientwise-relative
/// perturbation weights ||P0||_2, ||P1||_2:
///   kappa = sqrt(|l|^2 ||P1||^2 + |m|^2 ||P0||^2) ||x|| ||y||
///           / |y^* (conj(m) P1 + conj(l) P0) x|.
/// Scale invariant in x and y. A vanishing denominator (defective or
/// ill-posed eigenvalue) yields the +inf sentinel instead of an error.
inline double pencil_eig_condition(const Pencil& P, const EigenTriple& t) {
    const double n0 = detail::spectral_norm(P.P0());
    const double n1 = detail::spectral_norm(P.P1());
    const cplx l = t.point.lambda, m = t.point.mu;
    const double num =
        std::sqrt(std::norm(l) * n1 * n1 + std::norm(m) * n0 * n0) * t.x.norm() * t.y.norm();
    const cmat D = std::conj(m) * P.P1() + std::conj(l) * P.P0();
    const double den = std::abs(t.y.dot(D * t.x));
    if (den == 0.0 || !std::isfinite(num / den))
        return std::numeric_limits<double>::infinity();
    return num / den;
}

/// Condition data for one eigenvalue of the annihilator pencil of A.
struct ConditionReport {
    double kappa_pencil;      // measured condition number of the W pencil
    double kappa_poly;        // polynomial-level condition number, same shape
    double bound_general;     // bound with explicit ||W_i||, ||B|| factors
    double bound_orthonormal; // simplified bound (NaN when W not orthonormal)
    double t_d;
    double lambda_norm;       // || [ |l|^d, |l|^{d-1}|m|, ..., |m|^d ] ||_2
    double denominator;       // |y^* (conj(m) dA/dl - conj(l) dA/dm) x|
    double ratio_diagnostic;  // weighted-coefficient-norms inner product over
                              // lambda_norm * ||col_stack(A)||; << 1 flags the
                              // nearly-orthogonal (hard) case
    bool infinite;            // sentinel: denominator vanished
};

/// Upper bounds for the W-pencil condition number at a polynomial
/// eigentriple, plus the measured value from the recovered eigenvectors.
/// bound_general = sqrt(|l|^2 ||W1||^2 + |m|^2 ||W0||^2) * sqrt(2) T(d)
///                 * lambda_norm * ||col A|| * ||B|| * ||x|| ||y|| / den;
/// the orthonormal variant drops the factors that are at most 1.
inline ConditionReport w_condition_bound(const MatrixPolynomial& A, const WLinearization& WL,
                                         const cvec& x, const cvec& y, const HomogeneousPoint& pt) {
    const int d = A.degree();
    ConditionReport rep{};
    rep.t_d = t_of_d(d);

    const double al = std::abs(pt.lambda), am = std::abs(pt.mu);
    double lam2 = 0.0, inner = 0.0, sq = 0.0;
    for (int i = 0; i <= d; ++i) {
        const double w = std::pow(al, i) * std::pow(am, d - i);
        const double ni = detail::spectral_norm(A.coeff(i));
        lam2 += w * w;
        inner += w * ni;
        sq += w * w * ni * ni;
    }
    rep.lambda_norm = std::sqrt(lam2);
    const double colnorm = detail::spectral_norm(col_stack(A));
    rep.ratio_diagnostic = inner / std::max(rep.lambda_norm * colnorm, 1e-300);

    const cmat D = std::conj(pt.mu) * evaluate_dlambda(A, pt) - std::conj(pt.lambda) * evaluate_dmu(A, pt);
    rep.denominator = std::abs(y.dot(D * x));
    rep.infinite = (rep.denominator == 0.0);

    const double xy = x.norm() * y.norm();
    const double sqrt2Td = std::sqrt(2.0) * rep.t_d;
    const double w0 = detail::spectral_norm(WL.pencil.P0());
    const double w1 = detail::spectral_norm(WL.pencil.P1());
    const double wfac = std::sqrt(std::norm(pt.lambda) * w1 * w1 + std::norm(pt.mu) * w0 * w0);
    const double bnorm = detail::spectral_norm(WL.completion.B);
    const double inf = std::numeric_limits<double>::infinity();

    rep.bound_general =
        rep.infinite ? inf : wfac * sqrt2Td * rep.lambda_norm * colnorm * bnorm * xy / rep.denominator;
    rep.bound_orthonormal = WL.orthonormal
        ? (rep.infinite ? inf : sqrt2Td * rep.lambda_norm * colnorm * xy / rep.denominator)
        : std::numeric_limits<double>::quiet_NaN();
    rep.kappa_poly = rep.infinite ? inf : std::sqrt(sq) * xy / rep.denominator;

    // Measured condition number of the W pencil at the recovered vectors.
    const Pencil C = companion_second_form(A);
    const WRecovery rec = recover_w_vectors(WL, C, A, x, y, pt);
    EigenTriple t;
    t.point = pt;
    t.x = rec.x_check;
    t.y = rec.y_check;
    rep.kappa_pencil = pencil_eig_condition(WL.pencil, t);
    return rep;
}

} // namespace pencilops
