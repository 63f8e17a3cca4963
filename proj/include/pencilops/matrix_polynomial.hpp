// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "pencilops/detail/numeric.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/homogeneous.hpp"

namespace pencilops {

/// Degree-d homogeneous n x n matrix polynomial
///     A(lambda, mu) = sum_i A_i lambda^i mu^(d-i),  i = 0..d,
/// stored as the ordered coefficient list A_0..A_d. Immutable after
/// construction; all operations on it are pure.
class MatrixPolynomial {
public:
    explicit MatrixPolynomial(std::vector<cmat> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw precondition_error("MatrixPolynomial: empty coefficient list");
        const Eigen::Index n = coeffs_.front().rows();
        if (n < 1) throw precondition_error("MatrixPolynomial: empty coefficient matrices");
        bool nonzero = false;
        for (const cmat& c : coeffs_) {
            if (c.rows() != n || c.cols() != n)
                throw precondition_error("MatrixPolynomial: coefficients must all be square of equal size");
            nonzero = nonzero || (c.cwiseAbs().maxCoeff() > 0.0);
        }
        if (!nonzero) throw precondition_error("MatrixPolynomial: the zero polynomial is rejected");
    }

    int n() const { return static_cast<int>(coeffs_.front().rows()); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficient of lambda^i mu^(d-i).
    const cmat& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    const std::vector<cmat>& coeffs() const { return coeffs_; }

private:
    std::vector<cmat> coeffs_;
};

/// sum_i A_i lambda^i mu^(d-i), evaluated Horner-style in the smaller/larger
/// modulus ratio so |ratio| <= 1 and neither pole overflows.
inline cmat evaluate(const MatrixPolynomial& A, const HomogeneousPoint& pt) {
    const int d = A.degree();
    const cplx l = pt.lambda, m = pt.mu;
    cmat acc;
    if (std::abs(l) >= std::abs(m)) {
        const cplx t = m / l; // |t| <= 1
        acc = A.coeff(0);
        for (int k = d - 1; k >= 0; --k) acc = (acc * t + A.coeff(d - k)).eval();
        return detail::ipow(l, d) * acc;
    }
    const cplx s = l / m;
    acc = A.coeff(d);
    for (int i = d - 1; i >= 0; --i) acc = (acc * s + A.coeff(i)).eval();
    return detail::ipow(m, d) * acc;
}

/// Partial derivative with respect to lambda: sum_{i>=1} i A_i lambda^(i-1) mu^(d-i).
inline cmat evaluate_dlambda(const MatrixPolynomial& A, const HomogeneousPoint& pt) {
    const int d = A.degree();
    const int n = A.n();
    if (d == 0) return cmat::Zero(n, n);
    std::vector<cmat> der(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) der[static_cast<std::size_t>(j)] = double(j + 1) * A.coeff(j + 1);
    return evaluate(MatrixPolynomial(std::move(der)), pt);
}

/// Partial derivative with respect to mu: sum_{i<d} (d-i) A_i lambda^i mu^(d-i-1).
inline cmat evaluate_dmu(const MatrixPolynomial& A, const HomogeneousPoint& pt) {
    const int d = A.degree();
    const int n = A.n();
    if (d == 0) return cmat::Zero(n, n);
    std::vector<cmat> der(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) der[static_cast<std::size_t>(j)] = double(d - j) * A.coeff(j);
    return evaluate(MatrixPolynomial(std::move(der)), pt);
}

/// Coefficient list reversed: rev A has coefficient A_{d-i} on lambda^i mu^(d-i).
inline MatrixPolynomial rev_poly(const MatrixPolynomial& A) {
    std::vector<cmat> r(A.coeffs().rbegin(), A.coeffs().rend());
    return MatrixPolynomial(std::move(r));
}

/// Vertical stack [A_0; A_1; ...; A_d], size (d+1)n x n.
inline cmat col_stack(const MatrixPolynomial& A) {
    const int n = A.n(), d = A.degree();
    cmat S((d + 1) * n, n);
    for (int i = 0; i <= d; ++i) S.middleRows(i * n, n) = A.coeff(i);
    return S;
}

/// Horizontal stack [A_0, A_1, ..., A_d], size n x (d+1)n.
inline cmat row_stack(const MatrixPolynomial& A) {
    const int n = A.n(), d = A.degree();
    cmat S(n, (d + 1) * n);
    for (int i = 0; i <= d; ++i) S.middleCols(i * n, n) = A.coeff(i);
    return S;
}

/// Result of the quadratic coefficient scaling: scaled polynomial plus the
/// substitution data. Eigenvalues of the original are gamma times the
/// eigenvalues of the scaled polynomial.
struct ScalingReport {
    MatrixPolynomial scaled;
    double gamma;
    double delta;
};

/// Quadratic two-parameter scaling: substitute x = gamma*x' and multiply by
/// delta, with gamma = sqrt(||A_0||_2 / ||A_2||_2) and
/// delta = 2 / (||A_0||_2 + gamma ||A_1||_2). Spectral norms throughout.
inline ScalingReport scale_fan_lin_van_dooren(const MatrixPolynomial& A) {
    if (A.degree() != 2)
        throw scaling_error("scale_fan_lin_van_dooren: only degree 2 is supported");
    const double n0 = detail::spectral_norm(A.coeff(0));
    const double n1 = detail::spectral_norm(A.coeff(1));
    const double n2 = detail::spectral_norm(A.coeff(2));
    if (n0 == 0.0 || n2 == 0.0)
        throw scaling_error("scale_fan_lin_van_dooren: undefined for zero A_0 or A_2");
    const double gamma = std::sqrt(n0 / n2);
    const double delta = 2.0 / (n0 + gamma * n1);
    std::vector<cmat> cs(3);
    double g = 1.0;
    for (int i = 0; i <= 2; ++i) {
        cs[static_cast<std::size_t>(i)] = (delta * g) * A.coeff(i);
        g *= gamma;
    }
    return ScalingReport{MatrixPolynomial(std::move(cs)), gamma, delta};
}

/// Map an eigenvalue of the scaled polynomial back to the original problem:
/// x = gamma * x', homogeneously (lambda, mu) -> (gamma*lambda, mu).
inline HomogeneousPoint unscale_eigenvalue(const HomogeneousPoint& pt, double gamma) {
    return HomogeneousPoint(gamma * pt.lambda, pt.mu);
}

} // namespace pencilops
