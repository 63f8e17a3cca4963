// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <complex>
#include <limits>

namespace pencilops {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();

inline Eigen::VectorXd singular_values(const cmat& M) {
    return Eigen::JacobiSVD<cmat>(M).singularValues();
}

/// Spectral norm (largest singular value).
inline double spectral_norm(const cmat& M) {
    if (M.size() == 0) return 0.0;
    return singular_values(M)(0);
}

/// Smallest singular value; 0 for wide/tall beyond min(m,n).
inline double sigma_min(const cmat& M) {
    const auto sv = singular_values(M);
    return sv(sv.size() - 1);
}

/// 2-norm condition number; +inf when numerically singular.
inline double cond2(const cmat& M) {
    const auto sv = singular_values(M);
    const double lo = sv(sv.size() - 1);
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / lo;
}

/// Standard numerical-rank cutoff: sigma_min must exceed max(m,n)*eps*sigma_max.
inline double rank_tolerance(const cmat& M, double sigma_max) {
    return static_cast<double>(std::max(M.rows(), M.cols())) * eps * sigma_max;
}

/// True when M has full (numerical) rank min(m,n).
inline bool full_rank(const cmat& M) {
    const auto sv = singular_values(M);
    return sv(sv.size() - 1) > rank_tolerance(M, sv(0));
}

/// Solve X = A^{-1} B for square A.
inline cmat solve(const cmat& A, const cmat& B) {
    return A.partialPivLu().solve(B);
}

inline cmat inverse(const cmat& A) {
    return A.partialPivLu().solve(cmat::Identity(A.rows(), A.cols()));
}

/// Least-squares solution of A X ~= B (A tall, any rank via SVD).
inline cmat lstsq(const cmat& A, const cmat& B) {
    return Eigen::JacobiSVD<cmat>(A, Eigen::ComputeThinU | Eigen::ComputeThinV).solve(B);
}

/// Kronecker product a (x) b for small dense operands.
inline cmat kron(const cmat& a, const cmat& b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// z^k by repeated multiplication (k >= 0), so 0^0 == 1 exactly.
inline cplx ipow(cplx z, int k) {
    cplx p(1.0, 0.0);
    for (int i = 0; i < k; ++i) p *= z;
    return p;
}

} // namespace detail
} // namespace pencilops
