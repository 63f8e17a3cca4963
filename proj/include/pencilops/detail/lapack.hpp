// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "pencilops/detail/numeric.hpp"
#include "pencilops/errors.hpp"

namespace pencilops::detail {

struct GgevResult {
    cvec alpha;
    cvec beta;
    cmat vl; // columns: left eigenvectors, u^* (beta*A - alpha*B) = 0
    cmat vr; // columns: right eigenvectors, (beta*A - alpha*B) v = 0
};

/// QZ-style generalized eigensolver on the pair (A, B): returns homogeneous
/// pairs (alpha_j, beta_j) with beta_j*A*v_j = alpha_j*B*v_j. Arguments are
/// taken by value because the driver overwrites them. Workspace is per-call,
/// so concurrent calls on distinct inputs are safe.
inline GgevResult zggev(cmat A, cmat B) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    GgevResult r;
    r.alpha.resize(n);
    r.beta.resize(n);
    r.vl.resize(n, n);
    r.vr.resize(n, n);
    const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'V', 'V', n, A.data(), n, B.data(), n,
                                          r.alpha.data(), r.beta.data(), r.vl.data(), n, r.vr.data(), n);
    if (info < 0)
        throw precondition_error("zggev: illegal argument " + std::to_string(-info));
    if (info > 0)
        throw solver_error("zggev: QZ iteration failed to converge (info=" + std::to_string(info) + ")");
    return r;
}

/// Eigenvalues of a general complex matrix (no vectors).
inline cvec zgeev_values(cmat A) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    cvec w(n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n, w.data(), nullptr, 1, nullptr, 1);
    if (info < 0)
        throw precondition_error("zgeev: illegal argument " + std::to_string(-info));
    if (info > 0)
        throw solver_error("zgeev: eigenvalue iteration failed to converge");
    return w;
}

/// Least-squares solve min ||A X - B||_F for tall full-rank A.
inline cmat zgels(cmat A, cmat B) {
    const lapack_int m = static_cast<lapack_int>(A.rows());
    const lapack_int n = static_cast<lapack_int>(A.cols());
    const lapack_int nrhs = static_cast<lapack_int>(B.cols());
    const lapack_int info = LAPACKE_zgels(LAPACK_COL_MAJOR, 'N', m, n, nrhs, A.data(), m, B.data(), m);
    if (info < 0)
        throw precondition_error("zgels: illegal argument " + std::to_string(-info));
    if (info > 0)
        throw rank_error("zgels: coefficient matrix is rank deficient");
    return B.topRows(n);
}

} // namespace pencilops::detail
