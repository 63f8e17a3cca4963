// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pencilops/detail/ddouble.hpp"
#include "pencilops/detail/lapack.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/homogeneous.hpp"
#include "pencilops/matrix_polynomial.hpp"

// Reference eigenvalues by determinant interpolation, independent of the
// linearization and QZ machinery: det A(x) is sampled at Chebyshev nodes
// with compensated (double-double) arithmetic, interpolated in the Chebyshev
// basis, and the scalar roots are located from the colleague matrix and
// polished by compensated Newton steps. Shares nothing with solve_pencil
// beyond scalar arithmetic and the dense eigenvalue call used only for
// initial guesses.

namespace pencilops {

struct OracleReference {
    std::vector<HomogeneousPoint> points; // exactly d*n entries, sorted canonically
    int degree_deficiency;                // eigenvalues at (1, 0)
    double scale_rho;                     // variable scaling used internally
};

namespace detail {

/// Determinant by LU with partial pivoting in complex double-double.
inline CDD dd_determinant(std::vector<std::vector<CDD>> a) {
    const std::size_t n = a.size();
    CDD det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        DD best = abs2(a[k][k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const DD m = abs2(a[r][k]);
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        if (best.hi == 0.0) return CDD(0.0, 0.0);
        det = det * a[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const CDD f = a[r][k] / a[k][k];
            for (std::size_t c = k + 1; c < n; ++c) a[r][c] = a[r][c] - f * a[k][c];
        }
    }
    return det;
}

/// Clenshaw evaluation of a Chebyshev series at a complex double-double
/// argument; returns {p(t), p'(t)}.
inline std::pair<CDD, CDD> dd_cheb_eval(const std::vector<CDD>& c, const std::vector<CDD>& dc, CDD t) {
    auto clenshaw = [&](const std::vector<CDD>& coef) {
        CDD b1(0.0), b2(0.0);
        const CDD two_t = DD(2.0) * t;
        for (std::size_t k = coef.size(); k-- > 1;) {
            CDD b = coef[k] + two_t * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        return coef[0] + t * b1 - b2;
    };
    return {clenshaw(c), clenshaw(dc)};
}

} // namespace detail

inline OracleReference oracle_reference(const MatrixPolynomial& A) {
    using detail::CDD;
    using detail::DD;
    const int n = A.n(), d = A.degree();
    if (n * d > 100) throw precondition_error("oracle_reference: n*d exceeds the desk-scale cap 100");
    const int m = n * d;
    const long double pi = std::acos(-1.0L);

    // Variable scaling x = rho*t keeps the node set matched to the root
    // magnitudes (Cauchy-type bound from coefficient norms, clipped).
    double rho = 1.0;
    {
        const double lead = std::max(A.coeff(d).norm(), 1e-30);
        double bound = 0.0;
        for (int i = 0; i < d; ++i)
            bound = std::max(bound, std::pow(A.coeff(i).norm() / lead, 1.0 / double(d - i)));
        rho = std::clamp(2.0 * bound, 1.0, 1e6);
    }

    // Determinant values at Chebyshev nodes, in double-double.
    const int nodes = m + 1;
    std::vector<CDD> values(static_cast<std::size_t>(nodes));
    double value_scale = 0.0;
    double hadamard_ratio = 0.0; // max over nodes of |det| / Hadamard bound
    for (int j = 0; j < nodes; ++j) {
        const long double xl = static_cast<long double>(rho) * std::cos(pi * (2.0L * j + 1.0L) / (2.0L * nodes));
        const double xhi = static_cast<double>(xl);
        const CDD xj(DD(xhi, static_cast<double>(xl - static_cast<long double>(xhi))), DD(0.0));
        // Entrywise Horner: A(x) = sum A_i x^i in double-double.
        std::vector<std::vector<CDD>> M(static_cast<std::size_t>(n),
                                        std::vector<CDD>(static_cast<std::size_t>(n)));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                CDD acc(A.coeff(d)(r, c));
                for (int i = d - 1; i >= 0; --i) acc = xj * acc + CDD(A.coeff(i)(r, c));
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = acc;
            }
        double log_had = 0.0;
        for (int r = 0; r < n; ++r) {
            double s2 = 0.0;
            for (int c = 0; c < n; ++c) s2 += std::norm(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].to_complex());
            log_had += 0.5 * std::log(std::max(s2, 1e-300));
        }
        values[static_cast<std::size_t>(j)] = detail::dd_determinant(std::move(M));
        const double av = std::abs(values[static_cast<std::size_t>(j)].to_complex());
        value_scale = std::max(value_scale, av);
        hadamard_ratio = std::max(hadamard_ratio, av / std::exp(std::min(log_had, 690.0)));
    }
    if (value_scale == 0.0 || hadamard_ratio < 1e-25)
        throw singular_polynomial_error("oracle_reference: det A is (numerically) identically zero");

    // Chebyshev coefficients of det A(rho*t) on t in [-1, 1].
    std::vector<CDD> coef(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        CDD acc(0.0);
        for (int j = 0; j < nodes; ++j) {
            const long double w = std::cos(pi * k * (2.0L * j + 1.0L) / (2.0L * nodes));
            acc = acc + DD(static_cast<double>(w)) * values[static_cast<std::size_t>(j)];
        }
        const double f = (k == 0 ? 1.0 : 2.0) / nodes;
        coef[static_cast<std::size_t>(k)] = DD(f) * acc;
    }
    double cmax = 0.0;
    for (const auto& c : coef) cmax = std::max(cmax, std::abs(c.to_complex()));

    // Degree deficiency: vanishing top coefficients mean eigenvalues at
    // infinity (one per deficient degree).
    int deficiency = 0;
    while (deficiency < m &&
           std::abs(coef[static_cast<std::size_t>(m - deficiency)].to_complex()) <= 1e-14 * cmax)
        ++deficiency;
    const int M = m - deficiency; // numerical degree

    OracleReference out;
    out.degree_deficiency = deficiency;
    out.scale_rho = rho;

    if (M > 0) {
        // Colleague (Chebyshev companion) matrix for initial root guesses.
        cmat C = cmat::Zero(M, M);
        const cplx cM = coef[static_cast<std::size_t>(M)].to_complex();
        if (M == 1) {
            C(0, 0) = -coef[0].to_complex() / cM;
        } else {
            C(0, 1) = 1.0;
            for (int i = 1; i < M; ++i) {
                C(i, i - 1) = 0.5;
                if (i + 1 < M) C(i, i + 1) = 0.5;
            }
            for (int j = 0; j < M; ++j)
                C(M - 1, j) -= coef[static_cast<std::size_t>(j)].to_complex() / (2.0 * cM);
        }
        cvec guesses = detail::zgeev_values(std::move(C));

        // Compensated Newton polish on the interpolated series.
        std::vector<CDD> trunc(coef.begin(), coef.begin() + M + 1);
        std::vector<CDD> deriv(static_cast<std::size_t>(M + 1), CDD(0.0));
        {
            std::vector<CDD> dtmp(static_cast<std::size_t>(M + 2), CDD(0.0));
            for (int k = M; k >= 1; --k)
                dtmp[static_cast<std::size_t>(k - 1)] =
                    dtmp[static_cast<std::size_t>(k + 1)] + DD(2.0 * k) * trunc[static_cast<std::size_t>(k)];
            dtmp[0] = CDD(DD(0.5), DD(0.0)) * dtmp[0];
            for (int k = 0; k < M; ++k) deriv[static_cast<std::size_t>(k)] = dtmp[static_cast<std::size_t>(k)];
        }
        for (int r = 0; r < M; ++r) {
            CDD t(guesses(r));
            auto [p, dp] = detail::dd_cheb_eval(trunc, deriv, t);
            double best = std::abs(p.to_complex());
            CDD best_t = t;
            for (int it = 0; it < 4; ++it) {
                if (std::abs(dp.to_complex()) == 0.0) break;
                t = t - p / dp;
                std::tie(p, dp) = detail::dd_cheb_eval(trunc, deriv, t);
                const double ap = std::abs(p.to_complex());
                if (ap < best) {
                    best = ap;
                    best_t = t;
                } else {
                    break;
                }
            }
            const cplx root = best_t.to_complex() * rho;
            out.points.push_back(HomogeneousPoint::affine(root));
        }
    }
    for (int k = 0; k < deficiency; ++k) out.points.push_back(HomogeneousPoint::infinity());

    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const HomogeneousPoint& a, const HomogeneousPoint& b) {
                         return detail::ordering_key(a) < detail::ordering_key(b);
                     });
    return out;
}

} // namespace pencilops
