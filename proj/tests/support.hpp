// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suites: seeded random inputs and an
// implementation-independent determinant-proportionality check.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "pencilops/homogeneous.hpp"
#include "pencilops/matrix_polynomial.hpp"
#include "pencilops/pencil.hpp"

namespace testsupport {

using pencilops::cmat;
using pencilops::cplx;
using pencilops::cvec;
using pencilops::HomogeneousPoint;
using pencilops::MatrixPolynomial;
using pencilops::Pencil;

inline cmat random_cmat(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g;
    cmat M(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) M(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
    return M;
}

inline cvec random_cvec(std::mt19937_64& rng, int size) {
    return random_cmat(rng, size, 1);
}

inline MatrixPolynomial random_poly(std::uint64_t seed, int n, int d) {
    std::mt19937_64 rng(seed);
    std::vector<cmat> cs;
    cs.reserve(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) cs.push_back(random_cmat(rng, n, n));
    return MatrixPolynomial(std::move(cs));
}

/// Unitary factor of a random Gaussian matrix.
inline cmat random_unitary(std::mt19937_64& rng, int n) {
    Eigen::HouseholderQR<cmat> qr(random_cmat(rng, n, n));
    return qr.householderQ() * cmat::Identity(n, n);
}

/// Right/left nullvector pair of A(pt) via SVD: an eigentriple of the
/// polynomial certified independently of any linearization.
inline std::pair<cvec, cvec> poly_eigvecs(const MatrixPolynomial& A, const HomogeneousPoint& pt) {
    const cmat E = pencilops::evaluate(A, pt);
    Eigen::JacobiSVD<cmat> svd(E, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const int last = static_cast<int>(E.cols()) - 1;
    return {svd.matrixV().col(last), svd.matrixU().col(last)};
}

struct DetProportionality {
    double max_rel_dev; // max over sample points of |r_k - c| / |c|
    cplx constant;      // fitted proportionality constant c
};

/// Checks det(pencil at pt) = c * det A(pt) for a single constant c over
/// `points` seeded sample points, avoiding points too close to eigenvalues
/// by rotating the sample circle deterministically when needed.
inline DetProportionality det_proportionality(const Pencil& L, const MatrixPolynomial& A, int points,
                                              std::uint64_t seed) {
    const double pi = std::acos(-1.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        const double off = pi * u(rng);
        const double phase = 2.0 * pi * u(rng);
        std::vector<HomogeneousPoint> pts;
        pts.reserve(static_cast<std::size_t>(points));
        for (int k = 0; k < points; ++k) {
            const double t = off + pi * (2.0 * k + 1.0) / (2.0 * points);
            pts.emplace_back(cplx(std::cos(t), 0.0), std::polar(std::sin(t) == 0.0 ? 1e-3 : std::sin(t), phase));
        }
        std::vector<cplx> ra, rl;
        double min_abs = std::numeric_limits<double>::infinity();
        double max_abs = 0.0;
        for (const auto& pt : pts) {
            const cplx da = pencilops::evaluate(A, pt).determinant();
            ra.push_back(da);
            rl.push_back(L.evaluate(pt).determinant());
            min_abs = std::min(min_abs, std::abs(da));
            max_abs = std::max(max_abs, std::abs(da));
        }
        if (min_abs < 1e-8 * max_abs) continue; // too close to an eigenvalue; re-seed points
        std::vector<cplx> ratios;
        for (std::size_t k = 0; k < ra.size(); ++k) ratios.push_back(rl[k] / ra[k]);
        cplx c(0.0, 0.0);
        for (const cplx r : ratios) c += r;
        c /= static_cast<double>(ratios.size());
        double dev = 0.0;
        for (const cplx r : ratios) dev = std::max(dev, std::abs(r - c) / std::abs(c));
        return {dev, c};
    }
    return {std::numeric_limits<double>::infinity(), cplx(0.0, 0.0)};
}

} // namespace testsupport
