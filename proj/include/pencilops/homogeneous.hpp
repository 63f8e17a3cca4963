// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <tuple>
#include <vector>

#include "pencilops/detail/numeric.hpp"
#include "pencilops/errors.hpp"

namespace pencilops {

/// A point (lambda : mu) on the Riemann sphere, used as a homogeneous
/// eigenvalue. After construction |lambda|^2 + |mu|^2 = 1 and the
/// larger-modulus coordinate is real nonnegative (ties broken toward making
/// lambda real), so equal projective points compare equal up to roundoff.
///
/// The affine value x corresponds to (x, 1)/||.||, infinity to (1, 0) and
/// zero to (0, 1); neither pole ever turns into a non-finite float.
struct HomogeneousPoint {
    cplx lambda{0.0, 0.0};
    cplx mu{1.0, 0.0};

    HomogeneousPoint() = default;

    HomogeneousPoint(cplx l, cplx m) : lambda(l), mu(m) { canonicalize(); }

    static HomogeneousPoint affine(cplx x) { return HomogeneousPoint(x, cplx(1.0, 0.0)); }
    static HomogeneousPoint zero() { return HomogeneousPoint(cplx(0.0, 0.0), cplx(1.0, 0.0)); }
    static HomogeneousPoint infinity() { return HomogeneousPoint(cplx(1.0, 0.0), cplx(0.0, 0.0)); }

    bool is_infinite() const { return mu == cplx(0.0, 0.0); }

    /// lambda/mu; only meaningful for finite points.
    cplx affine_value() const { return lambda / mu; }

    void canonicalize() {
        const double s2 = std::norm(lambda) + std::norm(mu);
        if (s2 == 0.0)
            throw precondition_error("HomogeneousPoint: (0, 0) does not represent a point");
        const double s = std::sqrt(s2);
        lambda /= s;
        mu /= s;
        const cplx lead = (std::abs(lambda) >= std::abs(mu)) ? lambda : mu;
        const double a = std::abs(lead);
        if (a > 0.0) {
            const cplx phase = std::conj(lead) / a;
            lambda *= phase;
            mu *= phase;
        }
    }
};

/// Principal angle in [0, pi/2] between the complex lines spanned by p and q,
/// arccos(min(1, |l_p conj(l_q) + m_p conj(m_q)|)). For affine values v, w
/// this equals the angle between (v;1) and (w;1). Evaluated through atan2 of
/// the complementary cross term, which is exact at 0 and accurate throughout.
inline double chordal_distance(const HomogeneousPoint& p, const HomogeneousPoint& q) {
    const double c = std::abs(p.lambda * std::conj(q.lambda) + p.mu * std::conj(q.mu));
    const double s = std::abs(p.lambda * q.mu - p.mu * q.lambda);
    return std::atan2(s, c);
}

/// Angle between the directions of two complex vectors (0 when colinear).
/// Computed from the orthogonal-complement norm so near-colinear inputs do
/// not lose half the digits to cancellation in acos.
inline double subspace_angle(const cvec& u, const cvec& v) {
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0)
        throw precondition_error("subspace_angle: zero vector has no direction");
    const cvec un = u / nu;
    const cplx proj = un.dot(v); // un^H v
    const double s = (v - un * proj).norm() / nv;
    const double c = std::abs(proj) / nv;
    return std::atan2(s, c);
}

namespace detail {

/// Deterministic ordering key for canonical points: finite values sorted
/// lexicographically by (arg(lambda/mu), |lambda/mu|), infinite values last.
inline std::tuple<int, double, double, double, double> ordering_key(const HomogeneousPoint& p) {
    const double am = std::abs(p.mu);
    const double al = std::abs(p.lambda);
    if (am == 0.0) return {1, 0.0, 0.0, 0.0, 0.0};
    const cplx x = p.lambda / p.mu;
    return {0, std::arg(x), al / am, p.lambda.real(), p.lambda.imag()};
}

} // namespace detail

/// Deterministic 21-point evaluation grid on the sphere: 17 points equally
/// spaced in angle on the real circle (lambda, mu) = (cos t, sin t) plus 4
/// complex-phase points. A regular pencil of desk-scale size has fewer
/// eigenvalues than grid points, so some grid point is always nonsingular.
inline const std::vector<HomogeneousPoint>& sphere_grid() {
    static const std::vector<HomogeneousPoint> grid = [] {
        std::vector<HomogeneousPoint> g;
        const double pi = std::acos(-1.0);
        for (int k = 0; k < 17; ++k) {
            const double t = pi * (2.0 * k + 1.0) / 34.0;
            g.emplace_back(cplx(std::cos(t), 0.0), cplx(std::sin(t), 0.0));
        }
        const double s = 1.0 / std::sqrt(2.0);
        g.emplace_back(cplx(s, 0.0), cplx(0.0, s));
        g.emplace_back(cplx(s, 0.0), cplx(0.0, -s));
        g.emplace_back(cplx(s, 0.0), s * std::polar(1.0, pi / 4.0));
        g.emplace_back(cplx(s, 0.0), s * std::polar(1.0, -pi / 4.0));
        return g;
    }();
    return grid;
}

} // namespace pencilops
