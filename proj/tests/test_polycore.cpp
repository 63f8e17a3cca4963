// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "pencilops/eigensolve.hpp"
#include "pencilops/homogeneous.hpp"
#include "pencilops/linearize.hpp"
#include "pencilops/matrix_polynomial.hpp"
#include "pencilops/pencil.hpp"
#include "support.hpp"

using namespace pencilops;
using testsupport::random_cmat;
using testsupport::random_poly;

namespace {

MatrixPolynomial scalar_quadratic() {
    // 2 l^2 + 3 l m + 5 m^2, so A_0 = 5, A_1 = 3, A_2 = 2.
    std::vector<cmat> cs(3, cmat::Zero(1, 1));
    cs[0](0, 0) = 5.0;
    cs[1](0, 0) = 3.0;
    cs[2](0, 0) = 2.0;
    return MatrixPolynomial(std::move(cs));
}

} // namespace

TEST_CASE("evaluate picks the right coefficient at the poles") {
    const auto A = scalar_quadratic();
    CHECK(evaluate(A, HomogeneousPoint::zero())(0, 0) == cplx(5.0, 0.0));
    CHECK(evaluate(A, HomogeneousPoint::infinity())(0, 0) == cplx(2.0, 0.0));
    const double s = 1.0 / std::sqrt(2.0);
    const cmat mid = evaluate(A, HomogeneousPoint(cplx(s, 0.0), cplx(s, 0.0)));
    CHECK_THAT(mid(0, 0).real(), Catch::Matchers::WithinAbs(5.0, 1e-14));
    CHECK_THAT(mid(0, 0).imag(), Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("MatrixPolynomial constructor enforces the invariants") {
    CHECK_THROWS_AS(MatrixPolynomial(std::vector<cmat>{}), precondition_error);
    std::vector<cmat> zero(3, cmat::Zero(2, 2));
    CHECK_THROWS_AS(MatrixPolynomial(zero), precondition_error);
    std::vector<cmat> ragged{cmat::Identity(2, 2), cmat::Identity(3, 3)};
    CHECK_THROWS_AS(MatrixPolynomial(ragged), precondition_error);
}

TEST_CASE("rev reverses the coefficient list and is an involution") {
    const auto A = random_poly(11, 3, 4);
    const auto R = rev_poly(A);
    for (int i = 0; i <= 4; ++i) CHECK(R.coeff(i) == A.coeff(4 - i));
    const auto RR = rev_poly(R);
    for (int i = 0; i <= 4; ++i) CHECK(RR.coeff(i) == A.coeff(i));

    // Palindromic fixed point and the d=0 identity.
    std::vector<cmat> pal{cmat::Identity(2, 2), 2.0 * cmat::Identity(2, 2), cmat::Identity(2, 2)};
    const MatrixPolynomial P(pal);
    const auto RP = rev_poly(P);
    for (int i = 0; i <= 2; ++i) CHECK(RP.coeff(i) == P.coeff(i));
    std::vector<cmat> c0{cmat::Identity(2, 2)};
    const MatrixPolynomial C0(c0);
    CHECK(rev_poly(C0).coeff(0) == C0.coeff(0));
}

TEST_CASE("col/row stacks concatenate in index order") {
    const auto A = scalar_quadratic();
    const cmat S = col_stack(A);
    REQUIRE(S.rows() == 3);
    CHECK(S(0, 0) == cplx(5.0, 0.0));
    CHECK(S(1, 0) == cplx(3.0, 0.0));
    CHECK(S(2, 0) == cplx(2.0, 0.0));

    // row_stack = col_stack transposed for symmetric coefficients.
    std::mt19937_64 rng(7);
    std::vector<cmat> sym;
    for (int i = 0; i < 3; ++i) {
        cmat M = random_cmat(rng, 3, 3);
        sym.push_back((M + M.transpose()).eval());
    }
    const MatrixPolynomial B(sym);
    CHECK((row_stack(B) - col_stack(B).transpose()).norm() == 0.0);
}

TEST_CASE("col_stack has full column rank for regular random instances") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto A = random_poly(seed, 3, 3);
        CHECK(detail::full_rank(col_stack(A)));
    }
}

TEST_CASE("pencil evaluation is exactly beta*P0 - alpha*P1") {
    std::mt19937_64 rng(3);
    const cmat P0 = random_cmat(rng, 4, 4), P1 = random_cmat(rng, 4, 4);
    const Pencil L(P0, P1);
    const cplx a(0.3, -0.2), b(-1.1, 0.7);
    CHECK((L.evaluate(a, b) - (b * P0 - a * P1)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(L.reversed().P0() == P1);
    CHECK(L.reversed().P1() == P0);
}

TEST_CASE("homogeneous points are normalized and phase-canonical") {
    const HomogeneousPoint p(cplx(3.0, 4.0), cplx(1.0, 0.0));
    CHECK_THAT(std::norm(p.lambda) + std::norm(p.mu), Catch::Matchers::WithinAbs(1.0, 4 * detail::eps));
    CHECK(std::abs(p.lambda) >= std::abs(p.mu));
    CHECK(p.lambda.imag() == Catch::Approx(0.0).margin(1e-15));
    CHECK(p.lambda.real() >= 0.0);

    // Tie |lambda| = |mu| resolved toward making lambda real.
    const HomogeneousPoint t(cplx(0.0, 2.0), cplx(2.0, 0.0));
    CHECK(t.lambda.imag() == Catch::Approx(0.0).margin(1e-15));
    CHECK(t.lambda.real() >= 0.0);

    CHECK_THROWS_AS(HomogeneousPoint(cplx(0, 0), cplx(0, 0)), precondition_error);
}

TEST_CASE("chordal distance matches the subspace-angle definition") {
    const auto p = HomogeneousPoint::affine(cplx(1.0, 0.0));
    CHECK(chordal_distance(p, p) == 0.0);
    CHECK_THAT(chordal_distance(HomogeneousPoint::infinity(), HomogeneousPoint::zero()),
               Catch::Matchers::WithinAbs(std::acos(-1.0) / 2.0, 1e-15));
    const auto q = HomogeneousPoint::affine(cplx(2.0, 0.0));
    CHECK_THAT(chordal_distance(p, q), Catch::Matchers::WithinAbs(std::acos(3.0 / std::sqrt(10.0)), 1e-12));
}

TEST_CASE("chordal distance is a metric on canonical points") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    auto rnd_point = [&] { return HomogeneousPoint(cplx(g(rng), g(rng)), cplx(g(rng), g(rng))); };
    for (int k = 0; k < 200; ++k) {
        const auto a = rnd_point(), b = rnd_point(), c = rnd_point();
        CHECK(chordal_distance(a, b) == chordal_distance(b, a));
        CHECK(chordal_distance(a, b) <= chordal_distance(a, c) + chordal_distance(c, b) + 1e-12);
        CHECK(chordal_distance(a, b) <= std::acos(-1.0) / 2.0 + 1e-15);
    }
}

TEST_CASE("quadratic scaling: gamma and delta formulas") {
    {
        std::vector<cmat> cs{cmat::Identity(2, 2), cmat::Identity(2, 2), cmat::Identity(2, 2)};
        const auto rep = scale_fan_lin_van_dooren(MatrixPolynomial(cs));
        CHECK_THAT(rep.gamma, Catch::Matchers::WithinAbs(1.0, 1e-15));
        CHECK_THAT(rep.delta, Catch::Matchers::WithinAbs(1.0, 1e-15));
    }
    {
        std::vector<cmat> cs{100.0 * cmat::Identity(2, 2), cmat::Identity(2, 2), cmat::Identity(2, 2)};
        const auto rep = scale_fan_lin_van_dooren(MatrixPolynomial(cs));
        CHECK_THAT(rep.gamma, Catch::Matchers::WithinAbs(10.0, 1e-12));
    }
    std::vector<cmat> cubic(4, cmat::Identity(2, 2));
    CHECK_THROWS_AS(scale_fan_lin_van_dooren(MatrixPolynomial(cubic)), scaling_error);
    std::vector<cmat> degenerate{cmat::Zero(2, 2), cmat::Identity(2, 2), cmat::Identity(2, 2)};
    CHECK_THROWS_AS(scale_fan_lin_van_dooren(MatrixPolynomial(degenerate)), scaling_error);
}

TEST_CASE("scaling commutes with eigenvalues under the gamma map") {
    // Coefficient norms spread over six orders of magnitude.
    std::mt19937_64 rng(23);
    std::vector<cmat> cs{1e-3 * random_cmat(rng, 3, 3), 1e3 * random_cmat(rng, 3, 3),
                         random_cmat(rng, 3, 3)};
    const MatrixPolynomial A(cs);
    const auto rep = scale_fan_lin_van_dooren(A);

    const auto orig = solve_pencil(companion_second_form(A));
    const auto scal = solve_pencil(companion_second_form(rep.scaled));
    REQUIRE(orig.triples.size() == scal.triples.size());
    // Map the scaled eigenvalues back and match greedily (6 eigenvalues).
    std::vector<HomogeneousPoint> mapped;
    for (const auto& t : scal.triples) mapped.push_back(unscale_eigenvalue(t.point, rep.gamma));
    for (const auto& t : orig.triples) {
        double best = 1e9;
        for (const auto& m : mapped) best = std::min(best, chordal_distance(t.point, m));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("evaluate agrees with direct summation on random instances") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    const auto A = random_poly(31, 3, 4);
    for (int k = 0; k < 10; ++k) {
        const HomogeneousPoint pt(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
        cmat direct = cmat::Zero(3, 3);
        for (int i = 0; i <= 4; ++i)
            direct += A.coeff(i) * detail::ipow(pt.lambda, i) * detail::ipow(pt.mu, 4 - i);
        CHECK((evaluate(A, pt) - direct).norm() <= 1e-13 * direct.norm());
    }
}
