// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <future>

#include "pencilops/eigensolve.hpp"
#include "pencilops/linearize.hpp"
#include "pencilops/oracle.hpp"
#include "support.hpp"

using namespace pencilops;
using testsupport::poly_eigvecs;
using testsupport::random_cmat;
using testsupport::random_poly;

namespace {

MatrixPolynomial scalar_quadratic() {
    std::vector<cmat> cs(3, cmat::Zero(1, 1));
    cs[0](0, 0) = 5.0;
    cs[1](0, 0) = 3.0;
    cs[2](0, 0) = 2.0;
    return MatrixPolynomial(std::move(cs));
}

} // namespace

TEST_CASE("solve_pencil: diagonal pencil") {
    const cmat D = cvec::LinSpaced(2, 1.0, 2.0).asDiagonal();
    const auto sol = solve_pencil(Pencil(D, cmat::Identity(2, 2)), "diag");
    REQUIRE(sol.triples.size() == 2);
    CHECK(sol.source == "diag");
    // mu*diag(1,2) = lambda*x has solutions x = 1, 2.
    CHECK(chordal_distance(sol.triples[0].point, HomogeneousPoint::affine(1.0)) < 1e-14);
    CHECK(chordal_distance(sol.triples[1].point, HomogeneousPoint::affine(2.0)) < 1e-14);
    for (const auto& t : sol.triples) {
        CHECK_THAT(t.x.norm(), Catch::Matchers::WithinAbs(1.0, 4 * detail::eps));
        CHECK_THAT(t.y.norm(), Catch::Matchers::WithinAbs(1.0, 4 * detail::eps));
        CHECK(t.residual_right < 1e-14);
        CHECK(t.residual_left < 1e-14);
    }
}

TEST_CASE("solve_pencil: singular P1 puts one eigenvalue at infinity") {
    cmat P1 = cmat::Zero(2, 2);
    P1(1, 1) = 1.0;
    const auto sol = solve_pencil(Pencil(cmat::Identity(2, 2), P1));
    REQUIRE(sol.triples.size() == 2);
    const auto& last = sol.triples.back().point; // infinite point sorts last
    CHECK(last.mu == cplx(0.0, 0.0));
    CHECK(last.lambda == cplx(1.0, 0.0));
    for (const auto& t : sol.triples) {
        CHECK(std::isfinite(t.point.lambda.real()));
        CHECK(std::isfinite(t.point.mu.real()));
    }
}

TEST_CASE("solve_pencil: companion roots match the quadratic formula") {
    const auto A = scalar_quadratic();
    const auto sol = solve_pencil(companion_second_form(A));
    REQUIRE(sol.triples.size() == 2);
    // 2x^2 + 3x + 5 = 0: x = (-3 +- i sqrt(31)) / 4, |x| = sqrt(5/2).
    const cplx r1(-0.75, std::sqrt(31.0) / 4.0), r2 = std::conj(r1);
    for (const auto& t : sol.triples) {
        CHECK_THAT(std::abs(t.point.lambda / t.point.mu),
                   Catch::Matchers::WithinAbs(std::sqrt(2.5), 1e-12));
        const double d = std::min(chordal_distance(t.point, HomogeneousPoint::affine(r1)),
                                  chordal_distance(t.point, HomogeneousPoint::affine(r2)));
        CHECK(d < 1e-14);
    }
}

TEST_CASE("solve_pencil: residual invariant and deterministic ordering") {
    std::mt19937_64 rng(21);
    const Pencil P(random_cmat(rng, 6, 6), random_cmat(rng, 6, 6));
    const auto a = solve_pencil(P);
    const auto b = solve_pencil(P);
    REQUIRE(a.triples.size() == b.triples.size());
    for (std::size_t k = 0; k < a.triples.size(); ++k) {
        CHECK(a.triples[k].point.lambda == b.triples[k].point.lambda);
        CHECK(a.triples[k].point.mu == b.triples[k].point.mu);
        const auto& t = a.triples[k];
        const double scale = std::abs(t.point.mu) * detail::spectral_norm(P.P0()) +
                             std::abs(t.point.lambda) * detail::spectral_norm(P.P1());
        CHECK(t.residual_right <= 1e-11 * scale);
        CHECK(t.residual_left <= 1e-11 * scale);
        // Stored residuals are exactly what residual_norm recomputes.
        const auto [rr, rl] = residual_norm(P, t.point, t.x, t.y);
        CHECK(t.residual_right == rr);
        CHECK(t.residual_left == rl);
    }
    for (std::size_t k = 1; k < a.triples.size(); ++k)
        CHECK(detail::ordering_key(a.triples[k - 1].point) <= detail::ordering_key(a.triples[k].point));
}

TEST_CASE("solve_pencil: singular pencil detected") {
    cmat Z = cmat::Zero(2, 2);
    Z(0, 0) = 1.0;
    CHECK_THROWS_AS(solve_pencil(Pencil(Z, Z)), singular_pencil_error);
}

TEST_CASE("solve_pencil is safe to call concurrently on distinct inputs") {
    std::mt19937_64 rng(22);
    const Pencil P1(random_cmat(rng, 8, 8), random_cmat(rng, 8, 8));
    const Pencil P2(random_cmat(rng, 8, 8), random_cmat(rng, 8, 8));
    auto f1 = std::async(std::launch::async, [&] { return solve_pencil(P1); });
    auto f2 = std::async(std::launch::async, [&] { return solve_pencil(P2); });
    const auto r1 = f1.get(), r2 = f2.get();
    CHECK(r1.triples.size() == 8);
    CHECK(r2.triples.size() == 8);
    const auto s1 = solve_pencil(P1);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(r1.triples[k].point.lambda == s1.triples[k].point.lambda);
}

TEST_CASE("residual_norm: exact eigenpair vs random vector") {
    const cmat D = cvec::LinSpaced(3, 1.0, 3.0).asDiagonal();
    const Pencil P(D, cmat::Identity(3, 3));
    cvec e0 = cvec::Zero(3);
    e0(0) = 1.0;
    const auto [rr, rl] = residual_norm(P, HomogeneousPoint::affine(1.0), e0, e0);
    CHECK(rr < 1e-15);
    CHECK(rl < 1e-15);
    std::mt19937_64 rng(23);
    cvec v = testsupport::random_cvec(rng, 3);
    v /= v.norm();
    const auto [rr2, rl2] = residual_norm(P, HomogeneousPoint::affine(1.0), v, v);
    CHECK(rr2 > 1e-3);
    CHECK(rl2 > 1e-3);
}

TEST_CASE("companion vectors at the zero eigenvalue") {
    // A_0 singular: x = 0 is an eigenvalue; the mu-branch formula gives
    // xhat = [x; 0; ...; 0] and yhat = [y; 0; ...; 0].
    std::mt19937_64 rng(24);
    cmat A0 = random_cmat(rng, 3, 3);
    A0.col(2).setZero();
    A0.row(2).setZero();
    const MatrixPolynomial A({A0, random_cmat(rng, 3, 3), random_cmat(rng, 3, 3)});
    const auto pt = HomogeneousPoint::zero();
    const auto [x, y] = poly_eigvecs(A, pt);
    const auto cv = companion_vectors_forward(A, x, y, pt);
    CHECK(cv.residual_right < 1e-12);
    CHECK(cv.residual_left < 1e-12);
    CHECK((cv.xhat.head(3) - x).norm() < 1e-14);
    CHECK(cv.xhat.tail(3).norm() == 0.0);
    CHECK((cv.yhat.head(3) - y).norm() < 1e-14);
    CHECK(cv.yhat.tail(3).norm() == 0.0);
}

TEST_CASE("companion vectors at the infinite eigenvalue") {
    // A_d singular: the lambda-branch formula gives xhat = [x; A_1 x] for
    // d = 2 and yhat = [0; y].
    std::mt19937_64 rng(25);
    cmat A2 = random_cmat(rng, 3, 3);
    A2.col(0).setZero();
    A2.row(0).setZero();
    const cmat A1 = random_cmat(rng, 3, 3);
    const MatrixPolynomial A({random_cmat(rng, 3, 3), A1, A2});
    const auto pt = HomogeneousPoint::infinity();
    const auto [x, y] = poly_eigvecs(A, pt);
    const auto cv = companion_vectors_forward(A, x, y, pt);
    CHECK(cv.residual_right < 1e-12);
    CHECK(cv.residual_left < 1e-12);
    CHECK((cv.xhat.head(3) - x).norm() < 1e-14);
    CHECK((cv.xhat.tail(3) - A1 * x).norm() < 1e-13);
    CHECK(cv.yhat.head(3).norm() == 0.0);
    CHECK((cv.yhat.tail(3) - y).norm() < 1e-14);
    // No non-finite floats anywhere.
    CHECK(cv.xhat.allFinite());
    CHECK(cv.yhat.allFinite());
}

TEST_CASE("companion vectors: the two formulas coincide at finite nonzero eigenvalues") {
    const auto A = random_poly(26, 3, 2);
    const auto ref = oracle_reference(A);
    for (const auto& pt : ref.points) {
        if (std::abs(pt.lambda) < 1e-6 || std::abs(pt.mu) < 1e-6) continue;
        const auto [x, y] = poly_eigvecs(A, pt);
        const auto cv = companion_vectors_forward(A, x, y, pt);
        CHECK(cv.formula_agreement < 1e-9);
        CHECK(cv.residual_right < 1e-9);
        CHECK(cv.residual_left < 1e-9);
    }
}

TEST_CASE("companion vectors: non-eigentriple input is rejected") {
    const auto A = random_poly(27, 2, 2);
    std::mt19937_64 rng(27);
    cvec v = testsupport::random_cvec(rng, 2);
    v /= v.norm();
    CHECK_THROWS_AS(companion_vectors_forward(A, v, v, HomogeneousPoint::affine(0.5)),
                    precondition_error);
}

TEST_CASE("companion_right_vector: forward/backward consistency") {
    const auto A = random_poly(28, 2, 3);
    const auto sol = solve_pencil(companion_second_form(A));
    for (const auto& t : sol.triples) {
        const auto rep = companion_right_vector(A, t);
        CHECK(rep.leading_block_agreement < 1e-8);
        CHECK(rep.poly_residual < 1e-9);
    }
}

TEST_CASE("recover_w_vectors: both routes agree and certify on the W pencil") {
    const auto A = random_poly(29, 2, 2);
    const auto WL = w_linearization(A);
    const Pencil C = companion_second_form(A);
    const auto ref = oracle_reference(A);
    for (const auto& pt : ref.points) {
        const auto [x, y] = poly_eigvecs(A, pt);
        const auto rec = recover_w_vectors(WL, C, A, x, y, pt);
        CHECK(rec.route_agreement_x < 1e-10);
        CHECK(rec.route_agreement_y < 1e-10);
        CHECK(rec.anchor_agreement_x < 1e-8);
        CHECK(rec.anchor_agreement_y < 1e-8);
        CHECK(rec.residual_right < 1e-10);
        CHECK(rec.residual_left < 1e-10);
        CHECK(rec.norm_product_drift < 1e-8);
        CHECK(rec.x_check.allFinite());
        CHECK(rec.y_check.allFinite());
    }
}

TEST_CASE("recover_w_vectors: scalar quadratic closed form vs anchor route") {
    const auto A = scalar_quadratic();
    const auto WL = w_linearization(A);
    const Pencil C = companion_second_form(A);
    const auto ref = oracle_reference(A);
    for (const auto& pt : ref.points) {
        const auto [x, y] = poly_eigvecs(A, pt);
        const auto rec = recover_w_vectors(WL, C, A, x, y, pt);
        // The closed forms equal the anchor-route vectors exactly, not just
        // up to scale.
        CHECK((rec.x_check - rec.x_check_closed).norm() <= 1e-12 * rec.x_check.norm());
        CHECK((rec.y_check - rec.y_check_closed).norm() <= 1e-10 * rec.y_check.norm());
    }
}

TEST_CASE("recover_w_vectors: infinite eigenvalue goes through the cleared branch") {
    std::mt19937_64 rng(30);
    cmat A2 = random_cmat(rng, 2, 2);
    A2.col(1).setZero();
    A2.row(1).setZero();
    const MatrixPolynomial A({random_cmat(rng, 2, 2), random_cmat(rng, 2, 2), A2});
    const auto WL = w_linearization(A);
    const Pencil C = companion_second_form(A);
    const auto pt = HomogeneousPoint::infinity();
    const auto [x, y] = poly_eigvecs(A, pt);
    const auto rec = recover_w_vectors(WL, C, A, x, y, pt);
    CHECK(rec.x_check.allFinite());
    CHECK(rec.y_check.allFinite());
    CHECK(rec.x_check_closed.allFinite());
    CHECK(rec.y_check_closed.allFinite());
    CHECK(rec.residual_right < 1e-9);
    CHECK(rec.route_agreement_x < 1e-8);
}

TEST_CASE("recover_w_vectors: explicit anchors reproduce the grid behaviour") {
    const auto A = random_poly(31, 2, 2);
    const auto WL = w_linearization(A);
    const Pencil C = companion_second_form(A);
    const auto pt = oracle_reference(A).points.front();
    const auto [x, y] = poly_eigvecs(A, pt);
    const auto& grid = sphere_grid();
    const auto rec =
        recover_w_vectors(WL, C, A, x, y, pt, std::make_pair(grid.front(), grid[16]));
    CHECK(rec.anchor_agreement_x < 1e-8);
    CHECK(rec.anchor_agreement_y < 1e-8);
    CHECK(rec.norm_product_drift < 1e-8);
}

TEST_CASE("recover_w_vectors from a companion triple") {
    const auto A = random_poly(32, 2, 3);
    const auto WL = w_linearization(A);
    const Pencil C = companion_second_form(A);
    const auto sol = solve_pencil(C);
    for (const auto& t : sol.triples) {
        const auto rec = recover_w_vectors(WL, C, A, t);
        CHECK(rec.residual_right < 1e-8);
        CHECK(rec.residual_left < 1e-8);
    }
}
