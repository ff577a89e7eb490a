#include <doctest.h>

#include <cmath>
#include <numbers>

#include <ssflab/linalg.hpp>
#include <ssflab/random.hpp>
#include <ssflab/trigpoly.hpp>

#include "test_util.hpp"

using namespace ssflab;
using testutil::dist;

TEST_SUITE("funcspace") {

TEST_CASE("split_pm: direct splits") {
    TrigPoly p = TrigPoly::monomial(1) + TrigPoly::monomial(-1);
    auto [plus, minus] = split_pm(p);
    CHECK(plus.coeff(1) == cd(1.0));
    CHECK(plus.coeffs().size() == 1);
    CHECK(minus.coeff(1) == cd(1.0));
    CHECK(minus.coeffs().size() == 1);

    std::tie(plus, minus) = split_pm(TrigPoly::constant(1.0));
    CHECK(plus.coeff(0) == cd(1.0));
    CHECK(minus.empty());

    std::tie(plus, minus) = split_pm(TrigPoly::monomial(-3, 2.0));
    CHECK(plus.empty());
    CHECK(minus.coeff(3) == cd(2.0));
}

TEST_CASE("eval_on_contraction: monomials and constants") {
    SeededRng rng(21);
    const ContractionOp t = defect(random_contraction(rng, 4));

    CHECK(dist(eval_on_contraction(TrigPoly::monomial(1), t), t.matrix()) == 0.0);
    CHECK(dist(eval_on_contraction(TrigPoly::monomial(-1), t), t.matrix().adjoint()) == 0.0);
    CHECK(dist(eval_on_contraction(TrigPoly::constant(cd(2.0, -1.0)), t),
               cd(2.0, -1.0) * identity(4)) == 0.0);
}

TEST_CASE("circle_derivative") {
    const TrigPoly z = TrigPoly::monomial(1);
    CHECK(circle_derivative(z, 1).coeff(1) == cd(0.0, 1.0));

    const TrigPoly z2 = TrigPoly::monomial(2);
    CHECK(circle_derivative(z2, 2).coeff(2) == cd(-4.0, 0.0));

    SeededRng rng(22);
    const TrigPoly p = random_trigpoly(rng, 3);
    const TrigPoly same = circle_derivative(p, 0);
    for (const auto& [k, c] : p.coeffs()) CHECK(same.coeff(k) == c);
}

TEST_CASE("fn_norm") {
    CHECK(fn_norm(TrigPoly::constant(1.0), 1) == 0.0);
    CHECK(fn_norm(TrigPoly::constant(1.0), 3) == 0.0);
    CHECK(fn_norm(TrigPoly::monomial(1) + TrigPoly::monomial(-1), 2) == doctest::Approx(2.0));
    CHECK(fn_norm(TrigPoly::monomial(2, 3.0), 1) == doctest::Approx(6.0));
}

TEST_CASE("reassembly: plus/minus split reproduces the function on the circle") {
    SeededRng rng(23);
    const TrigPoly p = random_trigpoly(rng, 6);
    const auto [plus, minus] = split_pm(p);
    for (int i = 0; i < 50; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 50.0;
        const cd direct = p.eval_point(t);
        const cd split = plus.eval_point(t) + minus.eval_point(-t);
        CHECK(std::abs(direct - split) <= 1e-12);
    }
}

TEST_CASE("unitary functional calculus matches spectral evaluation") {
    SeededRng rng(24);
    const CMatrix u = random_unitary(rng, 5);
    const TrigPoly p = random_trigpoly(rng, 5);

    const CMatrix direct = eval_poly(p, u);

    const UnitaryEig eig = unitary_eig(u);
    Eigen::VectorXcd diag(5);
    for (int i = 0; i < 5; ++i) diag(i) = p.eval_point(eig.angles(i));
    const CMatrix spectral = eig.vectors * diag.asDiagonal() * eig.vectors.adjoint();

    CHECK(dist(direct, spectral) <= 1e-9);
}

TEST_CASE("linearity of the functional calculus") {
    SeededRng rng(25);
    const ContractionOp t = defect(random_contraction(rng, 3));
    const TrigPoly p1 = random_trigpoly(rng, 4);
    const TrigPoly p2 = random_trigpoly(rng, 4);
    const CMatrix lhs = eval_on_contraction(p1 + p2, t);
    const CMatrix rhs = eval_on_contraction(p1, t) + eval_on_contraction(p2, t);
    CHECK(dist(lhs, rhs) <= 1e-12);
}

TEST_CASE("json round trip") {
    SeededRng rng(26);
    const TrigPoly p = random_trigpoly(rng, 4);
    const TrigPoly back = TrigPoly::from_json(p.to_json());
    CHECK(back.coeffs().size() == p.coeffs().size());
    for (const auto& [k, c] : p.coeffs()) CHECK(back.coeff(k) == c);

    CHECK_THROWS_AS(TrigPoly::from_json("{"), ValidationError);
    CHECK_THROWS_AS(TrigPoly::from_json("{\"a\":1}"), ValidationError);
    CHECK_THROWS_AS(TrigPoly::from_json("[[0.5, 1, 2]]"), ValidationError);
}

} // TEST_SUITE
