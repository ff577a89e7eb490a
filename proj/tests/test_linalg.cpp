#include <doctest.h>

#include <cmath>
#include <numbers>

#include <ssflab/linalg.hpp>
#include <ssflab/random.hpp>

#include "test_util.hpp"

using namespace ssflab;
using testutil::dist;
using testutil::scalar;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE("linalg") {

TEST_CASE("herm_eig: identity and diagonal") {
    const auto eid = herm_eig(identity(3));
    CHECK(eid.eigenvalues.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(eid.eigenvalues(i) == doctest::Approx(1.0));
    CHECK(unitary_residual(eid.eigenvectors) < 1e-12);

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    const auto e = herm_eig(d);
    CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(2.0));
}

TEST_CASE("herm_eig: random reconstruction residual") {
    SeededRng rng(7);
    const CMatrix h = random_hermitian(rng, 5, 2.5);
    const auto e = herm_eig(h);
    const CMatrix back =
        e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
    CHECK(dist(back, h) <= 1e-10 * std::max(1.0, h.norm()));
    CHECK(unitary_residual(e.eigenvectors) <= 1e-10);
}

TEST_CASE("herm_eig: rejects bad input") {
    CHECK_THROWS_AS(herm_eig(CMatrix::Zero(2, 3)), ValidationError);
    SeededRng rng(8);
    const CMatrix g = random_matrix(rng, 3, 3);
    CHECK_THROWS_AS(herm_eig(g), ValidationError);
}

TEST_CASE("defect: unitary input has empty defect") {
    SeededRng rng(11);
    const CMatrix v = random_unitary(rng, 4);
    const ContractionOp c = defect(v);
    CHECK(c.rank() == 0);
    CHECK(c.defect_matrix().norm() <= 1e-7);
    CHECK(c.defect_matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("defect: zero operator") {
    const ContractionOp c = defect(CMatrix::Zero(3, 3));
    CHECK(c.rank() == 3);
    CHECK(dist(c.defect_matrix(), identity(3)) <= 1e-14);
    CHECK(unitary_residual(c.basis()) <= 1e-12);
}

TEST_CASE("defect: scalar one half") {
    const ContractionOp c = defect(scalar(0.5));
    // scalar oracle: (1 - 1/4)^(1/2)
    const double expected = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(c.defect_matrix()(0, 0).real() - expected) <= 1e-15);
    CHECK(c.rank() == 1);
}

TEST_CASE("defect: rejects non-contractions") {
    CHECK_THROWS_AS(defect(scalar(1.001)), ValidationError);
}

TEST_CASE("defect: square and basis invariants") {
    SeededRng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix t = random_contraction(rng, 4);
        const ContractionOp c = defect(t);
        const CMatrix gram = identity(4) - t.adjoint() * t;
        CHECK(dist(c.defect_matrix() * c.defect_matrix(), gram) <= 1e-10);
        CHECK((c.basis().adjoint() * c.basis() - identity(c.rank())).norm() <= 1e-10);
        // defect commutes with T*T
        const CMatrix tt = t.adjoint() * t;
        CHECK(dist(c.defect_matrix() * tt, tt * c.defect_matrix()) <= 1e-10);
    }
}

TEST_CASE("polar_unitary: fixed points and diagonal") {
    SeededRng rng(13);
    const CMatrix v = random_unitary(rng, 3);
    CHECK(dist(polar_unitary(v), v) <= 1e-12);

    CHECK(std::abs(polar_unitary(CMatrix::Zero(1, 1))(0, 0) - cd(1.0)) <= 1e-15);

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.5;
    d(1, 1) = -0.5;
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    CHECK(dist(polar_unitary(d), expected) <= 1e-14);
}

TEST_CASE("polar_unitary: factorization property over random contractions") {
    SeededRng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index d = 2 + trial % 4;
        const CMatrix t = trial % 5 == 0 ? random_partial_isometry_mix(rng, d, 1)
                                         : random_contraction(rng, d);
        const CMatrix vt = polar_unitary(t);
        CHECK(unitary_residual(vt) <= 1e-10);
        const CMatrix abst = psd_sqrt(t.adjoint() * t);
        CHECK(dist(t, vt * abst) <= 1e-10);
    }
}

TEST_CASE("principal_log_unitary: identity, branch point, phase") {
    const HermitianGenerator g0 = principal_log_unitary(identity(2));
    CHECK(g0.matrix.norm() <= 1e-12);

    const HermitianGenerator gneg = principal_log_unitary(scalar(-1.0));
    CHECK(gneg.spectrum(0) == doctest::Approx(pi));
    CHECK(gneg.branch_warning);

    const HermitianGenerator gph = principal_log_unitary(scalar(std::polar(1.0, pi / 3)));
    CHECK(gph.spectrum(0) == doctest::Approx(pi / 3));
    CHECK_FALSE(gph.branch_warning);
}

TEST_CASE("principal_log_unitary: rejects non-unitary input") {
    CHECK_THROWS_AS(principal_log_unitary(scalar(0.5)), ValidationError);
}

TEST_CASE("principal_log_unitary: exp reconstruction over random unitaries") {
    SeededRng rng(15);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index d = 1 + trial % 8;
        const CMatrix u = random_unitary(rng, d);
        const HermitianGenerator g = principal_log_unitary(u);
        CHECK(herm_residual(g.matrix) <= 1e-10);
        CHECK(dist(unitary_exp(g, 1.0), u) <= 1e-9);
        CHECK(g.spectrum(0) > -pi);
        CHECK(g.spectrum(g.spectrum.size() - 1) <= pi + 1e-12);
    }
    // eigenvalue -1 inside a larger matrix keeps the +pi convention
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = -1.0;
    u(1, 1) = cd(0.0, 1.0);
    const HermitianGenerator g = principal_log_unitary(u);
    CHECK(g.spectrum(g.spectrum.size() - 1) == doctest::Approx(pi));
    CHECK(dist(unitary_exp(g, 1.0), u) <= 1e-12);
}

TEST_CASE("unitary_exp: trivial cases and scalar phase") {
    const HermitianGenerator z = zero_generator(3);
    CHECK(dist(unitary_exp(z, 0.7), identity(3)) <= 1e-15);

    SeededRng rng(16);
    const HermitianGenerator g = make_generator(random_hermitian(rng, 3, 1.0));
    CHECK(dist(unitary_exp(g, 0.0), identity(3)) <= 1e-15);
    CHECK(unitary_residual(unitary_exp(g, 1.0)) <= 1e-10);

    const HermitianGenerator h = make_generator(scalar(pi / 2));
    CHECK(std::abs(unitary_exp(h, 1.0)(0, 0) - cd(0.0, 1.0)) <= 1e-15);
}

TEST_CASE("make_generator: rejects spectrum outside the window") {
    CHECK_THROWS_AS(make_generator(scalar(3.5)), ValidationError);
    CHECK_THROWS_AS(make_generator(scalar(-pi - 1e-6)), ValidationError);
    CHECK_NOTHROW(make_generator(scalar(pi)));
}

TEST_CASE("schatten_norm and trace") {
    CHECK(schatten_norm(identity(4), 1) == doctest::Approx(4.0));

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 4.0;
    CHECK(schatten_norm(d, 2) == doctest::Approx(5.0));

    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 0) = cd(1.0, 1.0);
    t(1, 1) = 2.0;
    CHECK(trace(t) == cd(3.0, 1.0));

    CHECK_THROWS_AS(schatten_norm(identity(2), 0), ValidationError);
    CHECK_THROWS_AS(trace(CMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("schatten 1-norm dominates the trace") {
    SeededRng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix x = random_matrix(rng, 4, 4);
        CHECK(schatten_norm(x, 1) + 1e-12 >= std::abs(trace(x)));
    }
}

} // TEST_SUITE
