#include <doctest.h>

#include <cmath>

#include <ssflab/linalg.hpp>
#include <ssflab/paths.hpp>
#include <ssflab/random.hpp>
#include <ssflab/trigpoly.hpp>

#include "test_util.hpp"

using namespace ssflab;
using testutil::dist;

namespace {

MultiplicativePath random_full_path(SeededRng& rng, Eigen::Index d) {
    return make_full_path(make_generator(random_hermitian(rng, d, 1.0)),
                          random_unitary(rng, d));
}

// compressed path: random generator on a larger space, isometric embedding,
// base with columns of norm <= 1
MultiplicativePath random_compressed_path(SeededRng& rng, Eigen::Index d, Eigen::Index ext) {
    const CMatrix big = random_unitary(rng, ext);
    const CMatrix embed = big.leftCols(d);
    CMatrix base = random_matrix(rng, ext, d);
    base /= op_norm(base) * 1.05;
    return make_path(make_generator(random_hermitian(rng, ext, 1.0)), base, embed);
}

double rel_gap(const CMatrix& a, const CMatrix& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

} // namespace

TEST_SUITE("paths") {

TEST_CASE("path_value: endpoints and constant paths") {
    SeededRng rng(31);
    const MultiplicativePath p = random_compressed_path(rng, 3, 6);
    CHECK(dist(path_value(p, 0.0), p.start()) <= 1e-14);

    const MultiplicativePath flat =
        make_full_path(zero_generator(3), random_contraction(rng, 3));
    CHECK(dist(path_value(flat, 0.3), flat.start()) <= 1e-15);
    CHECK(dist(path_value(flat, 1.0), flat.start()) <= 1e-15);

    const MultiplicativePath full = random_full_path(rng, 3);
    const CMatrix expected = unitary_exp(full.generator, 1.0) * full.base;
    CHECK(dist(path_value(full, 1.0), expected) <= 1e-13);
}

TEST_CASE("make_path validates the embedding") {
    SeededRng rng(32);
    const CMatrix bad_embed = random_matrix(rng, 5, 3);
    CHECK_THROWS_AS(make_path(zero_generator(5), random_matrix(rng, 5, 3), bad_embed),
                    ValidationError);
    CHECK_THROWS_AS(make_path(zero_generator(4), random_matrix(rng, 5, 3),
                              random_matrix(rng, 5, 3)),
                    ValidationError);
}

TEST_CASE("first derivative of a power matches the product-rule sum") {
    SeededRng rng(33);
    const MultiplicativePath p = random_full_path(rng, 4);
    const CMatrix u0 = p.base;
    const CMatrix ia_u0 = cd(0.0, 1.0) * p.generator.matrix * u0;
    for (int q = 1; q <= 5; ++q) {
        CMatrix expected = CMatrix::Zero(4, 4);
        for (int j = 0; j <= q - 1; ++j) {
            CMatrix left = identity(4);
            for (int a = 0; a < q - 1 - j; ++a) left = left * u0;
            CMatrix right = identity(4);
            for (int a = 0; a < j; ++a) right = right * u0;
            expected += left * ia_u0 * right;
        }
        CHECK(dist(gateaux_monomial_combinatorial(p, q, 1), expected) <= 1e-12);
    }
}

TEST_CASE("zero generator kills every derivative") {
    SeededRng rng(34);
    const MultiplicativePath flat =
        make_full_path(zero_generator(3), random_contraction(rng, 3));
    for (int k = 1; k <= 3; ++k) {
        CHECK(gateaux_monomial_combinatorial(flat, 4, k).norm() <= 1e-15);
        CHECK(taylor_oracle(flat, 4, k).norm() <= 1e-15);
    }
}

TEST_CASE("taylor_oracle: first-order term of the full path") {
    SeededRng rng(35);
    const MultiplicativePath p = random_full_path(rng, 3);
    const CMatrix expected = cd(0.0, 1.0) * p.generator.matrix * p.base;
    CHECK(dist(taylor_oracle(p, 1, 1), expected) <= 1e-13);
}

TEST_CASE("combinatorial sum agrees with the series oracle") {
    SeededRng rng(36);
    // spotlight case from the module contract
    const MultiplicativePath spot = random_compressed_path(rng, 3, 7);
    CHECK(rel_gap(gateaux_monomial_combinatorial(spot, 4, 3), taylor_oracle(spot, 4, 3)) <= 1e-9);

    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index d = 2 + trial % 4;
        const MultiplicativePath p = trial % 2 == 0
                                         ? random_full_path(rng, d)
                                         : random_compressed_path(rng, d, d + 1 + trial % 3);
        const int q = 1 + trial % 8;
        const int k = 1 + trial % 4;
        const CMatrix a = gateaux_monomial_combinatorial(p, q, k);
        const CMatrix b = taylor_oracle(p, q, k);
        CHECK(rel_gap(a, b) <= 1e-9);
        // negative powers route through the adjoint on both sides
        const CMatrix an = gateaux_monomial_combinatorial(p, -q, k);
        const CMatrix bn = taylor_oracle(p, -q, k);
        CHECK(rel_gap(an, bn) <= 1e-9);
    }
}

TEST_CASE("production dispatch matches both engines") {
    SeededRng rng(37);
    const MultiplicativePath p = random_compressed_path(rng, 3, 5);
    CHECK(dist(gateaux_monomial(p, 5, 2), gateaux_monomial_combinatorial(p, 5, 2)) == 0.0);
    // beyond the combinatorial window the series engine takes over
    CHECK(dist(gateaux_monomial(p, 17, 2), taylor_oracle(p, 17, 2)) == 0.0);
    CHECK(dist(gateaux_monomial(p, 3, 7), taylor_oracle(p, 3, 7)) == 0.0);
}

TEST_CASE("finite differences confirm the first derivative") {
    SeededRng rng(38);
    const MultiplicativePath p = random_compressed_path(rng, 3, 6);
    const int q = 3;
    const auto phi_of_path = [&](double s) {
        const CMatrix v = path_value(p, s);
        CMatrix acc = identity(3);
        for (int i = 0; i < q; ++i) acc = acc * v;
        return acc;
    };
    const double h = 1e-3;
    const auto central = [&](double step) {
        return ((phi_of_path(step) - phi_of_path(-step)) / (2.0 * step)).eval();
    };
    // one Richardson refinement of the central difference
    const CMatrix refined = (4.0 * central(h / 2) - central(h)) / 3.0;
    CHECK(dist(refined, gateaux_monomial_combinatorial(p, q, 1)) <= 1e-5);
}

TEST_CASE("composition-term count matches the closed form") {
    for (int q = 1; q <= 10; ++q) {
        for (int k = 1; k <= 6; ++k) {
            CHECK(gateaux_term_count(q, k) == gateaux_term_count_formula(q, k));
        }
    }
    // a couple of hand counts: q=2,k=2 -> r=1: C(1,0)C(2,1)=2; r=2: C(1,1)C(2,2)=1
    CHECK(gateaux_term_count(2, 2) == 3);
    CHECK(gateaux_term_count(1, 1) == 1);
}

TEST_CASE("adjoint symmetry is exact") {
    SeededRng rng(39);
    const MultiplicativePath p = random_compressed_path(rng, 3, 6);
    for (int q = 1; q <= 4; ++q) {
        for (int k = 1; k <= 3; ++k) {
            const CMatrix a = gateaux_monomial_combinatorial(p, -q, k);
            const CMatrix b = gateaux_monomial_combinatorial(p, q, k).adjoint();
            CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("gateaux validation errors") {
    SeededRng rng(40);
    const MultiplicativePath p = random_full_path(rng, 2);
    CHECK_THROWS_AS(gateaux_monomial_combinatorial(p, 3, 0), ValidationError);
    CHECK_THROWS_AS(gateaux_monomial_combinatorial(p, 0, 1), ValidationError);
    CHECK_THROWS_AS(taylor_oracle(p, 0, 1), ValidationError);
}

TEST_CASE("remainder: flat path of a fixed operator vanishes") {
    SeededRng rng(41);
    const CMatrix t = random_contraction(rng, 3);
    const MultiplicativePath flat = make_full_path(zero_generator(3), t);
    const TrigPoly p = random_trigpoly(rng, 4);
    CHECK(remainder(flat, t, p, 3).norm() <= 1e-14);
}

TEST_CASE("remainder: first-order form for the monomial z") {
    SeededRng rng(42);
    const MultiplicativePath p = random_full_path(rng, 3);
    const CMatrix end = unitary_exp(p.generator, 1.0) * p.base;
    const CMatrix r = remainder(p, end, TrigPoly::monomial(1), 2);
    const CMatrix expected = end - p.start() - gateaux_monomial_combinatorial(p, 1, 1);
    CHECK(dist(r, expected) <= 1e-13);
}

TEST_CASE("remainder: linear in the function") {
    SeededRng rng(43);
    const MultiplicativePath p = random_full_path(rng, 3);
    const CMatrix end = unitary_exp(p.generator, 1.0) * p.base;
    const TrigPoly p1 = random_trigpoly(rng, 3);
    const TrigPoly p2 = random_trigpoly(rng, 3);
    const CMatrix joint = remainder(p, end, p1 + p2, 3);
    const CMatrix split = remainder(p, end, p1, 3) + remainder(p, end, p2, 3);
    CHECK(dist(joint, split) <= 1e-12);
}

TEST_CASE("remainder: endpoint mismatch raises") {
    SeededRng rng(44);
    const MultiplicativePath p = random_full_path(rng, 3);
    const CMatrix wrong = random_unitary(rng, 3);
    CHECK_THROWS_AS(remainder(p, wrong, TrigPoly::monomial(1), 2), NumericError);
    const CMatrix end = unitary_exp(p.generator, 1.0) * p.base;
    CHECK_THROWS_AS(remainder(p, end, TrigPoly::monomial(1), 1), ValidationError);
}

} // TEST_SUITE
