#include "ssflab/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace ssflab {

double SeededRng::uniform01() {
    const std::uint64_t bits = engine_() >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

double SeededRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cd SeededRng::cnormal() {
    const double re = normal();
    const double im = normal();
    return cd(re, im) / std::sqrt(2.0);
}

int SeededRng::uniform_int(int lo, int hi) {
    if (hi < lo) throw ValidationError("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

CMatrix random_matrix(SeededRng& rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
    }
    return m;
}

CMatrix random_unitary(SeededRng& rng, Eigen::Index d) {
    const CMatrix g = random_matrix(rng, d, d);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const cd rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : cd(1.0);
    }
    return q;
}

CMatrix random_hermitian(SeededRng& rng, Eigen::Index d, double norm) {
    const CMatrix g = random_matrix(rng, d, d);
    CMatrix h = 0.5 * (g + g.adjoint());
    const double on = op_norm(h);
    if (on > 0.0) h *= norm / on;
    return h;
}

CMatrix random_contraction(SeededRng& rng, Eigen::Index d) {
    const CMatrix g = random_matrix(rng, d, d);
    return g / (op_norm(g) * 1.05);
}

CMatrix random_partial_isometry_mix(SeededRng& rng, Eigen::Index d, Eigen::Index unit_count) {
    if (unit_count > d) throw ValidationError("random_partial_isometry_mix: too many unit values");
    const CMatrix g = random_matrix(rng, d, d);
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RVector s = svd.singularValues();
    const double top = s(0) * 1.05;
    for (Eigen::Index i = 0; i < d; ++i) {
        s(i) = i < unit_count ? 1.0 : s(i) / top;
    }
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

CMatrix random_dissipative(SeededRng& rng, Eigen::Index d) {
    const CMatrix h = random_hermitian(rng, d);
    const CMatrix p = random_matrix(rng, d, d);
    return h - cd(0.0, 1.0) * (p.adjoint() * p) / static_cast<double>(d);
}

TrigPoly random_trigpoly(SeededRng& rng, int degree) {
    TrigPoly p;
    for (int k = -degree; k <= degree; ++k) p.set(k, rng.cnormal());
    return p;
}

} // namespace ssflab
