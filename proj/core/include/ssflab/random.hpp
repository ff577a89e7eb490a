// random.hpp — seeded random instances for tests and experiments. The
// generator is pinned for cross-platform reproducibility: std::mt19937_64
// (whose output sequence the C++ standard fixes) feeding 53-bit uniforms
// u = (bits + 0.5) / 2^53 into an explicit Box-Muller transform.

#pragma once

#include <cstdint>
#include <random>

#include "ssflab/linalg.hpp"
#include "ssflab/trigpoly.hpp"

namespace ssflab {

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01();   // strictly inside (0, 1)
    double normal();      // standard normal, Box-Muller
    cd cnormal();         // complex standard normal, E|z|^2 = 1
    int uniform_int(int lo, int hi);  // inclusive bounds

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// iid complex standard normal entries
CMatrix random_matrix(SeededRng& rng, Eigen::Index rows, Eigen::Index cols);

// QR of a Gaussian matrix with the R-diagonal phases absorbed
CMatrix random_unitary(SeededRng& rng, Eigen::Index d);

// (G + G*)/2 rescaled to the requested operator norm
CMatrix random_hermitian(SeededRng& rng, Eigen::Index d, double norm = 1.0);

// G / (||G|| (1 + 0.05)): a strict contraction
CMatrix random_contraction(SeededRng& rng, Eigen::Index d);

// strict contraction with the given number of singular values set exactly to 1
CMatrix random_partial_isometry_mix(SeededRng& rng, Eigen::Index d, Eigen::Index unit_count);

// H - i P*P / d with Gaussian H Hermitian and Gaussian P
CMatrix random_dissipative(SeededRng& rng, Eigen::Index d);

// coefficients c_k = cnormal() for |k| <= degree
TrigPoly random_trigpoly(SeededRng& rng, int degree);

} // namespace ssflab
