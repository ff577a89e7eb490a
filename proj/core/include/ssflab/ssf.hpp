// ssf.hpp — order-n spectral shift functions reconstructed from remainder
// traces: Fourier coefficient extraction, trace-formula self-consistency,
// perturbation-size scaling studies, and partial-sum sampling/serialization.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssflab/linalg.hpp"
#include "ssflab/pairs.hpp"
#include "ssflab/paths.hpp"
#include "ssflab/trigpoly.hpp"

namespace ssflab {

// Fourier coefficient table q -> xi_n^(q) for 0 < |q| <= qmax; the q = 0
// coefficient is fixed to zero by the additive-constant gauge and never
// stored.
struct SpectralShiftFn {
    int order = 2;
    int qmax = 0;
    std::map<int, cd> coeffs;

    cd coeff(int q) const {
        const auto it = coeffs.find(q);
        return it == coeffs.end() ? cd(0.0) : it->second;
    }
};

// coeff(-q) = trace(remainder for z^q, order n) / (2 pi (iq)^n) for
// 0 < |q| <= qmax. A pair with end == start (bitwise) maps to the all-zero
// table: the zero-perturbation gauge.
SpectralShiftFn ssf_fourier(const MultiplicativePath& path, const CMatrix& end,
                            int n, int qmax);
SpectralShiftFn ssf_fourier(const PairFrame& frame, int n, int qmax);

// |trace(remainder(phi, n)) - 2 pi sum_q phi^(q) (iq)^n coeff(-q)|
double trace_formula_check(const MultiplicativePath& path, const CMatrix& end,
                           const TrigPoly& phi, int n, const SpectralShiftFn& xi);
double trace_formula_check(const PairFrame& frame, const TrigPoly& phi, int n,
                           const SpectralShiftFn& xi);

// Least-squares slope of log|trace(order-n remainder)| against log(eps) for
// the unitary pairs (e^{i eps A} U0, U0); the leading Taylor term makes the
// slope approach n.
struct ScalingPoint {
    double eps = 0.0;
    double magnitude = 0.0;
};
struct ScalingResult {
    double slope = 0.0;
    std::vector<ScalingPoint> points;
};

ScalingResult scaling_study(const CMatrix& u0, const HermitianGenerator& a,
                            int n, const std::vector<double>& epsilons, int q);

// partial Fourier sum at the grid points (grid in [0, 2pi))
std::vector<cd> ssf_eval(const SpectralShiftFn& xi, const std::vector<double>& grid);

// max_q |coeff(q) - conj(coeff(-q))|: zero iff the partial sum is real-valued
double reality_defect(const SpectralShiftFn& xi);

// grid integral of |partial sum| over [0, 2pi) — an L1 proxy, no convergence claim
double l1_proxy(const SpectralShiftFn& xi, int gridpoints = 512);

// JSON object {order, qmax, coeffs: [[q, re, im]...]}
std::string ssf_to_json(const SpectralShiftFn& xi);
SpectralShiftFn ssf_from_json(const std::string& text);

// CSV sample table "t,re_xi,im_xi" over a uniform grid of [0, 2pi)
std::string ssf_samples_csv(const SpectralShiftFn& xi, int samples);

} // namespace ssflab
