#include "ssflab/ssf.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace ssflab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

SpectralShiftFn ssf_fourier(const MultiplicativePath& path, const CMatrix& end,
                            int n, int qmax) {
    if (n < 2) throw ValidationError("ssf_fourier: order must be >= 2");
    if (qmax < 1) throw ValidationError("ssf_fourier: qmax must be >= 1");

    SpectralShiftFn xi;
    xi.order = n;
    xi.qmax = qmax;

    // zero-perturbation gauge: identical endpoints carry the zero table
    const CMatrix start = path.start();
    if (end.rows() == start.rows() && end.cols() == start.cols() &&
        (end - start).cwiseAbs().maxCoeff() == 0.0) {
        return xi;
    }

    for (int q = -qmax; q <= qmax; ++q) {
        if (q == 0) continue;
        const cd tr = trace(remainder(path, end, TrigPoly::monomial(q), n));
        const cd denom = kTwoPi * std::pow(cd(0.0, q), n);
        xi.coeffs[-q] = tr / denom;
    }
    return xi;
}

SpectralShiftFn ssf_fourier(const PairFrame& frame, int n, int qmax) {
    return ssf_fourier(frame.path, frame.end.matrix(), n, qmax);
}

double trace_formula_check(const MultiplicativePath& path, const CMatrix& end,
                           const TrigPoly& phi, int n, const SpectralShiftFn& xi) {
    if (phi.degree() > xi.qmax) {
        throw ValidationError("trace_formula_check: polynomial degree exceeds qmax");
    }
    const cd lhs = trace(remainder(path, end, phi, n));
    cd rhs = 0.0;
    for (const auto& [q, c] : phi.coeffs()) {
        if (q == 0) continue;
        rhs += c * std::pow(cd(0.0, q), n) * xi.coeff(-q);
    }
    rhs *= kTwoPi;
    return std::abs(lhs - rhs);
}

double trace_formula_check(const PairFrame& frame, const TrigPoly& phi, int n,
                           const SpectralShiftFn& xi) {
    return trace_formula_check(frame.path, frame.end.matrix(), phi, n, xi);
}

ScalingResult scaling_study(const CMatrix& u0, const HermitianGenerator& a,
                            int n, const std::vector<double>& epsilons, int q) {
    if (epsilons.size() < 3) {
        throw ValidationError("scaling_study: need at least three epsilon values");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw ValidationError("scaling_study: epsilons must be positive");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw ValidationError("scaling_study: epsilons must be strictly decreasing");
        }
    }
    if (q == 0) throw ValidationError("scaling_study: q must be nonzero");

    ScalingResult res;
    const TrigPoly phi = TrigPoly::monomial(q);
    for (const double eps : epsilons) {
        const HermitianGenerator g = scale_generator(a, eps);
        const MultiplicativePath path = make_full_path(g, u0);
        const CMatrix end = unitary_exp(g, 1.0) * u0;
        const double mag = std::abs(trace(remainder(path, end, phi, n)));
        if (mag < 1e-14) {
            throw NumericError("scaling_study: remainder magnitude below 1e-14, fit ill-conditioned");
        }
        res.points.push_back({eps, mag});
    }

    // least-squares slope of log|trace| vs log(eps)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(res.points.size());
    for (const auto& pt : res.points) {
        const double x = std::log(pt.eps);
        const double y = std::log(pt.magnitude);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    res.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return res;
}

std::vector<cd> ssf_eval(const SpectralShiftFn& xi, const std::vector<double>& grid) {
    std::vector<cd> out;
    out.reserve(grid.size());
    for (const double t : grid) {
        if (t < 0.0 || t >= kTwoPi) {
            throw ValidationError("ssf_eval: grid points must lie in [0, 2pi)");
        }
        cd acc = 0.0;
        for (const auto& [q, c] : xi.coeffs) acc += c * std::polar(1.0, q * t);
        out.push_back(acc);
    }
    return out;
}

double reality_defect(const SpectralShiftFn& xi) {
    double worst = 0.0;
    for (const auto& [q, c] : xi.coeffs) {
        worst = std::max(worst, std::abs(c - std::conj(xi.coeff(-q))));
    }
    return worst;
}

double l1_proxy(const SpectralShiftFn& xi, int gridpoints) {
    if (gridpoints < 1) throw ValidationError("l1_proxy: need a positive grid");
    double acc = 0.0;
    const double h = kTwoPi / gridpoints;
    for (int i = 0; i < gridpoints; ++i) {
        cd v = 0.0;
        const double t = i * h;
        for (const auto& [q, c] : xi.coeffs) v += c * std::polar(1.0, q * t);
        acc += std::abs(v) * h;
    }
    return acc;
}

std::string ssf_to_json(const SpectralShiftFn& xi) {
    nlohmann::json j;
    j["order"] = xi.order;
    j["qmax"] = xi.qmax;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [q, c] : xi.coeffs) {
        arr.push_back({q, c.real(), c.imag()});
    }
    j["coeffs"] = arr;
    return j.dump(2);
}

SpectralShiftFn ssf_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("ssf_from_json: ") + e.what());
    }
    SpectralShiftFn xi;
    try {
        xi.order = j.at("order").get<int>();
        xi.qmax = j.at("qmax").get<int>();
        for (const auto& item : j.at("coeffs")) {
            const int q = item.at(0).get<int>();
            if (q == 0) throw ValidationError("ssf_from_json: q = 0 coefficient not allowed");
            xi.coeffs[q] = cd(item.at(1).get<double>(), item.at(2).get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("ssf_from_json: ") + e.what());
    }
    return xi;
}

std::string ssf_samples_csv(const SpectralShiftFn& xi, int samples) {
    if (samples < 1) throw ValidationError("ssf_samples_csv: need a positive sample count");
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) grid[i] = kTwoPi * i / samples;
    const std::vector<cd> vals = ssf_eval(xi, grid);
    std::string out = "t,re_xi,im_xi\n";
    for (int i = 0; i < samples; ++i) {
        out += fmt17(grid[i]);
        out += ',';
        out += fmt17(vals[i].real());
        out += ',';
        out += fmt17(vals[i].imag());
        out += '\n';
    }
    return out;
}

} // namespace ssflab
