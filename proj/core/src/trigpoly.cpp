#include "ssflab/trigpoly.hpp"

#include <cmath>
#include <cstdlib>

#include <json.hpp>

namespace ssflab {

TrigPoly TrigPoly::monomial(int k, cd c) {
    TrigPoly p;
    p.set(k, c);
    return p;
}

TrigPoly TrigPoly::constant(cd c) {
    return monomial(0, c);
}

cd TrigPoly::coeff(int k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? cd(0.0) : it->second;
}

void TrigPoly::set(int k, cd c) {
    if (c == cd(0.0)) {
        coeffs_.erase(k);
    } else {
        coeffs_[k] = c;
    }
}

int TrigPoly::degree() const {
    int deg = 0;
    for (const auto& [k, c] : coeffs_) deg = std::max(deg, std::abs(k));
    return deg;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
    for (const auto& [k, c] : rhs.coeffs_) set(k, coeff(k) + c);
    return *this;
}

TrigPoly& TrigPoly::operator*=(cd s) {
    if (s == cd(0.0)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [k, c] : coeffs_) c *= s;
    return *this;
}

cd TrigPoly::eval_point(double t) const {
    cd acc = 0.0;
    for (const auto& [k, c] : coeffs_) acc += c * std::polar(1.0, k * t);
    return acc;
}

std::string TrigPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : coeffs_) {
        arr.push_back({k, c.real(), c.imag()});
    }
    return arr.dump();
}

TrigPoly TrigPoly::from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("TrigPoly::from_json: ") + e.what());
    }
    if (!arr.is_array()) throw ValidationError("TrigPoly::from_json: expected an array");
    TrigPoly p;
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer()) {
            throw ValidationError("TrigPoly::from_json: entries must be [k, re, im]");
        }
        p.set(item[0].get<int>(), cd(item[1].get<double>(), item[2].get<double>()));
    }
    return p;
}

std::pair<TrigPoly, TrigPoly> split_pm(const TrigPoly& phi) {
    TrigPoly plus, minus;
    for (const auto& [k, c] : phi.coeffs()) {
        if (k >= 0) {
            plus.set(k, c);
        } else {
            minus.set(-k, c);
        }
    }
    return {plus, minus};
}

CMatrix eval_poly(const TrigPoly& phi, const CMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("eval_poly: matrix must be square");
    const Eigen::Index d = m.rows();
    CMatrix acc = CMatrix::Zero(d, d);
    const auto [plus, minus] = split_pm(phi);

    CMatrix power = CMatrix::Identity(d, d);
    int k = 0;
    for (const auto& [idx, c] : plus.coeffs()) {
        while (k < idx) {
            power = power * m;
            ++k;
        }
        acc += c * power;
    }

    const CMatrix madj = m.adjoint();
    power = CMatrix::Identity(d, d);
    k = 0;
    for (const auto& [idx, c] : minus.coeffs()) {
        while (k < idx) {
            power = power * madj;
            ++k;
        }
        acc += c * power;
    }
    return acc;
}

CMatrix eval_on_contraction(const TrigPoly& phi, const ContractionOp& t) {
    return eval_poly(phi, t.matrix());
}

TrigPoly circle_derivative(const TrigPoly& phi, int m) {
    if (m < 0) throw ValidationError("circle_derivative: order must be nonnegative");
    if (m == 0) return phi;
    TrigPoly out;
    for (const auto& [k, c] : phi.coeffs()) {
        out.set(k, std::pow(cd(0.0, k), m) * c);
    }
    return out;
}

double fn_norm(const TrigPoly& phi, int n) {
    if (n < 0) throw ValidationError("fn_norm: order must be nonnegative");
    double acc = 0.0;
    for (const auto& [k, c] : phi.coeffs()) {
        acc += std::pow(std::abs(k), n) * std::abs(c);
    }
    return acc;
}

} // namespace ssflab
