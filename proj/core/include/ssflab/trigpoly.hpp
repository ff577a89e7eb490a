// trigpoly.hpp — trigonometric polynomials on the circle: Fourier coefficient
// arithmetic, the +/- split, functional calculus on contractions, circle
// derivatives and the weighted coefficient norms.

#pragma once

#include <map>
#include <string>
#include <utility>

#include "ssflab/linalg.hpp"

namespace ssflab {

// Finitely supported Fourier coefficients k -> c_k representing
// phi(e^{it}) = sum_k c_k e^{ikt}. Exactly-zero coefficients are absent.
class TrigPoly {
public:
    TrigPoly() = default;

    static TrigPoly monomial(int k, cd c = 1.0);
    static TrigPoly constant(cd c);

    cd coeff(int k) const;
    void set(int k, cd c);                 // c == 0 erases the entry
    const std::map<int, cd>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    int degree() const;                    // max |k| over the support, 0 if empty

    TrigPoly& operator+=(const TrigPoly& rhs);
    TrigPoly& operator*=(cd s);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator*(cd s, TrigPoly p) { return p *= s; }

    cd eval_point(double t) const;         // phi(e^{it})

    // JSON list of [k, re, im] triples, ascending k.
    std::string to_json() const;
    static TrigPoly from_json(const std::string& text);

private:
    std::map<int, cd> coeffs_;
};

// phi(e^{it}) = phi_plus(e^{it}) + phi_minus(e^{-it}): phi_plus carries the
// k >= 0 coefficients at index k, phi_minus carries index k -> coeff(-k) for
// k >= 1.
std::pair<TrigPoly, TrigPoly> split_pm(const TrigPoly& phi);

// sum_{k>=0} c_k M^k + sum_{k>=1} c_{-k} (M*)^k
CMatrix eval_poly(const TrigPoly& phi, const CMatrix& m);
CMatrix eval_on_contraction(const TrigPoly& phi, const ContractionOp& t);

// coefficient map k -> (ik)^m c_k, i.e. d^m/dt^m of phi(e^{it})
TrigPoly circle_derivative(const TrigPoly& phi, int m);

// sum_k |k|^n |c_k|
double fn_norm(const TrigPoly& phi, int n);

} // namespace ssflab
