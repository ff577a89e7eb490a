// cayley.hpp — the dissipative layer: Cayley transform between dissipative
// matrices and contractions, defect-operator identities, the polynomial
// recursion converting circle derivatives to line derivatives, the real-line
// spectral shift samples, and the nested-antiderivative density.

#pragma once

#include <string>
#include <vector>

#include "ssflab/linalg.hpp"
#include "ssflab/ssf.hpp"
#include "ssflab/trigpoly.hpp"

namespace ssflab {

// Matrix A with Im<Ah,h> <= 0 (all eigenvalues of (A - A*)/2i nonpositive)
// and A - i invertible.
struct DissipativeOp {
    CMatrix matrix;
    CMatrix im_part;  // (A - A*)/(2i), Hermitian
};

DissipativeOp make_dissipative(const CMatrix& a);

// T = -(A + i)(A - i)^{-1}; always a contraction for dissipative A.
ContractionOp cayley(const DissipativeOp& a);

// A = i - 2i(T + 1)^{-1}; requires -1 outside the spectrum of T.
DissipativeOp inverse_cayley(const ContractionOp& t);

// Residuals of the defect identities
//   D_T  = 2 |(-Im A)^{1/2} (A - i)^{-1}|,
//   D_T* = 2 |(-Im A)^{1/2} (A* + i)^{-1}|,   |X| = (X*X)^{1/2}.
struct DefectIdentityReport {
    double residual_t = 0.0;
    double residual_t_adj = 0.0;
};

DefectIdentityReport defect_identities_check(const DissipativeOp& a);

// ---------------------------------------------------------------------------
// real polynomials and the derivative-conversion table

class RealPolynomial {
public:
    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs);  // ascending degree
    static RealPolynomial constant(double c);

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const;  // -1 for the zero polynomial
    double eval(double x) const;

    RealPolynomial derivative() const;
    RealPolynomial antiderivative() const;  // vanishing at 0
    RealPolynomial times_one_plus_x2() const;
    RealPolynomial times_two_x() const;

    RealPolynomial& operator+=(const RealPolynomial& rhs);
    RealPolynomial& operator*=(double s);
    friend RealPolynomial operator+(RealPolynomial a, const RealPolynomial& b) { return a += b; }
    friend RealPolynomial operator*(double s, RealPolynomial p) { return p *= s; }

private:
    void trim();
    std::vector<double> coeffs_;
};

// Table of the conversion polynomials p_{k,q} for 1 <= q <= nmax,
// 0 <= k <= q-1, generated by the half-integer recursion from p_{0,1} = 1;
// deg p_{k,q} = 2(q-1) - k.
class PkqTable {
public:
    explicit PkqTable(int nmax);
    int nmax() const { return nmax_; }
    const RealPolynomial& at(int k, int q) const;
    std::string to_json() const;  // [{q, k, coefficients: [...]}, ...]

private:
    int nmax_;
    std::vector<std::vector<RealPolynomial>> rows_;  // rows_[q-1][k]
};

PkqTable pkq_polynomials(int nmax);

// Values psi^{(j)}(lambda), j = 0..jmax, for psi(lambda) = w(lambda)^m with
// w the circle map (i + lambda)/(i - lambda); exact rational differentiation
// through the polynomial recursion B_{j+1} = (1+x^2) B_j' - 2 j x B_j - 2im B_j.
std::vector<cd> mobius_power_derivatives(int m, int jmax, double lambda);

// Max relative residual, over the sample points, between the q-th circle
// derivative of e^{imt} and its line-side expansion through the p table and
// the substitution lambda = -tan(t/2). Points within 0.1 of the pole at
// t = pi are rejected.
double chain_rule_check(int m, int q, const std::vector<double>& ts);

// eta_n(lambda) = xi_n(-2 arctan lambda), sampled on the given lambda grid.
std::vector<cd> real_line_ssf(const SpectralShiftFn& xi, const std::vector<double>& lambdas);

// ---------------------------------------------------------------------------
// nested-antiderivative density zeta_n on a uniform lambda grid containing 0
//
// zeta_n = sum_{k=0}^{n-1} (-1)^k I_k where I_k for k >= 1 is the k-fold
// cumulative integral from 0 whose innermost integrand is p_{k,n} * eta.
// The k = 0 term follows the printed base case p_{0,n} by default; the
// corrected variant uses p_{0,n} * eta, which is what the integration-by-
// parts cross-check validates.
enum class ZetaBaseCase { printed, corrected };

std::vector<cd> zeta_n(const std::vector<double>& lambda_grid,
                       const std::vector<cd>& eta_samples,
                       const PkqTable& table, int n,
                       ZetaBaseCase base = ZetaBaseCase::printed);

// ---------------------------------------------------------------------------
// functional-calculus checks through the transform

// For Hermitian A: || phi(cayley(A)) - Q diag(phi(w(lambda_j))) Q* ||.
double hermitian_calculus_residual(const CMatrix& a_hermitian, const TrigPoly& phi);

// Entrywise residual between the line-side remainder (endpoint values and
// derivative terms assembled through the +/- split and fresh Cayley
// transforms) and the circle-side remainder of the induced contraction pair,
// for phi = z^q at order n. Throws if any sampled path value has -1 in its
// spectrum.
double dissipative_remainder_check(const DissipativeOp& a0, const DissipativeOp& a1,
                                   int n, int q);

} // namespace ssflab
