// paths.hpp — multiplicative operator paths s -> P e^{isG} B, their exact
// Gateaux derivatives at s = 0 (combinatorial sum over derivative-order
// compositions and power placements), an independent truncated-Taylor-series
// oracle, and Taylor remainders of circle functions along a path.

#pragma once

#include <cstdint>
#include <vector>

#include "ssflab/linalg.hpp"
#include "ssflab/trigpoly.hpp"

namespace ssflab {

// Path s -> embed* e^{is generator} base on an extended space of dimension D.
// embed is a D x d isometry identifying the compressed space, base a D x d
// block; the path value is the d x d compression.
struct MultiplicativePath {
    HermitianGenerator generator;
    CMatrix base;    // D x d
    CMatrix embed;   // D x d isometry

    Eigen::Index extended_dim() const { return generator.dim(); }
    Eigen::Index dim() const { return base.cols(); }
    CMatrix start() const { return embed.adjoint() * base; }
};

// Validates shapes and embed*embed = I.
MultiplicativePath make_path(HermitianGenerator generator, CMatrix base, CMatrix embed);
// Full-space path: embed = I, path(s) = e^{isG} B.
MultiplicativePath make_full_path(HermitianGenerator generator, CMatrix base);

CMatrix path_value(const MultiplicativePath& p, double s);

// ---------------------------------------------------------------------------
// Gateaux derivatives of s -> (path(s))^q at s = 0

// Exact combinatorial sum: over r = 1..min(k,q), compositions (l_1..l_r) of k
// into positive parts and weak compositions (a_0..a_r) of q - r, with
// multinomial weight k!/(l_1!...l_r!); every derivative factor is the
// compressed block embed* (iG)^l base and the interleaving powers are powers
// of the start operator. For q < 0 the result is the adjoint of the value at
// -q. Enumeration is lexicographic and accumulation pairwise, so results are
// bitwise reproducible.
CMatrix gateaux_monomial_combinatorial(const MultiplicativePath& p, int q, int k);

// Independent oracle: expand e^{isG} as a matrix Taylor series to order k,
// compress, raise to the |q|-th power by truncated series multiplication
// (adjoint coefficients for q < 0), and return k! times the s^k coefficient.
CMatrix taylor_oracle(const MultiplicativePath& p, int q, int k);

// Production entry point: combinatorial sum for k <= 6 and |q| <= 16, Taylor
// series beyond (the term count of the sum explodes combinatorially).
CMatrix gateaux_monomial(const MultiplicativePath& p, int q, int k);

// Number of (r, l, alpha) terms the combinatorial enumerator visits.
std::uint64_t gateaux_term_count(int q, int k);
// The same count from the closed form sum_r C(k-1, r-1) C(q, r).
std::uint64_t gateaux_term_count_formula(int q, int k);

// sum_q phi^(q) * gateaux_monomial(p, q, k) over the support of phi (q != 0)
CMatrix gateaux_poly(const MultiplicativePath& p, const TrigPoly& phi, int k);

// ---------------------------------------------------------------------------
// truncated matrix power series  sum_j C_j s^j + O(s^{m+1})

struct TaylorMatrixSeries {
    int order = 0;
    std::vector<CMatrix> coeffs;  // C_0..C_order

    static TaylorMatrixSeries exp_series(const CMatrix& x, int order);  // e^{sX}
    TaylorMatrixSeries mul(const TaylorMatrixSeries& rhs) const;
    TaylorMatrixSeries pow(int n) const;                                // n >= 0
    TaylorMatrixSeries adjointed() const;   // coefficientwise adjoint
};

// ---------------------------------------------------------------------------
// Taylor remainder of phi along the path:
//   phi(end) - phi(start) - sum_{k=1}^{n-1} (1/k!) d^k/ds^k|_0 phi(path(s))
// Requires path_value(p, 1) = end within 1e-8.
CMatrix remainder(const MultiplicativePath& p, const CMatrix& end,
                  const TrigPoly& phi, int n);

} // namespace ssflab
