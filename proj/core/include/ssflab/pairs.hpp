// pairs.hpp — interpolation unitaries for operator pairs: the two-block
// coupling for a (contraction, unitary) pair on H + defect(T), the
// three-block coupling for a (contraction, contraction) pair on
// H + defect(T0) + defect(T1), their principal-log generators, the induced
// compressed paths, and hypothesis reporting.

#pragma once

#include "ssflab/linalg.hpp"
#include "ssflab/paths.hpp"

namespace ssflab {

// A pair of operators joined by a multiplicative path: the interpolation
// unitary on the extended space, its Hermitian generator, and the compressed
// path with path(0) = start, path(1) = end.
struct PairFrame {
    ContractionOp start;
    ContractionOp end;
    CMatrix interp;               // unitary on the extended space
    HermitianGenerator generator; // principal log of interp
    MultiplicativePath path;
    Eigen::Index extended_dim = 0;
};

// Raw block assembly, with the defect bases injected (exposed so gauge
// rotations of the bases can be exercised directly).
CMatrix assemble_cu_interp(const ContractionOp& t, const CMatrix& v, const CMatrix& q_basis);
CMatrix assemble_cc_interp(const ContractionOp& t0, const ContractionOp& t1,
                           const CMatrix& q0, const CMatrix& q1);

// Pair (T, V) with V unitary: path s -> P_H e^{isL} V from V to T.
PairFrame build_cu_pair(const ContractionOp& t, const CMatrix& v);

// Pair (T0, T1) of contractions: path from T0 to T1 generated by the
// three-block coupling; the path base is [T0; Q0* D_T0; 0].
PairFrame build_cc_pair(const ContractionOp& t0, const ContractionOp& t1);

// Finite-dimensional hypothesis report for a pair: kernel dimensions,
// Schatten norms of the difference and of the defects.
struct HypothesisReport {
    Eigen::Index dim_ker_t0 = 0, dim_ker_t0_adj = 0;
    Eigen::Index dim_ker_t1 = 0, dim_ker_t1_adj = 0;
    bool kernel_dims_equal = false;
    double diff_norm = 0.0;     // ||T1 - T0||_n
    double defect0_norm = 0.0;  // ||D_T0||_n
    double defect1_norm = 0.0;  // ||D_T1||_n
};

HypothesisReport check_hypotheses(const ContractionOp& t0, const ContractionOp& t1, int n);

} // namespace ssflab
