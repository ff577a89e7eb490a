// dilation.hpp — truncated vector-valued Hardy spaces and the unitary
// dilation block matrix of a contraction, unitary/contractive extensions of
// the second operator of a pair over the same frame, zero-padded generators,
// and verification that remainder traces transfer between the compressed pair
// and its dilated realization.

#pragma once

#include "ssflab/linalg.hpp"
#include "ssflab/pairs.hpp"
#include "ssflab/paths.hpp"
#include "ssflab/trigpoly.hpp"

namespace ssflab {

// Truncated Hardy frame around a contraction T: N shift modes on each side,
// incoming fiber = defect space of T*, outgoing fiber = defect space of T.
// Coordinates are ordered (incoming modes 0..N-1) + (H) + (outgoing modes
// 0..N-1), each mode carrying its fiber coefficients.
class HardyFrame {
public:
    HardyFrame(const ContractionOp& t, int modes);

    int modes() const { return modes_; }
    Eigen::Index dim() const { return t_.dim(); }
    Eigen::Index rank_minus() const { return basis_minus_.cols(); }
    Eigen::Index rank_plus() const { return t_.basis().cols(); }
    Eigen::Index total_dim() const { return total_; }

    const ContractionOp& op() const { return t_; }
    const CMatrix& basis_minus() const { return basis_minus_; }   // defect(T*) basis
    const CMatrix& basis_plus() const { return t_.basis(); }      // defect(T) basis
    const CMatrix& defect_adj() const { return defect_adj_; }     // D_{T*}
    const CMatrix& polar() const { return polar_; }               // V_T

    // block offsets into the total space
    Eigen::Index minus_offset(int mode) const { return mode * rank_minus(); }
    Eigen::Index h_offset() const { return modes_ * rank_minus(); }
    Eigen::Index plus_offset(int mode) const {
        return h_offset() + dim() + mode * rank_plus();
    }

    // orthogonal projection masks
    CMatrix h_block(const CMatrix& full) const;              // d x d middle block
    CMatrix interior_projector() const;                      // drops top modes

private:
    ContractionOp t_;
    int modes_;
    CMatrix basis_minus_;
    CMatrix defect_adj_;
    CMatrix polar_;
    Eigen::Index total_;
};

// The dilation of T on the frame: compressions of its powers to H reproduce
// the powers of T exactly (the outgoing block never feeds back).
CMatrix dilate(const HardyFrame& frame);

// Extension of a unitary V over the frame of T: shifts outside, V in the
// middle, the polar factor of T wiring incoming mode 0 to outgoing mode 0.
CMatrix extend_unitary(const HardyFrame& frame, const CMatrix& v);

// Same wiring with a second contraction T1 in the middle.
CMatrix extend_contraction(const HardyFrame& frame, const CMatrix& t1);

// Generator on the frame space that is the pair generator on H + defect(T)
// (defect block sitting at outgoing mode 0) and zero elsewhere.
HermitianGenerator zero_pad_generator(const HardyFrame& frame, const HermitianGenerator& g);

// Dilated realization of a (contraction, unitary) pair: the unitary pair
// (U1, U0) on the frame with U1 = e^{iA} U0 for the zero-padded generator.
struct DilatedCuPair {
    CMatrix u1;               // dilation of T
    CMatrix u0;               // extension of V
    MultiplicativePath path;  // full path e^{isA} U0
};

DilatedCuPair make_dilated_cu(const ContractionOp& t, const CMatrix& v,
                              const PairFrame& compressed, int modes);

// Dilated realization of a (contraction, contraction) pair on the frame of
// T0 extended by the defect tail of T1: path P_F e^{isA}[U_T0; 0] from the
// dilation of T0 to the extension of T1, generated by the zero-padded
// three-block coupling.
struct DilatedCcPair {
    CMatrix t_ext;            // extension of T1 over the frame of T0
    CMatrix v_dil;            // dilation of T0
    MultiplicativePath path;
};

DilatedCcPair make_dilated_cc(const ContractionOp& t0, const ContractionOp& t1,
                              const PairFrame& compressed, int modes);

// Compares the compressed remainder trace with the dilated remainder trace
// and measures the corner structure: the part of the dilated remainder
// outside H must contribute no trace.
struct TraceTransferReport {
    cd lhs = 0.0;             // trace of the compressed remainder
    cd rhs = 0.0;             // trace of the dilated remainder
    double gap = 0.0;         // |lhs - rhs|
    double corner_trace = 0.0;
};

TraceTransferReport verify_trace_transfer(const PairFrame& compressed,
                                          const HardyFrame& frame,
                                          const MultiplicativePath& dilated_path,
                                          const CMatrix& dilated_end,
                                          const TrigPoly& phi, int n);

} // namespace ssflab
