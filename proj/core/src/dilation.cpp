#include "ssflab/dilation.hpp"

namespace ssflab {

HardyFrame::HardyFrame(const ContractionOp& t, int modes) : t_(t), modes_(modes) {
    if (modes < 1) throw ValidationError("HardyFrame: need at least one mode");
    const ContractionOp adj = defect(t.matrix().adjoint(), t.rank_tol());
    basis_minus_ = adj.basis();
    defect_adj_ = adj.defect_matrix();
    polar_ = polar_unitary(t.matrix());
    total_ = modes_ * (rank_minus() + rank_plus()) + dim();
}

CMatrix HardyFrame::h_block(const CMatrix& full) const {
    return full.block(h_offset(), h_offset(), dim(), dim());
}

CMatrix HardyFrame::interior_projector() const {
    CMatrix p = CMatrix::Identity(total_, total_);
    const int top = modes_ - 1;
    for (Eigen::Index j = 0; j < rank_minus(); ++j) {
        const Eigen::Index idx = minus_offset(top) + j;
        p(idx, idx) = 0.0;
    }
    for (Eigen::Index j = 0; j < rank_plus(); ++j) {
        const Eigen::Index idx = plus_offset(top) + j;
        p(idx, idx) = 0.0;
    }
    return p;
}

namespace {

// Shared skeleton of the three frame operators: truncated backward shift on
// the incoming block, truncated forward shift on the outgoing block, a middle
// operator, and a mode-0 -> mode-0 corner wiring the two fibers.
CMatrix frame_operator(const HardyFrame& f, const CMatrix& middle,
                       const CMatrix& corner, const CMatrix& h_from_minus,
                       const CMatrix& plus_from_h) {
    const Eigen::Index total = f.total_dim();
    const Eigen::Index d = f.dim();
    const Eigen::Index rm = f.rank_minus();
    const Eigen::Index rp = f.rank_plus();
    const int n = f.modes();

    CMatrix u = CMatrix::Zero(total, total);
    for (int m = 1; m < n; ++m) {
        u.block(f.minus_offset(m - 1), f.minus_offset(m), rm, rm) =
            CMatrix::Identity(rm, rm);
    }
    for (int m = 0; m + 1 < n; ++m) {
        u.block(f.plus_offset(m + 1), f.plus_offset(m), rp, rp) =
            CMatrix::Identity(rp, rp);
    }
    u.block(f.h_offset(), f.h_offset(), d, d) = middle;
    if (rm > 0) {
        u.block(f.plus_offset(0), f.minus_offset(0), rp, rm) = corner;
        if (h_from_minus.size() > 0) {
            u.block(f.h_offset(), f.minus_offset(0), d, rm) = h_from_minus;
        }
    }
    if (plus_from_h.size() > 0 && rp > 0) {
        u.block(f.plus_offset(0), f.h_offset(), rp, d) = plus_from_h;
    }
    return u;
}

} // namespace

CMatrix dilate(const HardyFrame& f) {
    const CMatrix& qm = f.basis_minus();
    const CMatrix& qp = f.basis_plus();
    const CMatrix corner = -qp.adjoint() * f.op().matrix().adjoint() * qm;
    const CMatrix h_from_minus = f.defect_adj() * qm;
    const CMatrix plus_from_h = qp.adjoint() * f.op().defect_matrix();
    return frame_operator(f, f.op().matrix(), corner, h_from_minus, plus_from_h);
}

CMatrix extend_unitary(const HardyFrame& f, const CMatrix& v) {
    if (v.rows() != f.dim() || v.cols() != f.dim()) {
        throw ValidationError("extend_unitary: dimension mismatch");
    }
    if (unitary_residual(v) > 1e-10) {
        throw ValidationError("extend_unitary: operator is not unitary");
    }
    const CMatrix corner =
        -f.basis_plus().adjoint() * f.polar().adjoint() * f.basis_minus();
    return frame_operator(f, v, corner, CMatrix(), CMatrix());
}

CMatrix extend_contraction(const HardyFrame& f, const CMatrix& t1) {
    if (t1.rows() != f.dim() || t1.cols() != f.dim()) {
        throw ValidationError("extend_contraction: dimension mismatch");
    }
    const CMatrix corner =
        -f.basis_plus().adjoint() * f.polar().adjoint() * f.basis_minus();
    return frame_operator(f, t1, corner, CMatrix(), CMatrix());
}

HermitianGenerator zero_pad_generator(const HardyFrame& f, const HermitianGenerator& g) {
    const Eigen::Index d = f.dim();
    const Eigen::Index rp = f.rank_plus();
    if (g.dim() != d + rp) {
        throw ValidationError("zero_pad_generator: generator must act on H + defect(T)");
    }
    // scatter indices: H block, then outgoing mode 0
    std::vector<Eigen::Index> idx(d + rp);
    for (Eigen::Index i = 0; i < d; ++i) idx[i] = f.h_offset() + i;
    for (Eigen::Index j = 0; j < rp; ++j) idx[d + j] = f.plus_offset(0) + j;

    CMatrix a = CMatrix::Zero(f.total_dim(), f.total_dim());
    for (Eigen::Index i = 0; i < d + rp; ++i) {
        for (Eigen::Index j = 0; j < d + rp; ++j) {
            a(idx[i], idx[j]) = g.matrix(i, j);
        }
    }
    return make_generator(a);
}

DilatedCuPair make_dilated_cu(const ContractionOp& t, const CMatrix& v,
                              const PairFrame& compressed, int modes) {
    HardyFrame frame(t, modes);
    DilatedCuPair out;
    out.u1 = dilate(frame);
    out.u0 = extend_unitary(frame, v);
    out.path = make_full_path(zero_pad_generator(frame, compressed.generator), out.u0);
    return out;
}

DilatedCcPair make_dilated_cc(const ContractionOp& t0, const ContractionOp& t1,
                              const PairFrame& compressed, int modes) {
    HardyFrame frame(t0, modes);
    const Eigen::Index d = frame.dim();
    const Eigen::Index r0 = frame.rank_plus();
    const Eigen::Index r1 = t1.rank();
    const Eigen::Index big = frame.total_dim();
    const Eigen::Index ext = big + r1;  // frame + defect tail of T1
    if (compressed.generator.dim() != d + r0 + r1) {
        throw ValidationError("make_dilated_cc: pair generator has unexpected dimension");
    }

    DilatedCcPair out;
    out.t_ext = extend_contraction(frame, t1.matrix());
    out.v_dil = dilate(frame);

    // scatter the three-block generator onto (H, outgoing mode 0, tail)
    std::vector<Eigen::Index> idx(d + r0 + r1);
    for (Eigen::Index i = 0; i < d; ++i) idx[i] = frame.h_offset() + i;
    for (Eigen::Index j = 0; j < r0; ++j) idx[d + j] = frame.plus_offset(0) + j;
    for (Eigen::Index j = 0; j < r1; ++j) idx[d + r0 + j] = big + j;
    CMatrix a = CMatrix::Zero(ext, ext);
    for (Eigen::Index i = 0; i < d + r0 + r1; ++i) {
        for (Eigen::Index j = 0; j < d + r0 + r1; ++j) {
            a(idx[i], idx[j]) = compressed.generator.matrix(i, j);
        }
    }

    CMatrix base = CMatrix::Zero(ext, big);
    base.topRows(big) = out.v_dil;
    CMatrix embed = CMatrix::Zero(ext, big);
    embed.topRows(big) = CMatrix::Identity(big, big);
    out.path = make_path(make_generator(a), std::move(base), std::move(embed));
    return out;
}

TraceTransferReport verify_trace_transfer(const PairFrame& compressed,
                                          const HardyFrame& frame,
                                          const MultiplicativePath& dilated_path,
                                          const CMatrix& dilated_end,
                                          const TrigPoly& phi, int n) {
    if (frame.modes() < phi.degree() + n + 2) {
        throw ValidationError("verify_trace_transfer: truncation level below degree + order + 2");
    }
    TraceTransferReport rep;
    const CMatrix r_comp =
        remainder(compressed.path, compressed.end.matrix(), phi, n);
    const CMatrix r_full = remainder(dilated_path, dilated_end, phi, n);
    rep.lhs = trace(r_comp);
    rep.rhs = trace(r_full);
    rep.gap = std::abs(rep.lhs - rep.rhs);
    rep.corner_trace = std::abs(rep.rhs - trace(frame.h_block(r_full)));
    return rep;
}

} // namespace ssflab
