#include "ssflab/pairs.hpp"

namespace ssflab {

namespace {

CMatrix stack_embed(Eigen::Index total, Eigen::Index d) {
    CMatrix e = CMatrix::Zero(total, d);
    e.topRows(d) = CMatrix::Identity(d, d);
    return e;
}

} // namespace

CMatrix assemble_cu_interp(const ContractionOp& t, const CMatrix& v, const CMatrix& q_basis) {
    const Eigen::Index d = t.dim();
    const Eigen::Index r = q_basis.cols();
    const CMatrix vt = polar_unitary(t.matrix());
    const CMatrix d_adj = defect(t.matrix().adjoint(), t.rank_tol()).defect_matrix();

    CMatrix interp(d + r, d + r);
    interp.block(0, 0, d, d) = t.matrix() * v.adjoint();
    interp.block(0, d, d, r) = -d_adj * vt * q_basis;
    interp.block(d, 0, r, d) = q_basis.adjoint() * t.defect_matrix() * v.adjoint();
    interp.block(d, d, r, r) = q_basis.adjoint() * t.matrix().adjoint() * vt * q_basis;
    return interp;
}

CMatrix assemble_cc_interp(const ContractionOp& t0, const ContractionOp& t1,
                           const CMatrix& q0, const CMatrix& q1) {
    const Eigen::Index d = t0.dim();
    const Eigen::Index r0 = q0.cols();
    const Eigen::Index r1 = q1.cols();

    const CMatrix v0 = polar_unitary(t0.matrix());
    const CMatrix v1 = polar_unitary(t1.matrix());
    const CMatrix d0 = t0.defect_matrix();
    const CMatrix d1 = t1.defect_matrix();
    const CMatrix d0_adj = defect(t0.matrix().adjoint(), t0.rank_tol()).defect_matrix();
    const CMatrix d1_adj = defect(t1.matrix().adjoint(), t1.rank_tol()).defect_matrix();
    const CMatrix abs_t0 = v0.adjoint() * t0.matrix();  // |T0| from the polar factor

    CMatrix k(d + r0 + r1, d + r0 + r1);
    k.block(0, 0, d, d) = t1.matrix() * t0.matrix().adjoint();
    k.block(0, d, d, r0) = t1.matrix() * d0 * q0;
    k.block(0, d + r0, d, r1) = -d1_adj * v1 * q1;
    k.block(d, 0, r0, d) = -q0.adjoint() * v0.adjoint() * d0_adj;
    k.block(d, d, r0, r0) = q0.adjoint() * abs_t0 * q0;
    k.block(d, d + r0, r0, r1).setZero();
    k.block(d + r0, 0, r1, d) = q1.adjoint() * d1 * t0.matrix().adjoint();
    k.block(d + r0, d, r1, r0) = q1.adjoint() * d1 * d0 * q0;
    k.block(d + r0, d + r0, r1, r1) = q1.adjoint() * t1.matrix().adjoint() * v1 * q1;
    return k;
}

PairFrame build_cu_pair(const ContractionOp& t, const CMatrix& v) {
    const Eigen::Index d = t.dim();
    if (v.rows() != d || v.cols() != d) {
        throw ValidationError("build_cu_pair: dimension mismatch");
    }
    if (unitary_residual(v) > 1e-10) {
        throw ValidationError("build_cu_pair: second operator is not unitary");
    }

    PairFrame frame;
    frame.interp = assemble_cu_interp(t, v, t.basis());
    frame.generator = principal_log_unitary(frame.interp);
    frame.extended_dim = frame.interp.rows();

    CMatrix base = CMatrix::Zero(frame.extended_dim, d);
    base.topRows(d) = v;
    frame.path = make_path(frame.generator, std::move(base), stack_embed(frame.extended_dim, d));
    frame.start = defect(v, t.rank_tol());
    frame.end = t;
    return frame;
}

PairFrame build_cc_pair(const ContractionOp& t0, const ContractionOp& t1) {
    const Eigen::Index d = t0.dim();
    if (t1.dim() != d) throw ValidationError("build_cc_pair: dimension mismatch");

    const Eigen::Index r0 = t0.rank();
    const Eigen::Index r1 = t1.rank();
    const Eigen::Index total = d + r0 + r1;

    PairFrame frame;
    frame.interp = assemble_cc_interp(t0, t1, t0.basis(), t1.basis());
    frame.generator = principal_log_unitary(frame.interp);
    frame.extended_dim = total;

    CMatrix base = CMatrix::Zero(total, d);
    base.topRows(d) = t0.matrix();
    base.block(d, 0, r0, d) = t0.basis().adjoint() * t0.defect_matrix();
    frame.path = make_path(frame.generator, std::move(base), stack_embed(total, d));
    frame.start = t0;
    frame.end = t1;
    return frame;
}

HypothesisReport check_hypotheses(const ContractionOp& t0, const ContractionOp& t1, int n) {
    HypothesisReport rep;
    rep.dim_ker_t0 = kernel_dim(t0.matrix());
    rep.dim_ker_t0_adj = kernel_dim(t0.matrix().adjoint());
    rep.dim_ker_t1 = kernel_dim(t1.matrix());
    rep.dim_ker_t1_adj = kernel_dim(t1.matrix().adjoint());
    rep.kernel_dims_equal =
        rep.dim_ker_t0 == rep.dim_ker_t0_adj && rep.dim_ker_t1 == rep.dim_ker_t1_adj;
    rep.diff_norm = schatten_norm(t1.matrix() - t0.matrix(), n);
    rep.defect0_norm = schatten_norm(t0.defect_matrix(), n);
    rep.defect1_norm = schatten_norm(t1.defect_matrix(), n);
    return rep;
}

} // namespace ssflab
