#include "ssflab/linalg.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ssflab {

namespace {

void require_square(const CMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw ValidationError(std::string(who) + ": matrix must be square");
    }
}

} // namespace

bool is_finite(const CMatrix& m) {
    return m.array().isFinite().all();
}

double op_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double herm_residual(const CMatrix& m) {
    return (m - m.adjoint()).norm();
}

double unitary_residual(const CMatrix& m) {
    return (m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols())).norm();
}

cd trace(const CMatrix& m) {
    require_square(m, "trace");
    return m.trace();
}

RVector singular_values(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues();
}

double schatten_norm(const CMatrix& m, int n) {
    if (n <= 0) throw ValidationError("schatten_norm: order must be a positive integer");
    const RVector sv = singular_values(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), n);
    return std::pow(acc, 1.0 / n);
}

Eigen::Index kernel_dim(const CMatrix& m, double tol) {
    const RVector sv = singular_values(m);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) < tol) ++k;
    // singular values beyond min(rows, cols) are implicit zeros
    return k + (m.cols() - sv.size());
}

CMatrix identity(Eigen::Index d) {
    return CMatrix::Identity(d, d);
}

HermEig herm_eig(const CMatrix& m, double herm_tol) {
    require_square(m, "herm_eig");
    if (herm_residual(m) > herm_tol) {
        throw ValidationError("herm_eig: input is not Hermitian within tolerance");
    }
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("herm_eig: eigensolver failed to converge");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix psd_sqrt(const CMatrix& m, double clamp_tol) {
    const HermEig eig = herm_eig(m);
    RVector s = eig.eigenvalues;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        s(i) = s(i) <= clamp_tol ? 0.0 : std::sqrt(s(i));
    }
    CMatrix out = eig.eigenvectors * s.asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

ContractionOp defect(const CMatrix& t, double rank_tol) {
    require_square(t, "defect");
    if (!is_finite(t)) throw ValidationError("defect: non-finite entries");
    if (op_norm(t) > 1.0 + 1e-12) {
        throw ValidationError("defect: operator norm exceeds 1, not a contraction");
    }
    const Eigen::Index d = t.rows();
    const CMatrix gram = CMatrix::Identity(d, d) - t.adjoint() * t;
    const HermEig eig = herm_eig(0.5 * (gram + gram.adjoint()));

    RVector s(d);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double lambda = eig.eigenvalues(i);
        s(i) = lambda <= rank_tol ? 0.0 : std::sqrt(lambda);
        if (lambda > rank_tol) ++r;
    }
    CMatrix dt = eig.eigenvectors * s.asDiagonal() * eig.eigenvectors.adjoint();
    dt = 0.5 * (dt + dt.adjoint());

    // kept eigenvalues are the largest ones (ascending order from the solver)
    CMatrix basis = eig.eigenvectors.rightCols(r);
    return ContractionOp(t, std::move(dt), std::move(basis), rank_tol);
}

CMatrix polar_unitary(const CMatrix& t) {
    require_square(t, "polar_unitary");
    Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

HermitianGenerator make_generator(const CMatrix& h) {
    require_square(h, "make_generator");
    if (herm_residual(h) > 1e-10) {
        throw ValidationError("make_generator: matrix not Hermitian within 1e-10");
    }
    const HermEig eig = herm_eig(h, 1e-10);
    constexpr double pi = std::numbers::pi;
    if (eig.eigenvalues.size() > 0) {
        const double lo = eig.eigenvalues(0);
        const double hi = eig.eigenvalues(eig.eigenvalues.size() - 1);
        if (lo <= -pi - 1e-12 || hi > pi + 1e-12) {
            throw ValidationError("make_generator: spectrum outside (-pi, pi]");
        }
    }
    HermitianGenerator g;
    g.matrix = 0.5 * (h + h.adjoint());
    g.spectrum = eig.eigenvalues;
    g.eigenvectors = eig.eigenvectors;
    return g;
}

HermitianGenerator zero_generator(Eigen::Index d) {
    HermitianGenerator g;
    g.matrix = CMatrix::Zero(d, d);
    g.spectrum = RVector::Zero(d);
    g.eigenvectors = CMatrix::Identity(d, d);
    return g;
}

HermitianGenerator scale_generator(const HermitianGenerator& g, double s) {
    if (!(s > 0.0)) throw ValidationError("scale_generator: scale must be positive");
    HermitianGenerator out;
    out.matrix = s * g.matrix;
    out.spectrum = s * g.spectrum;
    out.eigenvectors = g.eigenvectors;
    out.branch_warning = g.branch_warning;
    return out;
}

UnitaryEig unitary_eig(const CMatrix& u, double unitary_tol) {
    require_square(u, "unitary_eig");
    if (unitary_residual(u) > unitary_tol) {
        throw ValidationError("unitary_eig: input is not unitary within tolerance");
    }
    constexpr double pi = std::numbers::pi;
    UnitaryEig out;
    const Eigen::Index d = u.rows();
    out.angles.resize(d);
    if (d == 0) {
        out.vectors = u;
        return out;
    }
    // A unitary matrix is normal, so its Schur form is diagonal up to rounding;
    // the Schur basis is an orthonormal eigenbasis.
    Eigen::ComplexSchur<CMatrix> schur(u, /*computeU=*/true);
    if (schur.info() != Eigen::Success) {
        throw NumericError("unitary_eig: Schur decomposition failed");
    }
    out.vectors = schur.matrixU();
    for (Eigen::Index i = 0; i < d; ++i) {
        double theta = std::arg(schur.matrixT()(i, i));
        if (theta <= -pi) theta = pi;  // branch convention: -1 maps to +pi
        if (std::abs(std::abs(theta) - pi) <= 1e-8) out.near_branch_cut = true;
        out.angles(i) = theta;
    }
    return out;
}

HermitianGenerator principal_log_unitary(const CMatrix& u) {
    const UnitaryEig eig = unitary_eig(u);
    CMatrix a = eig.vectors * eig.angles.asDiagonal() * eig.vectors.adjoint();
    a = 0.5 * (a + a.adjoint());
    HermitianGenerator g = make_generator(a);
    g.branch_warning = eig.near_branch_cut;
    return g;
}

CMatrix unitary_exp(const HermitianGenerator& a, double s) {
    const Eigen::Index d = a.dim();
    Eigen::VectorXcd phases(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        phases(i) = std::polar(1.0, s * a.spectrum(i));
    }
    return a.eigenvectors * phases.asDiagonal() * a.eigenvectors.adjoint();
}

} // namespace ssflab
