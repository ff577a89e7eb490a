// linalg.hpp — dense complex operator kit: Hermitian eigensolvers, defect
// operators, polar/log/exp for unitaries, traces and Schatten norms.

#pragma once

#include <complex>
#include <Eigen/Dense>

#include "ssflab/errors.hpp"

namespace ssflab {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Default truncation for defect-space bases: directions with
// eig(I - T*T) <= kDefectRankTol are treated as exact isometry directions.
inline constexpr double kDefectRankTol = 1e-10;

// ---------------------------------------------------------------------------
// basic queries

bool is_finite(const CMatrix& m);
double op_norm(const CMatrix& m);            // largest singular value
double herm_residual(const CMatrix& m);      // ||M - M*||_F
double unitary_residual(const CMatrix& m);   // ||M*M - I||_F
cd trace(const CMatrix& m);                  // square input

double schatten_norm(const CMatrix& m, int n);
RVector singular_values(const CMatrix& m);   // descending
Eigen::Index kernel_dim(const CMatrix& m, double tol = 1e-10);

CMatrix identity(Eigen::Index d);

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition  M = Q diag(lambda) Q*

struct HermEig {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // unitary, columns match eigenvalues
};

HermEig herm_eig(const CMatrix& m, double herm_tol = 1e-8);

// Positive square root of a Hermitian PSD matrix; eigenvalues below
// clamp_tol (and all negatives) are clamped to zero.
CMatrix psd_sqrt(const CMatrix& m, double clamp_tol = 0.0);

// ---------------------------------------------------------------------------
// contractions and defect operators

// A validated contraction T with its defect operator D_T = (I - T*T)^{1/2}
// and an orthonormal basis of the defect space ran(D_T).
class ContractionOp {
public:
    ContractionOp() = default;
    ContractionOp(CMatrix matrix, CMatrix defect, CMatrix basis, double rank_tol)
        : matrix_(std::move(matrix)), defect_(std::move(defect)),
          basis_(std::move(basis)), rank_tol_(rank_tol) {}

    const CMatrix& matrix() const { return matrix_; }
    const CMatrix& defect_matrix() const { return defect_; }
    const CMatrix& basis() const { return basis_; }   // d x r isometry
    Eigen::Index dim() const { return matrix_.rows(); }
    Eigen::Index rank() const { return basis_.cols(); }
    double rank_tol() const { return rank_tol_; }

private:
    CMatrix matrix_;
    CMatrix defect_;
    CMatrix basis_;
    double rank_tol_ = kDefectRankTol;
};

// Build a ContractionOp from T. Directions with eig(I - T*T) <= rank_tol are
// treated as exact isometry directions: they get defect eigenvalue 0 and are
// excluded from the basis, so exactly-unit singular values of near-unitary
// inputs do not pollute the defect space.
ContractionOp defect(const CMatrix& t, double rank_tol = kDefectRankTol);

// Unitary polar factor: T = V_T (T*T)^{1/2} with V_T = U W* from the SVD
// T = U S W*. Deterministic unitary completion on ker T.
CMatrix polar_unitary(const CMatrix& t);

// ---------------------------------------------------------------------------
// Hermitian generators and the unitary exponential/logarithm

// Hermitian matrix with spectrum in (-pi, pi], carrying its cached
// eigendecomposition so repeated exponentials are cheap.
struct HermitianGenerator {
    CMatrix matrix;
    RVector spectrum;      // ascending
    CMatrix eigenvectors;  // unitary, columns match spectrum
    // true when some eigenangle lies within 1e-8 of the +-pi branch boundary
    bool branch_warning = false;

    Eigen::Index dim() const { return matrix.rows(); }
};

HermitianGenerator make_generator(const CMatrix& h);
HermitianGenerator zero_generator(Eigen::Index d);
HermitianGenerator scale_generator(const HermitianGenerator& g, double s);

// Eigen-angle form of a unitary: U = Q diag(e^{i theta_j}) Q* with every
// theta_j in (-pi, pi]; the angle of eigenvalue -1 is +pi, never -pi.
struct UnitaryEig {
    RVector angles;
    CMatrix vectors;
    bool near_branch_cut = false;  // some |theta| within 1e-8 of pi
};

UnitaryEig unitary_eig(const CMatrix& u, double unitary_tol = 1e-8);

// Principal logarithm: Hermitian A with e^{iA} = U and sigma(A) in (-pi, pi].
HermitianGenerator principal_log_unitary(const CMatrix& u);

// e^{i s A}
CMatrix unitary_exp(const HermitianGenerator& a, double s);

} // namespace ssflab
