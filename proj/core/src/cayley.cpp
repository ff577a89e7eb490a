#include "ssflab/cayley.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "ssflab/pairs.hpp"
#include "ssflab/paths.hpp"

namespace ssflab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double smallest_singular_value(const CMatrix& m) {
    const RVector sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

CMatrix abs_op(const CMatrix& x) {
    return psd_sqrt(x.adjoint() * x);
}

// solve Y = P * Q^{-1} as Q^T Y^T = P^T
CMatrix right_divide(const CMatrix& p, const CMatrix& q) {
    return q.transpose().partialPivLu().solve(p.transpose()).transpose();
}

} // namespace

DissipativeOp make_dissipative(const CMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("make_dissipative: matrix must be square");
    if (!is_finite(a)) throw ValidationError("make_dissipative: non-finite entries");
    DissipativeOp d;
    d.matrix = a;
    d.im_part = (a - a.adjoint()) / cd(0.0, 2.0);
    d.im_part = 0.5 * (d.im_part + d.im_part.adjoint());
    const HermEig eig = herm_eig(d.im_part);
    if (eig.eigenvalues.size() > 0 && eig.eigenvalues(eig.eigenvalues.size() - 1) > 1e-10) {
        throw ValidationError("make_dissipative: imaginary part has a positive eigenvalue");
    }
    const CMatrix shifted = a - cd(0.0, 1.0) * identity(a.rows());
    if (smallest_singular_value(shifted) <= 1e-12) {
        throw NumericError("make_dissipative: A - i is numerically singular");
    }
    return d;
}

ContractionOp cayley(const DissipativeOp& a) {
    const Eigen::Index d = a.matrix.rows();
    const CMatrix num = -(a.matrix + cd(0.0, 1.0) * identity(d));
    const CMatrix den = a.matrix - cd(0.0, 1.0) * identity(d);
    if (smallest_singular_value(den) <= 1e-12) {
        throw NumericError("cayley: A - i is numerically singular");
    }
    CMatrix t = right_divide(num, den);
    const double norm = op_norm(t);
    if (norm > 1.0 + 1e-10) {
        throw NumericError("cayley: transform exceeded the contraction bound");
    }
    // guard the defect constructor against roundoff just over 1
    if (norm > 1.0) t /= norm;
    return defect(t);
}

DissipativeOp inverse_cayley(const ContractionOp& t) {
    const Eigen::Index d = t.dim();
    const CMatrix shifted = t.matrix() + identity(d);
    if (smallest_singular_value(shifted) <= 1e-10) {
        throw NumericError("inverse_cayley: -1 lies in the spectrum of T");
    }
    const CMatrix inv = shifted.partialPivLu().solve(identity(d));
    const CMatrix a = cd(0.0, 1.0) * (identity(d) - 2.0 * inv);
    return make_dissipative(a);
}

DefectIdentityReport defect_identities_check(const DissipativeOp& a) {
    const Eigen::Index d = a.matrix.rows();
    const ContractionOp t = cayley(a);
    const CMatrix dt_adj = defect(t.matrix().adjoint()).defect_matrix();

    const CMatrix s = psd_sqrt(-a.im_part);
    const CMatrix den = a.matrix - cd(0.0, 1.0) * identity(d);
    const CMatrix den_adj = a.matrix.adjoint() + cd(0.0, 1.0) * identity(d);

    DefectIdentityReport rep;
    rep.residual_t = (t.defect_matrix() - 2.0 * abs_op(right_divide(s, den))).norm();
    rep.residual_t_adj = (dt_adj - 2.0 * abs_op(right_divide(s, den_adj))).norm();
    return rep;
}

// ---------------------------------------------------------------------------
// polynomials

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

RealPolynomial RealPolynomial::constant(double c) {
    return RealPolynomial(std::vector<double>{c});
}

void RealPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

int RealPolynomial::degree() const {
    return static_cast<int>(coeffs_.size()) - 1;
}

double RealPolynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RealPolynomial RealPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return RealPolynomial();
    std::vector<double> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        out[i - 1] = coeffs_[i] * static_cast<double>(i);
    }
    return RealPolynomial(std::move(out));
}

RealPolynomial RealPolynomial::antiderivative() const {
    if (coeffs_.empty()) return RealPolynomial();
    std::vector<double> out(coeffs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
    }
    return RealPolynomial(std::move(out));
}

RealPolynomial RealPolynomial::times_one_plus_x2() const {
    if (coeffs_.empty()) return RealPolynomial();
    std::vector<double> out(coeffs_.size() + 2, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i] += coeffs_[i];
        out[i + 2] += coeffs_[i];
    }
    return RealPolynomial(std::move(out));
}

RealPolynomial RealPolynomial::times_two_x() const {
    if (coeffs_.empty()) return RealPolynomial();
    std::vector<double> out(coeffs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = 2.0 * coeffs_[i];
    return RealPolynomial(std::move(out));
}

RealPolynomial& RealPolynomial::operator+=(const RealPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

RealPolynomial& RealPolynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

PkqTable::PkqTable(int nmax) : nmax_(nmax) {
    if (nmax < 1) throw ValidationError("pkq_polynomials: nmax must be >= 1");
    rows_.resize(nmax);
    rows_[0].push_back(RealPolynomial::constant(1.0));  // p_{0,1} = 1
    for (int q = 2; q <= nmax; ++q) {
        const auto& prev = rows_[q - 2];
        std::vector<RealPolynomial> row;
        row.reserve(q);
        // k = 0
        row.push_back(-0.5 * prev[0].times_one_plus_x2());
        // 1 <= k <= q-2
        for (int k = 1; k <= q - 2; ++k) {
            RealPolynomial mid = prev[k] + prev[k - 1].derivative();
            RealPolynomial term = mid.times_one_plus_x2() + prev[k - 1].times_two_x();
            row.push_back(-0.5 * term);
        }
        // k = q-1
        RealPolynomial top =
            prev[q - 2].derivative().times_one_plus_x2() + prev[q - 2].times_two_x();
        row.push_back(-0.5 * top);
        rows_[q - 1] = std::move(row);
    }
}

const RealPolynomial& PkqTable::at(int k, int q) const {
    if (q < 1 || q > nmax_ || k < 0 || k > q - 1) {
        throw ValidationError("PkqTable::at: indices out of range");
    }
    return rows_[q - 1][k];
}

std::string PkqTable::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (int q = 1; q <= nmax_; ++q) {
        for (int k = 0; k <= q - 1; ++k) {
            nlohmann::json item;
            item["q"] = q;
            item["k"] = k;
            item["coefficients"] = at(k, q).coeffs();
            arr.push_back(item);
        }
    }
    return arr.dump(2);
}

PkqTable pkq_polynomials(int nmax) {
    return PkqTable(nmax);
}

// ---------------------------------------------------------------------------
// derivatives of the circle-map power

namespace {

// complex polynomial, ascending coefficients
using CPoly = std::vector<cd>;

CPoly cpoly_derivative(const CPoly& p) {
    if (p.size() <= 1) return {};
    CPoly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
    return out;
}

cd cpoly_eval(const CPoly& p, double x) {
    cd acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace

std::vector<cd> mobius_power_derivatives(int m, int jmax, double lambda) {
    if (m < 0) throw ValidationError("mobius_power_derivatives: m must be >= 0");
    if (jmax < 0) throw ValidationError("mobius_power_derivatives: jmax must be >= 0");

    const cd w = (cd(0.0, 1.0) + lambda) / (cd(0.0, 1.0) - lambda);
    cd wm = 1.0;
    for (int i = 0; i < m; ++i) wm *= w;

    // psi^{(j)} = psi * B_j / (1 + lambda^2)^j
    std::vector<cd> out(jmax + 1);
    out[0] = wm;
    CPoly b = {cd(1.0, 0.0)};
    const double denom_base = 1.0 + lambda * lambda;
    double denom = 1.0;
    const cd two_im = cd(0.0, 2.0 * m);
    for (int j = 1; j <= jmax; ++j) {
        // B_{j} = (1+x^2) B' - 2 (j-1) x B - 2im B, from the previous B
        const CPoly bp = cpoly_derivative(b);
        CPoly next(std::max<std::size_t>({bp.size() + 2, b.size() + 1, b.size()}), cd(0.0));
        for (std::size_t i = 0; i < bp.size(); ++i) {
            next[i] += bp[i];
            next[i + 2] += bp[i];
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            next[i + 1] -= 2.0 * static_cast<double>(j - 1) * b[i];
            next[i] -= two_im * b[i];
        }
        while (!next.empty() && next.back() == cd(0.0)) next.pop_back();
        b = std::move(next);
        denom *= denom_base;
        out[j] = wm * cpoly_eval(b, lambda) / denom;
    }
    return out;
}

double chain_rule_check(int m, int q, const std::vector<double>& ts) {
    if (m < 0) throw ValidationError("chain_rule_check: m must be >= 0");
    if (q < 1) throw ValidationError("chain_rule_check: q must be >= 1");
    const PkqTable table(q);
    constexpr double pi = std::numbers::pi;

    double worst = 0.0;
    for (const double t : ts) {
        const double tm = t - kTwoPi * std::floor(t / kTwoPi);
        if (std::abs(tm - pi) < 0.1) {
            throw ValidationError("chain_rule_check: sample point too close to the pole at t = pi");
        }
        const double lambda = -std::tan(t / 2.0);
        const std::vector<cd> psi = mobius_power_derivatives(m, q, lambda);

        const cd lhs = std::pow(cd(0.0, m), q) * std::polar(1.0, m * t);
        cd rhs = 0.0;
        for (int k = 0; k <= q - 1; ++k) {
            rhs += table.at(k, q).eval(lambda) * psi[static_cast<std::size_t>(q - k)];
        }
        rhs *= -(1.0 + lambda * lambda) / 2.0;

        const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
        worst = std::max(worst, rel);
    }
    return worst;
}

std::vector<cd> real_line_ssf(const SpectralShiftFn& xi, const std::vector<double>& lambdas) {
    std::vector<double> grid;
    grid.reserve(lambdas.size());
    for (const double lam : lambdas) {
        double t = -2.0 * std::atan(lam);
        if (t < 0.0) t += kTwoPi;
        if (t >= kTwoPi) t = 0.0;
        grid.push_back(t);
    }
    return ssf_eval(xi, grid);
}

namespace {

std::vector<cd> cumulative_trapezoid(const std::vector<cd>& f, double h, std::size_t i0) {
    std::vector<cd> out(f.size());
    out[i0] = 0.0;
    for (std::size_t i = i0 + 1; i < f.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    }
    for (std::size_t i = i0; i-- > 0;) {
        out[i] = out[i + 1] - 0.5 * h * (f[i] + f[i + 1]);
    }
    return out;
}

} // namespace

std::vector<cd> zeta_n(const std::vector<double>& lambda_grid,
                       const std::vector<cd>& eta_samples,
                       const PkqTable& table, int n, ZetaBaseCase base) {
    if (n < 2) throw ValidationError("zeta_n: order must be >= 2");
    if (table.nmax() < n) throw ValidationError("zeta_n: p table too small for the order");
    if (lambda_grid.size() != eta_samples.size() || lambda_grid.size() < 3) {
        throw ValidationError("zeta_n: grid and samples must match and have >= 3 points");
    }
    const double h = lambda_grid[1] - lambda_grid[0];
    if (!(h > 0.0)) throw ValidationError("zeta_n: grid must be increasing");
    std::size_t i0 = lambda_grid.size();
    for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i) {
        if (std::abs(lambda_grid[i + 1] - lambda_grid[i] - h) > 1e-9 * std::max(1.0, h)) {
            throw ValidationError("zeta_n: grid must be uniform");
        }
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (std::abs(lambda_grid[i]) <= 1e-12) {
            i0 = i;
            break;
        }
    }
    if (i0 == lambda_grid.size()) throw ValidationError("zeta_n: grid must contain 0");

    const std::size_t npts = lambda_grid.size();
    std::vector<cd> acc(npts, 0.0);

    // k = 0 term
    for (std::size_t i = 0; i < npts; ++i) {
        const double p0 = table.at(0, n).eval(lambda_grid[i]);
        acc[i] += base == ZetaBaseCase::printed ? cd(p0) : p0 * eta_samples[i];
    }

    for (int k = 1; k <= n - 1; ++k) {
        std::vector<cd> layer(npts);
        for (std::size_t i = 0; i < npts; ++i) {
            layer[i] = table.at(k, n).eval(lambda_grid[i]) * eta_samples[i];
        }
        for (int j = 0; j < k; ++j) {
            layer = cumulative_trapezoid(layer, h, i0);
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < npts; ++i) acc[i] += sign * layer[i];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// functional-calculus checks

double hermitian_calculus_residual(const CMatrix& a_hermitian, const TrigPoly& phi) {
    if (herm_residual(a_hermitian) > 1e-10) {
        throw ValidationError("hermitian_calculus_residual: input must be Hermitian");
    }
    const DissipativeOp a = make_dissipative(a_hermitian);
    const ContractionOp t = cayley(a);
    const CMatrix lhs = eval_poly(phi, t.matrix());

    const HermEig eig = herm_eig(a_hermitian);
    Eigen::VectorXcd diag(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double lam = eig.eigenvalues(i);
        const cd w = (cd(0.0, 1.0) + lam) / (cd(0.0, 1.0) - lam);
        // phi on the unit circle: negative powers through the conjugate
        cd val = 0.0;
        for (const auto& [k, c] : phi.coeffs()) {
            val += c * (k >= 0 ? std::pow(w, k) : std::pow(std::conj(w), -k));
        }
        diag(i) = val;
    }
    const CMatrix rhs = eig.eigenvectors * diag.asDiagonal() * eig.eigenvectors.adjoint();
    return (lhs - rhs).norm();
}

double dissipative_remainder_check(const DissipativeOp& a0, const DissipativeOp& a1,
                                   int n, int q) {
    if (n < 2) throw ValidationError("dissipative_remainder_check: order must be >= 2");
    if (q == 0) throw ValidationError("dissipative_remainder_check: q must be nonzero");

    const ContractionOp t0 = cayley(a0);
    const ContractionOp t1 = cayley(a1);
    const PairFrame frame = build_cc_pair(t0, t1);

    // the inverse transform along the path needs -1 outside every spectrum
    for (int i = 0; i <= 20; ++i) {
        const CMatrix ts = path_value(frame.path, i / 20.0);
        if (smallest_singular_value(ts + identity(ts.rows())) <= 1e-10) {
            throw NumericError("dissipative_remainder_check: path value has -1 in its spectrum");
        }
    }

    const TrigPoly phi = TrigPoly::monomial(q);

    // circle side
    const CMatrix r_phi = remainder(frame.path, t1.matrix(), phi, n);

    // line side: endpoints through fresh transforms and the +/- split,
    // derivative terms through the adjoint route for negative powers
    const auto [plus, minus] = split_pm(phi);
    const auto psi_at = [&](const DissipativeOp& a) {
        const CMatrix t = cayley(a).matrix();
        CMatrix acc = eval_poly(plus, t);
        if (!minus.empty()) {
            TrigPoly conj_minus;
            for (const auto& [k, c] : minus.coeffs()) conj_minus.set(k, std::conj(c));
            acc += eval_poly(conj_minus, t).adjoint();
        }
        return acc;
    };

    CMatrix r_psi = psi_at(a1) - psi_at(a0);
    double kfact = 1.0;
    for (int k = 1; k <= n - 1; ++k) {
        kfact *= k;
        CMatrix deriv = CMatrix::Zero(t0.dim(), t0.dim());
        for (const auto& [qq, c] : phi.coeffs()) {
            if (qq == 0) continue;
            if (qq > 0) {
                deriv += c * gateaux_monomial(frame.path, qq, k);
            } else {
                deriv += c * gateaux_monomial(frame.path, -qq, k).adjoint();
            }
        }
        r_psi -= deriv / kfact;
    }

    return (r_psi - r_phi).norm();
}

} // namespace ssflab
