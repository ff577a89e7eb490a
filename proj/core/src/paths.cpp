#include "ssflab/paths.hpp"

#include <algorithm>
#include <optional>

namespace ssflab {

namespace {

constexpr int kMaxCombinatorialK = 6;
constexpr int kMaxCombinatorialQ = 16;

// Deterministic pairwise (binary-counter) accumulation of matrix terms.
class PairwiseSum {
public:
    explicit PairwiseSum(Eigen::Index rows, Eigen::Index cols)
        : rows_(rows), cols_(cols) {}

    void add(CMatrix term) {
        std::size_t level = 0;
        while (level < slots_.size() && slots_[level].has_value()) {
            term += *slots_[level];
            slots_[level].reset();
            ++level;
        }
        if (level == slots_.size()) slots_.emplace_back();
        slots_[level] = std::move(term);
    }

    CMatrix total() const {
        CMatrix acc = CMatrix::Zero(rows_, cols_);
        for (const auto& slot : slots_) {
            if (slot) acc += *slot;
        }
        return acc;
    }

private:
    Eigen::Index rows_, cols_;
    std::vector<std::optional<CMatrix>> slots_;
};

// Lexicographic compositions of k into r positive parts.
template <typename Fn>
void compositions_rec(int remaining, int pos, int r, std::vector<int>& parts, Fn&& fn) {
    if (pos == r - 1) {
        parts[pos] = remaining;
        fn(parts);
        return;
    }
    const int slots_after = r - 1 - pos;
    for (int v = 1; v + slots_after <= remaining; ++v) {
        parts[pos] = v;
        compositions_rec(remaining - v, pos + 1, r, parts, fn);
    }
}

template <typename Fn>
void for_each_composition(int k, int r, Fn&& fn) {
    if (r < 1 || k < r) return;
    std::vector<int> parts(r);
    compositions_rec(k, 0, r, parts, fn);
}

// Lexicographic weak compositions of n into m nonnegative parts.
template <typename Fn>
void weak_rec(int remaining, int pos, int m, std::vector<int>& parts, Fn&& fn) {
    if (pos == m - 1) {
        parts[pos] = remaining;
        fn(parts);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        parts[pos] = v;
        weak_rec(remaining - v, pos + 1, m, parts, fn);
    }
}

template <typename Fn>
void for_each_weak_composition(int n, int m, Fn&& fn) {
    if (m < 1 || n < 0) return;
    std::vector<int> parts(m);
    weak_rec(n, 0, m, parts, fn);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

MultiplicativePath make_path(HermitianGenerator generator, CMatrix base, CMatrix embed) {
    const Eigen::Index D = generator.dim();
    if (base.rows() != D || embed.rows() != D || embed.cols() != base.cols()) {
        throw ValidationError("make_path: inconsistent dimensions");
    }
    const CMatrix gram = embed.adjoint() * embed;
    if ((gram - CMatrix::Identity(embed.cols(), embed.cols())).norm() > 1e-10) {
        throw ValidationError("make_path: embed is not an isometry");
    }
    return MultiplicativePath{std::move(generator), std::move(base), std::move(embed)};
}

MultiplicativePath make_full_path(HermitianGenerator generator, CMatrix base) {
    const Eigen::Index D = generator.dim();
    return make_path(std::move(generator), std::move(base), CMatrix::Identity(D, D));
}

CMatrix path_value(const MultiplicativePath& p, double s) {
    return p.embed.adjoint() * (unitary_exp(p.generator, s) * p.base);
}

CMatrix gateaux_monomial_combinatorial(const MultiplicativePath& p, int q, int k) {
    if (k < 1) throw ValidationError("gateaux_monomial: derivative order must be >= 1 (use path_value)");
    if (q == 0) throw ValidationError("gateaux_monomial: q must be nonzero");
    if (q < 0) return gateaux_monomial_combinatorial(p, -q, k).adjoint();

    const Eigen::Index d = p.dim();
    const CMatrix start = p.start();

    // powers of the start operator up to q - 1
    std::vector<CMatrix> start_pow(q);
    start_pow[0] = CMatrix::Identity(d, d);
    for (int a = 1; a < q; ++a) start_pow[a] = start_pow[a - 1] * start;

    // compressed derivative factors embed* (iG)^l base, l = 1..k
    std::vector<CMatrix> factor(k + 1);
    const CMatrix ig = cd(0.0, 1.0) * p.generator.matrix;
    CMatrix x = p.base;
    for (int l = 1; l <= k; ++l) {
        x = ig * x;
        factor[l] = p.embed.adjoint() * x;
    }

    const double kfact = factorial(k);
    PairwiseSum sum(d, d);
    const int rmax = std::min(k, q);
    for (int r = 1; r <= rmax; ++r) {
        for_each_composition(k, r, [&](const std::vector<int>& l) {
            double weight = kfact;
            for (int lj : l) weight /= factorial(lj);
            for_each_weak_composition(q - r, r + 1, [&](const std::vector<int>& alpha) {
                CMatrix term = start_pow[alpha[0]];
                for (int j = 0; j < r; ++j) {
                    term = term * factor[l[j]];
                    term = term * start_pow[alpha[j + 1]];
                }
                sum.add(weight * term);
            });
        });
    }
    return sum.total();
}

CMatrix taylor_oracle(const MultiplicativePath& p, int q, int k) {
    if (k < 1) throw ValidationError("taylor_oracle: derivative order must be >= 1");
    if (q == 0) throw ValidationError("taylor_oracle: q must be nonzero");

    const CMatrix ig = cd(0.0, 1.0) * p.generator.matrix;
    TaylorMatrixSeries exp_s = TaylorMatrixSeries::exp_series(ig, k);

    TaylorMatrixSeries path_s;
    path_s.order = k;
    path_s.coeffs.reserve(k + 1);
    for (const CMatrix& c : exp_s.coeffs) {
        path_s.coeffs.push_back(p.embed.adjoint() * c * p.base);
    }

    const TaylorMatrixSeries powered =
        (q > 0 ? path_s : path_s.adjointed()).pow(std::abs(q));
    return factorial(k) * powered.coeffs[static_cast<std::size_t>(k)];
}

CMatrix gateaux_monomial(const MultiplicativePath& p, int q, int k) {
    if (k <= kMaxCombinatorialK && std::abs(q) <= kMaxCombinatorialQ) {
        return gateaux_monomial_combinatorial(p, q, k);
    }
    return taylor_oracle(p, q, k);
}

std::uint64_t gateaux_term_count(int q, int k) {
    if (k < 1 || q < 1) throw ValidationError("gateaux_term_count: q, k must be >= 1");
    std::uint64_t count = 0;
    const int rmax = std::min(k, q);
    for (int r = 1; r <= rmax; ++r) {
        for_each_composition(k, r, [&](const std::vector<int>&) {
            for_each_weak_composition(q - r, r + 1, [&](const std::vector<int>&) { ++count; });
        });
    }
    return count;
}

std::uint64_t gateaux_term_count_formula(int q, int k) {
    if (k < 1 || q < 1) throw ValidationError("gateaux_term_count_formula: q, k must be >= 1");
    // Pascal's triangle, independent of the enumerator
    const int n = std::max(k, q) + 1;
    std::vector<std::vector<std::uint64_t>> choose(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        choose[i][0] = 1;
        for (int j = 1; j <= i; ++j) {
            choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
        }
    }
    std::uint64_t total = 0;
    for (int r = 1; r <= std::min(k, q); ++r) {
        total += choose[k - 1][r - 1] * choose[q][r];
    }
    return total;
}

CMatrix gateaux_poly(const MultiplicativePath& p, const TrigPoly& phi, int k) {
    const Eigen::Index d = p.dim();
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto& [q, c] : phi.coeffs()) {
        if (q == 0) continue;
        acc += c * gateaux_monomial(p, q, k);
    }
    return acc;
}

TaylorMatrixSeries TaylorMatrixSeries::exp_series(const CMatrix& x, int order) {
    TaylorMatrixSeries s;
    s.order = order;
    s.coeffs.reserve(order + 1);
    s.coeffs.push_back(CMatrix::Identity(x.rows(), x.cols()));
    for (int j = 1; j <= order; ++j) {
        s.coeffs.push_back((s.coeffs.back() * x) / static_cast<double>(j));
    }
    return s;
}

TaylorMatrixSeries TaylorMatrixSeries::mul(const TaylorMatrixSeries& rhs) const {
    const int m = std::min(order, rhs.order);
    const Eigen::Index rows = coeffs[0].rows();
    const Eigen::Index cols = rhs.coeffs[0].cols();
    TaylorMatrixSeries out;
    out.order = m;
    out.coeffs.assign(m + 1, CMatrix::Zero(rows, cols));
    for (int j = 0; j <= m; ++j) {
        for (int a = 0; a <= j; ++a) {
            out.coeffs[j] += coeffs[a] * rhs.coeffs[j - a];
        }
    }
    return out;
}

TaylorMatrixSeries TaylorMatrixSeries::pow(int n) const {
    if (n < 0) throw ValidationError("TaylorMatrixSeries::pow: exponent must be >= 0");
    const Eigen::Index d = coeffs[0].rows();
    TaylorMatrixSeries out;
    out.order = order;
    out.coeffs.assign(order + 1, CMatrix::Zero(d, d));
    out.coeffs[0] = CMatrix::Identity(d, d);
    for (int i = 0; i < n; ++i) out = out.mul(*this);
    return out;
}

TaylorMatrixSeries TaylorMatrixSeries::adjointed() const {
    TaylorMatrixSeries out;
    out.order = order;
    out.coeffs.reserve(coeffs.size());
    for (const CMatrix& c : coeffs) out.coeffs.push_back(c.adjoint());
    return out;
}

CMatrix remainder(const MultiplicativePath& p, const CMatrix& end,
                  const TrigPoly& phi, int n) {
    if (n < 2) throw ValidationError("remainder: order must be >= 2");
    const CMatrix start = p.start();
    if (end.rows() != start.rows() || end.cols() != start.cols()) {
        throw ValidationError("remainder: end operator has wrong shape");
    }
    if ((path_value(p, 1.0) - end).norm() > 1e-8) {
        throw NumericError("remainder: path does not connect start to end");
    }
    CMatrix acc = eval_poly(phi, end) - eval_poly(phi, start);
    double kfact = 1.0;
    for (int k = 1; k <= n - 1; ++k) {
        kfact *= k;
        acc -= gateaux_poly(p, phi, k) / kfact;
    }
    return acc;
}

} // namespace ssflab
