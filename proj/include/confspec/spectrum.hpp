#pragma once

// Spectrum of the conformal Laplacian of g~ = mu^{4/(n-2)} g for zonal mu.
// The transformation law turns the eigenproblem into a generalized problem
// in the round metric,
//   (-Delta_g + c_n R_g) v = lambda mu^{4/(n-2)} v,   v = mu f,
// which for zonal weight decouples over the degree j of the S^{n-1}
// harmonic component. Block j is discretized with radial functions
// sin^j(phi) q(cos phi), q ranging over the orthonormal polynomials of the
// weight (1-u^2)^{j+(n-2)/2}, so the round mass matrix is the identity and
// truncations are nested in L.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "confspec/conformal.hpp"
#include "confspec/quadrature.hpp"

namespace confspec {

/// Dimension of the space of degree-l spherical harmonics on S^n.
inline std::int64_t harmonic_dimension(int n, int l) {
    if (n < 1 || l < 0) throw std::invalid_argument("harmonic_dimension: bad arguments");
    if (n == 1) return l == 0 ? 1 : 2;
    std::int64_t num = 2 * l + n - 1;
    for (int i = 1; i <= n - 2; ++i) num *= (l + i);
    std::int64_t fact = 1;
    for (int i = 2; i <= n - 1; ++i) fact *= i;
    return num / fact;
}

/// Exact round-sphere spectrum of -Delta_g + c_n R_g: eigenvalue
/// l(l+n-1) + n(n-2)/4 with the degree-l harmonic multiplicity.
inline std::vector<std::pair<double, std::int64_t>> round_box_eigenvalues(int n, int L) {
    if (n < 3) throw std::invalid_argument("round_box_eigenvalues: n >= 3 required");
    std::vector<std::pair<double, std::int64_t>> out;
    out.reserve(L + 1);
    for (int l = 0; l <= L; ++l)
        out.emplace_back(double(l) * (l + n - 1) + n * (n - 2) / 4.0, harmonic_dimension(n, l));
    return out;
}

struct SpectralProblem {
    int n;
    const ConformalFactor* mu;
    int L;           // max polynomial degree in u
    int J;           // blocks j = 0..J
    QuadratureGrid grid;

    SpectralProblem(const ConformalFactor& mu_, int L_, int quad_order = 0, int J_ = -1)
        : n(mu_.dim()), mu(&mu_), L(L_), J(J_ < 0 ? L_ : J_),
          grid(QuadratureGrid::build(mu_.dim(), resolve_order(mu_, L_, quad_order))) {
        if (L < 4) throw std::invalid_argument("SpectralProblem: L >= 4 required");
        if (J > L) throw std::invalid_argument("SpectralProblem: J <= L required");
    }

    static int resolve_order(const ConformalFactor& mu, int L, int requested) {
        int degW = mu.weight_poly_degree();
        int needed = 2 * L + (degW >= 0 ? degW : 0) + 2;
        int order = requested > 0 ? requested : std::max(4 * L + 8, needed);
        if (order < needed)
            throw std::invalid_argument("SpectralProblem: quadrature order too small for L and mu");
        return order;
    }
};

/// Stiffness and mass matrices of harmonic block j. Both are assembled as
/// X^T X sums, hence exactly symmetric; the mass is positive definite for
/// any valid mu once the quadrature has enough nodes.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_block(const SpectralProblem& prob,
                                                                  int j) {
    if (j < 0 || j > prob.J) throw std::invalid_argument("assemble_block: block index out of range");
    const int n = prob.n;
    const int m = prob.L - j + 1;
    const auto& u = prob.grid.nodes();
    const auto& w = prob.grid.weights();
    const int q = static_cast<int>(u.size());
    CurvatureConstants cc(n);

    OrthoPolyTable basis = orthonormal_poly_table(j + 0.5 * (n - 2), m - 1, u);

    Eigen::ArrayXd s = 1.0 - u.array().square();
    Eigen::ArrayXd sj = s.pow(j);  // s^j
    Eigen::ArrayXd sjm1(q);        // s^{j-1}, only used for j >= 1
    if (j >= 1) sjm1 = s.pow(j - 1);

    Eigen::MatrixXd grad(q, m), val_lo(q, m), val_hi(q, m);
    for (int a = 0; a < m; ++a) {
        Eigen::ArrayXd qa = basis.value.col(a).array();
        Eigen::ArrayXd dqa = basis.deriv.col(a).array();
        if (j == 0) {
            grad.col(a) = (dqa * (w.array() * s).sqrt()).matrix();
            val_lo.col(a).setZero();
        } else {
            Eigen::ArrayXd da = j * u.array() * qa - s * dqa;
            grad.col(a) = (da * (w.array() * sjm1).sqrt()).matrix();
            val_lo.col(a) = (qa * (w.array() * sjm1).sqrt()).matrix();
        }
        val_hi.col(a) = (qa * (w.array() * sj).sqrt()).matrix();
    }

    Eigen::MatrixXd S = grad.transpose() * grad + cc.c_n_R_g * val_hi.transpose() * val_hi;
    if (j >= 1) S += double(j) * (j + n - 2) * val_lo.transpose() * val_lo;

    Eigen::ArrayXd W(q);
    for (int i = 0; i < q; ++i) W[i] = prob.mu->m_density_u(u[i]);
    Eigen::MatrixXd mass_half(q, m);
    for (int a = 0; a < m; ++a)
        mass_half.col(a) = (basis.value.col(a).array() * (w.array() * W * sj).sqrt()).matrix();
    Eigen::MatrixXd M = mass_half.transpose() * mass_half;

    return {std::move(S), std::move(M)};
}

struct MassNotPositiveDefinite : std::runtime_error {
    MassNotPositiveDefinite()
        : std::runtime_error("solve_block: mass matrix not positive definite "
                             "(mu floor violation or insufficient quadrature order)") {}
};

/// Eigenvalues of the symmetric-definite pencil (S, M), ascending. Verifies
/// the residual ||S v - lambda M v|| <= 1e-9 ||S||_F for every pair.
inline Eigen::VectorXd solve_block(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M) {
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) throw MassNotPositiveDefinite();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(S, M);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("solve_block: generalized eigensolver failed");
    const double snorm = S.norm();
    for (int k = 0; k < S.rows(); ++k) {
        Eigen::VectorXd v = ges.eigenvectors().col(k);
        double resid = (S * v - ges.eigenvalues()[k] * (M * v)).norm() / (v.norm() * std::max(snorm, 1.0));
        if (resid > 1e-9)
            throw std::runtime_error("solve_block: residual check failed");
    }
    return ges.eigenvalues();
}

/// Sorted spectrum with block provenance. Eigenvalues are counted with
/// multiplicity (the dimension of the block's S^{n-1} harmonic space), and
/// lambda(k) refuses indices beyond the self-convergence trusted range.
class SpectrumResult {
public:
    struct Entry {
        double value;
        int block;
        std::int64_t multiplicity;
    };

    SpectrumResult(int n, int L, std::vector<Entry> entries)
        : n_(n), L_(L), entries_(std::move(entries)) {
        cum_.reserve(entries_.size());
        std::int64_t c = 0;
        for (const auto& e : entries_) {
            c += e.multiplicity;
            cum_.push_back(c);
        }
    }

    int dim() const { return n_; }
    int truncation() const { return L_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::int64_t total_count() const { return cum_.empty() ? 0 : cum_.back(); }

    std::int64_t trusted_count() const { return trusted_; }
    void set_trusted_count(std::int64_t t) { trusted_ = t; }

    /// k-th eigenvalue, 0-based, counted with multiplicity.
    double lambda(std::int64_t k) const {
        if (k < 0 || k >= total_count())
            throw std::out_of_range("lambda_k: index beyond computed spectrum");
        if (trusted_ >= 0 && k >= trusted_)
            throw std::out_of_range("lambda_k: index beyond trusted truncation range; increase L");
        auto it = std::upper_bound(cum_.begin(), cum_.end(), k);
        return entries_[it - cum_.begin()].value;
    }

    /// First `count` eigenvalues expanded with multiplicity (no trust gate).
    std::vector<double> expanded(std::int64_t count) const {
        std::vector<double> out;
        out.reserve(count);
        for (const auto& e : entries_) {
            for (std::int64_t i = 0; i < e.multiplicity && (std::int64_t)out.size() < count; ++i)
                out.push_back(e.value);
            if ((std::int64_t)out.size() >= count) break;
        }
        return out;
    }

private:
    int n_, L_;
    std::vector<Entry> entries_;
    std::vector<std::int64_t> cum_;
    std::int64_t trusted_ = -1;
};

/// Merges per-block eigenvalue lists into a sorted spectrum; stable
/// tie-break by block index.
inline SpectrumResult merge_spectrum(int n, int L,
                                     const std::vector<Eigen::VectorXd>& block_eigs) {
    std::vector<SpectrumResult::Entry> entries;
    for (int j = 0; j < (int)block_eigs.size(); ++j) {
        std::int64_t mult = harmonic_dimension(n - 1, j);
        for (int i = 0; i < block_eigs[j].size(); ++i)
            entries.push_back({block_eigs[j][i], j, mult});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.value < b.value || (a.value == b.value && a.block < b.block);
    });
    return SpectrumResult(n, L, std::move(entries));
}

namespace detail {
inline SpectrumResult solve_all_blocks(const ConformalFactor& mu, int L, int quad_order, int J) {
    auto run = [&](int order) {
        SpectralProblem prob(mu, L, order, J);
        std::vector<Eigen::VectorXd> blocks;
        blocks.reserve(prob.J + 1);
        for (int j = 0; j <= prob.J; ++j) {
            auto [S, M] = assemble_block(prob, j);
            blocks.push_back(solve_block(S, M));
        }
        return merge_spectrum(prob.n, L, blocks);
    };
    try {
        return run(quad_order);
    } catch (const MassNotPositiveDefinite&) {
        // one retry at doubled quadrature order before giving up
        int base = quad_order > 0 ? quad_order : SpectralProblem::resolve_order(mu, L, 0);
        return run(2 * base);
    }
}
}  // namespace detail

struct SpectrumOptions {
    int quad_order = 0;       // 0: default max(4L+8, 2L+deg+2)
    int block_max = -1;       // -1: J = L
    bool with_trust = true;   // also solve at L + trust_increment
    int trust_increment = 8;
    double trust_tol = 1e-7;
};

/// Solves the full block problem at truncation L; when with_trust is set,
/// re-solves at L + 8 and marks as trusted the leading eigenvalues that
/// agree between the two truncations within trust_tol.
inline SpectrumResult compute_spectrum(const ConformalFactor& mu, int L,
                                       const SpectrumOptions& opts = {}) {
    SpectrumResult res = detail::solve_all_blocks(mu, L, opts.quad_order, opts.block_max);
    if (opts.with_trust) {
        int L2 = L + opts.trust_increment;
        SpectrumResult ref = detail::solve_all_blocks(mu, L2, opts.quad_order, opts.block_max);
        std::int64_t limit = std::min(res.total_count(), ref.total_count());
        auto a = res.expanded(limit);
        auto b = ref.expanded(limit);
        std::int64_t trusted = 0;
        while (trusted < limit &&
               std::abs(a[trusted] - b[trusted]) <
                   opts.trust_tol * std::max(1.0, std::abs(b[trusted])))
            ++trusted;
        res.set_trusted_count(trusted);
    }
    return res;
}

/// k-th eigenvalue (0-based, with multiplicity) gated by the trusted range.
inline double lambda_k(const SpectrumResult& result, std::int64_t k) { return result.lambda(k); }

}  // namespace confspec
