#pragma once

// Gauss quadrature in u = cos(phi_1) against the weight (1-u^2)^{(n-2)/2},
// which together with the angular factor Vol(S^{n-1}) integrates zonal
// functions over S^n exactly for polynomial integrands:
//   int_{S^n} f(x^0) dnu = Vol(S^{n-1}) int_{-1}^{1} f(u) (1-u^2)^{(n-2)/2} du.
// Nodes and weights come from the Golub-Welsch eigenvalue method applied to
// the symmetric Jacobi (Gegenbauer) recurrence.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <utility>

#include "confspec/sphere.hpp"

namespace confspec {

/// Total mass of the weight (1-u^2)^alpha on [-1,1].
inline double gegenbauer_weight_mass(double alpha) {
    return std::sqrt(M_PI) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5);
}

/// Recurrence coefficient b_k for monic orthogonal polynomials of the
/// weight (1-u^2)^alpha: u p_k = p_{k+1} + b_k p_{k-1} (the a_k vanish by
/// symmetry). b_k = k(k+2a)/((2k+2a)^2 - 1).
inline double gegenbauer_recurrence_b(double alpha, int k) {
    double s = 2.0 * k + 2.0 * alpha;
    return k * (k + 2.0 * alpha) / (s * s - 1.0);
}

/// Gauss nodes and weights for the weight (1-u^2)^alpha on [-1,1].
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_gegenbauer(double alpha, int npoints) {
    if (npoints < 1) throw std::invalid_argument("gauss_gegenbauer: npoints >= 1 required");
    if (alpha <= -1.0) throw std::invalid_argument("gauss_gegenbauer: alpha > -1 required");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npoints, npoints);
    for (int k = 1; k < npoints; ++k) {
        double beta = std::sqrt(gegenbauer_recurrence_b(alpha, k));
        J(k, k - 1) = beta;
        J(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_gegenbauer: eigensolver failed");
    Eigen::VectorXd nodes = es.eigenvalues();
    Eigen::VectorXd weights(npoints);
    double mu0 = gegenbauer_weight_mass(alpha);
    for (int i = 0; i < npoints; ++i) {
        double v0 = es.eigenvectors()(0, i);
        weights[i] = mu0 * v0 * v0;
    }
    return {std::move(nodes), std::move(weights)};
}

/// Values and u-derivatives of the orthonormal polynomials q_0..q_maxdeg of
/// the weight (1-u^2)^alpha at the given points. Row i = point, column k =
/// degree. Used as the radial Galerkin basis, one alpha per harmonic block.
struct OrthoPolyTable {
    Eigen::MatrixXd value;
    Eigen::MatrixXd deriv;
};

inline OrthoPolyTable orthonormal_poly_table(double alpha, int maxdeg, const Eigen::VectorXd& u) {
    const int m = static_cast<int>(u.size());
    OrthoPolyTable t;
    t.value.resize(m, maxdeg + 1);
    t.deriv.resize(m, maxdeg + 1);
    const double p0 = 1.0 / std::sqrt(gegenbauer_weight_mass(alpha));
    t.value.col(0).setConstant(p0);
    t.deriv.col(0).setZero();
    if (maxdeg == 0) return t;
    double b1 = std::sqrt(gegenbauer_recurrence_b(alpha, 1));
    t.value.col(1) = u.array() * p0 / b1;
    t.deriv.col(1).setConstant(p0 / b1);
    for (int k = 1; k < maxdeg; ++k) {
        double bk = std::sqrt(gegenbauer_recurrence_b(alpha, k));
        double bk1 = std::sqrt(gegenbauer_recurrence_b(alpha, k + 1));
        t.value.col(k + 1) =
            (u.array() * t.value.col(k).array() - bk * t.value.col(k - 1).array()) / bk1;
        t.deriv.col(k + 1) = (u.array() * t.deriv.col(k).array() + t.value.col(k).array() -
                              bk * t.deriv.col(k - 1).array()) /
                             bk1;
    }
    return t;
}

/// 1D quadrature grid for zonal integration over S^n.
class QuadratureGrid {
public:
    /// order = number of nodes; exact for zonal polynomial integrands of
    /// degree up to 2*order - 1.
    static QuadratureGrid build(int n, int order) {
        if (n < 3) throw std::invalid_argument("QuadratureGrid: n >= 3 required");
        if (order < 2) throw std::invalid_argument("QuadratureGrid: order >= 2 required");
        QuadratureGrid g;
        g.n_ = n;
        auto [nodes, weights] = gauss_gegenbauer(0.5 * (n - 2), order);
        g.u_ = std::move(nodes);
        g.w_ = std::move(weights);
        g.angular_ = sphere_volume(n - 1);
        double total = g.w_.sum() * g.angular_;
        if (std::abs(total - sphere_volume(n)) > 1e-11 * sphere_volume(n))
            throw std::runtime_error("QuadratureGrid: volume identity violated");
        return g;
    }

    int dim() const { return n_; }
    int order() const { return static_cast<int>(u_.size()); }
    const Eigen::VectorXd& nodes() const { return u_; }
    const Eigen::VectorXd& weights() const { return w_; }
    /// Vol(S^{n-1}), the factor multiplying every 1D integral.
    double angular_factor() const { return angular_; }

    /// int_{S^n} F(x^0) dnu for a zonal integrand given as F(u).
    template <class F>
    double integrate_u(F&& f) const {
        double s = 0.0;
        for (int i = 0; i < u_.size(); ++i) s += w_[i] * f(u_[i]);
        return angular_ * s;
    }

    /// Same integral with the integrand given as G(phi_1), phi_1 = arccos(u).
    template <class F>
    double integrate_phi(F&& g) const {
        double s = 0.0;
        for (int i = 0; i < u_.size(); ++i) s += w_[i] * g(std::acos(std::clamp(u_[i], -1.0, 1.0)));
        return angular_ * s;
    }

private:
    int n_ = 0;
    Eigen::VectorXd u_, w_;
    double angular_ = 0.0;
};

inline QuadratureGrid build_quadrature(int n, int order) { return QuadratureGrid::build(n, order); }

/// Gauss-Legendre rule mapped to [a, b]; used for piecewise-smooth radial
/// profiles whose kinks are known in advance.
template <class F>
double integrate_legendre(F&& f, double a, double b, int npoints) {
    auto [u, w] = gauss_gegenbauer(0.0, npoints);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < u.size(); ++i) s += w[i] * f(mid + half * u[i]);
    return half * s;
}

}  // namespace confspec
