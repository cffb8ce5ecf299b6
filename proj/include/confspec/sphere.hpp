#pragma once

// Round-sphere geometry: points on S^n, geodesic distances, stereographic
// charts, and the one-parameter family of conformal dilations obtained by
// scaling in stereographic coordinates.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace confspec {

inline constexpr double kUnitNormTol = 1e-12;

/// Volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
inline double sphere_volume(int n) {
    if (n < 1) throw std::invalid_argument("sphere_volume: n >= 1 required");
    return 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

/// A point of S^n stored as a unit vector in R^{n+1}.
class SpherePoint {
public:
    explicit SpherePoint(Eigen::VectorXd coords) : x_(std::move(coords)) {
        if (x_.size() < 2)
            throw std::invalid_argument("SpherePoint: need at least 2 coordinates");
        if (std::abs(x_.norm() - 1.0) > kUnitNormTol)
            throw std::invalid_argument("SpherePoint: coordinates not unit norm (|1-|x|| = " +
                                        std::to_string(std::abs(x_.norm() - 1.0)) + ")");
    }

    /// Normalizes the input before constructing; rejects near-zero vectors.
    static SpherePoint from_unnormalized(const Eigen::VectorXd& v) {
        double nrm = v.norm();
        if (nrm < 1e-14)
            throw std::invalid_argument("SpherePoint: cannot normalize near-zero vector");
        return SpherePoint(v / nrm);
    }

    /// i-th standard basis vector of R^{n+1}, a point of S^n.
    static SpherePoint axis(int n, int i) {
        if (i < 0 || i > n) throw std::invalid_argument("SpherePoint::axis: index out of range");
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
        v[i] = 1.0;
        return SpherePoint(std::move(v));
    }

    int dim() const { return static_cast<int>(x_.size()) - 1; }
    const Eigen::VectorXd& coords() const { return x_; }
    double operator[](int i) const { return x_[i]; }

    double dot(const SpherePoint& o) const { return x_.dot(o.x_); }
    SpherePoint antipode() const { return SpherePoint(-x_); }

private:
    Eigen::VectorXd x_;
};

/// Geodesic distance on the round sphere, arccos(x . y) in [0, pi].
inline double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
    double c = x.dot(y);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

/// Stereographic chart at base point p: coordinates on the hyperplane
/// L_p = {v : v.p = 0}, expressed in a fixed orthonormal frame of L_p.
/// The frame comes from the Householder reflection exchanging e_0 and p,
/// so for p = e_0 the chart reduces to the textbook formulas.
class StereoChart {
public:
    explicit StereoChart(SpherePoint p) : p_(std::move(p)) {
        const int n = p_.dim();
        const Eigen::VectorXd& pc = p_.coords();
        Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n + 1);
        e0[0] = 1.0;
        Eigen::VectorXd v = pc - e0;
        double vv = v.squaredNorm();
        frame_.resize(n + 1, n);
        if (vv < 1e-28) {
            // p = e_0: identity frame e_1 .. e_n
            frame_.setZero();
            for (int i = 0; i < n; ++i) frame_(i + 1, i) = 1.0;
        } else {
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd col = Eigen::VectorXd::Zero(n + 1);
                col[i + 1] = 1.0;
                col -= (2.0 * v[i + 1] / vv) * v;
                frame_.col(i) = col;
            }
        }
    }

    const SpherePoint& base() const { return p_; }

    /// sigma_p(x) = x' / (1 - x.p), x' the component of x orthogonal to p.
    /// Throws for x at (or numerically at) the pole p itself.
    Eigen::VectorXd project(const SpherePoint& x) const {
        double xp = x.dot(p_);
        double denom = 1.0 - xp;
        if (denom < 1e-14)
            throw std::domain_error("stereo_project: x coincides with the pole p");
        Eigen::VectorXd xperp = x.coords() - xp * p_.coords();
        return frame_.transpose() * xperp / denom;
    }

    /// sigma_p^{-1}(y) = ((|y|^2 - 1) p + 2 y) / (|y|^2 + 1) in the frame.
    SpherePoint unproject(const Eigen::VectorXd& y) const {
        if (y.size() != p_.dim())
            throw std::invalid_argument("stereo_unproject: wrong coordinate dimension");
        double s = y.squaredNorm();
        Eigen::VectorXd v = ((s - 1.0) / (s + 1.0)) * p_.coords() + (2.0 / (s + 1.0)) * (frame_ * y);
        return SpherePoint::from_unnormalized(v);
    }

private:
    SpherePoint p_;
    Eigen::MatrixXd frame_;  // columns: orthonormal basis of L_p
};

inline Eigen::VectorXd stereo_project(const SpherePoint& p, const SpherePoint& x) {
    return StereoChart(p).project(x);
}

inline SpherePoint stereo_unproject(const SpherePoint& p, const Eigen::VectorXd& y) {
    return StereoChart(p).unproject(y);
}

/// Conformal dilation theta_{p,t} = sigma_p^{-1} . delta_t . sigma_p, evaluated
/// by its closed form, which is regular at both poles:
///   theta_{p,t}(x) = [ (t^2(1+c) - (1-c)) p + 2 t x_perp ] / (t^2(1+c) + (1-c)),
/// with c = x.p and x_perp = x - c p. Fixes +-p, preserves level sets of
/// d_g(p, .), and theta_{p,1} = id.
inline SpherePoint conformal_dilation(const SpherePoint& p, double t, const SpherePoint& x) {
    if (!(t > 0.0)) throw std::invalid_argument("conformal_dilation: t > 0 required");
    double c = std::clamp(x.dot(p), -1.0, 1.0);
    double denom = t * t * (1.0 + c) + (1.0 - c);
    Eigen::VectorXd xperp = x.coords() - c * p.coords();
    Eigen::VectorXd v = ((t * t * (1.0 + c) - (1.0 - c)) / denom) * p.coords() +
                        (2.0 * t / denom) * xperp;
    return SpherePoint::from_unnormalized(v);
}

/// Pullback conformal factor omega of theta_{p,t}: theta* g = omega^{4/(n-2)} g.
/// In stereographic coordinates g = 4 (1+|y|^2)^{-2} |dy|^2, so
///   omega^{4/(n-2)}(x) = t^2 (1+|y|^2)^2 / (1+t^2 |y|^2)^2 = 4 t^2 / D(c)^2,
/// with c = x.p and D(c) = t^2(1+c) + (1-c). Returns omega itself.
inline double dilation_conformal_factor(const SpherePoint& p, double t, const SpherePoint& x) {
    if (!(t > 0.0)) throw std::invalid_argument("dilation_conformal_factor: t > 0 required");
    int n = p.dim();
    double c = std::clamp(x.dot(p), -1.0, 1.0);
    double D = t * t * (1.0 + c) + (1.0 - c);
    return std::pow(2.0 * t / D, 0.5 * (n - 2));
}

/// Hyperspherical coordinates: x^0 = cos phi_1, x^1 = sin phi_1 cos phi_2, ...
/// angles = (phi_1 .. phi_n) with phi_1..phi_{n-1} in [0,pi], phi_n in [0,2pi).
inline SpherePoint spherical_to_cartesian(const std::vector<double>& angles) {
    const int n = static_cast<int>(angles.size());
    if (n < 1) throw std::invalid_argument("spherical_to_cartesian: need at least one angle");
    Eigen::VectorXd x(n + 1);
    double sinprod = 1.0;
    for (int i = 0; i < n; ++i) {
        x[i] = sinprod * std::cos(angles[i]);
        sinprod *= std::sin(angles[i]);
    }
    x[n] = sinprod;
    return SpherePoint::from_unnormalized(x);
}

}  // namespace confspec
