#pragma once

// Lipschitz test functions supported on balls, complements of balls, and
// annuli. Each is built from the latitude function x_p composed with a
// conformal dilation, so the radial profile and its derivative are known in
// closed form:
//   ball:        F(phi) = cos(theta_t(phi)) on [0, 2R), 0 beyond, t = tan R
//   complement:  F(phi) = -cos(theta_tau(phi)) on (r/2, pi], 0 before, tau = tan(r/4)
//   annulus:     product of the two.
// Here cos(theta_t(phi)) = N(u)/D(u) with u = cos phi,
// N = (t^2+1)u + (t^2-1), D = (t^2-1)u + (t^2+1).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "confspec/conformal.hpp"
#include "confspec/quadrature.hpp"
#include "confspec/sphere.hpp"

namespace confspec {

/// Geodesic annulus A(p; r, R) = { x : r <= d(x,p) < R }.
struct Annulus {
    SpherePoint center;
    double r;
    double R;

    Annulus(SpherePoint p, double r_, double R_) : center(std::move(p)), r(r_), R(R_) {
        if (!(r >= 0.0 && r < R && R <= M_PI))
            throw std::invalid_argument("Annulus: need 0 <= r < R <= pi");
    }

    bool contains_distance(double d) const { return d >= r && d < R; }
    bool contains(const SpherePoint& x) const {
        return contains_distance(geodesic_distance(center, x));
    }
    /// 2A = A(p; r/2, 2R); the outer radius saturates at pi as a set on S^n.
    Annulus doubled() const { return Annulus(center, 0.5 * r, std::min(2.0 * R, M_PI)); }
};

/// t with theta_{p,t}(B(p,2R)) = B(p, pi/2); solves to tan R.
inline double t_of_R(double R) {
    if (!(R > 0.0 && R < 0.5 * M_PI))
        throw std::domain_error("t_of_R: R in (0, pi/2) required");
    return std::tan(R);
}

/// tau with theta_{p,tau}(B(p, r/2)) = B(p, pi/2); same boundary equation at
/// radius r/2, giving tan(r/4).
inline double tau_of_r(double r) {
    if (!(r > 0.0 && r < M_PI)) throw std::domain_error("tau_of_r: r in (0, pi) required");
    return std::tan(0.25 * r);
}

/// Value of the ball test function on its own boundary sphere,
/// f(R) = (2 cos R + 1) / (2 cos^2 R + 2 cos R + 1); increasing on (0, pi/2)
/// with limit 3/5 at 0.
inline double boundary_profile_f(double R) {
    if (!(R > 0.0 && R < 0.5 * M_PI))
        throw std::domain_error("boundary_profile_f: R in (0, pi/2) required");
    double c = std::cos(R);
    return (2.0 * c + 1.0) / (2.0 * c * c + 2.0 * c + 1.0);
}

/// int_{-1}^{1} t^2 / (t^2(1+u) + (1-u))^2 du, the inner integral of the
/// gradient-energy estimate; equals 1/2 for every t > 0.
inline double dilation_gradient_integral(double t) {
    if (!(t > 0.0)) throw std::domain_error("dilation_gradient_integral: t > 0 required");
    return integrate_legendre(
        [t](double u) {
            double D = t * t * (1.0 + u) + (1.0 - u);
            return t * t / (D * D);
        },
        -1.0, 1.0, 240);
}

/// Zonal test function with explicit radial profile and derivative. Values
/// lie in [0,1]; the profile is piecewise smooth with kinks at the support
/// boundaries.
class TestFunction final : public ZonalFunction {
public:
    enum class Kind { Ball, Complement, AnnulusKind };

    static TestFunction ball(SpherePoint p, double R) {
        TestFunction tf(std::move(p), Kind::Ball, 0.0, R);
        tf.t_ = t_of_R(R);
        tf.kinks_.push_back(2.0 * R);
        return tf;
    }

    static TestFunction complement(SpherePoint p, double r) {
        TestFunction tf(std::move(p), Kind::Complement, r, M_PI);
        tf.tau_ = tau_of_r(r);
        tf.kinks_.push_back(0.5 * r);
        return tf;
    }

    /// General annulus function phi_{p,r,R} = phi_{p,R} * phibar_{p,r}.
    /// Conventions: r = 0 degenerates to the ball function; R >= pi/2 (where
    /// t(R) is undefined) replaces the outer factor by the constant 1, i.e.
    /// the "ball" is all of S^n and no outer cutoff is applied.
    static TestFunction annulus(SpherePoint p, double r, double R) {
        if (r == 0.0 && R < 0.5 * M_PI) return ball(std::move(p), R);
        if (r == 0.0) return constant_one(std::move(p));
        TestFunction tf(std::move(p), Kind::AnnulusKind, r, R);
        tf.tau_ = tau_of_r(r);
        tf.kinks_.push_back(0.5 * r);
        if (R < 0.5 * M_PI) {
            tf.t_ = t_of_R(R);
            tf.kinks_.push_back(2.0 * R);
        } else {
            tf.outer_constant_ = true;
        }
        std::sort(tf.kinks_.begin(), tf.kinks_.end());
        return tf;
    }

    const SpherePoint& center() const { return center_; }
    Kind kind() const { return kind_; }
    double inner_radius() const { return r_; }
    double outer_radius() const { return R_; }
    /// Radii where the profile derivative jumps.
    const std::vector<double>& kinks() const { return kinks_; }

    double value(double phi) const override { return ball_factor(phi) * complement_factor(phi); }

    /// dF/dphi; at a kink radius, the limit from inside the support.
    double deriv(double phi) const override {
        return dball_factor(phi) * complement_factor(phi) +
               ball_factor(phi) * dcomplement_factor(phi);
    }

    double value_at(const SpherePoint& x) const { return value(geodesic_distance(center_, x)); }

    /// |grad F|_g = |F'(phi)| for a zonal function.
    double grad_norm(double phi) const { return std::abs(deriv(phi)); }
    double grad_norm_at(const SpherePoint& x) const {
        return grad_norm(geodesic_distance(center_, x));
    }

private:
    TestFunction(SpherePoint p, Kind k, double r, double R)
        : center_(std::move(p)), kind_(k), r_(r), R_(R) {}

    static TestFunction constant_one(SpherePoint p) {
        TestFunction tf(std::move(p), Kind::AnnulusKind, 0.0, M_PI);
        tf.outer_constant_ = true;
        tf.const_one_ = true;
        return tf;
    }

    static double cos_theta(double t, double u) {
        double N = (t * t + 1.0) * u + (t * t - 1.0);
        double D = (t * t - 1.0) * u + (t * t + 1.0);
        return N / D;
    }
    static double dcos_theta_dphi(double t, double phi) {
        double u = std::cos(phi);
        double D = (t * t - 1.0) * u + (t * t + 1.0);
        return -std::sin(phi) * 4.0 * t * t / (D * D);
    }

    bool has_ball_factor() const { return kind_ != Kind::Complement && !outer_constant_; }
    bool has_complement_factor() const { return kind_ != Kind::Ball && !const_one_; }

    double ball_factor(double phi) const {
        if (!has_ball_factor()) return 1.0;
        if (phi >= 2.0 * R_) return 0.0;
        return std::max(cos_theta(t_, std::cos(phi)), 0.0);
    }
    double dball_factor(double phi) const {
        if (!has_ball_factor()) return 0.0;
        if (phi >= 2.0 * R_) return 0.0;
        return dcos_theta_dphi(t_, phi);
    }
    double complement_factor(double phi) const {
        if (!has_complement_factor()) return 1.0;
        if (phi < 0.5 * r_) return 0.0;
        return std::max(-cos_theta(tau_, std::cos(phi)), 0.0);
    }
    double dcomplement_factor(double phi) const {
        if (!has_complement_factor()) return 0.0;
        if (phi < 0.5 * r_) return 0.0;
        return -dcos_theta_dphi(tau_, phi);
    }

    SpherePoint center_;
    Kind kind_;
    double r_, R_;
    double t_ = 1.0, tau_ = 1.0;
    bool outer_constant_ = false;
    bool const_one_ = false;
    std::vector<double> kinks_;
};

inline double phi_ball(const SpherePoint& p, double R, const SpherePoint& x) {
    return TestFunction::ball(p, R).value_at(x);
}
inline double phi_complement(const SpherePoint& p, double r, const SpherePoint& x) {
    return TestFunction::complement(p, r).value_at(x);
}
inline double phi_annulus(const SpherePoint& p, double r, double R, const SpherePoint& x) {
    return TestFunction::annulus(p, r, R).value_at(x);
}

namespace detail {
/// Integrates g(phi) sin^{n-1}(phi) over [0,pi], splitting at the profile
/// kinks so each piece is smooth; scaled by Vol(S^{n-1}).
template <class G>
double integrate_radial_pieces(const TestFunction& tf, int n, G&& g, int nodes_per_piece = 80) {
    std::vector<double> cuts{0.0};
    for (double k : tf.kinks())
        if (k > 0.0 && k < M_PI) cuts.push_back(k);
    cuts.push_back(M_PI);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-14) continue;
        total += integrate_legendre(
            [&](double phi) { return g(phi) * std::pow(std::sin(phi), n - 1); }, cuts[i],
            cuts[i + 1], nodes_per_piece);
    }
    return sphere_volume(n - 1) * total;
}
}  // namespace detail

/// int_{S^n} |grad phi|^n dnu. For the ball function this is bounded by
/// 2 Vol(S^{n-1}) for every R, combining the pointwise estimate
/// D >= 2 t sin(phi) with the inner integral value 1/2.
inline double energy_n_norm(const TestFunction& tf, int n) {
    return detail::integrate_radial_pieces(tf, n, [&](double phi) {
        return std::pow(tf.grad_norm(phi), n);
    });
}

/// Round conformal energy int |grad phi|^2 + c_n R_g phi^2 dnu; by the
/// transformation law this equals the g~-energy of phi/mu for any valid mu.
inline double round_energy(const TestFunction& tf, int n) {
    CurvatureConstants cc(n);
    return detail::integrate_radial_pieces(tf, n, [&](double phi) {
        double v = tf.value(phi), dv = tf.deriv(phi);
        return dv * dv + cc.c_n_R_g * v * v;
    });
}

}  // namespace confspec
