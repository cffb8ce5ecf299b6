#pragma once

// Conformal factors mu on S^n and the quantities attached to the conformal
// metric g~ = mu^{4/(n-2)} g: the volume measure nu~ (density mu^{2n/(n-2)}),
// the measure m (density mu^{4/(n-2)}), energies and Rayleigh quotients of
// the conformal Laplacian. Everything on the g~ side is routed through the
// conformal transformation law to the round metric, so the scalar curvature
// of g~ is never assembled.
//
// Factors are zonal: mu depends on x only through u = cos(d_g(pole, x)).

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "confspec/quadrature.hpp"
#include "confspec/sphere.hpp"

namespace confspec {

/// c_n = (n-2)/(4(n-1)) and the round scalar curvature R_g = n(n-1);
/// their product n(n-2)/4 is the zeroth eigenvalue of the round conformal
/// Laplacian.
struct CurvatureConstants {
    int n;
    double c_n;
    double R_g;
    double c_n_R_g;
    explicit CurvatureConstants(int n_)
        : n(n_), c_n((n_ - 2) / (4.0 * (n_ - 1))), R_g(double(n_) * (n_ - 1)),
          c_n_R_g(n_ * (n_ - 2) / 4.0) {
        if (n_ < 3) throw std::invalid_argument("CurvatureConstants: n >= 3 required");
    }
};

/// Radial profile h(u) of a zonal function, with analytic u-derivatives up
/// to second order.
class ZonalProfile {
public:
    virtual ~ZonalProfile() = default;
    virtual double value(double u) const = 0;
    virtual double deriv(double u) const = 0;
    virtual double deriv2(double u) const = 0;
    /// Degree if h is a polynomial in u, -1 otherwise.
    virtual int polynomial_degree() const { return -1; }
    /// Canonical family string, parseable by parse_profile.
    virtual std::string describe() const = 0;
};

using ProfilePtr = std::shared_ptr<const ZonalProfile>;

class ConstantProfile final : public ZonalProfile {
public:
    explicit ConstantProfile(double c) : c_(c) {}
    double value(double) const override { return c_; }
    double deriv(double) const override { return 0.0; }
    double deriv2(double) const override { return 0.0; }
    int polynomial_degree() const override { return 0; }
    std::string describe() const override {
        std::ostringstream os;
        os << "const:" << c_;
        return os.str();
    }

private:
    double c_;
};

/// Pullback factor of the conformal dilation theta_{p,t}:
/// h(u) = (2t / D(u))^{(n-2)/2}, D(u) = t^2 (1+u) + (1-u).
class DilationProfile final : public ZonalProfile {
public:
    DilationProfile(int n, double t) : m_(0.5 * (n - 2)), t_(t) {
        if (!(t > 0.0)) throw std::invalid_argument("DilationProfile: t > 0 required");
    }
    double value(double u) const override { return std::pow(2.0 * t_ / D(u), m_); }
    double deriv(double u) const override {
        return -m_ * a() * std::pow(2.0 * t_, m_) * std::pow(D(u), -m_ - 1.0);
    }
    double deriv2(double u) const override {
        return m_ * (m_ + 1.0) * a() * a() * std::pow(2.0 * t_, m_) * std::pow(D(u), -m_ - 2.0);
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "bubble:" << t_;
        return os.str();
    }
    double t() const { return t_; }

private:
    double a() const { return t_ * t_ - 1.0; }
    double D(double u) const { return t_ * t_ * (1.0 + u) + (1.0 - u); }
    double m_, t_;
};

/// h(u) = inner(-u); recenters a profile at the antipodal pole.
class ReflectedProfile final : public ZonalProfile {
public:
    explicit ReflectedProfile(ProfilePtr inner) : inner_(std::move(inner)) {}
    double value(double u) const override { return inner_->value(-u); }
    double deriv(double u) const override { return -inner_->deriv(-u); }
    double deriv2(double u) const override { return inner_->deriv2(-u); }
    int polynomial_degree() const override { return inner_->polynomial_degree(); }
    std::string describe() const override { return "reflect(" + inner_->describe() + ")"; }

private:
    ProfilePtr inner_;
};

class ProductProfile final : public ZonalProfile {
public:
    ProductProfile(ProfilePtr a, ProfilePtr b) : a_(std::move(a)), b_(std::move(b)) {}
    double value(double u) const override { return a_->value(u) * b_->value(u); }
    double deriv(double u) const override {
        return a_->deriv(u) * b_->value(u) + a_->value(u) * b_->deriv(u);
    }
    double deriv2(double u) const override {
        return a_->deriv2(u) * b_->value(u) + 2.0 * a_->deriv(u) * b_->deriv(u) +
               a_->value(u) * b_->deriv2(u);
    }
    int polynomial_degree() const override {
        int da = a_->polynomial_degree(), db = b_->polynomial_degree();
        return (da >= 0 && db >= 0) ? da + db : -1;
    }
    std::string describe() const override {
        return "product(" + a_->describe() + "," + b_->describe() + ")";
    }

private:
    ProfilePtr a_, b_;
};

class PolynomialProfile final : public ZonalProfile {
public:
    explicit PolynomialProfile(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("PolynomialProfile: empty coefficient list");
    }
    double value(double u) const override {
        double v = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * u + *it;
        return v;
    }
    double deriv(double u) const override {
        double v = 0.0;
        for (int k = static_cast<int>(c_.size()) - 1; k >= 1; --k) v = v * u + k * c_[k];
        return v;
    }
    double deriv2(double u) const override {
        double v = 0.0;
        for (int k = static_cast<int>(c_.size()) - 1; k >= 2; --k)
            v = v * u + double(k) * (k - 1) * c_[k];
        return v;
    }
    int polynomial_degree() const override { return static_cast<int>(c_.size()) - 1; }
    std::string describe() const override {
        std::ostringstream os;
        os << "poly:";
        for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
        return os.str();
    }
    const std::vector<double>& coeffs() const { return c_; }

private:
    std::vector<double> c_;
};

inline ProfilePtr make_constant(double c) { return std::make_shared<ConstantProfile>(c); }
inline ProfilePtr make_bubble(int n, double t) { return std::make_shared<DilationProfile>(n, t); }
inline ProfilePtr make_two_bubble(int n, double t) {
    return std::make_shared<ProductProfile>(make_bubble(n, t),
                                            std::make_shared<ReflectedProfile>(make_bubble(n, t)));
}
inline ProfilePtr make_polynomial(std::vector<double> coeffs) {
    return std::make_shared<PolynomialProfile>(std::move(coeffs));
}

/// Parses a canonical family string: "const[:c]", "bubble:t", "twobubble:t",
/// "poly:c0,c1,...".
inline ProfilePtr parse_profile(int n, const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse_list = [](const std::string& s) {
        std::vector<double> xs;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) xs.push_back(std::stod(tok));
        }
        return xs;
    };
    if (name == "const") return make_constant(args.empty() ? 1.0 : std::stod(args));
    if (name == "bubble") return make_bubble(n, std::stod(args));
    if (name == "twobubble") return make_two_bubble(n, std::stod(args));
    if (name == "poly") {
        auto cs = parse_list(args);
        if (cs.empty()) throw std::invalid_argument("parse_profile: poly needs coefficients");
        return make_polynomial(std::move(cs));
    }
    throw std::invalid_argument("parse_profile: unknown family '" + name + "'");
}

/// A positive zonal conformal factor mu defining g~ = mu^{4/(n-2)} g, with
/// the derived densities of nu~ and m. Immutable after construction; the
/// profile is validated against the positivity floor on a dense u-grid.
class ConformalFactor {
public:
    ConformalFactor(int n, ProfilePtr h, SpherePoint pole, double floor_eps = 1e-8)
        : n_(n), h_(std::move(h)), pole_(std::move(pole)), floor_(floor_eps) {
        if (n_ < 3) throw std::invalid_argument("ConformalFactor: n >= 3 required");
        if (pole_.dim() != n_) throw std::invalid_argument("ConformalFactor: pole dimension mismatch");
        if (!(floor_ > 0.0)) throw std::invalid_argument("ConformalFactor: floor must be positive");
        const int samples = 4001;
        for (int i = 0; i < samples; ++i) {
            double u = -1.0 + 2.0 * i / (samples - 1);
            double v = h_->value(u);
            if (!std::isfinite(v) || v < floor_)
                throw std::invalid_argument("ConformalFactor: profile below floor at u = " +
                                            std::to_string(u));
        }
    }

    ConformalFactor(int n, ProfilePtr h) : ConformalFactor(n, std::move(h), SpherePoint::axis(n, 0)) {}

    int dim() const { return n_; }
    const SpherePoint& pole() const { return pole_; }
    const ZonalProfile& profile() const { return *h_; }
    ProfilePtr profile_ptr() const { return h_; }
    double floor() const { return floor_; }

    double exponent_m() const { return 4.0 / (n_ - 2); }
    double exponent_volume() const { return 2.0 * n_ / (n_ - 2); }

    double mu_u(double u) const { return h_->value(u); }
    double mu_at(const SpherePoint& x) const { return h_->value(std::clamp(x.dot(pole_), -1.0, 1.0)); }
    double mu_phi(double phi) const { return h_->value(std::cos(phi)); }
    /// d mu / d phi_1.
    double dmu_dphi(double phi) const { return -std::sin(phi) * h_->deriv(std::cos(phi)); }
    /// d^2 mu / d phi_1^2.
    double d2mu_dphi2(double phi) const {
        double u = std::cos(phi), s = std::sin(phi);
        return s * s * h_->deriv2(u) - u * h_->deriv(u);
    }

    /// Density of m = mu^{4/(n-2)} dnu.
    double m_density_u(double u) const { return std::pow(h_->value(u), exponent_m()); }
    /// Density of nu~ = mu^{2n/(n-2)} dnu.
    double nu_tilde_density_u(double u) const { return std::pow(h_->value(u), exponent_volume()); }

    /// Degree of mu^{4/(n-2)} as a polynomial in u, or -1 if not polynomial.
    int weight_poly_degree() const {
        int d = h_->polynomial_degree();
        double e = exponent_m();
        if (d < 0 || e != std::floor(e)) return -1;
        return d * static_cast<int>(e);
    }

    /// (max - min)/min of the profile over a dense u-grid.
    double relative_oscillation() const {
        const int samples = 2001;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < samples; ++i) {
            double v = h_->value(-1.0 + 2.0 * i / (samples - 1));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return (hi - lo) / lo;
    }

private:
    int n_;
    ProfilePtr h_;
    SpherePoint pole_;
    double floor_;
};

/// m(S^n) = int mu^{4/(n-2)} dnu.
inline double measure_m_total(const ConformalFactor& mu, const QuadratureGrid& grid) {
    return grid.integrate_u([&](double u) { return mu.m_density_u(u); });
}

/// Vol(S^n, g~) = int mu^{2n/(n-2)} dnu.
inline double volume_tilde_total(const ConformalFactor& mu, const QuadratureGrid& grid) {
    return grid.integrate_u([&](double u) { return mu.nu_tilde_density_u(u); });
}

/// Zonal Lipschitz function of the colatitude phi_1, with d/dphi derivative.
class ZonalFunction {
public:
    virtual ~ZonalFunction() = default;
    virtual double value(double phi) const = 0;
    virtual double deriv(double phi) const = 0;
};

/// f(phi) = P(cos phi) for a polynomial profile P.
class ProfileZonalFunction final : public ZonalFunction {
public:
    explicit ProfileZonalFunction(ProfilePtr p) : p_(std::move(p)) {}
    double value(double phi) const override { return p_->value(std::cos(phi)); }
    double deriv(double phi) const override { return -std::sin(phi) * p_->deriv(std::cos(phi)); }

private:
    ProfilePtr p_;
};

/// f = 1/mu, the Hersch trial function.
class ReciprocalMuFunction final : public ZonalFunction {
public:
    explicit ReciprocalMuFunction(const ConformalFactor& mu) : mu_(&mu) {}
    double value(double phi) const override { return 1.0 / mu_->mu_phi(phi); }
    double deriv(double phi) const override {
        double m = mu_->mu_phi(phi);
        return -mu_->dmu_dphi(phi) / (m * m);
    }

private:
    const ConformalFactor* mu_;
};

/// Conformal energy of f in the metric g~, evaluated on the round side via
/// the transformation law:
///   int |grad~ f|^2 + c_n R~ f^2 dnu~  =  int |grad(mu f)|^2 + c_n R_g (mu f)^2 dnu.
/// f and mu must be zonal about the same pole.
inline double conformal_energy(const ZonalFunction& f, const ConformalFactor& mu,
                               const QuadratureGrid& grid) {
    CurvatureConstants cc(mu.dim());
    double s = grid.integrate_phi([&](double phi) {
        double g = mu.mu_phi(phi) * f.value(phi);
        double dg = mu.dmu_dphi(phi) * f.value(phi) + mu.mu_phi(phi) * f.deriv(phi);
        if (!std::isfinite(g) || !std::isfinite(dg))
            throw std::invalid_argument("conformal_energy: test function not Lipschitz at a node");
        return dg * dg + cc.c_n_R_g * g * g;
    });
    return s;
}

/// Rayleigh quotient R(f) = energy / int f^2 dnu~ for the conformal
/// Laplacian of g~.
inline double rayleigh_quotient(const ZonalFunction& f, const ConformalFactor& mu,
                                const QuadratureGrid& grid) {
    double num = conformal_energy(f, mu, grid);
    double den = grid.integrate_phi([&](double phi) {
        double v = f.value(phi);
        return v * v * mu.nu_tilde_density_u(std::cos(phi));
    });
    if (!(den > 1e-300))
        throw std::invalid_argument("rayleigh_quotient: degenerate test function (zero L2 norm)");
    return num / den;
}

}  // namespace confspec
