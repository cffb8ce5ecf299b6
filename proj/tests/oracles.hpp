#pragma once

// Test-only oracles, independent of the library's computational paths:
// adaptive Simpson quadrature, central finite differences, a Jacobi-rotation
// generalized eigensolver, and the g~-side of the conformal energy evaluated
// through mu's second derivatives instead of the transformation law.

#include <Eigen/Dense>

#include <cmath>
#include <functional>

#include "confspec/conformal.hpp"
#include "confspec/rng.hpp"
#include "confspec/sphere.hpp"

namespace oracles {

inline confspec::SpherePoint random_point(confspec::Rng& rng, int n) {
    Eigen::VectorXd v(n + 1);
    double nrm = 0.0;
    do {
        for (int i = 0; i <= n; ++i) v[i] = rng.gaussian();
        nrm = v.norm();
    } while (nrm < 1e-12);
    return confspec::SpherePoint::from_unnormalized(v);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Jacobi-rotation symmetric eigenvalues (no Eigen solver involved).
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd A, int sweeps = 64) {
    const int n = (int)A.rows();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * A(p, q), A(q, q) - A(p, p));
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Eigen::VectorXd ev = A.diagonal();
    std::sort(ev.data(), ev.data() + n);
    return ev;
}

/// Generalized symmetric-definite eigenvalues via explicit M^{-1/2} from the
/// Jacobi eigendecomposition of M, then Jacobi on M^{-1/2} S M^{-1/2}.
inline Eigen::VectorXd generalized_eigen_bruteforce(const Eigen::MatrixXd& S,
                                                    const Eigen::MatrixXd& M) {
    const int n = (int)M.rows();
    Eigen::MatrixXd A = M;
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * A(p, q), A(q, q) - A(p, p));
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    Eigen::VectorXd d = A.diagonal();
    Eigen::MatrixXd Minvhalf = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) Minvhalf += V.col(i) * V.col(i).transpose() / std::sqrt(d[i]);
    return jacobi_eigenvalues(Minvhalf * S * Minvhalf);
}

/// g~-side of the conformal energy, computed WITHOUT the transformation law:
///   int |grad~ f|^2_{g~} + c_n R_{g~} f^2 dnu~
///     = int |grad f|^2 mu^2 dnu + int (Box_g mu) mu f^2 dnu,
/// using |grad~ f|^2_{g~} = mu^{-4/(n-2)} |grad f|^2 and c_n R_{g~} =
/// (Box_g mu) mu^{-(n+2)/(n-2)} (the law applied to f = 1). Needs mu''.
inline double conformal_energy_tilde_side(const confspec::ZonalFunction& f,
                                          const confspec::ConformalFactor& mu,
                                          const confspec::QuadratureGrid& grid) {
    confspec::CurvatureConstants cc(mu.dim());
    const int n = mu.dim();
    return grid.integrate_phi([&](double phi) {
        double m = mu.mu_phi(phi), dm = mu.dmu_dphi(phi), d2m = mu.d2mu_dphi2(phi);
        double lap_mu = d2m + (n - 1) * (std::cos(phi) / std::sin(phi)) * dm;
        double box_mu = -lap_mu + cc.c_n_R_g * m;
        double fv = f.value(phi), fd = f.deriv(phi);
        return fd * fd * m * m + box_mu * m * fv * fv;
    });
}

}  // namespace oracles
