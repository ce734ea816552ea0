#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cmcwave/rng.hpp"

namespace cmcwave {

using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) {
    return a[0] * b[0] + a[1] * b[1];
}
inline double cross(const Vec2& a, const Vec2& b) {
    return a[0] * b[1] - a[1] * b[0];
}
inline double norm2d(const Vec2& a) { return std::hypot(a[0], a[1]); }

namespace detail {

// Stable pieces of the change of variables tau = |xi - rho w| + rho in the
// polar parametrization xi = m (cos phi, sin phi), omega at angle gamma from
// xi, tau = m (1 + dr). All degenerate differences are formed without
// cancellation:
//   tau - xi.w        = m (dr + 2 sin^2(gamma/2))
//   tau^2 - |xi|^2    = m^2 dr (2 + dr)
//   xi ^ w            = m sin(gamma).
struct KernelPieces {
    double m = 0.0, dr = 0.0, gamma = 0.0;
    double d = 0.0;      // tau - xi.omega
    double s = 0.0;      // xi1 w2 - xi2 w1
    double tau2m = 0.0;  // tau^2 - |xi|^2

    KernelPieces(double m_, double dr_, double gamma_)
        : m(m_), dr(dr_), gamma(gamma_) {
        const double sh = std::sin(0.5 * gamma);
        d = m * (dr + 2.0 * sh * sh);
        s = m * std::sin(gamma);
        tau2m = m * m * dr * (2.0 + dr);
    }

    static KernelPieces at_origin(double tau) {
        KernelPieces p(1.0, 0.0, 0.0);
        p.m = 0.0;
        p.d = tau;
        p.s = 0.0;
        p.tau2m = tau * tau;
        return p;
    }

    double tau() const { return m == 0.0 ? d : m * (1.0 + dr); }
    double rho() const { return tau2m / (2.0 * d); }
    double drho_dtau() const { return (d * d + s * s) / (2.0 * d * d); }
    double quotient() const { return s * s / (2.0 * (d * d + s * s)); }
};

inline KernelPieces pieces_from(const Vec2& xi, double tau, const Vec2& omega) {
    const double m = norm2d(xi);
    if (tau < m)
        throw std::domain_error("kernel: tau < |xi| is outside the cone support");
    const double w = norm2d(omega);
    if (std::abs(w - 1.0) > 1e-12)
        throw std::invalid_argument("kernel: omega must be a unit vector");
    if (m == 0.0) return KernelPieces::at_origin(tau);
    const double dr = (tau - m) / m;
    const double gamma = std::atan2(cross(xi, omega), dot(xi, omega));
    return KernelPieces(m, dr, gamma);
}

}  // namespace detail

// rho(xi, tau, omega) = (tau^2 - |xi|^2) / (2 (tau - xi.omega)), the radial
// solution of |xi - rho omega| + rho = tau.
inline double rho_of(const Vec2& xi, double tau, const Vec2& omega) {
    const double m = norm2d(xi);
    if (tau < m) throw std::domain_error("rho_of: requires tau >= |xi|");
    if (m == 0.0) return 0.5 * tau;
    if (tau == m) {
        if (dot(xi, omega) >= m * (1.0 - 1e-14))
            throw std::domain_error("rho_of: degenerate denominator on the cone");
        return 0.0;
    }
    return detail::pieces_from(xi, tau, omega).rho();
}

// d rho / d tau = (tau^2 - 2 tau xi.omega + |xi|^2) / (2 (tau - xi.omega)^2),
// strictly positive for tau > |xi|.
inline double jacobian(const Vec2& xi, double tau, const Vec2& omega) {
    if (tau <= norm2d(xi))
        throw std::domain_error("jacobian: requires tau > |xi|");
    return detail::pieces_from(xi, tau, omega).drho_dtau();
}

// The pointwise kernel bound of the Q12 estimate:
//   rho^2 (xi1 w2 - xi2 w1)^2 / (tau^2-|xi|^2)^2 * dtau/drho
//     = (xi1 w2 - xi2 w1)^2 / (2 (tau^2 - 2 tau xi.w + |xi|^2))  <=  1/2.
// The denominator is evaluated through the two-dimensional identity
// (tau - xi.w)^2 + (xi1 w2 - xi2 w1)^2, which makes the 1/2 bound structural
// in floating point.
inline double kernel_quotient(const Vec2& xi, double tau, const Vec2& omega) {
    if (tau <= norm2d(xi))
        throw std::domain_error("kernel_quotient: requires tau > |xi|");
    return detail::pieces_from(xi, tau, omega).quotient();
}

// One verified sample of the change of variables: all derived quantities plus
// defect diagnostics used by the scans.
struct KernelSample {
    Vec2 xi{0.0, 0.0};
    double tau = 0.0;
    Vec2 omega{1.0, 0.0};
    double rho = 0.0;
    double drho_dtau = 0.0;
    double quotient = 0.0;
    double identity_defect = 0.0;   // | |xi - rho w| + rho - tau |
    double simplify_defect = 0.0;   // simplified vs unsimplified quotient
};

namespace detail {

inline KernelSample make_sample(double m, double dr, double gamma, double phi) {
    KernelPieces p(m, dr, gamma);
    KernelSample smp;
    const double c = std::cos(phi), s = std::sin(phi);
    smp.xi = {m * c, m * s};
    smp.omega = {std::cos(phi + gamma), std::sin(phi + gamma)};
    smp.tau = p.tau();
    smp.rho = p.rho();
    smp.drho_dtau = p.drho_dtau();
    smp.quotient = p.quotient();

    const Vec2 diff{smp.xi[0] - smp.rho * smp.omega[0],
                    smp.xi[1] - smp.rho * smp.omega[1]};
    smp.identity_defect = std::abs(norm2d(diff) + smp.rho - smp.tau);

    // (eq:keyQ12++) left side assembled literally, from the stable pieces.
    const double unsimplified =
        smp.rho * smp.rho * p.s * p.s / (p.tau2m * p.tau2m) / smp.drho_dtau;
    smp.simplify_defect = std::abs(unsimplified - smp.quotient);
    return smp;
}

}  // namespace detail

struct KernelScanResult {
    uint64_t samples = 0;
    double max_quotient = 0.0;
    double max_identity_defect = 0.0;
    double max_simplify_defect = 0.0;
    double max_jacobian_rel_err = 0.0;  // vs central differences (MC scan only)
    double min_jacobian = 1e300;
    KernelSample argmax;
};

// Seeded Monte-Carlo scan. |xi| is log-uniform in [1e-2, 1e2], the relative
// cone excess tau/|xi| - 1 log-uniform in [1e-4, 10], the omega angle bounded
// away from exact alignment so the finite-difference Jacobian check stays in
// its asymptotic regime.
inline KernelScanResult kernel_scan_monte_carlo(uint64_t samples, uint64_t seed,
                                                bool check_jacobian_fd = true) {
    KernelScanResult res;
    res.samples = samples;
    for (uint64_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        const double m = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
        const double dr = std::exp(rng.uniform(std::log(1e-4), std::log(10.0)));
        const double gamma = rng.uniform(0.05, 2.0 * std::numbers::pi - 0.05);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        KernelSample smp = detail::make_sample(m, dr, gamma, phi);
        if (smp.quotient > res.max_quotient) {
            res.max_quotient = smp.quotient;
            res.argmax = smp;
        }
        res.max_identity_defect =
            std::max(res.max_identity_defect, smp.identity_defect);
        res.max_simplify_defect =
            std::max(res.max_simplify_defect, smp.simplify_defect);
        res.min_jacobian = std::min(res.min_jacobian, smp.drho_dtau);

        if (check_jacobian_fd) {
            const double delta = m * dr;
            // rho(tau) has its pole at distance d = tau - xi.omega; the step
            // must resolve that scale for the central difference to sit in
            // its asymptotic regime.
            const double d = detail::KernelPieces(m, dr, gamma).d;
            const double h = std::min({1e-5 * std::max(1.0, smp.tau),
                                       3e-4 * d, 0.25 * delta});
            const double rp = detail::KernelPieces(m, (delta + h) / m, gamma).rho();
            const double rm = detail::KernelPieces(m, (delta - h) / m, gamma).rho();
            const double fd = (rp - rm) / (2.0 * h);
            res.max_jacobian_rel_err =
                std::max(res.max_jacobian_rel_err,
                         std::abs(fd - smp.drho_dtau) / smp.drho_dtau);
        }
    }
    return res;
}

// Deterministic lattice scan over (|xi|, tau/|xi|, angle), logarithmic in the
// first two directions; reaches much deeper into the cone than the MC scan.
inline KernelScanResult kernel_scan_lattice(int points_per_axis) {
    KernelScanResult res;
    const int P = points_per_axis;
    res.samples = static_cast<uint64_t>(P) * P * P;
    for (int a = 0; a < P; ++a) {
        const double m =
            std::exp(std::log(1e-2) + (std::log(1e2) - std::log(1e-2)) * a / (P - 1));
        for (int b = 0; b < P; ++b) {
            const double dr = std::exp(std::log(1e-6) +
                                       (std::log(10.0) - std::log(1e-6)) * b / (P - 1));
            for (int c = 0; c < P; ++c) {
                const double gamma = 0.02 + (2.0 * std::numbers::pi - 0.04) * c / (P - 1);
                KernelSample smp = detail::make_sample(m, dr, gamma, 0.0);
                if (smp.quotient > res.max_quotient) {
                    res.max_quotient = smp.quotient;
                    res.argmax = smp;
                }
                res.max_identity_defect =
                    std::max(res.max_identity_defect, smp.identity_defect);
                res.max_simplify_defect =
                    std::max(res.max_simplify_defect, smp.simplify_defect);
                res.min_jacobian = std::min(res.min_jacobian, smp.drho_dtau);
            }
        }
    }
    return res;
}

}  // namespace cmcwave
