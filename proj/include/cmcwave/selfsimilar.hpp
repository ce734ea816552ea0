#pragma once

#include <cmath>
#include <stdexcept>

#include "cmcwave/polar.hpp"

namespace cmcwave {

// Per-component layers of the residual of the reduced self-similar equation.
struct ProfileResidual {
    int Nr = 0, Nt = 0;
    std::array<std::vector<double>, 3> comp;

    double at(int c, int i, int j) const {
        return comp[c][static_cast<size_t>(i) * Nt + j];
    }

    // RMS with respect to the drho dtheta measure (Clenshaw-Curtis weights in
    // the radius, uniform in theta).
    double weighted_rms(const RadialGrid& rg) const {
        double num = 0.0, den = 0.0;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < Nr; ++i) {
                const double w = rg.quad[i];
                for (int j = 0; j < Nt; ++j) {
                    const double r = comp[c][static_cast<size_t>(i) * Nt + j];
                    num += w * r * r;
                    den += w;
                }
            }
        return std::sqrt(num / den);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : comp)
            for (double v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

// Residual of the rho-form reduced equation,
//   rho sqrt(1-rho^2) d_rho( rho sqrt(1-rho^2) d_rho v ) + d^2_theta v
//     - 2 rho v_rho ^ v_theta,
// which stays regular on the whole of [0,1]. The pole row vanishes
// identically (W(0)=0 and the pole is single-valued) and is reported as zero.
inline ProfileResidual reduced_residual(const SelfSimilarProfile& v) {
    if (v.param != RadialCoordinate::rho)
        throw std::invalid_argument("reduced_residual: expects rho parametrization");
    if (v.Nr < 16)
        throw std::invalid_argument("reduced_residual: grid too coarse (< 16 radial nodes)");
    const RadialGrid& rg = *v.radial;
    const int Nr = v.Nr, Nt = v.Nt;

    std::vector<double> W(Nr);
    for (int i = 0; i < Nr; ++i) {
        const double r = rg.nodes[i];
        W[i] = r * std::sqrt((1.0 - r) * (1.0 + r));
    }

    // The equation sees only derivatives of v; evaluating on v minus its mean
    // keeps the residual floor proportional to the oscillation amplitude.
    std::array<std::vector<double>, 3> vr, vt, lhs;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> f = v.comp[c];
        double mean = 0.0;
        for (double x : f) mean += x;
        mean /= f.size();
        for (double& x : f) x -= mean;

        vr[c] = polar_detail::radial_derivative(rg, f, Nt);
        vt[c] = polar_detail::theta_derivative(f, Nr, Nt, 1);
        std::vector<double> t = vr[c];
        for (int i = 0; i < Nr; ++i)
            for (int j = 0; j < Nt; ++j) t[static_cast<size_t>(i) * Nt + j] *= W[i];
        std::vector<double> Dt = polar_detail::radial_derivative(rg, t, Nt);
        lhs[c] = polar_detail::theta_derivative(f, Nr, Nt, 2);
        for (int i = 0; i < Nr; ++i)
            for (int j = 0; j < Nt; ++j)
                lhs[c][static_cast<size_t>(i) * Nt + j] +=
                    W[i] * Dt[static_cast<size_t>(i) * Nt + j];
    }

    ProfileResidual res;
    res.Nr = Nr;
    res.Nt = Nt;
    for (int c = 0; c < 3; ++c) res.comp[c].assign(static_cast<size_t>(Nr) * Nt, 0.0);
    for (int i = 1; i < Nr; ++i) {
        const double rho = rg.nodes[i];
        for (int j = 0; j < Nt; ++j) {
            const size_t k = static_cast<size_t>(i) * Nt + j;
            const double wx = vr[1][k] * vt[2][k] - vr[2][k] * vt[1][k];
            const double wy = vr[2][k] * vt[0][k] - vr[0][k] * vt[2][k];
            const double wz = vr[0][k] * vt[1][k] - vr[1][k] * vt[0][k];
            res.comp[0][k] = lhs[0][k] - 2.0 * rho * wx;
            res.comp[1][k] = lhs[1][k] - 2.0 * rho * wy;
            res.comp[2][k] = lhs[2][k] - 2.0 * rho * wz;
        }
    }
    return res;
}

// Residual of the sigma-form
//   v_ss + v_s/s + v_tt/s^2 - (2/(s sqrt(1-rho^2))) v_s ^ v_theta,
// evaluated on interior rows only: the pole row is excluded (1/s factors) and
// the boundary row is excluded because the right-side coefficient diverges at
// rho = 1. Used as a cross-check of the rho-form away from the endpoints.
inline ProfileResidual sigma_form_residual(const SelfSimilarProfile& v) {
    if (v.param != RadialCoordinate::sigma)
        throw std::invalid_argument("sigma_form_residual: expects sigma parametrization");
    if (v.Nr < 16)
        throw std::invalid_argument("sigma_form_residual: grid too coarse (< 16 radial nodes)");
    const RadialGrid& rg = *v.radial;
    const int Nr = v.Nr, Nt = v.Nt;

    std::array<std::vector<double>, 3> vs, vss, vt, vtt;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> f = v.comp[c];
        double mean = 0.0;
        for (double x : f) mean += x;
        mean /= f.size();
        for (double& x : f) x -= mean;
        vs[c] = polar_detail::radial_derivative(rg, f, Nt);
        vss[c] = polar_detail::radial_derivative(rg, vs[c], Nt);
        vt[c] = polar_detail::theta_derivative(f, Nr, Nt, 1);
        vtt[c] = polar_detail::theta_derivative(f, Nr, Nt, 2);
    }

    ProfileResidual res;
    res.Nr = Nr;
    res.Nt = Nt;
    for (int c = 0; c < 3; ++c) res.comp[c].assign(static_cast<size_t>(Nr) * Nt, 0.0);
    for (int i = 1; i < Nr - 1; ++i) {
        const double s = rg.nodes[i];
        const double rho = rho_of_sigma(s);
        const double root = (1.0 - s * s) / (1.0 + s * s);  // sqrt(1-rho^2)
        const double coef = 2.0 / (s * root);
        for (int j = 0; j < Nt; ++j) {
            const size_t k = static_cast<size_t>(i) * Nt + j;
            const double wx = vs[1][k] * vt[2][k] - vs[2][k] * vt[1][k];
            const double wy = vs[2][k] * vt[0][k] - vs[0][k] * vt[2][k];
            const double wz = vs[0][k] * vt[1][k] - vs[1][k] * vt[0][k];
            res.comp[0][k] = vss[0][k] + vs[0][k] / s + vtt[0][k] / (s * s) - coef * wx;
            res.comp[1][k] = vss[1][k] + vs[1][k] / s + vtt[1][k] / (s * s) - coef * wy;
            res.comp[2][k] = vss[2][k] + vs[2][k] / s + vtt[2][k] / (s * s) - coef * wz;
        }
        (void)rho;
    }
    return res;
}

// The conserved flux of the reduced equation,
//   I(rho) = ∫_0^{2pi} [ rho^2 (1-rho^2) |v_rho|^2 - |v_theta|^2 ] dtheta,
// rho-independent (and equal to zero) for exact solutions.
inline double identity_integral(const SelfSimilarProfile& v, double rho) {
    if (v.param != RadialCoordinate::rho)
        throw std::invalid_argument("identity_integral: expects rho parametrization");
    const RadialGrid& rg = *v.radial;
    const int Nt = v.Nt;
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
        const std::vector<double> vr =
            polar_detail::radial_derivative(rg, v.comp[c], Nt);
        const std::vector<double> vt =
            polar_detail::theta_derivative(v.comp[c], v.Nr, Nt, 1);
        for (int j = 0; j < Nt; ++j) {
            const double dvr = rg.interpolate(vr.data() + j, rho, Nt);
            const double dvt = rg.interpolate(vt.data() + j, rho, Nt);
            acc += (rho * rho * (1.0 - rho * rho) * dvr * dvr - dvt * dvt);
        }
    }
    return acc * v.dtheta();
}

// Max spread of I(rho) over the interior radial window [lo, hi].
inline double identity_spread(const SelfSimilarProfile& v, double lo = 0.05,
                              double hi = 0.95) {
    double mn = 1e300, mx = -1e300;
    for (int i = 0; i < v.Nr; ++i) {
        const double r = v.radial->nodes[i];
        if (r < lo || r > hi) continue;
        const double I = identity_integral(v, r);
        mn = std::min(mn, I);
        mx = std::max(mx, I);
    }
    return mx - mn;
}

struct PohozaevResult {
    double via_interior = 0.0;  // divergence-form disc integration
    double via_boundary = 0.0;  // direct trace ∫ (1/2)|v_sigma|^2 dtheta at sigma=1
};

// Boundary energy of the Pohozaev-type identity: dotting the flat-Laplacian
// form of the equation with sigma v_sigma turns the disc integral into the
// boundary term ∫ (1/2)|v_sigma|^2 at sigma = 1, which must vanish for true
// solutions. Requires v_theta ~ 0 on the outer boundary.
inline PohozaevResult pohozaev_boundary_integral(const SelfSimilarProfile& v,
                                                 double boundary_tol = 1e-8) {
    if (v.param != RadialCoordinate::sigma)
        throw std::invalid_argument(
            "pohozaev_boundary_integral: expects sigma parametrization");
    const RadialGrid& rg = *v.radial;
    const int Nr = v.Nr, Nt = v.Nt;
    const double dth = v.dtheta();

    std::array<std::vector<double>, 3> vs, vss, vtt, vt;
    for (int c = 0; c < 3; ++c) {
        vs[c] = polar_detail::radial_derivative(rg, v.comp[c], Nt);
        vss[c] = polar_detail::radial_derivative(rg, vs[c], Nt);
        vt[c] = polar_detail::theta_derivative(v.comp[c], Nr, Nt, 1);
        vtt[c] = polar_detail::theta_derivative(v.comp[c], Nr, Nt, 2);
    }

    // Boundary-condition check: theta-variation at sigma = 1.
    double scale = 1e-30, btheta = 0.0;
    for (int c = 0; c < 3; ++c) {
        const size_t off = static_cast<size_t>(Nr - 1) * Nt;
        for (int j = 0; j < Nt; ++j) {
            btheta += vt[c][off + j] * vt[c][off + j] * dth;
            scale = std::max(scale, std::abs(vs[c][off + j]));
        }
    }
    if (btheta > boundary_tol * std::max(1.0, scale * scale))
        throw std::invalid_argument(
            "pohozaev_boundary_integral: v_theta does not vanish on sigma = 1");

    PohozaevResult out;
    // Interior route: ∫∫ v_s.(s^2 v_ss + s v_s + v_tt) ds dtheta plus the
    // |v_theta|^2/2 boundary term equals the boundary energy.
    double disc = 0.0;
    for (int i = 0; i < Nr; ++i) {
        const double s = rg.nodes[i];
        double row = 0.0;
        for (int j = 0; j < Nt; ++j) {
            const size_t k = static_cast<size_t>(i) * Nt + j;
            for (int c = 0; c < 3; ++c)
                row += vs[c][k] * (s * s * vss[c][k] + s * vs[c][k] + vtt[c][k]);
        }
        disc += rg.quad[i] * row * dth;
    }
    out.via_interior = disc + 0.5 * btheta;

    double trace = 0.0;
    const size_t off = static_cast<size_t>(Nr - 1) * Nt;
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < Nt; ++j)
            trace += 0.5 * vs[c][off + j] * vs[c][off + j] * dth;
    out.via_boundary = trace;
    return out;
}

}  // namespace cmcwave
