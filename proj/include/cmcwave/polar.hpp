#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cmcwave/chebyshev.hpp"
#include "cmcwave/fft.hpp"

namespace cmcwave {

enum class RadialCoordinate { rho, sigma };

// sigma = rho / (1 + sqrt(1 - rho^2)), the flattening substitution with
// sigma d/dsigma = rho sqrt(1-rho^2) d/drho; inverse rho = 2 sigma/(1+sigma^2).
inline double sigma_of_rho(double rho) {
    if (rho < 0.0 || rho > 1.0)
        throw std::domain_error("sigma_of_rho: rho outside [0,1]");
    return rho / (1.0 + std::sqrt((1.0 - rho) * (1.0 + rho)));
}

inline double rho_of_sigma(double sigma) {
    if (sigma < 0.0 || sigma > 1.0)
        throw std::domain_error("rho_of_sigma: sigma outside [0,1]");
    return 2.0 * sigma / (1.0 + sigma * sigma);
}

// Metric coefficients of the self-similar frame at fixed tau:
// g_tautau = -1, g_rhorho = tau^2/(1-rho^2)^2, g_thetatheta = tau^2 rho^2/(1-rho^2),
// volume factor tau^2 rho/(1-rho^2)^{3/2}.
struct FrameCoefficients {
    double tau = 1.0;
    double g_tautau() const { return -1.0; }
    double g_rhorho(double rho) const {
        const double q = 1.0 - rho * rho;
        return tau * tau / (q * q);
    }
    double g_thetatheta(double rho) const {
        return tau * tau * rho * rho / (1.0 - rho * rho);
    }
    double volume_factor(double rho) const {
        const double q = 1.0 - rho * rho;
        return tau * tau * rho / (q * std::sqrt(q));
    }
};

// R^3-valued profile on the polar collocation grid: Chebyshev-Lobatto in the
// radial coordinate (rho or sigma), uniform-spectral in theta. Storage is
// row-major (radial index) x (theta index). The pole row is single-valued.
struct SelfSimilarProfile {
    RadialCoordinate param = RadialCoordinate::rho;
    int Nr = 0, Nt = 0;
    std::shared_ptr<const RadialGrid> radial;
    std::array<std::vector<double>, 3> comp;

    SelfSimilarProfile() = default;
    SelfSimilarProfile(int Nr_, int Nt_, RadialCoordinate p = RadialCoordinate::rho)
        : param(p), Nr(Nr_), Nt(Nt_), radial(std::make_shared<RadialGrid>(Nr_)) {
        if (Nt < 8 || Nt % 2 != 0)
            throw std::invalid_argument("SelfSimilarProfile: Nt must be even, >= 8");
        for (auto& c : comp) c.assign(static_cast<size_t>(Nr) * Nt, 0.0);
    }

    double& at(int c, int i, int j) { return comp[c][static_cast<size_t>(i) * Nt + j]; }
    double at(int c, int i, int j) const {
        return comp[c][static_cast<size_t>(i) * Nt + j];
    }
    double theta(int j) const { return 2.0 * std::numbers::pi * j / Nt; }
    double dtheta() const { return 2.0 * std::numbers::pi / Nt; }

    // Collapse the pole row to its theta-average (single-valued pole).
    void enforce_pole() {
        for (auto& c : comp) {
            double m = 0.0;
            for (int j = 0; j < Nt; ++j) m += c[j];
            m /= Nt;
            for (int j = 0; j < Nt; ++j) c[j] = m;
        }
    }

    // Subtract the outer-boundary theta-average from each component.
    void subtract_boundary_average() {
        for (auto& c : comp) {
            double m = 0.0;
            const size_t off = static_cast<size_t>(Nr - 1) * Nt;
            for (int j = 0; j < Nt; ++j) m += c[off + j];
            m /= Nt;
            for (auto& v : c) v -= m;
        }
    }
};

namespace polar_detail {

// Spectral theta-derivative of one scalar layer (Nr x Nt, row-major).
// order 1 applies i m (Nyquist zeroed); order 2 applies -m^2.
inline std::vector<double> theta_derivative(const std::vector<double>& f, int Nr,
                                            int Nt, int order) {
    std::vector<double> out(f.size());
    std::vector<cd> buf(Nt);
    for (int i = 0; i < Nr; ++i) {
        const double* row = f.data() + static_cast<size_t>(i) * Nt;
        for (int j = 0; j < Nt; ++j) buf[j] = cd(row[j], 0.0);
        fft1d_forward(Nt, buf.data());
        for (int j = 0; j < Nt; ++j) {
            const int m = j < Nt / 2 ? j : j - Nt;
            if (order == 1) {
                buf[j] *= (m == -Nt / 2) ? cd(0.0, 0.0) : cd(0.0, m);
            } else {
                buf[j] *= -static_cast<double>(m) * m;
            }
        }
        fft1d_backward(Nt, buf.data());
        double* orow = out.data() + static_cast<size_t>(i) * Nt;
        for (int j = 0; j < Nt; ++j) orow[j] = buf[j].real() / Nt;
    }
    return out;
}

// Radial derivative of one layer: D acting down the columns.
inline std::vector<double> radial_derivative(const RadialGrid& rg,
                                             const std::vector<double>& f,
                                             int Nt) {
    std::vector<double> out(f.size());
    for (int j = 0; j < Nt; ++j)
        rg.differentiate(f.data() + j, out.data() + j, Nt);
    return out;
}

inline std::vector<double> radial_derivative_transposed(
    const RadialGrid& rg, const std::vector<double>& f, int Nt) {
    std::vector<double> out(f.size());
    for (int j = 0; j < Nt; ++j)
        rg.differentiate_transposed(f.data() + j, out.data() + j, Nt);
    return out;
}

}  // namespace polar_detail

// Re-sample a profile onto the other radial coordinate by barycentric
// interpolation along the radius (theta grid is shared).
inline SelfSimilarProfile transform_parametrization(const SelfSimilarProfile& v,
                                                    RadialCoordinate target,
                                                    int target_Nr = -1) {
    if (target_Nr < 0) target_Nr = v.Nr;
    SelfSimilarProfile out(target_Nr, v.Nt, target);
    if (target == v.param) {
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < target_Nr; ++i)
                for (int j = 0; j < v.Nt; ++j) {
                    const double x = out.radial->nodes[i];
                    out.at(c, i, j) = v.radial->interpolate(
                        v.comp[c].data() + j, x, v.Nt);
                }
        return out;
    }
    for (int i = 0; i < target_Nr; ++i) {
        const double x = out.radial->nodes[i];
        const double source_x = target == RadialCoordinate::sigma
                                    ? rho_of_sigma(x)
                                    : sigma_of_rho(x);
        for (int c = 0; c < 3; ++c)
            for (int j = 0; j < v.Nt; ++j)
                out.at(c, i, j) =
                    v.radial->interpolate(v.comp[c].data() + j, source_x, v.Nt);
    }
    out.enforce_pole();
    return out;
}

}  // namespace cmcwave
