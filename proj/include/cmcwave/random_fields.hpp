#pragma once

#include <cmath>

#include "cmcwave/rng.hpp"
#include "cmcwave/spectral.hpp"

namespace cmcwave {

// Random mean-free scalar field with spectrum capped at |k| <= kmax per axis
// (band-limited, so quadratic products are alias-free under the 2/3 rule).
// Mode amplitudes decay smoothly; conjugate symmetry keeps the field real.
inline ScalarField random_band_limited(const Grid& g, CounterRng& rng, int kmax,
                                       double amplitude = 1.0) {
    ScalarField f(g, Representation::spectral);
    const double L2 = g.box_length * g.box_length;
    for (int ky = -kmax; ky <= kmax; ++ky) {
        for (int kx = -kmax; kx <= kmax; ++kx) {
            if (kx == 0 && ky == 0) continue;
            // Fill each conjugate pair once, keyed by lexicographic order.
            if (ky < 0 || (ky == 0 && kx < 0)) continue;
            const double k2 = kx * kx + ky * ky;
            const double mag =
                amplitude * std::exp(-0.5 * k2 / (kmax * kmax / 4.0 + 1.0));
            const cd c = mag * cd(rng.normal(), rng.normal());
            const int iy = (ky + g.n) % g.n, ix = (kx + g.n) % g.n;
            const int jy = (g.n - iy) % g.n, jx = (g.n - ix) % g.n;
            f.at(iy, ix) = c * L2;
            f.at(jy, jx) = std::conj(c) * L2;
        }
    }
    return f;
}

inline VectorField random_band_limited_vec(const Grid& g, CounterRng& rng,
                                           int kmax, double amplitude = 1.0) {
    VectorField f(g, Representation::spectral);
    for (int c = 0; c < 3; ++c) f[c] = random_band_limited(g, rng, kmax, amplitude);
    return f;
}

// Cauchy data scaled so that ||u0||_{H^{3/2}} + ||u1||_{H^{1/2}} = K exactly.
inline CauchyData random_cauchy_data(const Grid& g, CounterRng& rng, double K,
                                     int kmax = -1) {
    if (kmax < 0) kmax = g.dealias_cutoff() / 2;
    VectorField u0 = random_band_limited_vec(g, rng, kmax);
    VectorField u1 = random_band_limited_vec(g, rng, kmax);
    CauchyData data(std::move(u0), std::move(u1));
    const double s = K / data.size_bound;
    data.u0 = s * data.u0;
    data.u1 = s * data.u1;
    data.size_bound = K;
    return data;
}

// Single-mode data: u0 carries one cosine mode in one component, u1 another.
inline CauchyData single_mode_cauchy_data(const Grid& g, double K, int kx = 1,
                                          int ky = 0) {
    VectorField u0(g, Representation::spectral), u1(g, Representation::spectral);
    const double L2 = g.box_length * g.box_length;
    const int iy = (ky + g.n) % g.n, ix = (kx + g.n) % g.n;
    const int jy = (g.n - iy) % g.n, jx = (g.n - ix) % g.n;
    u0[0].at(iy, ix) = 0.5 * L2;
    u0[0].at(jy, jx) = 0.5 * L2;
    u1[1].at(iy, ix) = 0.5 * L2;
    u1[1].at(jy, jx) = 0.5 * L2;
    CauchyData data(std::move(u0), std::move(u1));
    const double s = K / data.size_bound;
    data.u0 = s * data.u0;
    data.u1 = s * data.u1;
    data.size_bound = K;
    return data;
}

}  // namespace cmcwave
