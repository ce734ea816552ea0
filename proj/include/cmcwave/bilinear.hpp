#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "cmcwave/kernel.hpp"
#include "cmcwave/nullform.hpp"
#include "cmcwave/parallel.hpp"
#include "cmcwave/rng.hpp"

namespace cmcwave {

// Continuum spectral profile: a sum of isotropic Gaussian bumps in frequency
// together with their conjugate mirror images, so the physical field is real.
// Smooth, mean-free once the zero mode is dropped, with finite homogeneous
// norms of every order.
struct FrequencyProfile {
    struct Bump {
        cd amplitude;
        Vec2 center;
        double width;
    };
    std::vector<Bump> bumps;

    cd evaluate(const Vec2& xi) const {
        cd v(0.0, 0.0);
        for (const auto& b : bumps) {
            const double dp0 = xi[0] - b.center[0], dp1 = xi[1] - b.center[1];
            const double dm0 = xi[0] + b.center[0], dm1 = xi[1] + b.center[1];
            const double iw2 = 0.5 / (b.width * b.width);
            v += b.amplitude * std::exp(-(dp0 * dp0 + dp1 * dp1) * iw2);
            v += std::conj(b.amplitude) * std::exp(-(dm0 * dm0 + dm1 * dm1) * iw2);
        }
        return v;
    }

    // Spectral grid samples with continuum normalization; zero mode removed.
    ScalarField sample(const Grid& g) const {
        ScalarField f(g, Representation::spectral);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                f.at(iy, ix) = evaluate({g.xi(ix), g.xi(iy)});
        f[0] = cd(0.0, 0.0);
        return f;
    }
};

// Random two-bump profile; centers and widths chosen so the grid defaults
// resolve the bump and the dealias band contains its tails.
inline FrequencyProfile random_frequency_profile(CounterRng& rng) {
    FrequencyProfile p;
    for (int b = 0; b < 2; ++b) {
        const double r = rng.uniform(0.4, 1.0);
        const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double amp = 0.5 + rng.uniform();
        p.bumps.push_back({amp * std::polar(1.0, phase),
                           {r * std::cos(a), r * std::sin(a)},
                           rng.uniform(0.35, 0.55)});
    }
    return p;
}

// Space-time Fourier density of the product of two forward half-waves,
//   D(xi, tau) = 2 chi_{tau>|xi|} / (tau^2-|xi|^2)
//                  * ∫_{S1} f_hat(xi - rho w) g_hat(rho w) rho dw,
// with rho = rho(xi, tau, w); S1 quadrature by the periodic trapezoid rule.
inline cd convolution_density(const FrequencyProfile& f,
                              const FrequencyProfile& g, const Vec2& xi,
                              double tau, int quadrature_order = 512) {
    const double m = norm2d(xi);
    if (tau <= m) return cd(0.0, 0.0);
    cd acc(0.0, 0.0);
    for (int j = 0; j < quadrature_order; ++j) {
        const double a = 2.0 * std::numbers::pi * j / quadrature_order;
        const Vec2 w{std::cos(a), std::sin(a)};
        const double rho = rho_of(xi, tau, w);
        const Vec2 left{xi[0] - rho * w[0], xi[1] - rho * w[1]};
        const Vec2 right{rho * w[0], rho * w[1]};
        acc += f.evaluate(left) * g.evaluate(right) * rho;
    }
    acc *= 2.0 * std::numbers::pi / quadrature_order;
    return acc * (2.0 / ((tau - m) * (tau + m)));
}

enum class SignPair { pp, mm, pm, mp };

inline std::string to_string(SignPair p) {
    switch (p) {
        case SignPair::pp: return "++";
        case SignPair::mm: return "--";
        case SignPair::pm: return "+-";
        case SignPair::mp: return "-+";
    }
    return "?";
}

constexpr std::array<SignPair, 4> all_sign_pairs{SignPair::pp, SignPair::mm,
                                                 SignPair::pm, SignPair::mp};

// phi_s(t) = e^{s i t sqrt(-Lap)} f / sqrt(-Lap), built mode-wise exactly.
inline ScalarField half_wave_profile(const ScalarField& f_hat, double t, int sign) {
    const Grid& g = f_hat.grid();
    ScalarField out(g, Representation::spectral);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double r = g.xi_abs(iy, ix);
            if (r == 0.0) continue;
            out.at(iy, ix) =
                f_hat.at(iy, ix) / r * std::polar(1.0, sign * t * r);
        }
    return out;
}

struct PairStatistics {
    double max = 0.0;
    double mean = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    std::vector<double> ratios;  // one per trial
};

struct ConstantEstimate {
    int trials = 0;
    int n = 0;
    double box_length = 0.0;
    double window = 0.0;  // T_w
    double dt = 0.0;
    uint64_t seed = 0;
    std::map<std::string, PairStatistics> pairs;
    double empirical_C = 0.0;  // max windowed ratio over trials and sign pairs
};

namespace detail {

inline PairStatistics summarize(std::vector<double> ratios) {
    PairStatistics st;
    st.ratios = ratios;
    if (ratios.empty()) return st;
    double sum = 0.0;
    for (double r : ratios) {
        st.max = std::max(st.max, r);
        sum += r;
    }
    st.mean = sum / ratios.size();
    std::sort(ratios.begin(), ratios.end());
    st.q50 = ratios[ratios.size() / 2];
    st.q90 = ratios[static_cast<size_t>(0.9 * (ratios.size() - 1))];
    return st;
}

}  // namespace detail

// Empirical study of the bilinear estimate
//   ||(-Lap)^{1/4} Q12(phi_s1, psi_s2)||_{L2([0,Tw] x box)}
//     <= C ||f||_{H^{1/2}} ||g||_{H^{1/2}}.
// Each windowed ratio is a certified lower bound for the constant (the window
// integral is monotone in T_w); the reported empirical_C is their maximum.
inline ConstantEstimate estimate_constant(int trials, const Grid& g,
                                          double window, uint64_t seed,
                                          double dt = 0.1, int threads = 1) {
    if (trials < 1) throw std::invalid_argument("estimate_constant: trials >= 1");
    ConstantEstimate est;
    est.trials = trials;
    est.n = g.n;
    est.box_length = g.box_length;
    est.window = window;
    est.dt = dt;
    est.seed = seed;

    const int steps = std::max(2, static_cast<int>(std::lround(window / dt)));
    const double h = window / steps;
    const NullFormKind q12 = NullFormKind::qij(1, 2);

    std::array<std::vector<double>, 4> ratios;
    for (auto& r : ratios) r.assign(trials, 0.0);

    parallel_for(trials, threads, [&](int trial) {
        CounterRng rng(seed, static_cast<uint64_t>(trial));
        const FrequencyProfile fp = random_frequency_profile(rng);
        const FrequencyProfile gp = random_frequency_profile(rng);
        const ScalarField f_hat = fp.sample(g);
        const ScalarField g_hat = gp.sample(g);
        const double nf = sobolev_norm(f_hat, 0.5);
        const double ng = sobolev_norm(g_hat, 0.5);
        if (nf == 0.0 || ng == 0.0)
            throw std::invalid_argument("estimate_constant: zero-norm profile");

        for (int p = 0; p < 4; ++p) {
            const int s1 = (all_sign_pairs[p] == SignPair::pp ||
                            all_sign_pairs[p] == SignPair::pm)
                               ? 1
                               : -1;
            const int s2 = (all_sign_pairs[p] == SignPair::pp ||
                            all_sign_pairs[p] == SignPair::mp)
                               ? 1
                               : -1;
            detail::Kahan acc;
            for (int j = 0; j <= steps; ++j) {
                const double t = j * h;
                const ScalarField phi = half_wave_profile(f_hat, t, s1);
                const ScalarField psi = half_wave_profile(g_hat, t, s2);
                const ScalarField q =
                    null_form(q12, phi, std::nullopt, psi, std::nullopt);
                const double nq = sobolev_norm(q, 0.5);  // (-Lap)^{1/4} in L2
                const double w = (j == 0 || j == steps) ? 0.5 : 1.0;
                acc.add(w * nq * nq);
            }
            ratios[p][trial] = std::sqrt(acc.sum * h) / (nf * ng);
        }
    });

    for (int p = 0; p < 4; ++p) {
        PairStatistics st = detail::summarize(ratios[p]);
        est.empirical_C = std::max(est.empirical_C, st.max);
        est.pairs[to_string(all_sign_pairs[p])] = std::move(st);
    }
    return est;
}

}  // namespace cmcwave
