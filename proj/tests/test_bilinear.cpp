#include <catch2/catch_amalgamated.hpp>

#include "cmcwave/bilinear.hpp"

using namespace cmcwave;

namespace {
constexpr double kPi = std::numbers::pi;

FrequencyProfile fixed_profile(uint64_t seed) {
    CounterRng rng(seed, 0);
    return random_frequency_profile(rng);
}
}  // namespace

TEST_CASE("convolution density vanishes below the cone") {
    FrequencyProfile f = fixed_profile(1), g = fixed_profile(2);
    CHECK(convolution_density(f, g, {2.0, 0.0}, 1.5) == cd(0.0, 0.0));
    CHECK(convolution_density(f, g, {2.0, 0.0}, 2.0) == cd(0.0, 0.0));
}

TEST_CASE("radial profiles give a rotation-invariant density") {
    FrequencyProfile f, g;
    f.bumps.push_back({cd(0.7, 0.0), {0.0, 0.0}, 0.8});
    g.bumps.push_back({cd(1.1, 0.0), {0.0, 0.0}, 0.6});
    const double m = 1.1, tau = 2.3;
    const cd base = convolution_density(f, g, {m, 0.0}, tau);
    for (double phi : {0.3, 1.7, 4.4}) {
        const cd rot =
            convolution_density(f, g, {m * std::cos(phi), m * std::sin(phi)}, tau);
        CHECK(std::abs(rot - base) <= 1e-10 * std::abs(base));
    }
}

TEST_CASE("density against the grid space-time transform") {
    // Two routes to the windowed space-time Fourier transform of
    // phi_+ psi_+ at a fixed spatial mode:
    //   A. time series of the grid product coefficient, Gaussian window,
    //      discrete transform in t;
    //   B. the analytic density D(xi, tau) convolved with the window kernel,
    //      (1/(2pi)^2) ∫ D(tau) W(tau - tau*) dtau.
    const Grid g(64, 12.0 * kPi);
    FrequencyProfile fp = fixed_profile(11), gp = fixed_profile(12);
    const ScalarField f_hat = fp.sample(g);
    const ScalarField g_hat = gp.sample(g);

    const int ix0 = 4, iy0 = 2;  // xi0 = (4, 2) * (1/6)
    const Vec2 xi0{g.xi(ix0), g.xi(iy0)};
    const double m0 = norm2d(xi0);

    const double T_win = 24.0, dt = 0.05;
    const int steps = static_cast<int>(T_win / dt);
    const double tc = 0.5 * T_win, sw = T_win / 10.0;

    // Route A: windowed transform of the product mode time series.
    std::vector<cd> series(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        const double t = k * dt;
        ScalarField phi = half_wave_profile(f_hat, t, +1).as(Representation::physical);
        ScalarField psi = half_wave_profile(g_hat, t, +1).as(Representation::physical);
        ScalarField prod(g, Representation::physical);
        for (size_t i = 0; i < prod.size(); ++i) prod[i] = phi[i] * psi[i];
        prod.to_spectral();
        series[k] = prod.at(iy0, ix0);
    }
    auto route_a = [&](double tau_star) {
        cd acc(0.0, 0.0);
        for (int k = 0; k <= steps; ++k) {
            const double t = k * dt;
            const double w =
                std::exp(-(t - tc) * (t - tc) / (2.0 * sw * sw)) *
                ((k == 0 || k == steps) ? 0.5 : 1.0);
            acc += w * std::polar(1.0, -tau_star * t) * series[k];
        }
        return acc * dt;
    };

    // Route B: density convolved with the Gaussian window kernel.
    const double dtau = 0.02;
    const double tau_lo = m0 + 1e-9, tau_hi = m0 + 9.0;
    const int ntau = static_cast<int>((tau_hi - tau_lo) / dtau);
    std::vector<cd> density(ntau + 1);
    for (int l = 0; l <= ntau; ++l)
        density[l] = convolution_density(fp, gp, xi0, tau_lo + l * dtau);
    auto route_b = [&](double tau_star) {
        cd acc(0.0, 0.0);
        for (int l = 0; l <= ntau; ++l) {
            const double tau = tau_lo + l * dtau;
            const double arg = tau - tau_star;
            const cd W = std::sqrt(2.0 * kPi) * sw *
                         std::exp(-0.5 * sw * sw * arg * arg) *
                         std::polar(1.0, tc * arg);
            acc += W * density[l] * ((l == 0 || l == ntau) ? 0.5 : 1.0);
        }
        return acc * dtau / (4.0 * kPi * kPi);
    };

    double ref = 0.0;
    std::vector<double> taus;
    for (double ts = m0 + 0.3; ts <= m0 + 4.0; ts += 0.37) taus.push_back(ts);
    std::vector<cd> A, B;
    for (double ts : taus) {
        A.push_back(route_a(ts));
        B.push_back(route_b(ts));
        ref = std::max(ref, std::abs(B.back()));
    }
    REQUIRE(ref > 0.0);
    for (size_t i = 0; i < taus.size(); ++i) {
        CHECK(std::abs(A[i] - B[i]) <= 0.05 * ref);
    }
}

TEST_CASE("identical forward evolutions annihilate Q12") {
    const Grid g(32, 12.0 * kPi);
    const ScalarField f_hat = fixed_profile(21).sample(g);
    const ScalarField phi = half_wave_profile(f_hat, 0.9, +1);
    const ScalarField q =
        null_form(NullFormKind::qij(1, 2), phi, std::nullopt, phi, std::nullopt);
    CHECK(sobolev_norm(q, 0.5) <= 1e-12);
}

TEST_CASE("estimate_constant sanity and determinism") {
    const Grid g(32, 12.0 * kPi);
    ConstantEstimate a = estimate_constant(3, g, 3.0, 99, 0.1, 1);
    CHECK(a.empirical_C > 0.0);
    CHECK(std::isfinite(a.empirical_C));
    for (const auto& [name, st] : a.pairs) {
        CHECK(st.max > 0.0);
        CHECK(std::isfinite(st.max));
        CHECK(st.ratios.size() == 3);
    }

    ConstantEstimate b = estimate_constant(3, g, 3.0, 99, 0.1, 2);
    for (const auto& [name, st] : a.pairs) {
        const auto& other = b.pairs.at(name);
        for (size_t i = 0; i < st.ratios.size(); ++i)
            CHECK(st.ratios[i] == other.ratios[i]);
    }
}

TEST_CASE("windowed ratio is monotone in the window") {
    const Grid g(32, 12.0 * kPi);
    ConstantEstimate small = estimate_constant(2, g, 2.0, 5, 0.1, 1);
    ConstantEstimate large = estimate_constant(2, g, 4.0, 5, 0.1, 1);
    for (const auto& [name, st] : small.pairs) {
        const auto& other = large.pairs.at(name);
        for (size_t i = 0; i < st.ratios.size(); ++i)
            CHECK(other.ratios[i] >= st.ratios[i] * (1.0 - 1e-12));
    }
}

TEST_CASE("invalid trial counts are rejected") {
    const Grid g(16, 12.0 * kPi);
    CHECK_THROWS_AS(estimate_constant(0, g, 1.0, 1), std::invalid_argument);
}
