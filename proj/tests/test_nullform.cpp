#include <catch2/catch_amalgamated.hpp>

#include "cmcwave/nullform.hpp"
#include "cmcwave/random_fields.hpp"

using namespace cmcwave;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs_physical(const ScalarField& f) {
    ScalarField p = f.as(Representation::physical);
    double m = 0.0;
    for (size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

double max_abs_physical(const VectorField& f) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) m = std::max(m, max_abs_physical(f[c]));
    return m;
}
}  // namespace

TEST_CASE("null form kind invariants") {
    CHECK_THROWS_AS(NullFormKind::qij(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(NullFormKind::qij(0, 2), std::invalid_argument);
    CHECK_NOTHROW(NullFormKind::qij(2, 1));
}

TEST_CASE("mismatched grids rejected") {
    Grid a(16, 2.0), b(16, 3.0);
    ScalarField u(a, Representation::physical), v(b, Representation::physical);
    CHECK_THROWS_AS(
        null_form(NullFormKind::qij(1, 2), u, std::nullopt, v, std::nullopt),
        std::invalid_argument);
}

TEST_CASE("Q12 antisymmetry and self-annihilation") {
    Grid g(32, 4.0);
    CounterRng rng(2);
    ScalarField u = random_band_limited(g, rng, 5);
    ScalarField v = random_band_limited(g, rng, 5);
    const NullFormKind q12 = NullFormKind::qij(1, 2);

    ScalarField uu = null_form(q12, u, std::nullopt, u, std::nullopt);
    CHECK(max_abs_physical(uu) <= 1e-12 * std::max(1.0, max_abs_physical(u)));

    ScalarField uv = null_form(q12, u, std::nullopt, v, std::nullopt);
    ScalarField vu = null_form(q12, v, std::nullopt, u, std::nullopt);
    double worst = 0.0;
    for (size_t i = 0; i < uv.size(); ++i)
        worst = std::max(worst, std::abs(uv[i] + vu[i]));
    CHECK(worst <= 1e-12 * std::max(1.0, max_abs_physical(uv)));
}

TEST_CASE("Q12 of separated profiles is the plain product") {
    // u with content only along x, v only along y: the second term of Q12
    // vanishes mode by mode, so Q12 = u_x v_y.
    Grid g(32, 2.0 * kPi);
    ScalarField u(g, Representation::physical), v(g, Representation::physical);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            u.at(iy, ix) = std::sin(2.0 * kPi * 2 * ix / g.n);
            v.at(iy, ix) = std::cos(2.0 * kPi * 3 * iy / g.n);
        }
    ScalarField q = null_form(NullFormKind::qij(1, 2), u, std::nullopt, v,
                              std::nullopt)
                        .as(Representation::physical);
    const double kx = 2.0 * 2.0 * kPi / g.box_length;
    const double ky = 3.0 * 2.0 * kPi / g.box_length;
    double worst = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double want = kx * std::cos(2.0 * kPi * 2 * ix / g.n) *
                                (-ky) * std::sin(2.0 * kPi * 3 * iy / g.n);
            worst = std::max(worst, std::abs(q.at(iy, ix).real() - want));
        }
    CHECK(worst <= 1e-11);
}

TEST_CASE("Q00 on a free plane wave matches the closed form") {
    // u(t) = cos(|xi| t) cos(xi.x) at t = 0.4; Q00(u,u) = -(du/dt)^2 + |grad u|^2.
    Grid g(32, 2.0 * kPi);
    const int kx = 1, ky = 2;
    const double xi0 = g.xi_abs(ky, kx);
    const double t = 0.4;
    ScalarField u(g, Representation::physical), ut(g, Representation::physical);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double phase = 2.0 * kPi * (kx * ix + ky * iy) / g.n;
            u.at(iy, ix) = std::cos(xi0 * t) * std::cos(phase);
            ut.at(iy, ix) = -xi0 * std::sin(xi0 * t) * std::cos(phase);
        }
    ScalarField q = null_form(NullFormKind::q00(), u, ut, u, ut)
                        .as(Representation::physical);
    double worst = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double phase = 2.0 * kPi * (kx * ix + ky * iy) / g.n;
            const double dut = -xi0 * std::sin(xi0 * t) * std::cos(phase);
            const double gsq = xi0 * xi0 * std::cos(xi0 * t) * std::cos(xi0 * t) *
                               std::sin(phase) * std::sin(phase);
            const double want = -dut * dut + gsq;
            worst = std::max(worst, std::abs(q.at(iy, ix).real() - want));
        }
    CHECK(worst <= 1e-10);
}

TEST_CASE("Q00 and Q0j require time derivatives") {
    Grid g(16, 1.0);
    ScalarField u(g, Representation::physical);
    CHECK_THROWS_AS(null_form(NullFormKind::q00(), u, std::nullopt, u, std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(null_form(NullFormKind::q0j(1), u, std::nullopt, u, std::nullopt),
                    std::invalid_argument);
}

TEST_CASE("bilinearity in each slot") {
    Grid g(32, 4.0);
    CounterRng rng(17);
    const NullFormKind q12 = NullFormKind::qij(1, 2);
    ScalarField u = random_band_limited(g, rng, 5);
    ScalarField v = random_band_limited(g, rng, 5);
    ScalarField w = random_band_limited(g, rng, 5);
    const double a = 1.7, b = -0.6;

    ScalarField combo(g, Representation::spectral);
    for (size_t i = 0; i < combo.size(); ++i) combo[i] = a * u[i] + b * v[i];
    ScalarField lhs = null_form(q12, combo, std::nullopt, w, std::nullopt);
    ScalarField qu = null_form(q12, u, std::nullopt, w, std::nullopt);
    ScalarField qv = null_form(q12, v, std::nullopt, w, std::nullopt);
    double worst = 0.0, scale = 0.0;
    for (size_t i = 0; i < lhs.size(); ++i) {
        worst = std::max(worst, std::abs(lhs[i] - (a * qu[i] + b * qv[i])));
        scale = std::max(scale, std::abs(lhs[i]));
    }
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("cmc nonlinearity") {
    Grid g(32, 2.0 * kPi);

    SECTION("constant maps to zero") {
        VectorField u(g, Representation::physical);
        for (int c = 0; c < 3; ++c)
            for (size_t i = 0; i < u[c].size(); ++i) u[c][i] = 1.0 + c;
        CHECK(max_abs_physical(cmc_nonlinearity(u)) <= 1e-13);
    }

    SECTION("separated profile gives (0, 0, 2 phi' psi')") {
        VectorField u(g, Representation::physical);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                u[0].at(iy, ix) = std::sin(2.0 * kPi * ix / g.n);
                u[1].at(iy, ix) = std::cos(2.0 * kPi * 2 * iy / g.n);
            }
        VectorField w = cmc_nonlinearity(u).as(Representation::physical);
        CHECK(max_abs_physical(w[0]) <= 1e-12);
        CHECK(max_abs_physical(w[1]) <= 1e-12);
        const double k1 = 2.0 * kPi / g.box_length;
        const double k2 = 2.0 * 2.0 * kPi / g.box_length;
        double worst = 0.0;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double want = 2.0 * k1 * std::cos(2.0 * kPi * ix / g.n) *
                                    (-k2) * std::sin(2.0 * kPi * 2 * iy / g.n);
                worst = std::max(worst, std::abs(w[2].at(iy, ix).real() - want));
            }
        CHECK(worst <= 1e-11);
    }

    SECTION("cross product and Q12 decomposition agree") {
        CounterRng rng(23);
        VectorField u = random_band_limited_vec(g, rng, 5);
        VectorField a = cmc_nonlinearity(u);
        VectorField b = cmc_nonlinearity_via_q12(u);
        double worst = 0.0, scale = 0.0;
        for (int c = 0; c < 3; ++c)
            for (size_t i = 0; i < a[c].size(); ++i) {
                worst = std::max(worst, std::abs(a[c][i] - b[c][i]));
                scale = std::max(scale, std::abs(a[c][i]));
            }
        CHECK(worst <= 1e-12 * std::max(1.0, scale));
    }

    SECTION("wedge is orthogonal to the tangent plane") {
        CounterRng rng(29);
        VectorField u = random_band_limited_vec(g, rng, 5);
        VectorField w = cmc_nonlinearity(u).as(Representation::physical);
        VectorField ux = partial_derivative(u, Axis::x).as(Representation::physical);
        VectorField uy = partial_derivative(u, Axis::y).as(Representation::physical);
        double worst = 0.0, scale = 0.0;
        for (size_t i = 0; i < w[0].size(); ++i) {
            double dx = 0.0, dy = 0.0;
            for (int c = 0; c < 3; ++c) {
                dx += w[c][i].real() * ux[c][i].real();
                dy += w[c][i].real() * uy[c][i].real();
                scale = std::max(scale, std::abs(w[c][i]));
            }
            worst = std::max(worst, std::max(std::abs(dx), std::abs(dy)));
        }
        CHECK(worst <= 1e-11 * std::max(1.0, scale));
    }
}
