#include <catch2/catch_amalgamated.hpp>

#include <cstring>

#include "cmcwave/duhamel.hpp"
#include "cmcwave/leapfrog.hpp"
#include "cmcwave/random_fields.hpp"

using namespace cmcwave;

namespace {

std::vector<VectorField> zero_forcing(const Grid& g, int M) {
    return std::vector<VectorField>(M + 1, VectorField(g, Representation::spectral));
}

double sup_diff(const SpaceTimeField& a, const SpaceTimeField& b) {
    return solution_norm(a - b);
}

}  // namespace

TEST_CASE("zero data, zero forcing stays zero") {
    Grid g(16, 4.0);
    CauchyData data(VectorField(g, Representation::spectral),
                    VectorField(g, Representation::spectral));
    SpaceTimeField sol = forced_wave_solve(data, zero_forcing(g, 8), 0.5);
    CHECK(solution_norm(sol) == 0.0);
}

TEST_CASE("zero forcing reproduces the exact free evolution") {
    Grid g(32, 8.0);
    CounterRng rng(3);
    CauchyData data = random_cauchy_data(g, rng, 0.7);
    const double T = 0.8;
    const int M = 16;
    SpaceTimeField sol = forced_wave_solve(data, zero_forcing(g, M), T);
    double worst = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double t = sol.times[j];
        VectorField want = half_wave_cos(data.u0, t) + half_wave_sinc(data.u1, t);
        worst = std::max(worst, sobolev_norm(sol.u[j] - want, 1.5));
    }
    CHECK(worst <= 1e-12 * std::max(1.0, data.size_bound));
}

TEST_CASE("duhamel_step bounds checking") {
    Grid g(16, 4.0);
    CauchyData data(VectorField(g, Representation::spectral),
                    VectorField(g, Representation::spectral));
    auto F = zero_forcing(g, 4);
    CHECK_THROWS_AS(duhamel_step(data, F, 0.5, 7), std::out_of_range);
    CHECK_NOTHROW(duhamel_step(data, F, 0.5, 4));
}

TEST_CASE("constant-in-time single-mode forcing matches the closed form") {
    // d^2/dt^2 u_hat = -|xi|^2 u_hat + c  =>  u_hat(t) = c (1-cos(t|xi|))/|xi|^2.
    Grid g(16, 2.0 * std::numbers::pi);
    CauchyData data(VectorField(g, Representation::spectral),
                    VectorField(g, Representation::spectral));
    const int M = 64;
    const double T = 1.0;
    const cd c(0.8, 0.0);
    std::vector<VectorField> F(M + 1, VectorField(g, Representation::spectral));
    for (auto& f : F) {
        f[0].at(0, 2) = c;
        f[0].at(0, g.n - 2) = c;
    }
    SpaceTimeField sol = forced_wave_solve(data, F, T);
    const double xi0 = g.xi_abs(0, 2);
    const double want = c.real() * (1.0 - std::cos(T * xi0)) / (xi0 * xi0);
    const cd got_mode = sol.u[M][0].at(0, 2);
    const double dt = T / M;
    CHECK(std::abs(got_mode.real() - want) <= 5.0 * dt * dt * std::abs(want) + 1e-12);
}

TEST_CASE("picard: zero data converges immediately") {
    Grid g(16, 4.0);
    CauchyData data(VectorField(g, Representation::spectral),
                    VectorField(g, Representation::spectral));
    IterationSchedule sch = make_schedule(0.1, 1.0);
    PicardResult res = picard_solve(data, sch, 8, 10, 1e-10);
    CHECK(res.converged);
    CHECK(res.iterations <= 2);
    CHECK(solution_norm(res.solution) == 0.0);
}

TEST_CASE("picard contraction on small single-mode data") {
    Grid g(32, 8.0);
    CauchyData data = single_mode_cauchy_data(g, 0.1);
    IterationSchedule sch = make_schedule(0.1, 1.0);
    PicardResult res = picard_solve(data, sch, 32, 30, 1e-12);
    REQUIRE(res.converged);
    CHECK_FALSE(res.diverged);
    CHECK(res.guarantees_valid);
    // Ratios from k >= 1 on, while above the roundoff floor.
    for (size_t k = 2; k < res.ledger.size(); ++k) {
        if (res.ledger[k - 1].diff_norm <= 1e-12) break;
        CHECK(res.ledger[k].diff_norm <= 0.6 * res.ledger[k - 1].diff_norm);
    }
    for (const auto& rec : res.ledger)
        CHECK(rec.wedge_norm <= sch.A * 1.05);
    CHECK(res.integral_residual <= 1e-10);
}

TEST_CASE("picard solution solves the leapfrog-checked dynamics") {
    Grid g(32, 8.0);
    CounterRng rng(5);
    CauchyData data = random_cauchy_data(g, rng, 0.15, 5);
    IterationSchedule sch = make_schedule(0.15, 1.0);
    const int M = 32;
    PicardResult pic = picard_solve(data, sch, M, 30, 1e-12);
    REQUIRE(pic.converged);
    LeapfrogResult leap = leapfrog_oracle(data, sch.T, sch.T / M, M);
    const double err = sup_diff(pic.solution, leap.field);
    const double dt = sch.T / M;
    CHECK(err <= 10.0 * dt * dt * data.size_bound + 1e-13);
}

TEST_CASE("energy estimate with constant 2 on forced problems") {
    Grid g(32, 8.0);
    const int M = 32;
    const double T = 0.4;
    for (int trial = 0; trial < 5; ++trial) {
        CounterRng rng(101, trial);
        CauchyData data = random_cauchy_data(g, rng, 0.5);
        // Smooth random forcing F(t) = g1 cos(a t) + g2 sin(b t).
        VectorField g1 = random_band_limited_vec(g, rng, 5, 0.3);
        VectorField g2 = random_band_limited_vec(g, rng, 5, 0.3);
        const double a = rng.uniform(0.0, 3.0), b = rng.uniform(0.0, 3.0);
        std::vector<VectorField> F;
        F.reserve(M + 1);
        for (int j = 0; j <= M; ++j) {
            const double t = T * j / M;
            F.push_back(std::cos(a * t) * g1 + std::sin(b * t) * g2);
        }
        SpaceTimeField sol = forced_wave_solve(data, F, T);
        const double lhs = solution_norm(sol);
        const double rhs =
            2.0 * (sobolev_norm(data.u0, 1.5) + sobolev_norm(data.u1, 0.5) +
                   lp_norm_in_time(F, T / M, 0.5, 1.0));
        CHECK(lhs <= rhs * 1.05);
    }
}

TEST_CASE("uniqueness surrogate: repeated solves agree bit for bit") {
    Grid g(32, 8.0);
    CauchyData data = single_mode_cauchy_data(g, 0.2);
    IterationSchedule sch = make_schedule(0.2, 1.0);
    PicardResult a = picard_solve(data, sch, 16, 20, 1e-11);
    PicardResult b = picard_solve(data, sch, 16, 20, 1e-11);
    REQUIRE(a.solution.nodes() == b.solution.nodes());
    for (int j = 0; j < a.solution.nodes(); ++j)
        for (int c = 0; c < 3; ++c) {
            REQUIRE(std::memcmp(a.solution.u[j][c].data(), b.solution.u[j][c].data(),
                                a.solution.u[j][c].size() * sizeof(cd)) == 0);
        }
}

TEST_CASE("continuity experiment") {
    Grid g(32, 8.0);
    const double K = 0.1;
    IterationSchedule sch = make_schedule(K, 1.0);
    CauchyData base = single_mode_cauchy_data(g, 0.8 * K);

    SECTION("zero perturbation gives zero difference") {
        CauchyData zero(VectorField(g, Representation::spectral),
                        VectorField(g, Representation::spectral));
        ContinuityReport rep = continuity_experiment(base, zero, 0.0, sch, 16);
        CHECK(rep.measured_difference == 0.0);
    }

    SECTION("difference scales linearly and respects B eps") {
        CounterRng rng(7);
        CauchyData dir = random_cauchy_data(g, rng, 1.0, 5);
        auto scaled = [&](double eps) {
            return CauchyData(eps * dir.u0, eps * dir.u1);
        };
        const double e1 = 1e-2, e2 = 5e-3;
        ContinuityReport r1 = continuity_experiment(base, scaled(e1), e1, sch, 16);
        ContinuityReport r2 = continuity_experiment(base, scaled(e2), e2, sch, 16);
        CHECK(r1.within_bound);
        CHECK(r2.within_bound);
        const double ratio = r1.measured_difference / r2.measured_difference;
        CHECK(ratio == Catch::Approx(2.0).epsilon(0.2));
    }
}
