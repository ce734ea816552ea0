#include <catch2/catch_amalgamated.hpp>

#include "cmcwave/schedule.hpp"

using namespace cmcwave;

TEST_CASE("schedule for K = 1, C = 1") {
    IterationSchedule sch = make_schedule(1.0, 1.0);
    CHECK(sch.A == Catch::Approx(4.0));
    // sqrt(T) solves 16 s^2 + 2 s - 1/4 = 0, s = (-2 + sqrt(20))/32.
    const double s = (-2.0 + std::sqrt(20.0)) / 32.0;
    CHECK(sch.T == Catch::Approx(s * s).epsilon(1e-12));
    CHECK(sch.T == Catch::Approx(5.968e-3).epsilon(1e-3));
    CHECK(sch.B == Catch::Approx(std::max(4.0, 4.0 * (1.0 + 8.0 * s))).epsilon(1e-12));
    CHECK(sch.B == Catch::Approx(6.472).epsilon(1e-3));
    CHECK(sch.valid());
}

TEST_CASE("small-K limit") {
    for (double K : {1e-3, 1e-5, 1e-7}) {
        IterationSchedule sch = make_schedule(K, 1.0);
        CHECK(sch.A == Catch::Approx(2.0 * K));
        CHECK(sch.T == Catch::Approx(1.0 / 64.0));
        CHECK(sch.valid());
    }
}

TEST_CASE("returned horizon satisfies all three conditions") {
    for (double K : {0.05, 0.3, 1.0, 4.0, 20.0}) {
        for (double C : {0.1, 1.0, 7.0}) {
            IterationSchedule sch = make_schedule(K, C);
            const double s = std::sqrt(sch.T);
            CHECK(4.0 * s <= 0.5 + 1e-12);
            CHECK(2.0 * s * sch.A <= K * (1.0 + 1e-12));
            CHECK(2.0 * C * s * (K + 2.0 * s * sch.A) <= 0.25 * (1.0 + 1e-12));
            CHECK(sch.valid());
        }
    }
}

TEST_CASE("largest admissible horizon") {
    // Slightly enlarging T must violate at least one condition whenever the
    // binding constraint is not the T1 cap.
    for (double K : {0.5, 1.0, 3.0}) {
        IterationSchedule sch = make_schedule(K, 2.0);
        IterationSchedule bumped = sch;
        bumped.T = sch.T * 1.01;
        bumped.evaluate_conditions();
        CHECK_FALSE(bumped.valid());
    }
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(make_schedule(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_schedule(1.0, -2.0), std::invalid_argument);
}
