#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmcwave {

// Constant schedule of the H^{3/2} local well-posedness iteration:
//   A = max{2K, 4CK^2},
//   T = largest time with  4 sqrt(T) <= 1/2,  2 sqrt(T) A <= K,
//       2 C sqrt(T) (K + 2 sqrt(T) A) <= 1/4,
//   B = max{4, 4C(K + 2 sqrt(T) A)}.
struct IterationSchedule {
    double K = 0.0;  // data size bound
    double C = 0.0;  // bilinear constant
    double A = 0.0;  // forcing budget
    double T = 0.0;  // time horizon
    double B = 0.0;  // continuity constant
    bool cond1 = false, cond2 = false, cond3 = false;

    bool valid() const { return cond1 && cond2 && cond3; }

    void evaluate_conditions() {
        const double s = std::sqrt(T);
        cond1 = 4.0 * s <= 0.5 + 1e-15;
        cond2 = 2.0 * s * A <= K * (1.0 + 1e-14);
        cond3 = 2.0 * C * s * (K + 2.0 * s * A) <= 0.25 * (1.0 + 1e-14);
    }
};

inline IterationSchedule make_schedule(double K, double C) {
    if (!(K > 0.0) || !(C > 0.0))
        throw std::invalid_argument("make_schedule: K and C must be positive");
    IterationSchedule sch;
    sch.K = K;
    sch.C = C;
    sch.A = std::max(2.0 * K, 4.0 * C * K * K);

    const double t1 = 1.0 / 64.0;
    const double s2 = K / (2.0 * sch.A);
    // Positive root of 4CA s^2 + 2CK s - 1/4 = 0 in s = sqrt(T).
    const double s3 =
        (-C * K + std::sqrt(C * C * K * K + C * sch.A)) / (4.0 * C * sch.A);
    sch.T = std::min({t1, s2 * s2, s3 * s3});

    const double s = std::sqrt(sch.T);
    sch.B = std::max(4.0, 4.0 * C * (K + 2.0 * s * sch.A));
    sch.evaluate_conditions();
    return sch;
}

}  // namespace cmcwave
