#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cmcwave/spectral.hpp"

namespace cmcwave {

// Trajectory on M+1 uniform time nodes over [0, T]: snapshots of u and its
// time derivative, stored spectrally on a shared grid.
struct SpaceTimeField {
    Grid grid;
    double T = 0.0;
    std::vector<double> times;
    std::vector<VectorField> u;
    std::vector<VectorField> ut;

    SpaceTimeField() = default;
    SpaceTimeField(const Grid& g, double T_, int M)
        : grid(g), T(T_), times(M + 1) {
        if (M < 1) throw std::invalid_argument("SpaceTimeField: M must be >= 1");
        for (int j = 0; j <= M; ++j) times[j] = T * j / M;
        u.assign(M + 1, VectorField(g, Representation::spectral));
        ut.assign(M + 1, VectorField(g, Representation::spectral));
    }

    int nodes() const { return static_cast<int>(times.size()); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

// sup over nodes of ||u(t)||_{H^s}.
inline double sup_norm_in_time(const std::vector<VectorField>& snaps, double s) {
    double m = 0.0;
    for (const auto& f : snaps) m = std::max(m, sobolev_norm(f, s));
    return m;
}

// Trapezoidal L^p_{[0,T]} norm of t -> ||f(t)||_{H^s} over the nodes.
inline double lp_norm_in_time(const std::vector<VectorField>& snaps, double dt,
                              double s, double p) {
    detail::Kahan acc;
    const size_t M = snaps.size() - 1;
    for (size_t j = 0; j <= M; ++j) {
        const double w = (j == 0 || j == M) ? 0.5 : 1.0;
        acc.add(w * std::pow(sobolev_norm(snaps[j], s), p));
    }
    return std::pow(acc.sum * dt, 1.0 / p);
}

// Combined solution-space norm of Theorem-2 type:
// ||u||_{C0 H^{3/2}} + ||du/dt||_{C0 H^{1/2}}.
inline double solution_norm(const SpaceTimeField& f) {
    return sup_norm_in_time(f.u, 1.5) + sup_norm_in_time(f.ut, 0.5);
}

inline SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (a.nodes() != b.nodes() || !(a.grid == b.grid))
        throw std::invalid_argument("space-time fields are incompatible");
    SpaceTimeField out = a;
    for (int j = 0; j < a.nodes(); ++j) {
        out.u[j] = a.u[j] - b.u[j];
        out.ut[j] = a.ut[j] - b.ut[j];
    }
    return out;
}

}  // namespace cmcwave
