#pragma once

#include <string>
#include <vector>

#include "cmcwave/nullform.hpp"
#include "cmcwave/schedule.hpp"
#include "cmcwave/spacetime.hpp"

namespace cmcwave {

// Solves u_tt = Laplace(u) + G on [0, T] from (u0, u1), where G is sampled on
// the M+1 uniform nodes. Each step transports the state with the exact
// half-wave propagators and adds the forcing by trapezoidal quadrature of the
// Duhamel integral:
//   u_{j+1}  =  c u_j + s u'_j + (dt/2) s G_j
//   u'_{j+1} = -|xi|^2 s u_j + c u'_j + (dt/2)(c G_j + G_{j+1}),
// with c = cos(dt |xi|), s = sin(dt |xi|)/|xi| per mode (s -> dt at xi = 0).
// The oscillatory kernel is exact; only the smooth forcing is quadratured,
// giving a second-order global error.
inline SpaceTimeField forced_wave_solve(const CauchyData& data,
                                        const std::vector<VectorField>& forcing,
                                        double T) {
    const Grid g = data.u0.grid();
    const int M = static_cast<int>(forcing.size()) - 1;
    SpaceTimeField out(g, T, M);
    const double dt = out.dt();
    const int n = g.n;

    out.u[0] = data.u0;
    out.ut[0] = data.u1;
    for (int j = 0; j < M; ++j) {
        const VectorField& Fj = forcing[j];
        const VectorField& Fj1 = forcing[j + 1];
        VectorField& uj = out.u[j];
        VectorField& vj = out.ut[j];
        VectorField un(g, Representation::spectral), vn(g, Representation::spectral);
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const double r = g.xi_abs(iy, ix);
                const double c = std::cos(dt * r);
                const double s = r == 0.0 ? dt : std::sin(dt * r) / r;
                for (int comp = 0; comp < 3; ++comp) {
                    const cd a = uj[comp].at(iy, ix);
                    const cd b = vj[comp].at(iy, ix);
                    const cd f0 = Fj[comp].at(iy, ix);
                    const cd f1 = Fj1[comp].at(iy, ix);
                    un[comp].at(iy, ix) = c * a + s * b + 0.5 * dt * s * f0;
                    vn[comp].at(iy, ix) =
                        -r * r * s * a + c * b + 0.5 * dt * (c * f0 + f1);
                }
            }
        }
        out.u[j + 1] = std::move(un);
        out.ut[j + 1] = std::move(vn);
    }
    return out;
}

// One node of the forced solve; the recurrence is sequential, so this runs
// the solve up to t_index.
inline std::pair<VectorField, VectorField> duhamel_step(
    const CauchyData& data, const std::vector<VectorField>& forcing,
    double T, int t_index) {
    if (t_index < 0 || t_index >= static_cast<int>(forcing.size()))
        throw std::out_of_range("duhamel_step: t_index out of range");
    SpaceTimeField sol = forced_wave_solve(data, forcing, T);
    return {sol.u[t_index], sol.ut[t_index]};
}

struct LedgerRecord {
    int k = 0;
    double diff_norm = 0.0;        // ||u^{k+1}-u^k||_{C0 H^{3/2}} + d/dt part
    double wedge_norm = 0.0;       // ||u^{k+1}_x ^ u^{k+1}_y||_{L2_T H^{1/2}}
    double wedge_diff_norm = 0.0;  // ||w^{k+1} - w^k||_{L2_T H^{1/2}}
};

using ContractionLedger = std::vector<LedgerRecord>;

struct PicardResult {
    SpaceTimeField solution;
    ContractionLedger ledger;
    bool converged = false;
    bool diverged = false;
    int iterations = 0;
    double integral_residual = 0.0;  // self-consistency of the integral equation
    bool guarantees_valid = true;    // schedule conditions held for this run
};

namespace detail {

// Forcing that makes the linear solver march u_tt = Laplace(u) - 2 u_x ^ u_y.
inline std::vector<VectorField> wave_cmc_forcing(const SpaceTimeField& traj) {
    std::vector<VectorField> F;
    F.reserve(traj.nodes());
    for (const auto& snap : traj.u) F.push_back(-1.0 * cmc_nonlinearity(snap));
    return F;
}

// L2_T H^{1/2} norm of the wedge u_x ^ u_y along a trajectory.
inline double wedge_budget_norm(const SpaceTimeField& traj) {
    std::vector<VectorField> w;
    w.reserve(traj.nodes());
    for (const auto& snap : traj.u) w.push_back(0.5 * cmc_nonlinearity(snap));
    return lp_norm_in_time(w, traj.dt(), 0.5, 2.0);
}

}  // namespace detail

// Picard iteration u^{(0)} = 0, u^{(k+1)} solving the linear wave equation
// forced by the previous iterate's wedge, with the full contraction ledger.
// The iteration also runs on schedules whose conditions fail (research mode);
// guarantees_valid records whether the Theorem-2 constants stand.
inline PicardResult picard_solve(const CauchyData& data,
                                 const IterationSchedule& schedule, int M,
                                 int k_max = 40, double tol = 1e-10) {
    const Grid g = data.u0.grid();
    const double T = schedule.T;
    PicardResult res;
    res.guarantees_valid =
        schedule.valid() && data.size_bound <= schedule.K * (1.0 + 1e-12);

    SpaceTimeField prev(g, T, M);  // u^{(0)} = 0
    std::vector<VectorField> prev_wedge(M + 1, VectorField(g, Representation::spectral));

    double last_diff = -1.0;
    int grow_streak = 0;
    for (int k = 0; k < k_max; ++k) {
        std::vector<VectorField> forcing(M + 1);
        std::vector<VectorField> wedge(M + 1);
        for (int j = 0; j <= M; ++j) {
            VectorField w2 = cmc_nonlinearity(prev.u[j]);  // 2 u_x ^ u_y
            wedge[j] = 0.5 * w2;
            forcing[j] = -1.0 * w2;
        }
        SpaceTimeField next = forced_wave_solve(data, forcing, T);

        LedgerRecord rec;
        rec.k = k;
        rec.diff_norm = solution_norm(next - prev);
        rec.wedge_norm = detail::wedge_budget_norm(next);
        {
            std::vector<VectorField> next_wedge(M + 1);
            std::vector<VectorField> dw(M + 1);
            for (int j = 0; j <= M; ++j) {
                next_wedge[j] = 0.5 * cmc_nonlinearity(next.u[j]);
                dw[j] = next_wedge[j] - wedge[j];
            }
            rec.wedge_diff_norm = lp_norm_in_time(dw, next.dt(), 0.5, 2.0);
        }
        res.ledger.push_back(rec);
        res.iterations = k + 1;
        prev = std::move(next);

        if (rec.diff_norm <= tol) {
            res.converged = true;
            break;
        }
        if (last_diff >= 0.0 && rec.diff_norm > last_diff) {
            if (++grow_streak >= 3) {
                res.diverged = true;
                break;
            }
        } else {
            grow_streak = 0;
        }
        last_diff = rec.diff_norm;
    }

    // Residual of the integral equation with the final iterate's own forcing.
    {
        std::vector<VectorField> forcing(M + 1);
        for (int j = 0; j <= M; ++j)
            forcing[j] = -1.0 * cmc_nonlinearity(prev.u[j]);
        SpaceTimeField recon = forced_wave_solve(data, forcing, T);
        res.integral_residual = solution_norm(recon - prev);
    }
    res.solution = std::move(prev);
    return res;
}

struct ContinuityReport {
    double eps = 0.0;
    double measured_difference = 0.0;  // lhs of the continuous-dependence bound
    double B = 0.0;
    double bound = 0.0;  // B * eps
    double ratio = 0.0;  // measured / bound
    bool within_bound = false;
    bool both_converged = false;
};

// Solves from data and from data+perturbation and checks the measured
// solution-space difference against B*eps.
inline ContinuityReport continuity_experiment(const CauchyData& data,
                                              const CauchyData& perturbation,
                                              double eps,
                                              const IterationSchedule& schedule,
                                              int M, int k_max = 40,
                                              double tol = 1e-10) {
    CauchyData perturbed(data.u0 + perturbation.u0, data.u1 + perturbation.u1);
    PicardResult a = picard_solve(data, schedule, M, k_max, tol);
    PicardResult b = picard_solve(perturbed, schedule, M, k_max, tol);
    if (a.diverged || b.diverged)
        throw std::runtime_error("continuity_experiment: a solve diverged");

    ContinuityReport rep;
    rep.eps = eps;
    rep.B = schedule.B;
    rep.bound = schedule.B * eps;
    rep.measured_difference = solution_norm(b.solution - a.solution);
    rep.ratio = eps > 0.0 ? rep.measured_difference / rep.bound : 0.0;
    rep.within_bound = rep.measured_difference <= rep.bound * 1.05 + 1e-15;
    rep.both_converged = a.converged && b.converged;
    return rep;
}

}  // namespace cmcwave
