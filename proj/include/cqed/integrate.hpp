#pragma once

#include <vector>

#include "cqed/model.hpp"
#include "cqed/qmat.hpp"

namespace cqed {

/// Sampled solution of a master-equation flow. States carry the reduced
/// (two-atom) layout for the full model. Diagnostics accumulate the worst
/// per-step hermitization correction, the worst trace drift, and (full
/// model only) the smallest purity of the unreduced state.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    double max_herm_correction = 0.0;
    double max_trace_drift = 0.0;
    double min_full_purity = 1.0;
};

enum class StepMethod { rk4, expm_step };

/// dt is an absolute time step (choose ~1e-3/Omega for the effective model,
/// ~1e-3/lambda for the full model). psd_floor is the eigenvalue floor
/// applied when validating sampled states; convergence studies that run at
/// deliberately coarse dt need a looser floor than production runs.
struct IntegratorConfig {
    double dt = 1e-3;
    StepMethod method = StepMethod::rk4;
    double psd_floor = -1e-9;
};

/// Propagates the 4x4 Lindblad flow with the dispersive Hamiltonian and
/// jump operators s1, s2, sampling at the (increasing, from >= 0) t_grid.
/// Throws StepTooLarge if the trace drifts beyond 1e-6.
Trajectory integrate_effective(const DensityMatrix& rho0, const SystemParams& p,
                               const std::vector<double>& t_grid, const IntegratorConfig& cfg);

/// Propagates atoms x field with the time-dependent interaction-picture
/// Hamiltonian (field starts in the vacuum) plus atomic decay, and returns
/// the field-traced 4x4 states. Throws TruncationLeak if the top Fock level
/// accumulates more than 1e-3 population.
Trajectory integrate_full(const DensityMatrix& atoms0, const SystemParams& p,
                          const FockTruncation& trunc, const std::vector<double>& t_grid,
                          const IntegratorConfig& cfg);

/// Confirms relaxation to |gg>: trace distance at t_end (2 gamma t_end >= 10)
/// stays below e^{-2 gamma t_end} + 1e-6 and decreases monotonically on the
/// tail of the trajectory.
struct StationaryReport {
    double t_end = 0.0;
    double distance = 0.0;
    double bound = 0.0;
    bool tail_monotone = false;
    bool ok = false;
};
StationaryReport stationary_check(const SystemParams& p);

} // namespace cqed
