#include "cqed/integrate.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace cqed {

namespace {

constexpr double kTraceDriftLimit = 1e-6;

void check_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("integrate: empty time grid");
    if (t_grid.front() < 0.0) throw NegativeTime("integrate: grid starts before 0");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("integrate: grid not strictly increasing");
}

// rho <- (rho + rho†)/2; returns the size of the applied correction.
double symmetrize(ComplexMatrix& rho) {
    double corr = 0.0;
    const int n = rho.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cdouble avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            corr = std::max(corr, std::abs(rho(i, j) - avg));
            rho(i, j) = avg;
            rho(j, i) = std::conj(avg);
        }
    return corr;
}

using Rhs = std::function<ComplexMatrix(double, const ComplexMatrix&)>;

void rk4_step(const Rhs& rhs, double t, double h, ComplexMatrix& y) {
    const ComplexMatrix k1 = rhs(t, y);
    const ComplexMatrix k2 = rhs(t + 0.5 * h, y + cdouble(0.5 * h) * k1);
    const ComplexMatrix k3 = rhs(t + 0.5 * h, y + cdouble(0.5 * h) * k2);
    const ComplexMatrix k4 = rhs(t + h, y + cdouble(h) * k3);
    y += cdouble(h / 6.0) * (k1 + cdouble(2.0) * (k2 + k3) + k4);
}

struct Walker {
    ComplexMatrix state;
    double t = 0.0;
    Trajectory* traj = nullptr;

    void note_step(double corr) {
        traj->max_herm_correction = std::max(traj->max_herm_correction, corr);
        const double drift = std::abs(state.trace() - cdouble(1.0));
        traj->max_trace_drift = std::max(traj->max_trace_drift, drift);
        if (drift > kTraceDriftLimit) throw StepTooLarge("integrate: trace drift exceeds 1e-6");
    }
};

} // namespace

Trajectory integrate_effective(const DensityMatrix& rho0, const SystemParams& p,
                               const std::vector<double>& t_grid, const IntegratorConfig& cfg) {
    p.validate();
    check_grid(t_grid);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrate_effective: dt must be > 0");
    if (rho0.matrix.dim() != 4) throw DimMismatch("integrate_effective: rho0 must be 4x4");
    validate_density(rho0, 1e-10, 1e-8);

    const ComplexMatrix h = effective_hamiltonian(p);
    const std::vector<ComplexMatrix> jumps = {atom_operator(1, AtomOp::lower),
                                              atom_operator(2, AtomOp::lower)};
    const Rhs rhs = [&](double, const ComplexMatrix& y) { return lindblad_rhs(y, h, p.gamma, jumps); };

    // Time-independent generator: the expm path builds one per-step propagator.
    ComplexMatrix prop_full(1);
    ComplexMatrix generator(1);
    if (cfg.method == StepMethod::expm_step) {
        const cdouble minus_i(0.0, -1.0);
        generator = minus_i * (sandwich_superop(h, ComplexMatrix::identity(4)) -
                               sandwich_superop(ComplexMatrix::identity(4), h));
        ComplexMatrix diss(16);
        for (const auto& s : jumps) {
            const ComplexMatrix n = s.adjoint() * s;
            diss += sandwich_superop(s, s.adjoint()) -
                    cdouble(0.5) * (sandwich_superop(n, ComplexMatrix::identity(4)) +
                                    sandwich_superop(ComplexMatrix::identity(4), n));
        }
        generator += cdouble(2.0 * p.gamma) * diss;
        prop_full = expm(cdouble(cfg.dt) * generator);
    }

    Trajectory traj;
    Walker w{rho0.matrix, 0.0, &traj};

    auto advance_to = [&](double t_target) {
        while (w.t < t_target - 1e-15) {
            const double h_step = std::min(cfg.dt, t_target - w.t);
            if (cfg.method == StepMethod::rk4) {
                rk4_step(rhs, w.t, h_step, w.state);
            } else {
                const ComplexMatrix& prop = (h_step == cfg.dt)
                                                ? prop_full
                                                : expm(cdouble(h_step) * generator);
                w.state = unvec_rows(matvec(prop, vec_rows(w.state)), 4);
            }
            w.t += h_step;
            w.note_step(symmetrize(w.state));
        }
    };

    for (double ts : t_grid) {
        advance_to(ts);
        DensityMatrix dm{w.state, {2, 2}};
        validate_density(dm, 1e-9, 1e-8, cfg.psd_floor);
        traj.times.push_back(ts);
        traj.states.push_back(std::move(dm));
    }
    return traj;
}

Trajectory integrate_full(const DensityMatrix& atoms0, const SystemParams& p,
                          const FockTruncation& trunc, const std::vector<double>& t_grid,
                          const IntegratorConfig& cfg) {
    p.validate();
    trunc.validate();
    check_grid(t_grid);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrate_full: dt must be > 0");
    if (cfg.method == StepMethod::expm_step)
        throw ConfigError("integrate_full: expm_step requires a time-independent generator; use rk4");
    if (atoms0.matrix.dim() != 4) throw DimMismatch("integrate_full: atoms0 must be 4x4");
    validate_density(atoms0, 1e-10, 1e-8);

    const int nf = trunc.n_max + 1;

    // Field starts in the vacuum.
    ComplexMatrix vac(nf);
    vac(0, 0) = 1.0;
    ComplexMatrix state = kron(atoms0.matrix, vac);

    const ComplexMatrix idf = ComplexMatrix::identity(nf);
    const ComplexMatrix k_op = kron(ComplexMatrix::identity(4), fock_annihilation(trunc.n_max).adjoint()) *
                               kron(atom_operator(1, AtomOp::lower) + atom_operator(2, AtomOp::lower), idf);
    const ComplexMatrix k_dag = k_op.adjoint();
    const std::vector<ComplexMatrix> jumps = {kron(atom_operator(1, AtomOp::lower), idf),
                                              kron(atom_operator(2, AtomOp::lower), idf)};

    const Rhs rhs = [&](double t, const ComplexMatrix& y) {
        const cdouble ph = std::exp(cdouble(0.0, -p.delta * t));
        const ComplexMatrix h = cdouble(p.lambda) * (ph * k_op + std::conj(ph) * k_dag);
        return lindblad_rhs(y, h, p.gamma, jumps);
    };

    // Population of the top Fock level; > 1e-3 means the cutoff is felt.
    auto top_level_population = [&](const ComplexMatrix& rho) {
        double pop = 0.0;
        for (int a = 0; a < 4; ++a) pop += rho(a * nf + trunc.n_max, a * nf + trunc.n_max).real();
        return pop;
    };

    Trajectory traj;
    Walker w{std::move(state), 0.0, &traj};

    auto advance_to = [&](double t_target) {
        while (w.t < t_target - 1e-15) {
            const double h_step = std::min(cfg.dt, t_target - w.t);
            rk4_step(rhs, w.t, h_step, w.state);
            w.t += h_step;
            w.note_step(symmetrize(w.state));
            if (top_level_population(w.state) > 1e-3)
                throw TruncationLeak("integrate_full: population reached the Fock cutoff");
        }
    };

    for (double ts : t_grid) {
        advance_to(ts);
        const double purity = (w.state * w.state).trace().real();
        traj.min_full_purity = std::min(traj.min_full_purity, purity);

        DensityMatrix full{w.state, {2, 2, nf}};
        DensityMatrix reduced = partial_trace(full, {0, 1});
        validate_density(reduced, 1e-9, 1e-8, cfg.psd_floor);
        traj.times.push_back(ts);
        traj.states.push_back(std::move(reduced));
    }
    return traj;
}

StationaryReport stationary_check(const SystemParams& p) {
    p.validate();
    if (!(p.gamma > 0.0)) throw std::invalid_argument("stationary_check: gamma must be > 0");

    const double omega = p.omega_eff();
    const double t_end = std::max(5.0 / p.gamma, 2.0 * std::numbers::pi / omega);
    const int n_samples = 200;
    std::vector<double> grid(n_samples);
    for (int i = 0; i < n_samples; ++i) grid[i] = t_end * (i + 1) / n_samples;

    const IntegratorConfig cfg{1e-3 / omega, StepMethod::rk4};
    const Trajectory traj = integrate_effective(initial_eg_state(), p, grid, cfg);
    const DensityMatrix gg = ground_state();

    StationaryReport rep;
    rep.t_end = t_end;
    rep.distance = trace_distance(traj.states.back(), gg);
    rep.bound = std::exp(-2.0 * p.gamma * t_end) + 1e-6;

    rep.tail_monotone = true;
    double prev = -1.0;
    for (size_t i = 0; i < traj.states.size(); ++i) {
        if (omega * traj.times[i] <= std::numbers::pi / 2.0) continue;
        const double d = trace_distance(traj.states[i], gg);
        if (prev >= 0.0 && d > prev + 1e-12) rep.tail_monotone = false;
        prev = d;
    }
    rep.ok = rep.distance <= rep.bound && rep.tail_monotone;
    return rep;
}

} // namespace cqed
