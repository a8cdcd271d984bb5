#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqed/analytic.hpp"
#include "cqed/integrate.hpp"
#include "helpers.hpp"

using namespace cqed;

namespace {

constexpr double kPi = std::numbers::pi;

double max_traj_distance(const Trajectory& a, const Trajectory& b) {
    REQUIRE(a.states.size() == b.states.size());
    double worst = 0.0;
    for (size_t i = 0; i < a.states.size(); ++i)
        worst = std::max(worst, trace_distance(a.states[i], b.states[i]));
    return worst;
}

} // namespace

TEST_CASE("the ground state is stationary") {
    const SystemParams p{1.0, 1.0, 0.8};
    const auto grid = testutil::linspace(0.0, 6.0, 13);
    const Trajectory traj = integrate_effective(ground_state(), p, grid, {1e-3, StepMethod::rk4});
    for (const auto& st : traj.states) CHECK(trace_distance(st, ground_state()) <= 1e-12);
}

TEST_CASE("lossless populations oscillate as cos^2 / sin^2") {
    const SystemParams p{1.0, 1.0, 0.0};
    const auto grid = testutil::linspace(0.0, 2.0 * kPi, 41);
    const Trajectory traj = integrate_effective(initial_eg_state(), p, grid, {1e-3, StepMethod::rk4});
    for (size_t i = 0; i < grid.size(); ++i) {
        const double c2 = std::pow(std::cos(grid[i]), 2);
        CHECK(std::abs(traj.states[i].matrix(kEG, kEG).real() - c2) <= 1e-9);
        CHECK(std::abs(traj.states[i].matrix(kGE, kGE).real() - (1.0 - c2)) <= 1e-9);
    }
}

TEST_CASE("RK4 trajectory matches the closed form over four periods") {
    const SystemParams p{1.0, 1.0, 0.3};
    const auto grid = testutil::linspace(0.0, 4.0 * kPi, 100);
    const Trajectory traj = integrate_effective(initial_eg_state(), p, grid, {1e-3, StepMethod::rk4});
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, trace_distance(traj.states[i], rho_exact(grid[i], p).rho));
    CHECK(worst <= 1e-7);

    // Diagnostics stay within spec: trace drift <= 1e-9 per unit Omega*t,
    // hermitization corrections at roundoff.
    CHECK(traj.max_trace_drift <= 1e-9 * 4.0 * kPi);
    CHECK(traj.max_herm_correction <= 1e-12);

    // |ee> never populates from |eg>.
    for (const auto& st : traj.states) CHECK(std::abs(st.matrix(kEE, kEE)) <= 1e-12);
}

TEST_CASE("expm-step propagation agrees with RK4 and the closed form") {
    const SystemParams p{1.0, 1.0, 0.25};
    const auto grid = testutil::linspace(0.0, 2.0 * kPi, 21);
    const Trajectory rk = integrate_effective(initial_eg_state(), p, grid, {1e-3, StepMethod::rk4});
    const Trajectory ex = integrate_effective(initial_eg_state(), p, grid, {1e-2, StepMethod::expm_step});
    CHECK(max_traj_distance(rk, ex) <= 1e-9);
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, trace_distance(ex.states[i], rho_exact(grid[i], p).rho));
    CHECK(worst <= 1e-9);
}

TEST_CASE("halving the step reduces the terminal error by at least 8x") {
    const SystemParams p{1.0, 1.0, 0.25};
    const double t_end = 2.0 * kPi;
    auto terminal_error = [&](double dt) {
        // Coarse steps on purpose; loosen the positivity floor accordingly.
        const Trajectory traj =
            integrate_effective(initial_eg_state(), p, {t_end}, {dt, StepMethod::rk4, -1e-4});
        return trace_distance(traj.states.back(), rho_exact(t_end, p).rho);
    };
    const double e1 = terminal_error(t_end / 100.0);
    const double e2 = terminal_error(t_end / 200.0);
    CHECK(e1 / e2 >= 8.0);
    CHECK(std::log2(e1 / e2) >= 3.9);
}

TEST_CASE("a gamma-convention bug would be caught by the closed-form comparison") {
    // Mutation probe: propagate with the dissipator scaled to gamma/2 instead
    // of 2 gamma (i.e. rate gamma/4 fed to the correctly scaled RHS) and
    // confirm the discrepancy is far above the acceptance tolerance.
    const SystemParams p{1.0, 1.0, 0.3};
    const ComplexMatrix h = effective_hamiltonian(p);
    const std::vector<ComplexMatrix> jumps = {atom_operator(1, AtomOp::lower),
                                              atom_operator(2, AtomOp::lower)};
    const double dt = 1e-3;
    ComplexMatrix y = initial_eg_state().matrix;
    double t = 0.0;
    const double t_end = kPi;
    while (t < t_end - 1e-12) {
        const double hs = std::min(dt, t_end - t);
        const ComplexMatrix k1 = lindblad_rhs(y, h, p.gamma / 4.0, jumps);
        const ComplexMatrix k2 = lindblad_rhs(y + cdouble(0.5 * hs) * k1, h, p.gamma / 4.0, jumps);
        const ComplexMatrix k3 = lindblad_rhs(y + cdouble(0.5 * hs) * k2, h, p.gamma / 4.0, jumps);
        const ComplexMatrix k4 = lindblad_rhs(y + cdouble(hs) * k3, h, p.gamma / 4.0, jumps);
        y += cdouble(hs / 6.0) * (k1 + cdouble(2.0) * (k2 + k3) + k4);
        t += hs;
    }
    CHECK(trace_distance({y, {2, 2}}, rho_exact(t_end, p).rho) > 1e-2);
}

TEST_CASE("huge steps trip the trace-drift guard") {
    const SystemParams p{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(integrate_effective(initial_eg_state(), p, {1e6}, {1e6, StepMethod::rk4}),
                    StepTooLarge);
}

TEST_CASE("grid validation") {
    const SystemParams p{1.0, 1.0, 0.1};
    const IntegratorConfig cfg{1e-3, StepMethod::rk4};
    CHECK_THROWS_AS(integrate_effective(initial_eg_state(), p, {}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(integrate_effective(initial_eg_state(), p, {0.0, 0.0}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(integrate_effective(initial_eg_state(), p, {-1.0, 1.0}, cfg), NegativeTime);
    CHECK_THROWS_AS(integrate_effective(initial_eg_state(), p, {1.0}, {0.0, StepMethod::rk4}),
                    std::invalid_argument);
}

TEST_CASE("full model: dispersive limit approaches the effective model") {
    const FockTruncation trunc{2};
    const auto grid = testutil::linspace(0.0, 3.0 * kPi, 40);

    auto deviation = [&](double delta) {
        const SystemParams p{1.0, delta, 0.0};
        const Trajectory full =
            integrate_full(initial_eg_state(), p, trunc, grid, {1e-3, StepMethod::rk4});
        CHECK(full.min_full_purity >= 1.0 - 1e-9); // unitary when gamma = 0
        const Trajectory eff = integrate_effective(initial_eg_state(), p, grid,
                                                   {1e-3 / p.omega_eff(), StepMethod::rk4});
        return max_traj_distance(full, eff);
    };

    const double dev10 = deviation(10.0);
    const double dev3 = deviation(3.0);
    CHECK(dev10 <= 0.05);
    CHECK(dev3 > dev10);
}

TEST_CASE("full model with decay produces valid reduced states") {
    const SystemParams p{1.0, 8.0, 0.05};
    const FockTruncation trunc{2};
    const auto grid = testutil::linspace(0.0, 2.0 * kPi, 9);
    const Trajectory traj = integrate_full(initial_eg_state(), p, trunc, grid, {1e-3, StepMethod::rk4});
    for (const auto& st : traj.states) {
        CHECK(st.matrix.dim() == 4);
        CHECK_NOTHROW(validate_density(st, 1e-9, 1e-8, -1e-9));
    }
    CHECK(traj.max_trace_drift <= 1e-8);
}

TEST_CASE("a doubly excited start leaks through a too-small Fock cutoff") {
    const CVec ee = basis_ket(4, kEE);
    const DensityMatrix atoms0{outer(ee, ee), {2, 2}};
    const SystemParams p{1.0, 1.0, 0.0};
    CHECK_THROWS_AS(
        integrate_full(atoms0, p, FockTruncation{1}, testutil::linspace(0.5, 5.0, 4), {1e-3, StepMethod::rk4}),
        TruncationLeak);
}

TEST_CASE("expm_step is rejected for the time-dependent full model") {
    const SystemParams p{1.0, 5.0, 0.0};
    CHECK_THROWS_AS(
        integrate_full(initial_eg_state(), p, FockTruncation{2}, {1.0}, {1e-3, StepMethod::expm_step}),
        ConfigError);
}

TEST_CASE("stationary_check confirms relaxation to the ground state") {
    const StationaryReport rep = stationary_check(SystemParams{1.0, 1.0, 0.5});
    CHECK(rep.ok);
    CHECK(rep.distance <= rep.bound);
    CHECK(rep.tail_monotone);
    CHECK(rep.t_end >= 10.0 / (2.0 * 0.5));

    CHECK_THROWS_AS(stationary_check(SystemParams{1.0, 1.0, 0.0}), std::invalid_argument);
}
