#pragma once

#include "cqed/model.hpp"
#include "cqed/qmat.hpp"

namespace cqed {

/// Interaction time index: t_k = (2k+1) pi / (4 Omega) is where the ideal
/// dynamics turns |eg> into a maximally entangled state.
struct InteractionTimeIndex {
    int k = 0;
    double time(double omega) const;
};

/// Closed-form lossy state in the original frame.
struct ClosedFormState {
    double t = 0.0;
    double gamma = 0.0;
    double omega = 0.0;
    DensityMatrix rho;
};

/// Excitation-preserving mixing rotation
/// U = exp[-(pi/4)(s1† s2 - s1 s2†)]: a pi/4 rotation in the {|eg>,|ge>}
/// plane, identity on |ee> and |gg>. Built from the exact finite series.
ComplexMatrix transform_u();

/// Diagonal co-moving frame phase. Together with U it maps the damped
/// interaction-frame solution back to the lab frame: the generator is
/// -Omega (s1† s1 + s1^z/2), i.e. the phase e^{-2 i Omega t} on the
/// atom-1-excited subspace up to a global phase. transform_u() *
/// transform_v(t) conjugates the dissipative solution into the exact
/// lab-frame state (see rho_exact).
ComplexMatrix transform_v(double t, double omega);

/// Damped interaction-frame state
///   rho~(t) = 1/2 e^{-2 gamma t} (|eg>-|ge>)(<eg|-<ge|) + (1-e^{-2 gamma t}) |gg><gg|,
/// the exact solution of drho~/dt = 2 gamma (J + L) rho~ from the rotated
/// initial preparation.
DensityMatrix rho_tilde(double t, double gamma);

/// Same state computed through the superoperator product
/// exp[(e^{2 gamma t}-1) J] exp[2 gamma t L] applied to rho~(0); a second,
/// structurally different route used as an internal redundancy check.
DensityMatrix rho_tilde_superop(double t, double gamma);

/// Lab-frame state rho(t) = T rho~(t) T† with T = transform_u()*transform_v(t),
/// evaluated in closed form: e^{-2 gamma t} |chi(t)><chi(t)| +
/// (1 - e^{-2 gamma t}) |gg><gg| with chi(t) = cos(Omega t)|eg> - i sin(Omega t)|ge>.
ClosedFormState rho_exact(double t, const SystemParams& p);

/// (e^{-2gt} cos^2 Wt, e^{-2gt} sin^2 Wt, 1 - e^{-2gt}, 0).
JointProbs closed_form_joint_probs(double t, double gamma, double omega);

/// Amplitude of the sinusoidal Bell signal at t_k: e^{-gamma (2k+1) pi / 2 Omega}.
double closed_form_bell_amplitude(InteractionTimeIndex k, double gamma, double omega);

/// Piecewise maximum teleportation fidelity at t_k:
/// 1/3 + 2/3 e^{-gamma (2k+1) pi / 2 Omega} below threshold, else 2/3.
double closed_form_fmax(InteractionTimeIndex k, double gamma, double omega);

/// Concurrence at t_k: e^{-gamma (2k+1) pi / 2 Omega}.
double closed_form_concurrence_tk(InteractionTimeIndex k, double gamma, double omega);

/// Largest decay rate that still permits better-than-classical teleportation
/// at t_k: Omega ln(4) / ((2k+1) pi).
double gamma_max(InteractionTimeIndex k, double omega);

// 16x16 superoperators on the two-atom space (row-major vectorization):
// jump part J rho = sum_i s_i rho s_i†, damping part L rho = -1/2 {s_i† s_i, rho}.
ComplexMatrix jump_superop();
ComplexMatrix damping_superop();

// rho~(0) = 1/2 (|eg>-|ge>)(<eg|-<ge|), the rotated initial preparation.
DensityMatrix rho_tilde_initial();

} // namespace cqed
