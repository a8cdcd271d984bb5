#pragma once

#include <array>

#include "cqed/model.hpp"
#include "cqed/qmat.hpp"

namespace cqed {

/// Two-atom correlation tensor t_nm = Tr[rho (sigma1^n x sigma2^m)],
/// n, m ordered (x, y, z).
struct CorrelationMatrix {
    Mat3 t{};
};

/// Derived quantities for one two-atom state.
struct ChannelReport {
    std::array<double, 4> probs{}; // (eg, ge, gg, ee)
    double bell_amplitude = 0.0;
    double bell_phase = 0.0; // radians, beta(phi) = A cos(phi + phase)
    double concurrence = 0.0;
    double fmax = 0.0;
    double epr_fidelity = 0.0;
    double purity = 0.0;
};

/// Pure qubit a|e> + b|g>.
struct UnknownQubit {
    cdouble a;
    cdouble b;
};

/// |psi_EPR> = (|eg> - i|ge>)/sqrt(2), the state the ideal dynamics
/// generates at the interaction times.
CVec epr_ket();

/// Diagonal of rho in the standard basis, ordered (eg, ge, gg, ee).
JointProbs joint_probabilities(const DensityMatrix& rho);

/// beta(phi) = Tr[rho sigma1^x (cos phi sigma2^x + sin phi sigma2^y)].
double bell_signal(const DensityMatrix& rho, double phi);

/// Amplitude and phase offset of the (exactly sinusoidal) Bell signal,
/// extracted from beta(0) and beta(pi/2): beta(phi) = A cos(phi + phase).
struct BellFit {
    double amplitude = 0.0;
    double phase = 0.0;
};
BellFit bell_fit(const DensityMatrix& rho);

/// (sigma^y x sigma^y) rho* (sigma^y x sigma^y), conjugation in the
/// standard basis.
ComplexMatrix spin_flip(const DensityMatrix& rho);

/// Wootters concurrence: max{0, l1 - l2 - l3 - l4} with l_i the descending
/// square roots of the eigenvalues of rho * spin_flip(rho).
double concurrence(const DensityMatrix& rho);

CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// 1/2 (1 + 1/3 sum of singular values of the correlation matrix): the best
/// standard-protocol teleportation fidelity supported by the state itself.
double max_teleport_fidelity(const DensityMatrix& rho);

/// <psi_EPR| rho |psi_EPR>.
double epr_fidelity(const DensityMatrix& rho);

/// Fidelity of the standard teleportation protocol run through `channel`:
/// Bell measurement (basis adapted to psi_EPR) on input x Alice, Pauli
/// correction on Bob, averaged over the four outcomes.
double teleport_fidelity(const DensityMatrix& channel, const UnknownQubit& input);

/// teleport_fidelity averaged over the six Pauli eigenstates; equals the
/// Haar average for fidelity (2-design).
double average_teleport_fidelity(const DensityMatrix& channel);

ChannelReport channel_report(const DensityMatrix& rho);

} // namespace cqed
