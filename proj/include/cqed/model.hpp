#pragma once

#include <vector>

#include "cqed/qmat.hpp"

namespace cqed {

// Basis conventions, fixed globally:
//   single qubit   |e> = (1,0)^T, |g> = (0,1)^T
//   two qubits     |ee>, |eg>, |ge>, |gg>  (atom 1 is the slow index)
//   atoms x field  (atom1, atom2, field), Fock states |0>..|n_max>
// sigma^y = [[0,-i],[i,0]] in the (|e>,|g>) order; sigma = |g><e| (lowering).
enum TwoQubitBasis { kEE = 0, kEG = 1, kGE = 2, kGG = 3 };

/// Physical parameters. Rates share one unit (hbar = 1); the effective
/// atom-atom coupling Omega = lambda^2/delta is always recomputed.
struct SystemParams {
    double lambda = 1.0; // atom-cavity coupling
    double delta = 1.0;  // atom-field detuning
    double gamma = 0.0;  // spontaneous emission rate

    double omega_eff() const { return lambda * lambda / delta; }
    void validate() const;
};

/// Photon-number cutoff for full-model runs. The dispersive process from
/// the vacuum virtually populates one photon; n_max = 2 exposes truncation
/// error without cost.
struct FockTruncation {
    int n_max = 2;
    void validate() const;
};

enum class AtomOp { lower, raise, x, y, z };

/// 2x2 single-qubit operator in the fixed basis.
ComplexMatrix qubit_operator(AtomOp kind);

/// Single-atom operator embedded in the two-atom space (4x4), `which` in {1,2}.
ComplexMatrix atom_operator(int which, AtomOp kind);

/// H = Omega (s1† s1 + s2† s2 + s1† s2 + s1 s2†), the dispersive-limit
/// two-atom Hamiltonian on the 4x4 space.
ComplexMatrix effective_hamiltonian(const SystemParams& p);

/// Interaction-picture Tavis-Cummings Hamiltonian on atoms x field,
/// H(t) = lambda sum_j (e^{-i delta t} a† s_j + e^{+i delta t} a s_j†),
/// truncated at n_max photons. Hermitian for every t.
ComplexMatrix full_hamiltonian(const SystemParams& p, double t, const FockTruncation& trunc);

/// N = sigma1^z + sigma2^z.
ComplexMatrix excitation_number();

/// Right-hand side of the master equation
///   drho/dt = -i[H, rho] + 2 gamma sum_i (s_i rho s_i† - 1/2 {s_i† s_i, rho}).
/// The 2*gamma prefactor is the convention used throughout: populations of
/// singly excited states decay as e^{-2 gamma t}.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h, double gamma,
                           const std::vector<ComplexMatrix>& jumps);

/// Joint two-atom detection probabilities, ordered (eg, ge, gg, ee).
struct JointProbs {
    double eg = 0.0;
    double ge = 0.0;
    double gg = 0.0;
    double ee = 0.0;
};

// Field-space ladder operators on the truncated Fock space (dim n_max+1).
ComplexMatrix fock_annihilation(int n_max);

// Computational basis vector |idx> of the given dimension.
CVec basis_ket(int dim, int idx);

// Canonical 4x4 initial state |eg><eg| with layout {2,2}.
DensityMatrix initial_eg_state();

// Projector |gg><gg| with layout {2,2}.
DensityMatrix ground_state();

} // namespace cqed
