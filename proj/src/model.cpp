#include "cqed/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

void SystemParams::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("SystemParams: lambda must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("SystemParams: delta must be > 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("SystemParams: gamma must be >= 0");
}

void FockTruncation::validate() const {
    if (n_max < 1) throw std::invalid_argument("FockTruncation: n_max must be >= 1");
}

ComplexMatrix qubit_operator(AtomOp kind) {
    ComplexMatrix m(2);
    switch (kind) {
        case AtomOp::lower: m(1, 0) = 1.0; break; // |g><e|
        case AtomOp::raise: m(0, 1) = 1.0; break; // |e><g|
        case AtomOp::x:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case AtomOp::y:
            m(0, 1) = cdouble(0.0, -1.0);
            m(1, 0) = cdouble(0.0, 1.0);
            break;
        case AtomOp::z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

ComplexMatrix atom_operator(int which, AtomOp kind) {
    if (which != 1 && which != 2) throw std::invalid_argument("atom_operator: which must be 1 or 2");
    const ComplexMatrix op = qubit_operator(kind);
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return which == 1 ? kron(op, id) : kron(id, op);
}

ComplexMatrix effective_hamiltonian(const SystemParams& p) {
    p.validate();
    const double omega = p.omega_eff();
    const ComplexMatrix s1 = atom_operator(1, AtomOp::lower);
    const ComplexMatrix s2 = atom_operator(2, AtomOp::lower);
    const ComplexMatrix s1d = atom_operator(1, AtomOp::raise);
    const ComplexMatrix s2d = atom_operator(2, AtomOp::raise);
    return cdouble(omega) * (s1d * s1 + s2d * s2 + s1d * s2 + s1 * s2d);
}

ComplexMatrix fock_annihilation(int n_max) {
    ComplexMatrix a(n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix full_hamiltonian(const SystemParams& p, double t, const FockTruncation& trunc) {
    p.validate();
    trunc.validate();
    if (!std::isfinite(t)) throw std::invalid_argument("full_hamiltonian: t must be finite");

    const int nf = trunc.n_max + 1;
    const ComplexMatrix id4 = ComplexMatrix::identity(4);
    const ComplexMatrix ad = kron(id4, fock_annihilation(trunc.n_max).adjoint());
    const ComplexMatrix s12 = kron(atom_operator(1, AtomOp::lower) + atom_operator(2, AtomOp::lower),
                                   ComplexMatrix::identity(nf));
    // K = a† (s1 + s2); H = lambda (e^{-i delta t} K + e^{+i delta t} K†)
    const ComplexMatrix k = ad * s12;
    const cdouble ph = std::exp(cdouble(0.0, -p.delta * t));
    return cdouble(p.lambda) * (ph * k + std::conj(ph) * k.adjoint());
}

ComplexMatrix excitation_number() {
    return atom_operator(1, AtomOp::z) + atom_operator(2, AtomOp::z);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h, double gamma,
                           const std::vector<ComplexMatrix>& jumps) {
    const int n = rho.dim();
    if (h.dim() != n) throw DimMismatch("lindblad_rhs: H dim mismatch");
    if (h.herm_defect() > 1e-10) throw NotHermitian("lindblad_rhs: H not Hermitian");

    const cdouble minus_i(0.0, -1.0);
    ComplexMatrix out = minus_i * (h * rho - rho * h);
    for (const auto& s : jumps) {
        if (s.dim() != n) throw DimMismatch("lindblad_rhs: jump dim mismatch");
        const ComplexMatrix sd = s.adjoint();
        const ComplexMatrix sds = sd * s;
        out += cdouble(2.0 * gamma) * (s * rho * sd - cdouble(0.5) * (sds * rho + rho * sds));
    }
    return out;
}

CVec basis_ket(int dim, int idx) {
    CVec v(dim, 0.0);
    v[idx] = 1.0;
    return v;
}

DensityMatrix initial_eg_state() {
    const CVec eg = basis_ket(4, kEG);
    return {outer(eg, eg), {2, 2}};
}

DensityMatrix ground_state() {
    const CVec gg = basis_ket(4, kGG);
    return {outer(gg, gg), {2, 2}};
}

} // namespace cqed
