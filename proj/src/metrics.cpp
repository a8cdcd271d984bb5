#include "cqed/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cqed {

namespace {

void check_two_qubit(const DensityMatrix& rho, const char* who) {
    if (rho.matrix.dim() != 4) throw DimMismatch(std::string(who) + ": state must be 4x4");
    if (!rho.matrix.is_finite()) throw InvalidState(std::string(who) + ": non-finite state");
    if (rho.matrix.herm_defect() > 1e-8) throw InvalidState(std::string(who) + ": state not Hermitian");
}

double real_expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
    return (rho.matrix * op).trace().real();
}

} // namespace

CVec epr_ket() {
    CVec v(4, 0.0);
    v[kEG] = 1.0 / std::sqrt(2.0);
    v[kGE] = cdouble(0.0, -1.0) / std::sqrt(2.0);
    return v;
}

JointProbs joint_probabilities(const DensityMatrix& rho) {
    check_two_qubit(rho, "joint_probabilities");
    return {rho.matrix(kEG, kEG).real(), rho.matrix(kGE, kGE).real(),
            rho.matrix(kGG, kGG).real(), rho.matrix(kEE, kEE).real()};
}

double bell_signal(const DensityMatrix& rho, double phi) {
    check_two_qubit(rho, "bell_signal");
    static const ComplexMatrix xx = atom_operator(1, AtomOp::x) * atom_operator(2, AtomOp::x);
    static const ComplexMatrix xy = atom_operator(1, AtomOp::x) * atom_operator(2, AtomOp::y);
    const cdouble val = (rho.matrix * xx).trace() * std::cos(phi) + (rho.matrix * xy).trace() * std::sin(phi);
    return val.real();
}

BellFit bell_fit(const DensityMatrix& rho) {
    const double b0 = bell_signal(rho, 0.0);
    const double b90 = bell_signal(rho, std::numbers::pi / 2.0);
    return {std::sqrt(b0 * b0 + b90 * b90), std::atan2(-b90, b0)};
}

ComplexMatrix spin_flip(const DensityMatrix& rho) {
    check_two_qubit(rho, "spin_flip");
    static const ComplexMatrix yy = kron(qubit_operator(AtomOp::y), qubit_operator(AtomOp::y));
    return yy * rho.matrix.conjugate() * yy;
}

double concurrence(const DensityMatrix& rho) {
    check_two_qubit(rho, "concurrence");
    const ComplexMatrix prod = rho.matrix * spin_flip(rho);
    const std::vector<cdouble> eigs = general_eigenvalues(prod);

    std::vector<double> roots;
    roots.reserve(4);
    for (const cdouble& l : eigs) {
        // rho * rho_sf has nonnegative spectrum in exact arithmetic.
        if (std::abs(l.imag()) > 1e-9)
            throw InvalidState("concurrence: eigenvalue of rho*rho_sf not real within 1e-9");
        roots.push_back(std::sqrt(std::max(0.0, l.real())));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
    check_two_qubit(rho, "correlation_matrix");
    static const std::array<AtomOp, 3> axes = {AtomOp::x, AtomOp::y, AtomOp::z};
    CorrelationMatrix cm;
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m)
            cm.t[3 * n + m] = real_expectation(rho, atom_operator(1, axes[n]) * atom_operator(2, axes[m]));
    return cm;
}

double max_teleport_fidelity(const DensityMatrix& rho) {
    const CorrelationMatrix cm = correlation_matrix(rho);
    const std::array<double, 3> sv = singular_values(cm.t);
    return 0.5 * (1.0 + (sv[0] + sv[1] + sv[2]) / 3.0);
}

double epr_fidelity(const DensityMatrix& rho) {
    check_two_qubit(rho, "epr_fidelity");
    const CVec epr = epr_ket();
    return inner(epr, matvec(rho.matrix, epr)).real();
}

namespace {

// Bell measurement basis on (input, Alice) adapted to psi_EPR:
// |B_mu> = (sigma_mu x I)|psi_EPR>, mu in {I, x, y, z}. The matching
// corrections on Bob are sigma_mu * sigma^z, which give the identity
// channel when the shared state is psi_EPR itself.
struct Protocol {
    std::array<CVec, 4> bell;        // 4-dim kets on (input, Alice)
    std::array<ComplexMatrix, 4> fix; // 2x2 corrections on Bob
};

const Protocol& protocol() {
    static const Protocol p = [] {
        Protocol pr;
        const CVec epr = epr_ket();
        const ComplexMatrix id2 = ComplexMatrix::identity(2);
        const std::array<ComplexMatrix, 4> paulis = {id2, qubit_operator(AtomOp::x),
                                                     qubit_operator(AtomOp::y), qubit_operator(AtomOp::z)};
        for (int mu = 0; mu < 4; ++mu) {
            pr.bell[mu] = matvec(kron(paulis[mu], id2), epr);
            pr.fix[mu] = paulis[mu] * qubit_operator(AtomOp::z);
        }
        return pr;
    }();
    return p;
}

} // namespace

double teleport_fidelity(const DensityMatrix& channel, const UnknownQubit& input) {
    check_two_qubit(channel, "teleport_fidelity");
    const double nrm = std::norm(input.a) + std::norm(input.b);
    if (std::abs(nrm - 1.0) > 1e-12) throw InvalidState("teleport_fidelity: input not normalized");

    const CVec psi = {input.a, input.b};
    const ComplexMatrix joint = kron(outer(psi, psi), channel.matrix); // (input, Alice, Bob)
    const Protocol& pr = protocol();

    double fidelity = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const ComplexMatrix proj = kron(outer(pr.bell[mu], pr.bell[mu]), ComplexMatrix::identity(2));
        const DensityMatrix collapsed{proj * joint * proj, {2, 2, 2}};
        const DensityMatrix bob = partial_trace(collapsed, {2}); // unnormalized, trace = p_mu
        const ComplexMatrix out = pr.fix[mu] * bob.matrix * pr.fix[mu].adjoint();
        fidelity += inner(psi, matvec(out, psi)).real(); // p_mu * F_mu
    }
    return fidelity;
}

double average_teleport_fidelity(const DensityMatrix& channel) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cdouble i(0.0, 1.0);
    const std::array<UnknownQubit, 6> inputs = {{
        {1.0, 0.0},                      // +z
        {0.0, 1.0},                      // -z
        {inv_sqrt2, inv_sqrt2},          // +x
        {inv_sqrt2, -inv_sqrt2},         // -x
        {inv_sqrt2, i * inv_sqrt2},      // +y
        {inv_sqrt2, -i * inv_sqrt2},     // -y
    }};
    double sum = 0.0;
    for (const auto& in : inputs) sum += teleport_fidelity(channel, in);
    return sum / 6.0;
}

ChannelReport channel_report(const DensityMatrix& rho) {
    const JointProbs jp = joint_probabilities(rho);
    const BellFit bf = bell_fit(rho);
    ChannelReport rep;
    rep.probs = {jp.eg, jp.ge, jp.gg, jp.ee};
    rep.bell_amplitude = bf.amplitude;
    rep.bell_phase = bf.phase;
    rep.concurrence = concurrence(rho);
    rep.fmax = max_teleport_fidelity(rho);
    rep.epr_fidelity = epr_fidelity(rho);
    rep.purity = (rho.matrix * rho.matrix).trace().real();
    return rep;
}

} // namespace cqed
