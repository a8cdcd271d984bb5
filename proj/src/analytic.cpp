#include "cqed/analytic.hpp"

#include <cmath>
#include <numbers>

namespace cqed {

namespace {
constexpr double kPi = std::numbers::pi;
}

double InteractionTimeIndex::time(double omega) const {
    if (k < 0) throw std::invalid_argument("InteractionTimeIndex: k must be >= 0");
    if (!(omega > 0.0)) throw std::invalid_argument("InteractionTimeIndex: omega must be > 0");
    return (2.0 * k + 1.0) * kPi / (4.0 * omega);
}

ComplexMatrix transform_u() {
    // Generator G = |eg><ge| - |ge><eg| rotates the {|eg>,|ge>} plane;
    // exp(-theta G) has the finite series c I - s G there, theta = pi/4.
    const double c = std::cos(kPi / 4.0);
    const double s = std::sin(kPi / 4.0);
    ComplexMatrix u = ComplexMatrix::identity(4);
    u(kEG, kEG) = c;
    u(kGE, kGE) = c;
    u(kGE, kEG) = s;
    u(kEG, kGE) = -s;
    return u;
}

ComplexMatrix transform_v(double t, double omega) {
    // exp[-i Omega (s1† s1 + s1^z/2) t]: diagonal phases
    // (e^{-3iWt/2}, e^{-3iWt/2}, e^{+iWt/2}, e^{+iWt/2}).
    ComplexMatrix v(4);
    const cdouble pe = std::exp(cdouble(0.0, -1.5 * omega * t));
    const cdouble pg = std::exp(cdouble(0.0, 0.5 * omega * t));
    v(kEE, kEE) = pe;
    v(kEG, kEG) = pe;
    v(kGE, kGE) = pg;
    v(kGG, kGG) = pg;
    return v;
}

DensityMatrix rho_tilde_initial() {
    CVec singlet(4, 0.0);
    singlet[kEG] = 1.0 / std::sqrt(2.0);
    singlet[kGE] = -1.0 / std::sqrt(2.0);
    return {outer(singlet, singlet), {2, 2}};
}

DensityMatrix rho_tilde(double t, double gamma) {
    if (t < 0.0) throw NegativeTime("rho_tilde: t must be >= 0");
    const double p = std::exp(-2.0 * gamma * t);
    ComplexMatrix m(4);
    m(kEG, kEG) = 0.5 * p;
    m(kGE, kGE) = 0.5 * p;
    m(kEG, kGE) = -0.5 * p;
    m(kGE, kEG) = -0.5 * p;
    m(kGG, kGG) = 1.0 - p;
    return {std::move(m), {2, 2}};
}

ComplexMatrix jump_superop() {
    ComplexMatrix j(16);
    for (int i = 1; i <= 2; ++i) {
        const ComplexMatrix s = atom_operator(i, AtomOp::lower);
        j += sandwich_superop(s, s.adjoint());
    }
    return j;
}

ComplexMatrix damping_superop() {
    const ComplexMatrix id = ComplexMatrix::identity(4);
    ComplexMatrix l(16);
    for (int i = 1; i <= 2; ++i) {
        const ComplexMatrix s = atom_operator(i, AtomOp::lower);
        const ComplexMatrix n = s.adjoint() * s;
        l -= cdouble(0.5) * (sandwich_superop(n, id) + sandwich_superop(id, n));
    }
    return l;
}

DensityMatrix rho_tilde_superop(double t, double gamma) {
    if (t < 0.0) throw NegativeTime("rho_tilde_superop: t must be >= 0");
    const double x = std::expm1(2.0 * gamma * t); // e^{2 gamma t} - 1
    const ComplexMatrix prop = expm(cdouble(x) * jump_superop()) * expm(cdouble(2.0 * gamma * t) * damping_superop());
    CVec v = matvec(prop, vec_rows(rho_tilde_initial().matrix));
    return {unvec_rows(v, 4), {2, 2}};
}

ClosedFormState rho_exact(double t, const SystemParams& p) {
    if (t < 0.0) throw NegativeTime("rho_exact: t must be >= 0");
    p.validate();
    const double omega = p.omega_eff();
    const double surv = std::exp(-2.0 * p.gamma * t);

    CVec chi(4, 0.0);
    chi[kEG] = std::cos(omega * t);
    chi[kGE] = cdouble(0.0, -1.0) * std::sin(omega * t);
    const CVec gg = basis_ket(4, kGG);

    ComplexMatrix m = cdouble(surv) * outer(chi, chi) + cdouble(1.0 - surv) * outer(gg, gg);
    return {t, p.gamma, omega, {std::move(m), {2, 2}}};
}

JointProbs closed_form_joint_probs(double t, double gamma, double omega) {
    const double p = std::exp(-2.0 * gamma * t);
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    return {p * c * c, p * s * s, 1.0 - p, 0.0};
}

double closed_form_bell_amplitude(InteractionTimeIndex k, double gamma, double omega) {
    return std::exp(-gamma * (2.0 * k.k + 1.0) * kPi / (2.0 * omega));
}

double closed_form_fmax(InteractionTimeIndex k, double gamma, double omega) {
    if (gamma / omega <= std::log(4.0) / ((2.0 * k.k + 1.0) * kPi))
        return 1.0 / 3.0 + (2.0 / 3.0) * closed_form_concurrence_tk(k, gamma, omega);
    return 2.0 / 3.0;
}

double closed_form_concurrence_tk(InteractionTimeIndex k, double gamma, double omega) {
    return std::exp(-gamma * (2.0 * k.k + 1.0) * kPi / (2.0 * omega));
}

double gamma_max(InteractionTimeIndex k, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("gamma_max: omega must be > 0");
    return omega * std::log(4.0) / ((2.0 * k.k + 1.0) * kPi);
}

} // namespace cqed
