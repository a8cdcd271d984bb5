#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqed/model.hpp"
#include "helpers.hpp"

using namespace cqed;
using testutil::Rng;

TEST_CASE("atom operators act on the right slots") {
    const CVec eg = basis_ket(4, kEG), gg = basis_ket(4, kGG), ge = basis_ket(4, kGE);

    // s1 |eg> = |gg>
    const CVec lowered = matvec(atom_operator(1, AtomOp::lower), eg);
    CHECK(std::abs(inner(gg, lowered) - cdouble(1.0)) < 1e-15);
    CHECK(norm2(lowered) == doctest::Approx(1.0));

    // s2† annihilates states with atom 2 already excited; s2† |gg> = |ge>
    CHECK(norm2(matvec(atom_operator(2, AtomOp::raise), ge)) == doctest::Approx(0.0));
    const CVec raised = matvec(atom_operator(2, AtomOp::raise), gg);
    CHECK(std::abs(inner(ge, raised) - cdouble(1.0)) < 1e-15);
    const CVec to_ee = matvec(atom_operator(2, AtomOp::raise), eg);
    CHECK(std::abs(inner(basis_ket(4, kEE), to_ee) - cdouble(1.0)) < 1e-15);

    const ComplexMatrix z1 = atom_operator(1, AtomOp::z);
    CHECK(z1(0, 0).real() == 1.0);
    CHECK(z1(1, 1).real() == 1.0);
    CHECK(z1(2, 2).real() == -1.0);
    CHECK(z1(3, 3).real() == -1.0);

    CHECK_THROWS_AS(atom_operator(3, AtomOp::z), std::invalid_argument);
}

TEST_CASE("effective Hamiltonian matrix elements") {
    const SystemParams p{2.0, 8.0, 0.0}; // Omega = 0.5
    const double omega = p.omega_eff();
    CHECK(omega == doctest::Approx(0.5).epsilon(1e-15));

    const ComplexMatrix h = effective_hamiltonian(p);
    CHECK(h.herm_defect() < 1e-15);
    CHECK(h(kEG, kGE).real() == doctest::Approx(omega));
    CHECK(h(kGE, kEG).real() == doctest::Approx(omega));
    CHECK(std::abs(h(kGG, kGG)) < 1e-15);
    CHECK(h(kEE, kEE).real() == doctest::Approx(2.0 * omega));

    // Commutes with the excitation number.
    const ComplexMatrix n = excitation_number();
    CHECK((h * n - n * h).max_abs() <= 1e-12);
}

TEST_CASE("excitation number eigenvalues") {
    const ComplexMatrix n = excitation_number();
    CHECK(std::abs(inner(basis_ket(4, kEE), matvec(n, basis_ket(4, kEE))) - cdouble(2.0)) < 1e-15);
    CHECK(std::abs(inner(basis_ket(4, kEG), matvec(n, basis_ket(4, kEG)))) < 1e-15);
    CHECK(std::abs(inner(basis_ket(4, kGG), matvec(n, basis_ket(4, kGG))) - cdouble(-2.0)) < 1e-15);
}

TEST_CASE("full Hamiltonian structure") {
    const SystemParams p{1.0, 5.0, 0.0};
    const FockTruncation trunc{2};
    const int nf = trunc.n_max + 1;

    const ComplexMatrix h0 = full_hamiltonian(p, 0.0, trunc);
    // <gg;1| H(0) |eg;0> = lambda
    CHECK(h0(kGG * nf + 1, kEG * nf + 0).real() == doctest::Approx(p.lambda));
    // no diagonal part
    for (int i = 0; i < h0.dim(); ++i) CHECK(std::abs(h0(i, i)) < 1e-15);

    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = 10.0 * rng.sym();
        CHECK(full_hamiltonian(p, t, trunc).herm_defect() <= 1e-15);
    }

    // Conserves sigma1^z + sigma2^z + 2 a†a even on the truncated space.
    const ComplexMatrix idf = ComplexMatrix::identity(nf);
    const ComplexMatrix a = fock_annihilation(trunc.n_max);
    ComplexMatrix ntot = kron(excitation_number(), idf);
    ntot += cdouble(2.0) * kron(ComplexMatrix::identity(4), a.adjoint() * a);
    const ComplexMatrix ht = full_hamiltonian(p, 0.37, trunc);
    CHECK((ht * ntot - ntot * ht).max_abs() <= 1e-12);

    CHECK_THROWS_AS(full_hamiltonian(p, 0.0, FockTruncation{0}), std::invalid_argument);
}

TEST_CASE("lindblad_rhs keeps the ground state stationary") {
    const ComplexMatrix h = effective_hamiltonian(SystemParams{1.0, 1.0, 0.0});
    const std::vector<ComplexMatrix> jumps = {atom_operator(1, AtomOp::lower),
                                              atom_operator(2, AtomOp::lower)};
    const ComplexMatrix rhs = lindblad_rhs(ground_state().matrix, h, 0.7, jumps);
    CHECK(rhs.max_abs() <= 1e-15);
}

TEST_CASE("lindblad_rhs output is traceless and Hermitian on random states") {
    Rng rng(22);
    const ComplexMatrix h = effective_hamiltonian(SystemParams{1.0, 2.0, 0.0});
    const std::vector<ComplexMatrix> jumps = {atom_operator(1, AtomOp::lower),
                                              atom_operator(2, AtomOp::lower)};
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = testutil::random_state(rng, 4, {2, 2});
        const ComplexMatrix rhs = lindblad_rhs(rho.matrix, h, 0.3, jumps);
        CHECK(std::abs(rhs.trace()) <= 1e-13);
        CHECK(rhs.herm_defect() <= 1e-13);
    }
}

TEST_CASE("singly excited population decays at rate 2 gamma") {
    const double gamma = 0.35;
    const ComplexMatrix h(4); // H = 0
    const std::vector<ComplexMatrix> jumps = {atom_operator(1, AtomOp::lower),
                                              atom_operator(2, AtomOp::lower)};
    const ComplexMatrix rhs = lindblad_rhs(initial_eg_state().matrix, h, gamma, jumps);
    CHECK(rhs(kEG, kEG).real() == doctest::Approx(-2.0 * gamma).epsilon(1e-14));
}

TEST_CASE("lindblad_rhs validates inputs") {
    const ComplexMatrix h = effective_hamiltonian(SystemParams{1.0, 1.0, 0.0});
    const std::vector<ComplexMatrix> jumps = {atom_operator(1, AtomOp::lower)};
    CHECK_THROWS_AS(lindblad_rhs(ComplexMatrix::identity(2), h, 0.1, jumps), DimMismatch);
    CHECK_THROWS_AS(lindblad_rhs(ComplexMatrix::identity(4), h, 0.1,
                                 {ComplexMatrix::identity(2)}),
                    DimMismatch);
    ComplexMatrix bad(4);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(lindblad_rhs(ComplexMatrix::identity(4), bad, 0.1, jumps), NotHermitian);
}

TEST_CASE("SystemParams validation") {
    CHECK_THROWS_AS((SystemParams{0.0, 1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemParams{1.0, -1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SystemParams{1.0, 1.0, -0.1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((SystemParams{1.0, 3.0, 0.5}.validate()));
}
