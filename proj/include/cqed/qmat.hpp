#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "cqed/errors.hpp"

namespace cqed {

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;

/// Row-major real 3x3 matrix (correlation tensors).
using Mat3 = std::array<double, 9>;

/// Dense square complex matrix, row-major storage. This is the universal
/// carrier for operators and states in this code base; dimensions stay
/// small (two qubits, optionally tensored with a truncated Fock space),
/// so everything is value-semantic and unoptimized by design.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, CVec entries);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    cdouble& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
    const cdouble& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }

    const CVec& entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cdouble trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    /// max |M - M†| over entries.
    double herm_defect() const;
    bool is_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cdouble s);

private:
    int dim_ = 0;
    CVec data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cdouble s);

/// Kronecker product, dim = dim_a * dim_b. Slot order: a is the slower index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigensystem of a Hermitian matrix via cyclic complex Jacobi sweeps.
/// Eigenvalues are returned in descending order; `vectors` holds the
/// matching eigenvectors as columns, so m = V diag(values) V†.
struct HermEig {
    std::vector<double> values;
    ComplexMatrix vectors;
};
HermEig herm_eig(const ComplexMatrix& m);

/// Eigenvalues of a general (possibly non-Hermitian) complex matrix,
/// dim <= 8, via Givens-Hessenberg reduction and shifted QR with a fixed
/// iteration budget. Order unspecified.
std::vector<cdouble> general_eigenvalues(const ComplexMatrix& m);

/// Singular values of a real 3x3 matrix, descending (square roots of the
/// eigenvalues of T^T T).
std::array<double, 3> singular_values(const Mat3& t);

/// Density matrix together with its tensor-space layout, e.g. {2,2} for
/// two atoms or {2,2,n_max+1} for atoms x field.
struct DensityMatrix {
    ComplexMatrix matrix;
    std::vector<int> layout;
};

/// Throws InvalidState/BadLayout if `dm` is not a physical state within
/// tolerance: Hermitian (max-norm), unit trace, eigenvalues >= eig_floor.
void validate_density(const DensityMatrix& dm,
                      double herm_tol = 1e-10,
                      double trace_tol = 1e-10,
                      double eig_floor = -1e-9);

/// Trace over the subsystems not listed in `keep` (indices into layout,
/// strictly increasing). Trace-preserving, Hermiticity-preserving.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// (1/2) sum |eigenvalues of rho - sigma|, in [0,1] for states.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
ComplexMatrix expm(const ComplexMatrix& a);

// --- vectorization helpers (row-major stacking) -------------------------
// With vec(rho) stacking rows, vec(A rho B) = kron(A, B^T) vec(rho);
// sandwich_superop builds that d^2 x d^2 matrix.
CVec vec_rows(const ComplexMatrix& m);
ComplexMatrix unvec_rows(const CVec& v, int dim);
ComplexMatrix sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b);

// --- small vector helpers ------------------------------------------------
CVec matvec(const ComplexMatrix& m, const CVec& v);
cdouble inner(const CVec& a, const CVec& b); // a† b
ComplexMatrix outer(const CVec& a, const CVec& b); // a b†
double norm2(const CVec& a);

} // namespace cqed
