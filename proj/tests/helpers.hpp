// Test-side utilities kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cqed/qmat.hpp"

namespace testutil {

using cqed::cdouble;
using cqed::ComplexMatrix;
using cqed::CVec;

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = (n == 1) ? a : a + (b - a) * i / (n - 1);
    return v;
}

// Deterministic xorshift64* generator (identical output on every platform).
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed = 0x2545f4914f6cdd1dULL) : s(seed) {}
    double uniform() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return static_cast<double>((s * 2685821657736338717ULL) >> 11) * 0x1.0p-53;
    }
    double sym() { return 2.0 * uniform() - 1.0; }
    cdouble c() { return {sym(), sym()}; }
    // Box-Muller, for Haar-uniform state sampling.
    double gauss() {
        const double u1 = std::max(uniform(), 1e-300);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

inline ComplexMatrix random_matrix(Rng& rng, int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.c();
    return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, int n) {
    const ComplexMatrix g = random_matrix(rng, n);
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline cqed::DensityMatrix random_state(Rng& rng, int n, std::vector<int> layout) {
    const ComplexMatrix g = random_matrix(rng, n);
    ComplexMatrix rho = g * g.adjoint();
    rho *= cdouble(1.0) / rho.trace();
    return {std::move(rho), std::move(layout)};
}

// Plain Taylor-series exponential (no scaling/squaring): an independent
// reference for generators of modest norm.
inline ComplexMatrix expm_taylor(const ComplexMatrix& a, int terms = 60) {
    ComplexMatrix result = ComplexMatrix::identity(a.dim());
    ComplexMatrix term = ComplexMatrix::identity(a.dim());
    for (int k = 1; k <= terms; ++k) {
        term = term * a;
        term *= cdouble(1.0 / k);
        result += term;
    }
    return result;
}

// Determinant via LU with partial pivoting.
inline cdouble det(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix a = m;
    cdouble d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
            d = -d;
        }
        d *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cdouble f = a(i, k) / a(k, k);
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

} // namespace testutil
