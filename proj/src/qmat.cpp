#include "cqed/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cqed {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

ComplexMatrix::ComplexMatrix(int dim, CVec entries) : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != static_cast<size_t>(dim) * dim)
        throw DimMismatch("entry count does not match dim^2");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::herm_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw DimMismatch("operator+=: dim mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw DimMismatch("operator-=: dim mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimMismatch("operator*: dim mismatch");
    const int n = a.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble(0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cdouble s) { return a *= s; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_finite() || !b.is_finite()) throw InvalidState("kron: non-finite input");
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const cdouble aij = a(i, j);
            if (aij == cdouble(0.0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return r;
}

// --------------------------------------------------------------------------
// Hermitian eigensolver: cyclic complex Jacobi. Each rotation annihilates one
// off-diagonal pair; sweeps repeat until the off-diagonal mass is at roundoff.
// --------------------------------------------------------------------------
HermEig herm_eig(const ComplexMatrix& m) {
    if (!m.is_finite()) throw InvalidState("herm_eig: non-finite input");
    if (m.herm_defect() > 1e-10) throw NotHermitian("herm_eig: input not Hermitian within 1e-10");

    const int n = m.dim();
    // Work on the exactly Hermitian part so diagonals stay real.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.max_abs());
    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale * n) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * scale) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const cdouble phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (app - aqq) / (2.0 * mag);
                const double t = (theta >= 0.0) ? 1.0 / (theta + std::hypot(1.0, theta))
                                                : 1.0 / (theta - std::hypot(1.0, theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble se_m = s * std::conj(phase); // s e^{-i arg(apq)}
                const cdouble se_p = s * phase;            // s e^{+i arg(apq)}

                // A <- A J  (columns p, q)
                for (int i = 0; i < n; ++i) {
                    const cdouble aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + se_m * aiq;
                    a(i, q) = -se_p * aip + c * aiq;
                }
                // A <- J† A  (rows p, q)
                for (int j = 0; j < n; ++j) {
                    const cdouble apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + se_p * aqj;
                    a(q, j) = -se_m * apj + c * aqj;
                }
                // V <- V J
                for (int i = 0; i < n; ++i) {
                    const cdouble vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + se_m * viq;
                    v(i, q) = -se_p * vip + c * viq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    HermEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

// --------------------------------------------------------------------------
// General eigenvalues: Givens similarity to upper Hessenberg, then shifted QR
// (Wilkinson shift, occasional exceptional shift) with deflation.
// --------------------------------------------------------------------------
namespace {

// Unitary rotation acting on coordinates (i,j): R = (1/r) [[conj(u), conj(w)], [-w, u]].
struct Rot {
    cdouble u, w;
    double r;
};

Rot make_rot(cdouble u, cdouble w) {
    const double r = std::hypot(std::abs(u), std::abs(w));
    return {u, w, r};
}

std::pair<cdouble, cdouble> eig2x2(cdouble a, cdouble b, cdouble c, cdouble d) {
    const cdouble m = 0.5 * (a + d);
    const cdouble disc = std::sqrt(m * m - (a * d - b * c));
    const cdouble l1 = m + disc;
    const cdouble l2 = (std::abs(l1) > 1e-300) ? (a * d - b * c) / l1 : m - disc;
    return {l1, l2};
}

ComplexMatrix hessenberg(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix h = m;
    for (int k = 0; k + 2 < n; ++k) {
        for (int i = k + 2; i < n; ++i) {
            if (std::abs(h(i, k)) == 0.0) continue;
            const Rot g = make_rot(h(k + 1, k), h(i, k));
            if (g.r == 0.0) continue;
            // rows (k+1, i)
            for (int j = k; j < n; ++j) {
                const cdouble x = h(k + 1, j), y = h(i, j);
                h(k + 1, j) = (std::conj(g.u) * x + std::conj(g.w) * y) / g.r;
                h(i, j) = (-g.w * x + g.u * y) / g.r;
            }
            // columns (k+1, i)
            for (int j = 0; j < n; ++j) {
                const cdouble x = h(j, k + 1), y = h(j, i);
                h(j, k + 1) = (x * g.u + y * g.w) / g.r;
                h(j, i) = (-x * std::conj(g.w) + y * std::conj(g.u)) / g.r;
            }
            h(i, k) = 0.0;
        }
    }
    return h;
}

} // namespace

std::vector<cdouble> general_eigenvalues(const ComplexMatrix& m) {
    const int n = m.dim();
    if (n < 1 || n > 8) throw DimMismatch("general_eigenvalues: dim must be in [1,8]");
    if (!m.is_finite()) throw InvalidState("general_eigenvalues: non-finite input");

    ComplexMatrix h = hessenberg(m);
    const double scale = std::max(1.0, h.max_abs());

    std::vector<cdouble> eig;
    eig.reserve(n);

    int budget = 200;
    int hi = n - 1;
    int stalled = 0;
    while (hi >= 0) {
        if (hi == 0) {
            eig.push_back(h(0, 0));
            --hi;
            continue;
        }
        // Deflate converged subdiagonals.
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double tol = kEps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo))) + 1e-40 * scale;
            if (sub <= tol) break;
            --lo;
        }
        if (lo == hi) {
            eig.push_back(h(hi, hi));
            --hi;
            stalled = 0;
            continue;
        }
        if (lo == hi - 1) {
            auto [l1, l2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            eig.push_back(l1);
            eig.push_back(l2);
            hi -= 2;
            stalled = 0;
            continue;
        }
        if (--budget < 0) throw NoConvergence("general_eigenvalues: QR iteration budget exhausted");

        // Wilkinson shift from the trailing 2x2 of the active window.
        cdouble mu;
        if (++stalled % 12 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            mu = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }

        for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
        std::vector<Rot> rots;
        rots.reserve(hi - lo);
        for (int i = lo; i < hi; ++i) {
            const Rot g = make_rot(h(i, i), h(i + 1, i));
            rots.push_back(g);
            if (g.r == 0.0) continue;
            for (int j = i; j <= hi; ++j) {
                const cdouble x = h(i, j), y = h(i + 1, j);
                h(i, j) = (std::conj(g.u) * x + std::conj(g.w) * y) / g.r;
                h(i + 1, j) = (-g.w * x + g.u * y) / g.r;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const Rot& g = rots[i - lo];
            if (g.r == 0.0) continue;
            for (int j = lo; j <= hi; ++j) {
                const cdouble x = h(j, i), y = h(j, i + 1);
                h(j, i) = (x * g.u + y * g.w) / g.r;
                h(j, i + 1) = (-x * std::conj(g.w) + y * std::conj(g.u)) / g.r;
            }
        }
        for (int i = lo; i <= hi; ++i) h(i, i) += mu;
    }
    return eig;
}

std::array<double, 3> singular_values(const Mat3& t) {
    for (double x : t)
        if (!std::isfinite(x)) throw InvalidState("singular_values: non-finite input");
    // Gram matrix T^T T, then Hermitian eigenvalues.
    ComplexMatrix g(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t[3 * k + i] * t[3 * k + j];
            g(i, j) = s;
        }
    const HermEig e = herm_eig(g);
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = std::sqrt(std::max(0.0, e.values[i]));
    return out;
}

void validate_density(const DensityMatrix& dm, double herm_tol, double trace_tol, double eig_floor) {
    const int n = dm.matrix.dim();
    long prod = 1;
    for (int d : dm.layout) {
        if (d <= 0) throw BadLayout("validate_density: nonpositive layout entry");
        prod *= d;
    }
    if (prod != n) throw BadLayout("validate_density: layout product does not match dim");
    if (!dm.matrix.is_finite()) throw InvalidState("validate_density: non-finite entries");
    if (dm.matrix.herm_defect() > herm_tol) throw InvalidState("validate_density: not Hermitian");
    if (std::abs(dm.matrix.trace() - cdouble(1.0)) > trace_tol)
        throw InvalidState("validate_density: trace differs from 1");
    const HermEig e = herm_eig(dm.matrix);
    if (e.values.back() < eig_floor) throw InvalidState("validate_density: negative eigenvalue");
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int n = rho.matrix.dim();
    const auto& dims = rho.layout;
    long prod = 1;
    for (int d : dims) prod *= d;
    if (prod != n) throw BadLayout("partial_trace: layout product does not match dim");
    const int ns = static_cast<int>(dims.size());
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= ns) throw BadLayout("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) throw BadLayout("partial_trace: keep indices must be strictly increasing");
    }

    std::vector<long> stride(ns, 1);
    for (int s = ns - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

    std::vector<int> traced;
    for (int s = 0; s < ns; ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

    long kd = 1, td = 1;
    for (int s : keep) kd *= dims[s];
    for (int s : traced) td *= dims[s];

    // Flat offsets contributed by the kept / traced multi-indices.
    auto offsets = [&](const std::vector<int>& slots, long count) {
        std::vector<long> off(count, 0);
        for (long x = 0; x < count; ++x) {
            long rem = x;
            for (int si = static_cast<int>(slots.size()) - 1; si >= 0; --si) {
                const int s = slots[si];
                off[x] += (rem % dims[s]) * stride[s];
                rem /= dims[s];
            }
        }
        return off;
    };
    const std::vector<long> koff = offsets(keep, kd);
    const std::vector<long> toff = offsets(traced, td);

    ComplexMatrix out(static_cast<int>(kd));
    for (long a = 0; a < kd; ++a)
        for (long b = 0; b < kd; ++b) {
            cdouble s = 0.0;
            for (long c = 0; c < td; ++c)
                s += rho.matrix(static_cast<int>(koff[a] + toff[c]), static_cast<int>(koff[b] + toff[c]));
            out(static_cast<int>(a), static_cast<int>(b)) = s;
        }

    std::vector<int> out_layout;
    for (int s : keep) out_layout.push_back(dims[s]);
    return {std::move(out), std::move(out_layout)};
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.matrix.dim() != sigma.matrix.dim()) throw DimMismatch("trace_distance: dim mismatch");
    const HermEig e = herm_eig(rho.matrix - sigma.matrix);
    double s = 0.0;
    for (double l : e.values) s += std::abs(l);
    return 0.5 * s;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    if (!a.is_finite()) throw InvalidState("expm: non-finite input");
    const int n = a.dim();
    // 1-norm (max column sum) controls the scaling.
    double nrm = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(a(i, j));
        nrm = std::max(nrm, col);
    }
    int s = 0;
    while (nrm > 0.5 && s < 60) {
        nrm *= 0.5;
        ++s;
    }
    ComplexMatrix b = a;
    b *= std::pow(2.0, -s);

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = term * b;
        term *= cdouble(1.0 / k);
        result += term;
        if (term.max_abs() < 1e-20 * std::max(1.0, result.max_abs())) break;
    }
    for (int i = 0; i < s; ++i) result = result * result;
    return result;
}

CVec vec_rows(const ComplexMatrix& m) { return m.entries(); }

ComplexMatrix unvec_rows(const CVec& v, int dim) {
    if (v.size() != static_cast<size_t>(dim) * dim) throw DimMismatch("unvec_rows: size mismatch");
    return {dim, v};
}

ComplexMatrix sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b) {
    return kron(a, b.transpose());
}

CVec matvec(const ComplexMatrix& m, const CVec& v) {
    const int n = m.dim();
    if (v.size() != static_cast<size_t>(n)) throw DimMismatch("matvec: size mismatch");
    CVec r(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += m(i, j) * v[j];
    return r;
}

cdouble inner(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw DimMismatch("inner: size mismatch");
    cdouble s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

ComplexMatrix outer(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw DimMismatch("outer: size mismatch");
    const int n = static_cast<int>(a.size());
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a[i] * std::conj(b[j]);
    return r;
}

double norm2(const CVec& a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace cqed
