#include "revcap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace revcap {

namespace detail {

void fail_precondition(const std::string& message) { throw std::invalid_argument(message); }

void require(bool ok, const std::string& message) {
    if (!ok) fail_precondition(message);
}

}  // namespace detail

using detail::require;

ComplexMatrix::ComplexMatrix(int r, int c, std::initializer_list<complex> vals)
    : rows(r), cols(c), entries(vals) {
    require(static_cast<int>(entries.size()) == r * c, "matrix initializer size mismatch");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "matrix addition: shape mismatch");
    ComplexMatrix r = a;
    for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "matrix subtraction: shape mismatch");
    ComplexMatrix r = a;
    for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols == b.rows, "matrix product: inner dimension mismatch");
    ComplexMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const complex aik = a(i, k);
            if (aik == complex{}) continue;
            for (int j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

ComplexMatrix operator*(complex s, const ComplexMatrix& a) {
    ComplexMatrix r = a;
    for (auto& e : r.entries) e *= s;
    return r;
}

std::vector<complex> operator*(const ComplexMatrix& a, const std::vector<complex>& v) {
    require(a.cols == static_cast<int>(v.size()), "matrix-vector product: dimension mismatch");
    std::vector<complex> r(a.rows);
    for (int i = 0; i < a.rows; ++i) {
        complex s{};
        for (int j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

complex trace(const ComplexMatrix& a) {
    require(a.square(), "trace: matrix not square");
    complex t{};
    for (int i = 0; i < a.rows; ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0;
    for (const auto& e : a.entries) s += std::norm(e);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0;
    for (const auto& e : a.entries) m = std::max(m, std::abs(e));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "max_abs_diff: shape mismatch");
    double m = 0;
    for (size_t i = 0; i < a.entries.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!a.square()) return false;
    for (int i = 0; i < a.rows; ++i)
        for (int j = i; j < a.cols; ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

bool all_finite(const ComplexMatrix& a) {
    for (const auto& e : a.entries)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const complex aij = a(i, j);
            if (aij == complex{}) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l) r(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
        }
    return r;
}

StateVector::StateVector(std::vector<complex> amps) : dim(static_cast<int>(amps.size())), amplitudes(std::move(amps)) {
    require(dim >= 1, "state vector: empty amplitude list");
}

double StateVector::norm_sq() const {
    double s = 0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

std::vector<complex> tensor(std::span<const complex> a, std::span<const complex> b) {
    std::vector<complex> r(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    require(m.square() && m.rows >= 1, "density matrix: not square");
    require(all_finite(m), "density matrix: non-finite entry");
    require(is_hermitian(m, 1e-12), "density matrix: not Hermitian within 1e-12");
    require(std::abs(trace(m) - 1.0) <= 1e-12, "density matrix: trace not 1 within 1e-12");
    DensityMatrix rho;
    rho.dim = m.rows;
    rho.matrix = std::move(m);
    return rho;
}

void DensityMatrix::validate_psd() const {
    const Spectrum s = hermitian_eigenvalues(matrix);
    require(s.values.back() >= -1e-10, "density matrix: negative eigenvalue below -1e-10");
}

DensityMatrix outer(const StateVector& psi) {
    require(std::abs(psi.norm_sq() - 1.0) <= 1e-12, "outer: state vector not normalized within 1e-12");
    ComplexMatrix m(psi.dim, psi.dim);
    for (int i = 0; i < psi.dim; ++i)
        for (int j = 0; j < psi.dim; ++j) m(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix diagonal_state(std::span<const double> populations) {
    ComplexMatrix m(static_cast<int>(populations.size()), static_cast<int>(populations.size()));
    for (size_t i = 0; i < populations.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = populations[i];
    return DensityMatrix::from_matrix(std::move(m));
}

namespace {

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic sweep of two-sided Jacobi rotations; accumulates into v when given.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v) {
    const int n = a.rows;
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const complex apq = a(p, q);
            const double g = std::abs(apq);
            if (g == 0.0) continue;
            const complex u = apq / g;
            const double alpha = a(p, p).real();
            const double beta = a(q, q).real();
            // Small-magnitude root of t^2 - 2 tau t - 1 = 0.
            const double tau = (beta - alpha) / (2.0 * g);
            const double t = (tau > 0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                       : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            // W differs from the identity in the (p, q) block [[c, -s*u], [s*conj(u), c]].
            const complex wpq = -s * u;
            const complex wqp = s * std::conj(u);
            // Columns: A <- A W
            for (int k = 0; k < n; ++k) {
                const complex akp = a(k, p);
                const complex akq = a(k, q);
                a(k, p) = c * akp + wqp * akq;
                a(k, q) = wpq * akp + c * akq;
            }
            // Rows: A <- W^dagger A
            for (int k = 0; k < n; ++k) {
                const complex apk = a(p, k);
                const complex aqk = a(q, k);
                a(p, k) = c * apk + std::conj(wqp) * aqk;
                a(q, k) = std::conj(wpq) * apk + c * aqk;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = complex(a(p, p).real(), 0.0);
            a(q, q) = complex(a(q, q).real(), 0.0);
            if (v) {
                for (int k = 0; k < n; ++k) {
                    const complex vkp = (*v)(k, p);
                    const complex vkq = (*v)(k, q);
                    (*v)(k, p) = c * vkp + wqp * vkq;
                    (*v)(k, q) = wpq * vkp + c * vkq;
                }
            }
        }
    }
}

EigenSystem jacobi_eigensystem(const ComplexMatrix& m, bool want_vectors) {
    require(m.square(), "hermitian eigensolver: matrix not square");
    require(all_finite(m), "hermitian eigensolver: non-finite entry");
    require(is_hermitian(m, 1e-10), "hermitian eigensolver: matrix not Hermitian within 1e-10");
    const int n = m.rows;

    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix vecs;
    ComplexMatrix* vptr = nullptr;
    if (want_vectors) {
        vecs = ComplexMatrix::identity(n);
        vptr = &vecs;
    }

    const double scale = std::max(1.0, frobenius_norm(a));
    const double threshold = 1e-14 * scale;
    int sweeps = 0;
    while (offdiag_mass(a) > threshold) {
        jacobi_sweep(a, vptr);
        if (++sweeps > 100) throw std::runtime_error("hermitian eigensolver: Jacobi did not converge");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem sys;
    sys.values.values.resize(n);
    for (int i = 0; i < n; ++i) sys.values.values[i] = a(order[i], order[i]).real();
    if (want_vectors) {
        sys.vectors = ComplexMatrix(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) sys.vectors(i, j) = vecs(i, order[j]);
    }
    return sys;
}

}  // namespace

Spectrum hermitian_eigenvalues(const ComplexMatrix& m) { return jacobi_eigensystem(m, false).values; }

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) { return jacobi_eigensystem(m, true); }

namespace {

struct TraceLayout {
    std::vector<int> keep;       // sorted kept subsystem indices
    std::vector<int> traced;     // sorted traced subsystem indices
    std::vector<long> strides;   // stride of each subsystem in the full index
    long keep_dim = 1;
    long traced_dim = 1;

    long full_index(const std::vector<int>& subsystem_dims, long keep_multi, long traced_multi) const {
        long idx = 0;
        long km = keep_multi;
        for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
            const int d = subsystem_dims[*it];
            idx += (km % d) * strides[*it];
            km /= d;
        }
        long tm = traced_multi;
        for (auto it = traced.rbegin(); it != traced.rend(); ++it) {
            const int d = subsystem_dims[*it];
            idx += (tm % d) * strides[*it];
            tm /= d;
        }
        return idx;
    }
};

TraceLayout make_layout(int total_dim, const std::vector<int>& dims, const std::vector<int>& keep) {
    long prod = 1;
    for (int d : dims) {
        require(d >= 1, "partial trace: subsystem dimension < 1");
        prod *= d;
    }
    require(prod == total_dim, "partial trace: product of subsystem dims does not match state dim");
    require(!keep.empty(), "partial trace: keep set is empty");

    TraceLayout layout;
    std::vector<bool> kept(dims.size(), false);
    for (int k : keep) {
        require(k >= 0 && k < static_cast<int>(dims.size()), "partial trace: keep index out of range");
        require(!kept[k], "partial trace: duplicate keep index");
        kept[k] = true;
    }
    for (size_t i = 0; i < dims.size(); ++i) {
        if (kept[i]) {
            layout.keep.push_back(static_cast<int>(i));
            layout.keep_dim *= dims[i];
        } else {
            layout.traced.push_back(static_cast<int>(i));
            layout.traced_dim *= dims[i];
        }
    }
    layout.strides.assign(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        layout.strides[i] = layout.strides[i + 1] * dims[i + 1];
    return layout;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    const TraceLayout layout = make_layout(rho.dim, dims, keep);
    ComplexMatrix out(static_cast<int>(layout.keep_dim), static_cast<int>(layout.keep_dim));
    for (long r = 0; r < layout.keep_dim; ++r) {
        for (long c = 0; c < layout.keep_dim; ++c) {
            complex s{};
            for (long t = 0; t < layout.traced_dim; ++t) {
                const long fr = layout.full_index(dims, r, t);
                const long fc = layout.full_index(dims, c, t);
                s += rho.matrix(static_cast<int>(fr), static_cast<int>(fc));
            }
            out(static_cast<int>(r), static_cast<int>(c)) = s;
        }
    }
    return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix reduced_density(const StateVector& psi, const std::vector<int>& dims,
                              const std::vector<int>& keep) {
    const TraceLayout layout = make_layout(psi.dim, dims, keep);
    ComplexMatrix out(static_cast<int>(layout.keep_dim), static_cast<int>(layout.keep_dim));
    for (long r = 0; r < layout.keep_dim; ++r) {
        for (long c = 0; c < layout.keep_dim; ++c) {
            complex s{};
            for (long t = 0; t < layout.traced_dim; ++t) {
                const long fr = layout.full_index(dims, r, t);
                const long fc = layout.full_index(dims, c, t);
                s += psi.amplitudes[fr] * std::conj(psi.amplitudes[fc]);
            }
            out(static_cast<int>(r), static_cast<int>(c)) = s;
        }
    }
    return DensityMatrix::from_matrix(std::move(out));
}

StateVector purify(const DensityMatrix& rho) {
    const EigenSystem sys = hermitian_eigensystem(rho.matrix);
    const int d = rho.dim;
    std::vector<complex> amps(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        double lam = sys.values.values[i];
        require(lam >= -1e-10, "purify: negative eigenvalue below -1e-10");
        if (lam < 0) lam = 0;
        const double coeff = std::sqrt(lam);
        if (coeff == 0.0) continue;
        for (int s = 0; s < d; ++s) amps[static_cast<size_t>(i) * d + s] = coeff * sys.vectors(s, i);
    }
    StateVector psi(std::move(amps));
    return psi;
}

}  // namespace revcap
