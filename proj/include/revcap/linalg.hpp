#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

// Dense complex matrix/vector kernel for small dimensions (<= 64):
// Hermitian eigendecomposition (cyclic Jacobi), tensor products, partial
// traces and purification. Row-major storage, leftmost tensor factor is
// the slowest-varying index.

namespace revcap {

using complex = std::complex<double>;

struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<complex> entries;  // row-major, rows * cols

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {}
    ComplexMatrix(int r, int c, std::initializer_list<complex> vals);

    complex& operator()(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    const complex& operator()(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

    static ComplexMatrix zero(int r, int c) { return ComplexMatrix(r, c); }
    static ComplexMatrix identity(int n);

    bool square() const { return rows == cols; }
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complex s, const ComplexMatrix& a);
std::vector<complex> operator*(const ComplexMatrix& a, const std::vector<complex>& v);

ComplexMatrix adjoint(const ComplexMatrix& a);
complex trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool all_finite(const ComplexMatrix& a);

// Kronecker product; block (i, j) of the result equals a(i, j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

struct StateVector {
    int dim = 0;
    std::vector<complex> amplitudes;

    StateVector() = default;
    explicit StateVector(std::vector<complex> amps);

    double norm_sq() const;
};

std::vector<complex> tensor(std::span<const complex> a, std::span<const complex> b);

struct DensityMatrix {
    int dim = 0;
    ComplexMatrix matrix;

    DensityMatrix() = default;

    // Validates shape, finiteness, Hermiticity (1e-12) and unit trace (1e-12).
    // The PSD part of the invariant is checked by validate_psd().
    static DensityMatrix from_matrix(ComplexMatrix m);

    // Throws if the smallest eigenvalue is below -1e-10.
    void validate_psd() const;
};

DensityMatrix outer(const StateVector& psi);
DensityMatrix diagonal_state(std::span<const double> populations);

struct Spectrum {
    std::vector<double> values;  // descending
};

struct EigenSystem {
    Spectrum values;
    ComplexMatrix vectors;  // columns are orthonormal eigenvectors, same order as values
};

// Cyclic Jacobi for Hermitian matrices. Convergence when the off-diagonal
// Frobenius mass drops to 1e-14 (relative to the matrix scale).
Spectrum hermitian_eigenvalues(const ComplexMatrix& m);
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

// Partial trace over the subsystems absent from `keep`. `dims` lists the
// subsystem dimensions, leftmost factor slowest; kept factors retain their
// relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Reduced density matrix of a pure state, same conventions as partial_trace.
DensityMatrix reduced_density(const StateVector& psi, const std::vector<int>& dims,
                              const std::vector<int>& keep);

// Purification on reference (x) system, reference first, built from the
// eigendecomposition with nonnegative Schmidt coefficients.
StateVector purify(const DensityMatrix& rho);

namespace detail {
[[noreturn]] void fail_precondition(const std::string& message);
void require(bool ok, const std::string& message);
}  // namespace detail

}  // namespace revcap
