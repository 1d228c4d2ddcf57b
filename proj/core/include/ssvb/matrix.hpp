#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace ssvb {

/// Dense square complex matrix, immutable after construction.
/// Real matrices are represented with zero imaginary parts.
class Matrix {
public:
    using Scalar = std::complex<double>;

    /// Row-major entries; requires n >= 1, entries.size() == n*n, all entries finite.
    Matrix(int n, std::vector<Scalar> entries);

    static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);
    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<Scalar>& diag);

    int dim() const { return n_; }
    const Scalar& operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<Scalar>& entries() const { return entries_; }

    /// True when every entry has zero imaginary part.
    bool is_real() const;

private:
    int n_;
    std::vector<Scalar> entries_;
};

/// Hermitian matrix A^H A. Symmetry is enforced structurally: the lower
/// triangle is computed, the upper triangle mirrored as conjugates, and the
/// diagonal forced real, so downstream code never sees asymmetry noise.
class GramMatrix {
public:
    using Scalar = std::complex<double>;

    /// Symmetrizes the given row-major data (lower triangle wins).
    static GramMatrix from_hermitian(int n, std::vector<Scalar> entries);

    int dim() const { return n_; }
    const Scalar& operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<Scalar>& entries() const { return entries_; }

    /// Sum of (real) diagonal entries.
    double trace() const;
    /// Frobenius norm of the Gram matrix itself (not of A).
    double frobenius_norm() const;

private:
    GramMatrix(int n, std::vector<Scalar> entries) : n_(n), entries_(std::move(entries)) {}
    int n_;
    std::vector<Scalar> entries_;
};

/// Overflow-safe scalar in log-magnitude + unit-phase form.
/// Determinants are carried this way because the bounds raise ratios to the
/// (n-1)/2 power and multiply by |det A|; plain products under/overflow
/// already for moderate n with scaled entries.
struct LogScaledScalar {
    double log_magnitude = 0.0;                 // natural log of |value|; ignored when is_zero
    std::complex<double> phase = {1.0, 0.0};    // |phase| = 1; real +-1 for real input
    bool is_zero = false;
    int zero_pivot_step = -1;                   // elimination step of the zero pivot, when is_zero

    static LogScaledScalar zero(int pivot_step = -1) {
        LogScaledScalar s;
        s.is_zero = true;
        s.zero_pivot_step = pivot_step;
        return s;
    }

    /// |value|, exponentiated on demand. 0 when the zero flag is set.
    double magnitude() const;
    /// Full complex value; may overflow to inf for extreme log magnitudes.
    std::complex<double> value() const;
};

/// Sum of squared entry magnitudes, ||A||_F^2.
double frobenius_norm_sq(const Matrix& a);

/// det A via LU with partial pivoting (largest-magnitude pivot, ties broken
/// by lowest row index). The zero flag is set on an exactly zero pivot; no
/// epsilon thresholding here, near-singular inputs are legitimate.
LogScaledScalar determinant(const Matrix& a);

/// A^H A with structurally enforced Hermitian symmetry.
GramMatrix gram(const Matrix& a);

/// |det(lambda*I - G)| in log-scaled form; zero flag on an exact zero pivot.
LogScaledScalar shifted_gram_det_log(const GramMatrix& g, double lambda);

/// |det(lambda*I - G)| exponentiated; 0 when lambda is an eigenvalue of G.
double shifted_gram_det_abs(const GramMatrix& g, double lambda);

/// Plain dense product of two equal-dimension square matrices.
Matrix matmul(const Matrix& a, const Matrix& b);

/// Entrywise scaling c * A.
Matrix scale(const Matrix& a, std::complex<double> c);

}  // namespace ssvb
