#include "ssvb/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ssvb/errors.hpp"

namespace ssvb {

namespace {

bool finite(const std::complex<double>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// LU with partial pivoting on a row-major working copy; returns the
// determinant of the n x n matrix in log-scaled form. Pivot selection takes
// the largest magnitude in the column, lowest row index on ties, so the
// output is deterministic.
LogScaledScalar lu_determinant(std::vector<std::complex<double>>& m, int n) {
    double log_mag = 0.0;
    std::complex<double> phase(1.0, 0.0);
    auto at = [&](int i, int j) -> std::complex<double>& {
        return m[static_cast<size_t>(i) * n + j];
    };
    for (int k = 0; k < n; ++k) {
        int pivot_row = k;
        double pivot_mag = std::abs(at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double mag = std::abs(at(i, k));
            if (mag > pivot_mag) {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if (pivot_mag == 0.0) {
            return LogScaledScalar::zero(k);
        }
        if (pivot_row != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(k, j), at(pivot_row, j));
            }
            phase = -phase;
        }
        const std::complex<double> pivot = at(k, k);
        log_mag += std::log(pivot_mag);
        phase *= pivot / pivot_mag;
        for (int i = k + 1; i < n; ++i) {
            const std::complex<double> factor = at(i, k) / pivot;
            at(i, k) = factor;
            for (int j = k + 1; j < n; ++j) {
                at(i, j) -= factor * at(k, j);
            }
        }
    }
    LogScaledScalar out;
    out.log_magnitude = log_mag;
    out.phase = phase;
    return out;
}

}  // namespace

Matrix::Matrix(int n, std::vector<Scalar> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) {
        throw std::invalid_argument("Matrix: dimension must be >= 1");
    }
    if (entries_.size() != static_cast<size_t>(n_) * n_) {
        throw std::invalid_argument("Matrix: entry count does not match dimension");
    }
    for (const Scalar& z : entries_) {
        if (!finite(z)) {
            throw std::invalid_argument("Matrix: entries must be finite");
        }
    }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Scalar> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) {
            throw std::invalid_argument("Matrix: rows must all have length n");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return Matrix(n, std::move(entries));
}

Matrix Matrix::identity(int n) {
    std::vector<Scalar> entries(static_cast<size_t>(n) * n, Scalar(0.0));
    for (int i = 0; i < n; ++i) {
        entries[static_cast<size_t>(i) * n + i] = Scalar(1.0);
    }
    return Matrix(n, std::move(entries));
}

Matrix Matrix::diagonal(const std::vector<Scalar>& diag) {
    const int n = static_cast<int>(diag.size());
    std::vector<Scalar> entries(static_cast<size_t>(n) * n, Scalar(0.0));
    for (int i = 0; i < n; ++i) {
        entries[static_cast<size_t>(i) * n + i] = diag[i];
    }
    return Matrix(n, std::move(entries));
}

bool Matrix::is_real() const {
    for (const Scalar& z : entries_) {
        if (z.imag() != 0.0) {
            return false;
        }
    }
    return true;
}

GramMatrix GramMatrix::from_hermitian(int n, std::vector<Scalar> entries) {
    if (n < 1 || entries.size() != static_cast<size_t>(n) * n) {
        throw std::invalid_argument("GramMatrix: bad dimensions");
    }
    for (int i = 0; i < n; ++i) {
        entries[static_cast<size_t>(i) * n + i] =
            Scalar(entries[static_cast<size_t>(i) * n + i].real(), 0.0);
        for (int j = 0; j < i; ++j) {
            entries[static_cast<size_t>(j) * n + i] =
                std::conj(entries[static_cast<size_t>(i) * n + j]);
        }
    }
    return GramMatrix(n, std::move(entries));
}

double GramMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) {
        t += (*this)(i, i).real();
    }
    return t;
}

double GramMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Scalar& z : entries_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double LogScaledScalar::magnitude() const {
    return is_zero ? 0.0 : std::exp(log_magnitude);
}

std::complex<double> LogScaledScalar::value() const {
    return is_zero ? std::complex<double>(0.0) : phase * std::exp(log_magnitude);
}

double frobenius_norm_sq(const Matrix& a) {
    double s = 0.0;
    for (const Matrix::Scalar& z : a.entries()) {
        s += std::norm(z);
    }
    return s;
}

LogScaledScalar determinant(const Matrix& a) {
    std::vector<std::complex<double>> work = a.entries();
    return lu_determinant(work, a.dim());
}

GramMatrix gram(const Matrix& a) {
    const int n = a.dim();
    std::vector<GramMatrix::Scalar> g(static_cast<size_t>(n) * n, GramMatrix::Scalar(0.0));
    // (A^H A)(i,j) = sum_k conj(a_ki) a_kj; lower triangle plus real diagonal.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            std::complex<double> s(0.0);
            for (int k = 0; k < n; ++k) {
                s += std::conj(a(k, i)) * a(k, j);
            }
            g[static_cast<size_t>(i) * n + j] = (i == j) ? std::complex<double>(s.real(), 0.0) : s;
        }
    }
    return GramMatrix::from_hermitian(n, std::move(g));
}

LogScaledScalar shifted_gram_det_log(const GramMatrix& g, double lambda) {
    const int n = g.dim();
    std::vector<std::complex<double>> work(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::complex<double> gij = g(i, j);
            work[static_cast<size_t>(i) * n + j] = (i == j) ? lambda - gij : -gij;
        }
    }
    return lu_determinant(work, n);
}

double shifted_gram_det_abs(const GramMatrix& g, double lambda) {
    return shifted_gram_det_log(g, lambda).magnitude();
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("matmul: dimension mismatch");
    }
    const int n = a.dim();
    std::vector<Matrix::Scalar> out(static_cast<size_t>(n) * n, Matrix::Scalar(0.0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Matrix::Scalar aik = a(i, k);
            for (int j = 0; j < n; ++j) {
                out[static_cast<size_t>(i) * n + j] += aik * b(k, j);
            }
        }
    }
    return Matrix(n, std::move(out));
}

Matrix scale(const Matrix& a, std::complex<double> c) {
    std::vector<Matrix::Scalar> out = a.entries();
    for (Matrix::Scalar& z : out) {
        z *= c;
    }
    return Matrix(a.dim(), std::move(out));
}

}  // namespace ssvb
