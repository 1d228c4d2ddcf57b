#pragma once

#include <vector>

#include "ssvb/matrix.hpp"

namespace ssvb {

struct SolverConfig;

/// Eigenvalues of A^H A and the singular values of A derived from them,
/// both sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues_of_gram;  // lambda_1 >= ... >= lambda_n >= 0
    std::vector<double> singular_values;      // sigma_i = sqrt(lambda_i)
};

inline constexpr double kJacobiTol = 1e-15;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic-by-row Jacobi sweeps with unitary 2x2 annihilation until the
/// off-diagonal Frobenius norm drops below tol * ||G||_F. Eigenvalues are
/// clamped at 0 (rounding-scale negatives become 0, which downstream treats
/// as singular input). Deterministic for a fixed input.
/// Throws NotConvergedError when max_sweeps is exhausted.
Spectrum jacobi_eigenvalues(const GramMatrix& g, double tol = kJacobiTol,
                            int max_sweeps = kJacobiMaxSweeps);

/// sigma_min of A: square root of the smallest Gram eigenvalue.
/// 0 indicates numerically singular input.
double sigma_min_exact(const Matrix& a, const SolverConfig& cfg);

/// Eigenvalues from the explicit characteristic polynomial, n <= 3 only
/// (linear / stable quadratic / trigonometric cubic). Independent of the
/// Jacobi path; used to cross-validate it.
/// Throws UnsupportedDimensionError for n > 3.
Spectrum charpoly_eigen_bruteforce(const GramMatrix& g);

}  // namespace ssvb
