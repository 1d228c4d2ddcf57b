#include "ssvb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ssvb/bounds.hpp"
#include "ssvb/errors.hpp"

namespace ssvb {

namespace {

double off_diagonal_norm(const std::vector<std::complex<double>>& m, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                s += std::norm(m[static_cast<size_t>(i) * n + j]);
            }
        }
    }
    return std::sqrt(s);
}

// Relative off-diagonal test: |g_pq| <= tol * sqrt(g_pp * g_qq) for every
// pair. The global Frobenius criterion alone would abandon eigenvalues far
// below ||G||, losing the small-sigma relative accuracy the bound checks
// depend on; this is the classical high-accuracy Jacobi stopping rule.
constexpr double kRelativeOffTol = 1e-14;

bool relatively_converged(const std::vector<std::complex<double>>& m, int n) {
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const double off = std::abs(m[static_cast<size_t>(p) * n + q]);
            if (off == 0.0) {
                continue;
            }
            const double dp = std::max(m[static_cast<size_t>(p) * n + p].real(), 0.0);
            const double dq = std::max(m[static_cast<size_t>(q) * n + q].real(), 0.0);
            if (off > kRelativeOffTol * std::sqrt(dp * dq)) {
                return false;
            }
        }
    }
    return true;
}

Spectrum spectrum_from_eigenvalues(std::vector<double> eigs) {
    for (double& e : eigs) {
        if (e < 0.0) {
            e = 0.0;
        }
    }
    std::sort(eigs.begin(), eigs.end(), std::greater<>());
    Spectrum sp;
    sp.singular_values.reserve(eigs.size());
    for (double e : eigs) {
        sp.singular_values.push_back(std::sqrt(e));
    }
    sp.eigenvalues_of_gram = std::move(eigs);
    return sp;
}

// Hermitian determinant of the 3x3 matrix b (full storage); exact result is
// real, so the imaginary residue is dropped.
double hermitian_det3(const std::vector<std::complex<double>>& b) {
    const auto& m = b;
    const std::complex<double> det =
        m[0] * (m[4] * m[8] - m[5] * m[7]) -
        m[1] * (m[3] * m[8] - m[5] * m[6]) +
        m[2] * (m[3] * m[7] - m[4] * m[6]);
    return det.real();
}

}  // namespace

Spectrum jacobi_eigenvalues(const GramMatrix& g, double tol, int max_sweeps) {
    if (tol <= 0.0) {
        throw std::invalid_argument("jacobi_eigenvalues: tol must be > 0");
    }
    const int n = g.dim();
    std::vector<std::complex<double>> m = g.entries();
    auto at = [&](int i, int j) -> std::complex<double>& {
        return m[static_cast<size_t>(i) * n + j];
    };

    const double scale = g.frobenius_norm();
    if (n == 1 || scale == 0.0) {
        std::vector<double> eigs(n);
        for (int i = 0; i < n; ++i) {
            eigs[i] = at(i, i).real();
        }
        return spectrum_from_eigenvalues(std::move(eigs));
    }

    const double threshold = tol * scale;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(m, n) <= threshold && relatively_converged(m, n)) {
            std::vector<double> eigs(n);
            for (int i = 0; i < n; ++i) {
                eigs[i] = at(i, i).real();
            }
            return spectrum_from_eigenvalues(std::move(eigs));
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const std::complex<double> gpq = at(p, q);
                const double r = std::abs(gpq);
                if (r == 0.0) {
                    continue;
                }
                // Unitary annihilation of the (p,q) entry. With
                // alpha = g_pp, beta = g_qq, gpq = r * phase, t = tan(theta)
                // must solve t^2 - 2*tau*t - 1 = 0; the smaller-magnitude
                // root keeps |theta| <= pi/4. The diagonal moves by +-t*r.
                const double alpha = at(p, p).real();
                const double beta = at(q, q).real();
                const std::complex<double> phase = gpq / r;
                const double tau = (beta - alpha) / (2.0 * r);
                const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                at(p, p) = alpha + t * r;
                at(q, q) = beta - t * r;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const std::complex<double> gkp = at(k, p);
                    const std::complex<double> gkq = at(k, q);
                    at(k, p) = c * gkp + s * std::conj(phase) * gkq;
                    at(k, q) = -s * phase * gkp + c * gkq;
                    at(p, k) = std::conj(at(k, p));
                    at(q, k) = std::conj(at(k, q));
                }
            }
        }
    }
    if (off_diagonal_norm(m, n) > threshold || !relatively_converged(m, n)) {
        throw NotConvergedError("jacobi_eigenvalues: off-diagonal mass above tolerance after max sweeps");
    }
    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) {
        eigs[i] = at(i, i).real();
    }
    return spectrum_from_eigenvalues(std::move(eigs));
}

double sigma_min_exact(const Matrix& a, const SolverConfig& /*cfg*/) {
    const Spectrum sp = jacobi_eigenvalues(gram(a));
    return sp.singular_values.back();
}

Spectrum charpoly_eigen_bruteforce(const GramMatrix& g) {
    const int n = g.dim();
    if (n > 3) {
        throw UnsupportedDimensionError("charpoly_eigen_bruteforce: only n <= 3 supported");
    }
    if (n == 1) {
        return spectrum_from_eigenvalues({g(0, 0).real()});
    }
    if (n == 2) {
        const double a = g(0, 0).real();
        const double d = g(1, 1).real();
        const double off_sq = std::norm(g(0, 1));
        // Stable quadratic: the discriminant is computed without cancellation
        // and the small root recovered from the product of roots.
        const double disc = std::sqrt((a - d) * (a - d) + 4.0 * off_sq);
        const double lmax = 0.5 * (a + d + disc);
        const double det = a * d - off_sq;
        const double lmin = (lmax > 0.0) ? det / lmax : 0.5 * (a + d - disc);
        return spectrum_from_eigenvalues({lmax, lmin});
    }

    // Trigonometric solution of the cubic for a Hermitian 3x3.
    const double q = g.trace() / 3.0;
    const double p1 = std::norm(g(0, 1)) + std::norm(g(0, 2)) + std::norm(g(1, 2));
    if (p1 == 0.0) {
        return spectrum_from_eigenvalues({g(0, 0).real(), g(1, 1).real(), g(2, 2).real()});
    }
    const double p2 = (g(0, 0).real() - q) * (g(0, 0).real() - q) +
                      (g(1, 1).real() - q) * (g(1, 1).real() - q) +
                      (g(2, 2).real() - q) * (g(2, 2).real() - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    std::vector<std::complex<double>> b(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            b[static_cast<size_t>(i) * 3 + j] = (g(i, j) - (i == j ? q : 0.0)) / p;
        }
    }
    const double r = std::clamp(hermitian_det3(b) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + two_pi_3);
    const double e2 = 3.0 * q - e1 - e3;
    return spectrum_from_eigenvalues({e1, e2, e3});
}

}  // namespace ssvb
