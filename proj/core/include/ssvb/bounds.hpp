#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssvb/matrix.hpp"

namespace ssvb {

/// Tolerances and iteration caps for the two scalar solvers plus the slack
/// used by ordering assertions.
struct SolverConfig {
    double fixed_point_rel_tol = 1e-14;
    int fixed_point_max_iter = 1000;
    double bisection_rel_tol = 1e-14;
    int bisection_max_iter = 200;
    double chain_check_tol = 1e-9;

    void validate() const;
};

/// The monotone sequence b_1 < b_2 < ... produced by the fixed-point
/// iteration, with successive deltas and the convergence verdict.
struct IterationTrace {
    std::vector<double> values;
    std::vector<double> deltas;
    bool converged = false;
    double residual = 0.0;  // |b - f(b)| at the final iterate
};

/// Everything computed for one matrix: the five lower bounds on sigma_min,
/// the intermediates they share, the iteration trace, the optional oracle
/// value, and the outcome of the ordering checks.
struct BoundsReport {
    int n = 0;
    double frob_sq = 0.0;              // ||A||_F^2
    double det_abs = 0.0;              // |det A|
    double l = 0.0;                    // Yu-Gu
    double l0 = 0.0;                   // Zou
    double l1 = 0.0;                   // closed-form improvement of l0
    double a = 0.0;                    // Lin-Xie root
    double b = 0.0;                    // fixed-point limit
    IterationTrace b_trace;
    double shifted_det_at_l0sq = 0.0;  // |det(l0^2 I - A^H A)|
    std::optional<double> sigma_min;   // oracle value when verification requested
    bool ordering_ok = true;
    std::vector<std::string> notes;
};

/// x <= y within relative slack tol (absolute floor guards denormal-scale
/// quantities).
bool leq_with_slack(double x, double y, double tol);

/// Yu-Gu bound  l = |det A| * ((n-1) / ||A||_F^2)^((n-1)/2), n >= 2.
double bound_yu_gu(double frob_sq, const LogScaledScalar& det_abs_log, int n);

/// Zou bound  l0 = |det A| * ((n-1) / (||A||_F^2 - l^2))^((n-1)/2) with l the
/// Yu-Gu bound of the same matrix; l0 > l.
double bound_zou(double frob_sq, const LogScaledScalar& det_abs_log, int n, double l);

/// Closed-form bound
///   l1 = (l0^2 + |det(l0^2 I - A^H A)| * ((n-1)/(||A||_F^2 - n l0^2))^(n-1))^(1/2).
/// Throws NumericalBreakdownError when the denominator is <= 0 after rounding
/// (possible only for matrices whose singular values are all equal, where
/// rounding can flip the sign of an exact zero).
double bound_l1(double frob_sq, const GramMatrix& g, int n, double l0);

/// The iteration map
///   f(x) = (l0^2 + shifted_det * ((n-1)/(||A||_F^2 - x^2 - (n-1) l0^2))^(n-1))^(1/2),
/// strictly increasing on its domain. f(0) is b_1 and f(l0) is l1.
/// Throws DomainExceededError when the denominator is <= 0.
double fixed_point_f(double x, double frob_sq, double l0, double shifted_det, int n);

/// Iterates b_{k+1} = f(b_k) from b_1 = f(0) until the relative successive
/// difference drops below cfg.fixed_point_rel_tol or the cap is reached.
/// Returns the final value and the full trace; trace.converged records
/// whether the tolerance was met (hitting the cap is not an error).
std::pair<double, IterationTrace> bound_b_iterate(double frob_sq, const GramMatrix& g, int n,
                                                  double l0, const SolverConfig& cfg);

/// Lin-Xie bound: smallest positive root of
///   x^2 (||A||_F^2 - x^2)^(n-1) = |det A|^2 (n-1)^(n-1),
/// found by bisection over [l0, ||A||_F / sqrt(n)]. The left side is strictly
/// increasing there, so the bracketed root is the smallest positive one.
double bound_lin_xie(double frob_sq, const LogScaledScalar& det_abs_log, int n, double l0,
                     const SolverConfig& cfg);

/// Sign-carrying residual of the Lin-Xie equation, normalized by its right
/// side: g(x)/rhs. Used by the verification checks.
double lin_xie_residual(double x, double frob_sq, const LogScaledScalar& det_abs_log, int n);

/// Computes every bound in dependency order, fills intermediates, runs the
/// ordering checks, and optionally invokes the spectral oracle. n = 1 is the
/// explicit special case where every bound equals |a_11|.
BoundsReport compute_all(const Matrix& a, const SolverConfig& cfg, bool with_oracle);

/// Fills report.sigma_min from the spectral oracle and runs the
/// bound <= sigma_min ordering checks. compute_all(..., true) is equivalent
/// to the oracle-free call followed by this.
void attach_oracle(BoundsReport& report, const Matrix& a, const SolverConfig& cfg);

}  // namespace ssvb
