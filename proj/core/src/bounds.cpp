#include "ssvb/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ssvb/errors.hpp"
#include "ssvb/spectral.hpp"

namespace ssvb {

namespace {

// Absolute floor for relative-slack comparisons; guards denormal-scale matrices.
constexpr double kSlackFloor = 1e-300;

double log_nm1(int n) {
    return std::log(static_cast<double>(n - 1));
}

// f(x) with the shifted determinant already in log form. All powers are
// taken in the log domain to avoid under/overflow.
double fixed_point_f_from_log(double x, double frob_sq, double l0, double log_shifted_det,
                              bool shifted_det_zero, int n) {
    const double denom = frob_sq - x * x - (n - 1) * l0 * l0;
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "fixed_point_f: denominator ||A||_F^2 - x^2 - (n-1)*l0^2 = " << denom
            << " is not positive at x = " << x;
        throw DomainExceededError(msg.str());
    }
    const double term = shifted_det_zero
                            ? 0.0
                            : std::exp(log_shifted_det + (n - 1) * (log_nm1(n) - std::log(denom)));
    return std::sqrt(l0 * l0 + term);
}

// log of x^2 (||A||_F^2 - x^2)^(n-1) minus log of |det A|^2 (n-1)^(n-1);
// sign-equivalent to the Lin-Xie g(x) for x > 0 inside the bracket.
double lin_xie_log_ratio(double x, double frob_sq, const LogScaledScalar& det_abs_log, int n) {
    const double rest = frob_sq - x * x;
    return 2.0 * std::log(x) + (n - 1) * std::log(rest) -
           (2.0 * det_abs_log.log_magnitude + (n - 1) * log_nm1(n));
}

// Rounding slack for the bracket endpoint signs, in log units. The log ratio
// accumulates a handful of eps-level errors, so anything this small is noise
// rather than a genuine sign violation.
constexpr double kEndpointLogTol = 1e-10;

}  // namespace

void SolverConfig::validate() const {
    if (!(fixed_point_rel_tol > 0.0) || !(bisection_rel_tol > 0.0) || !(chain_check_tol > 0.0)) {
        throw std::invalid_argument("SolverConfig: tolerances must be > 0");
    }
    if (fixed_point_max_iter < 1 || bisection_max_iter < 1) {
        throw std::invalid_argument("SolverConfig: iteration caps must be >= 1");
    }
}

bool leq_with_slack(double x, double y, double tol) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return x <= y + std::max(tol * scale, kSlackFloor);
}

double bound_yu_gu(double frob_sq, const LogScaledScalar& det_abs_log, int n) {
    if (n < 2) {
        throw std::invalid_argument("bound_yu_gu: requires n >= 2");
    }
    if (det_abs_log.is_zero) {
        throw SingularMatrixError("bound_yu_gu: zero determinant", det_abs_log.zero_pivot_step);
    }
    if (!(frob_sq > 0.0)) {
        throw std::invalid_argument("bound_yu_gu: ||A||_F^2 must be positive");
    }
    return std::exp(det_abs_log.log_magnitude +
                    0.5 * (n - 1) * (log_nm1(n) - std::log(frob_sq)));
}

double bound_zou(double frob_sq, const LogScaledScalar& det_abs_log, int n, double l) {
    if (det_abs_log.is_zero) {
        throw SingularMatrixError("bound_zou: zero determinant", det_abs_log.zero_pivot_step);
    }
    const double denom = frob_sq - l * l;
    if (!(denom > 0.0)) {
        throw NumericalBreakdownError("bound_zou: ||A||_F^2 - l^2 is not positive");
    }
    return std::exp(det_abs_log.log_magnitude + 0.5 * (n - 1) * (log_nm1(n) - std::log(denom)));
}

double bound_l1(double frob_sq, const GramMatrix& g, int n, double l0) {
    if (n < 2) {
        throw std::invalid_argument("bound_l1: requires n >= 2");
    }
    const double denom = frob_sq - n * l0 * l0;
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "bound_l1: ||A||_F^2 - n*l0^2 = " << denom
            << " is not positive after rounding; fall back to l0";
        throw NumericalBreakdownError(msg.str());
    }
    const LogScaledScalar d = shifted_gram_det_log(g, l0 * l0);
    const double term =
        d.is_zero ? 0.0 : std::exp(d.log_magnitude + (n - 1) * (log_nm1(n) - std::log(denom)));
    return std::sqrt(l0 * l0 + term);
}

double fixed_point_f(double x, double frob_sq, double l0, double shifted_det, int n) {
    if (x < 0.0) {
        throw std::invalid_argument("fixed_point_f: x must be >= 0");
    }
    const bool zero = shifted_det == 0.0;
    return fixed_point_f_from_log(x, frob_sq, l0, zero ? 0.0 : std::log(shifted_det), zero, n);
}

std::pair<double, IterationTrace> bound_b_iterate(double frob_sq, const GramMatrix& g, int n,
                                                  double l0, const SolverConfig& cfg) {
    const LogScaledScalar d = shifted_gram_det_log(g, l0 * l0);
    auto f = [&](double x) {
        return fixed_point_f_from_log(x, frob_sq, l0, d.log_magnitude, d.is_zero, n);
    };

    IterationTrace trace;
    double cur = f(0.0);  // b_1
    trace.values.push_back(cur);
    while (static_cast<int>(trace.values.size()) < cfg.fixed_point_max_iter) {
        const double next = f(cur);
        trace.deltas.push_back(next - cur);
        trace.values.push_back(next);
        if (std::abs(next - cur) <= cfg.fixed_point_rel_tol * next) {
            trace.converged = true;
            cur = next;
            break;
        }
        cur = next;
    }
    trace.residual = std::abs(cur - f(cur));
    return {cur, trace};
}

double lin_xie_residual(double x, double frob_sq, const LogScaledScalar& det_abs_log, int n) {
    return std::expm1(lin_xie_log_ratio(x, frob_sq, det_abs_log, n));
}

double bound_lin_xie(double frob_sq, const LogScaledScalar& det_abs_log, int n, double l0,
                     const SolverConfig& cfg) {
    if (n < 2) {
        throw std::invalid_argument("bound_lin_xie: requires n >= 2");
    }
    if (det_abs_log.is_zero) {
        throw SingularMatrixError("bound_lin_xie: zero determinant", det_abs_log.zero_pivot_step);
    }
    auto h = [&](double x) { return lin_xie_log_ratio(x, frob_sq, det_abs_log, n); };

    double lo = l0;
    double hi = std::sqrt(frob_sq / n);
    if (!(lo < hi)) {
        // Collapsed bracket: can only happen when every singular value is
        // equal and l0 rounds to the right endpoint.
        if (std::abs(h(hi)) <= kEndpointLogTol) {
            return hi;
        }
        throw BracketFailureError("bound_lin_xie: empty bracket [l0, ||A||_F/sqrt(n)]");
    }

    const double h_lo = h(lo);
    if (h_lo > 0.0) {
        if (h_lo <= kEndpointLogTol) {
            return lo;  // root sits at l0 within rounding noise
        }
        throw BracketFailureError("bound_lin_xie: g(l0) > 0 beyond tolerance");
    }
    const double h_hi = h(hi);
    if (h_hi < 0.0) {
        if (h_hi >= -kEndpointLogTol) {
            return hi;  // equal-singular-value case: the root is the endpoint
        }
        throw BracketFailureError("bound_lin_xie: g(||A||_F/sqrt(n)) < 0 beyond tolerance");
    }
    // g(hi) = 0 exactly when every singular value is equal; when h(hi) is at
    // rounding scale the root is the endpoint itself, and bisecting into the
    // noise of a double root would only localize it to sqrt(eps).
    if (h_hi <= 1e-14 * n) {
        return hi;
    }

    for (int it = 0; it < cfg.bisection_max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= cfg.bisection_rel_tol * mid) {
            break;
        }
        if (h(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BoundsReport compute_all(const Matrix& a, const SolverConfig& cfg, bool with_oracle) {
    cfg.validate();
    BoundsReport r;
    const int n = a.dim();
    r.n = n;
    r.frob_sq = frobenius_norm_sq(a);

    const LogScaledScalar det = determinant(a);
    if (det.is_zero) {
        std::ostringstream msg;
        msg << "matrix is singular: exactly zero pivot at elimination step " << det.zero_pivot_step;
        throw SingularMatrixError(msg.str(), det.zero_pivot_step);
    }
    r.det_abs = det.magnitude();

    if (n == 1) {
        const double v = std::abs(a(0, 0));
        r.l = r.l0 = r.l1 = r.a = r.b = v;
        r.b_trace.values = {v};
        r.b_trace.converged = true;
        r.b_trace.residual = 0.0;
        r.shifted_det_at_l0sq = 0.0;
        r.notes.push_back("n=1: sigma_1 = |a_11| exactly; every bound equals it");
        r.ordering_ok = true;
        if (with_oracle) {
            attach_oracle(r, a, cfg);
        }
        return r;
    }

    r.l = bound_yu_gu(r.frob_sq, det, n);
    r.l0 = bound_zou(r.frob_sq, det, n, r.l);

    const GramMatrix g = gram(a);
    r.shifted_det_at_l0sq = shifted_gram_det_abs(g, r.l0 * r.l0);
    r.l1 = bound_l1(r.frob_sq, g, n, r.l0);

    auto [b, trace] = bound_b_iterate(r.frob_sq, g, n, r.l0, cfg);
    r.b = b;
    r.b_trace = std::move(trace);
    if (!r.b_trace.converged) {
        r.notes.push_back("fixed-point iteration hit the cap before meeting tolerance (NotConverged)");
    }

    r.a = bound_lin_xie(r.frob_sq, det, n, r.l0, cfg);

    const double tol = cfg.chain_check_tol;
    auto check = [&](bool ok, const char* what) {
        if (!ok) {
            r.ordering_ok = false;
            r.notes.push_back(std::string("ordering violation: ") + what);
        }
    };
    const double b1 = r.b_trace.values.front();
    check(leq_with_slack(r.l, r.l0, tol), "l <= l0");
    check(leq_with_slack(r.l0, b1, tol), "l0 <= b_1");
    check(leq_with_slack(b1, r.l1, tol), "b_1 <= l1");
    check(leq_with_slack(r.l1, r.b, tol), "l1 <= b");
    check(leq_with_slack(r.l0, r.a, tol), "l0 <= a");
    for (size_t k = 0; k + 1 < r.b_trace.values.size(); ++k) {
        if (!leq_with_slack(r.b_trace.values[k], r.b_trace.values[k + 1], tol)) {
            check(false, "b_k <= b_{k+1}");
            break;
        }
    }
    if (with_oracle) {
        attach_oracle(r, a, cfg);
    }
    return r;
}

void attach_oracle(BoundsReport& r, const Matrix& a, const SolverConfig& cfg) {
    if (r.n == 1) {
        r.sigma_min = std::abs(a(0, 0));
        return;
    }
    const GramMatrix g = gram(a);
    const Spectrum sp = jacobi_eigenvalues(g);
    r.sigma_min = sp.singular_values.back();
    const double s = *r.sigma_min;
    if (s * s < 1e-13 * g.frobenius_norm()) {
        r.notes.push_back("oracle trust reduced: sigma_min^2 < 1e-13 * ||A^H A||_F");
    }
    const double tol = cfg.chain_check_tol;
    auto check = [&](bool ok, const char* what) {
        if (!ok) {
            r.ordering_ok = false;
            r.notes.push_back(std::string("ordering violation: ") + what);
        }
    };
    check(leq_with_slack(r.l, s, tol), "l <= sigma_min");
    check(leq_with_slack(r.l0, s, tol), "l0 <= sigma_min");
    check(leq_with_slack(r.l1, s, tol), "l1 <= sigma_min");
    check(leq_with_slack(r.a, s, tol), "a <= sigma_min");
    check(leq_with_slack(r.b, s, tol), "b <= sigma_min");
}

}  // namespace ssvb
