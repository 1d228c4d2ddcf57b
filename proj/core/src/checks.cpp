#include "ssvb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ssvb/io.hpp"
#include "ssvb/spectral.hpp"

namespace ssvb {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

double rel_margin(double lhs, double rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return (rhs - lhs) / scale;
}

// Largest relative deviation between the five bounds of two reports, the
// second rescaled by 1/c.
double max_bound_deviation(const BoundsReport& base, const BoundsReport& other, double c) {
    double worst = 0.0;
    const double bs[5] = {base.l, base.l0, base.l1, base.a, base.b};
    const double os[5] = {other.l, other.l0, other.l1, other.a, other.b};
    for (int i = 0; i < 5; ++i) {
        worst = std::max(worst, std::abs(os[i] / c - bs[i]) / bs[i]);
    }
    return worst;
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(const Matrix& a, const BoundsReport& r,
                                              const SolverConfig& cfg) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool pass, double slack, std::string detail) {
        out.push_back({std::move(name), pass, slack, std::move(detail)});
    };

    if (r.n == 1) {
        const double v = std::abs(a(0, 0));
        const bool ok = r.l == v && r.l0 == v && r.l1 == v && r.a == v && r.b == v;
        add("n1.all_bounds_equal", ok, 0.0,
            "n=1: sigma_1 = |a_11| exactly, every bound equals " + fmt("%.17g", v));
        return out;
    }

    const double tol = cfg.chain_check_tol;
    auto chain = [&](const char* name, double lhs, double rhs, const char* what) {
        const double m = rel_margin(lhs, rhs);
        add(name, m >= -tol, m, std::string(what) + " = " + fmt("%+.6e", m) + " (relative)");
    };

    const double b1 = r.b_trace.values.front();
    chain("chain.l_le_l0", r.l, r.l0, "l0 - l");
    chain("chain.l0_le_b1", r.l0, b1, "b1 - l0");
    chain("chain.b1_le_l1", b1, r.l1, "l1 - b1");
    chain("chain.l1_le_b", r.l1, r.b, "b - l1");
    chain("linxie.a_ge_l0", r.l0, r.a, "a - l0");

    if (r.sigma_min) {
        const double s = *r.sigma_min;
        chain("chain.b_le_sigma", r.b, s, "sigma_min - b");
        chain("chain.a_le_sigma", r.a, s, "sigma_min - a");
        const double m = (s - r.l0) / s;
        add("lemma1", m > -tol, m, "sigma_min - l0 = " + fmt("%+.6e", (s - r.l0)));
    }

    {
        double worst = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k + 1 < r.b_trace.values.size(); ++k) {
            worst = std::min(worst, rel_margin(r.b_trace.values[k], r.b_trace.values[k + 1]));
        }
        if (r.b_trace.values.size() < 2) {
            worst = 0.0;
        }
        add("theorem2.monotone", worst >= -tol, worst,
            "min relative increase of b_k = " + fmt("%+.6e", worst));
        if (r.sigma_min) {
            const double top = *std::max_element(r.b_trace.values.begin(), r.b_trace.values.end());
            const double m = rel_margin(top, *r.sigma_min);
            add("theorem2.below_sigma", m >= -tol, m,
                "sigma_min - max b_k = " + fmt("%+.6e", m) + " (relative)");
        }
    }

    {
        const double threshold = 10.0 * cfg.fixed_point_rel_tol;
        if (r.b_trace.converged) {
            const double measured = r.b_trace.residual / r.b;
            add("theorem3.residual", measured <= threshold, threshold - measured,
                "|b - f(b)| / b = " + fmt("%.6e", measured));
        } else {
            add("theorem3.residual", true, 0.0,
                "skipped: iteration hit the cap before tolerance (NotConverged)");
        }

        // No fixed point below b: f(x) > x on a grid of the interval (0, b).
        double worst = std::numeric_limits<double>::infinity();
        const double top = r.b * (1.0 - 1e-6);
        for (int i = 1; i <= 100; ++i) {
            const double x = top * static_cast<double>(i) / 100.0;
            const double fx = fixed_point_f(x, r.frob_sq, r.l0, r.shifted_det_at_l0sq, r.n);
            worst = std::min(worst, (fx - x) / r.b);
        }
        add("theorem3.smallest_fixed_point", worst > 0.0, worst,
            "min (f(x) - x) / b on grid = " + fmt("%+.6e", worst));
    }

    {
        const LogScaledScalar det = determinant(a);
        const double measured = std::abs(lin_xie_residual(r.a, r.frob_sq, det, r.n));
        const double threshold = 10.0 * cfg.bisection_rel_tol;
        add("linxie.residual", measured <= threshold, threshold - measured,
            "|g(a)| / rhs = " + fmt("%.6e", measured));
        const double below = lin_xie_residual(r.a * (1.0 - 1e-6), r.frob_sq, det, r.n);
        add("linxie.smallest_root", below < 0.0, -below,
            "g(a*(1-1e-6)) / rhs = " + fmt("%+.6e", below));
    }

    {
        const Spectrum sp = jacobi_eigenvalues(gram(a));
        double sum = 0.0;
        double log_prod = 0.0;
        bool zero_eig = false;
        for (double e : sp.eigenvalues_of_gram) {
            sum += e;
            if (e > 0.0) {
                log_prod += std::log(e);
            } else {
                zero_eig = true;
            }
        }
        const double trace_dev = std::abs(sum - r.frob_sq) / r.frob_sq;
        add("spectrum.trace_identity", trace_dev <= 1e-10, 1e-10 - trace_dev,
            "|sum(eig) - frob_sq| / frob_sq = " + fmt("%.6e", trace_dev));
        const double det_dev =
            zero_eig ? std::numeric_limits<double>::infinity()
                     : std::abs(std::expm1(log_prod - 2.0 * std::log(r.det_abs)));
        add("spectrum.det_identity", det_dev <= 1e-8, 1e-8 - det_dev,
            "|prod(eig)/|det|^2 - 1| = " + fmt("%.6e", det_dev));
    }

    {
        double worst = 0.0;
        for (double c : {3.5, 0.0009765625}) {
            const BoundsReport scaled = compute_all(scale(a, c), cfg, false);
            worst = std::max(worst, max_bound_deviation(r, scaled, c));
        }
        add("scale_covariance", worst <= 1e-9, 1e-9 - worst,
            "max relative deviation of bounds under scaling = " + fmt("%.6e", worst));
    }

    {
        EnsembleSpec rot;
        rot.family = Family::ScaledOrthogonal;
        rot.n = r.n;
        rot.trials = 2;
        rot.seed = 0x5157u;
        const Matrix q = generate_trial(rot, 0);
        const Matrix p = generate_trial(rot, 1);
        const BoundsReport rotated = compute_all(matmul(matmul(q, a), p), cfg, false);
        const double worst = max_bound_deviation(r, rotated, 1.0);
        add("unitary_invariance", worst <= 1e-9, 1e-9 - worst,
            "max relative deviation of bounds under Q*A*P = " + fmt("%.6e", worst));
    }

    if (r.n == 2) {
        const double sq = charpoly_eigen_bruteforce(gram(a)).singular_values.back();
        const double threshold = 10.0 * cfg.fixed_point_rel_tol;
        const double dev_a = std::abs(r.a - sq) / sq;
        add("n2.exactness_a", dev_a <= threshold, threshold - dev_a,
            "|a - sigma_min| / sigma_min = " + fmt("%.6e", dev_a));
        if (r.b_trace.converged) {
            const double dev_b = std::abs(r.b - sq) / sq;
            add("n2.exactness_b", dev_b <= threshold, threshold - dev_b,
                "|b - sigma_min| / sigma_min = " + fmt("%.6e", dev_b));
        } else {
            add("n2.exactness_b", true, 0.0, "skipped: iteration did not converge");
        }
    }

    return out;
}

}  // namespace ssvb
