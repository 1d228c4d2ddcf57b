// Acceptance suite: runs every gate criterion at its pinned tolerance and
// prints one pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ssvb/bounds.hpp"
#include "ssvb/errors.hpp"
#include "ssvb/io.hpp"
#include "ssvb/spectral.hpp"

using ssvb::BoundsReport;
using ssvb::EnsembleSpec;
using ssvb::Family;
using ssvb::Matrix;
using ssvb::SolverConfig;

namespace {

int g_failures = 0;

void criterion(const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %-34s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    if (!pass) {
        ++g_failures;
    }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

bool within_abs(double value, double target, double tol) {
    return std::abs(value - target) <= tol;
}

bool within_rel(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::abs(target);
}

const Matrix kExample1 = Matrix::from_rows({{4, -4, -3}, {3, 4, 2}, {4, 1, 0}});
const Matrix kExample2 = Matrix::from_rows({{4, 0, 0}, {-1, 5, 0}, {0, 5, 4}});
const Matrix kExample3 = Matrix::from_rows({{3, 2, 0}, {1, 9, 5}, {0, 5, 7}});

void example_reproductions() {
    const SolverConfig cfg;

    auto t0 = std::chrono::steady_clock::now();
    const BoundsReport r1 = ssvb::compute_all(kExample1, cfg, true);
    const double ms1 = ms_since(t0);
    criterion("example1-reproduction",
              within_abs(r1.l, 0.0229885, 5e-7) && within_abs(r1.l0, 0.0229886, 5e-7) &&
                  within_abs(r1.l1, 0.0230691, 5e-7) && within_abs(*r1.sigma_min, 0.0231, 5e-5) &&
                  ms1 < 10.0,
              fmt("l=%.9g l0=%.9g l1=%.9g sigma=%.6g (%.2f ms)", r1.l, r1.l0, r1.l1,
                  *r1.sigma_min, ms1));

    t0 = std::chrono::steady_clock::now();
    const BoundsReport r2 = ssvb::compute_all(kExample2, cfg, true);
    const double ms2 = ms_since(t0);
    criterion("example2-reproduction",
              within_rel(r2.l, 1.92771, 1e-5) && within_rel(r2.l0, 2.01806, 1e-5) &&
                  within_rel(r2.l1, 2.31515, 1e-5) && ms2 < 10.0,
              fmt("l=%.7g l0=%.7g l1=%.7g (%.2f ms)", r2.l, r2.l0, r2.l1, ms2));

    t0 = std::chrono::steady_clock::now();
    const BoundsReport r3 = ssvb::compute_all(kExample3, cfg, true);
    const double ms3 = ms_since(t0);
    criterion("example3-reproduction",
              within_rel(r3.a, 1.0367, 1e-4) && within_rel(r3.l1, 1.3434, 1e-4) &&
                  within_rel(r3.b, 1.3455, 1e-4) && r3.b > r3.l1 && r3.l1 > r3.a && ms3 < 10.0,
              fmt("a=%.6g l1=%.6g b=%.6g, b > l1 > a (%.2f ms)", r3.a, r3.l1, r3.b, ms3));
}

// One pass over the full suite feeds three criteria: the chain/monotonicity
// counts, the fixed-point and root residuals, and the spectral identities.
void suite_criteria() {
    const SolverConfig cfg;
    const double slack = 1e-9;

    struct FamilySetup {
        Family family;
        std::optional<double> kappa;
    };
    const FamilySetup families[4] = {{Family::IntegerSmall, {}},
                                     {Family::UniformRandom, {}},
                                     {Family::ComplexRandom, {}},
                                     {Family::IllConditioned, 1e6}};

    int total = 0;
    int chain_violations = 0;
    int monotone_violations = 0;
    int b_residual_failures = 0;
    int a_residual_failures = 0;
    int smallest_root_failures = 0;
    int grid_failures = 0;
    int trace_identity_failures = 0;
    int det_identity_failures = 0;
    int not_converged = 0;

    const auto t0 = std::chrono::steady_clock::now();
    for (const FamilySetup& fs : families) {
        for (int n = 2; n <= 8; ++n) {
            EnsembleSpec spec;
            spec.family = fs.family;
            spec.n = n;
            spec.trials = 1000;
            spec.seed = 0x53u + static_cast<uint64_t>(n);
            spec.kappa = fs.kappa;
            for (int t = 0; t < spec.trials; ++t) {
                const Matrix m = ssvb::generate_trial(spec, t);
                const BoundsReport r = ssvb::compute_all(m, cfg, true);
                ++total;

                const double b1 = r.b_trace.values.front();
                const double s = *r.sigma_min;
                if (!(ssvb::leq_with_slack(r.l, r.l0, slack) &&
                      ssvb::leq_with_slack(r.l0, b1, slack) &&
                      ssvb::leq_with_slack(b1, r.l1, slack) &&
                      ssvb::leq_with_slack(r.l1, r.b, slack) &&
                      ssvb::leq_with_slack(r.b, s, slack) &&
                      ssvb::leq_with_slack(r.l0, r.a, slack) &&
                      ssvb::leq_with_slack(r.a, s, slack))) {
                    ++chain_violations;
                }
                for (size_t k = 0; k + 1 < r.b_trace.values.size(); ++k) {
                    if (!ssvb::leq_with_slack(r.b_trace.values[k], r.b_trace.values[k + 1],
                                              slack)) {
                        ++monotone_violations;
                        break;
                    }
                }

                if (r.b_trace.converged) {
                    if (r.b_trace.residual > 10.0 * cfg.fixed_point_rel_tol * r.b) {
                        ++b_residual_failures;
                    }
                } else {
                    ++not_converged;
                }
                const ssvb::LogScaledScalar det = ssvb::determinant(m);
                if (std::abs(ssvb::lin_xie_residual(r.a, r.frob_sq, det, n)) >
                    10.0 * cfg.bisection_rel_tol) {
                    ++a_residual_failures;
                }
                if (!(ssvb::lin_xie_residual(r.a * (1.0 - 1e-6), r.frob_sq, det, n) < 0.0)) {
                    ++smallest_root_failures;
                }
                const double top = r.b * (1.0 - 1e-6);
                for (int i = 1; i <= 100; ++i) {
                    const double x = top * static_cast<double>(i) / 100.0;
                    if (!(ssvb::fixed_point_f(x, r.frob_sq, r.l0, r.shifted_det_at_l0sq, n) > x)) {
                        ++grid_failures;
                        break;
                    }
                }

                const ssvb::Spectrum sp = ssvb::jacobi_eigenvalues(ssvb::gram(m));
                double sum = 0.0;
                double log_prod = 0.0;
                for (double e : sp.eigenvalues_of_gram) {
                    sum += e;
                    log_prod += std::log(e);
                }
                if (std::abs(sum - r.frob_sq) > 1e-10 * r.frob_sq) {
                    ++trace_identity_failures;
                }
                if (std::abs(std::expm1(log_prod - 2.0 * det.log_magnitude)) > 1e-8) {
                    ++det_identity_failures;
                }
            }
        }
    }
    const double elapsed_s = ms_since(t0) / 1000.0;

    criterion("chain-property-suite",
              chain_violations == 0 && monotone_violations == 0 && total == 28000 &&
                  elapsed_s < 60.0,
              fmt("%d matrices, %d chain / %d monotonicity violations (%.1f s)", total,
                  chain_violations, monotone_violations, elapsed_s));
    criterion("fixed-point-and-root-residuals",
              b_residual_failures == 0 && a_residual_failures == 0 &&
                  smallest_root_failures == 0 && grid_failures == 0,
              fmt("b-residual %d, g-residual %d, smallest-root %d, f-grid %d failures "
                  "(%d capped traces exempt per the convergence scoping)",
                  b_residual_failures, a_residual_failures, smallest_root_failures, grid_failures,
                  not_converged));
    criterion("spectral-identities",
              trace_identity_failures == 0 && det_identity_failures == 0,
              fmt("trace %d, determinant %d failures over %d matrices", trace_identity_failures,
                  det_identity_failures, total));
}

void n2_exactness() {
    const SolverConfig cfg;
    EnsembleSpec spec;
    spec.family = Family::UniformRandom;
    spec.n = 2;
    spec.trials = 200;
    spec.seed = 0x22u;

    int failures = 0;
    double worst = 0.0;
    for (int t = 0; t < spec.trials; ++t) {
        const Matrix m = ssvb::generate_trial(spec, t);
        const double sigma = oracle::sigma_min_2x2(m);
        const BoundsReport r = ssvb::compute_all(m, cfg, false);
        const double dev = std::max(std::abs(r.a - sigma), std::abs(r.b - sigma)) / sigma;
        worst = std::max(worst, dev);
        if (dev > 1e-10) {
            ++failures;
        }
    }
    criterion("n2-exactness", failures == 0,
              fmt("200 matrices, %d failures, worst |a,b - sigma|/sigma = %.3g", failures, worst));
}

void scale_and_unitary_invariance() {
    const SolverConfig cfg;
    ssvb::SplitMix64 rng(0xABCDu);
    int failures = 0;
    double worst = 0.0;

    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 5;
        EnsembleSpec uni;
        uni.family = Family::UniformRandom;
        uni.n = n;
        uni.trials = 100;
        uni.seed = 0x77u;
        const Matrix a = ssvb::generate_trial(uni, t);
        const BoundsReport base = ssvb::compute_all(a, cfg, false);

        const double c = std::pow(10.0, 6.0 * rng.next_unit() - 3.0);
        const BoundsReport scaled = ssvb::compute_all(ssvb::scale(a, c), cfg, false);

        EnsembleSpec rot;
        rot.family = Family::ScaledOrthogonal;
        rot.n = n;
        rot.trials = 200;
        rot.seed = 0x88u + static_cast<uint64_t>(t);
        const Matrix q = ssvb::generate_trial(rot, 0);
        const Matrix p = ssvb::generate_trial(rot, 1);
        const BoundsReport rotated = ssvb::compute_all(ssvb::matmul(ssvb::matmul(q, a), p), cfg,
                                                       false);

        const double bs[5] = {base.l, base.l0, base.l1, base.a, base.b};
        const double cs[5] = {scaled.l, scaled.l0, scaled.l1, scaled.a, scaled.b};
        const double rs[5] = {rotated.l, rotated.l0, rotated.l1, rotated.a, rotated.b};
        double dev = 0.0;
        for (int i = 0; i < 5; ++i) {
            dev = std::max(dev, std::abs(cs[i] / c - bs[i]) / bs[i]);
            dev = std::max(dev, std::abs(rs[i] - bs[i]) / bs[i]);
        }
        worst = std::max(worst, dev);
        if (dev > 1e-9) {
            ++failures;
        }
    }
    criterion("scale-covariance-unitary-invariance", failures == 0,
              fmt("100 tuples, %d failures, worst relative deviation %.3g", failures, worst));
}

void oracle_cross_validation() {
    ssvb::SplitMix64 rng(0xEEF1u);
    int failures = 0;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + t % 2;
        const Matrix m = (t / 2) % 2 ? oracle::random_complex(n, rng) : oracle::random_real(n, rng);
        const ssvb::GramMatrix g = ssvb::gram(m);
        const ssvb::Spectrum ja = ssvb::jacobi_eigenvalues(g);
        const ssvb::Spectrum cp = ssvb::charpoly_eigen_bruteforce(g);
        for (int i = 0; i < n; ++i) {
            const double x = ja.eigenvalues_of_gram[i];
            const double y = cp.eigenvalues_of_gram[i];
            const double rel = std::abs(x - y) / std::max({x, y, 1e-300});
            worst = std::max(worst, rel);
            if (rel > 1e-9) {
                ++failures;
            }
        }
    }
    criterion("oracle-cross-validation", failures == 0,
              fmt("500 matrices, %d eigenvalue disagreements, worst relative %.3g", failures,
                  worst));
}

void io_round_trip() {
    ssvb::SplitMix64 rng(0x10u);
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 8;
        const Matrix m = t % 2 ? oracle::random_complex(n, rng) : oracle::random_real(n, rng);
        {
            std::istringstream in(ssvb::serialize_matrix_market(m));
            if (ssvb::parse_matrix_market(in).entries() != m.entries()) {
                ++failures;
            }
        }
        {
            std::istringstream in(ssvb::serialize_csv(m));
            if (ssvb::parse_csv(in).entries() != m.entries()) {
                ++failures;
            }
        }
    }

    int fixture_failures = 0;
    auto check_fixture = [&](const char* name, const Matrix& expected, bool mm) {
        std::ifstream in(std::string(SSVB_FIXTURE_DIR) + "/" + name);
        if (!in) {
            ++fixture_failures;
            return;
        }
        try {
            const Matrix got = mm ? ssvb::parse_matrix_market(in) : ssvb::parse_csv(in);
            if (got.entries() != expected.entries()) {
                ++fixture_failures;
            }
        } catch (const ssvb::Error&) {
            ++fixture_failures;
        }
    };
    check_fixture("example1.csv", kExample1, false);
    check_fixture("example2.csv", kExample2, false);
    check_fixture("example2.mtx", kExample2, true);
    check_fixture("example3.csv", kExample3, false);
    check_fixture("one_by_one.csv", Matrix::diagonal({{-5, 0}}), false);

    criterion("io-round-trip", failures == 0 && fixture_failures == 0,
              fmt("100 random matrices x 2 formats, %d mismatches; %d fixture mismatches",
                  failures, fixture_failures));
}

}  // namespace

int main() {
    example_reproductions();
    suite_criteria();
    n2_exactness();
    scale_and_unitary_invariance();
    oracle_cross_validation();
    io_round_trip();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
