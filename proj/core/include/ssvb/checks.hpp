#pragma once

#include <string>
#include <vector>

#include "ssvb/bounds.hpp"
#include "ssvb/matrix.hpp"

namespace ssvb {

/// Outcome of one named invariant check. slack is the signed margin by which
/// the invariant held (positive = satisfied with room); detail spells out the
/// measured quantities.
struct CheckResult {
    std::string name;
    bool pass = false;
    double slack = 0.0;
    std::string detail;
};

/// Runs every runtime invariant of the bounds chain against a computed
/// report: chain ordering, the strict-lower-bound statement for l0, the
/// monotone-iteration statement, the fixed-point and root residuals, the
/// spectral identities, scale covariance and unitary invariance. The report
/// must carry an oracle value for the sigma-relative checks to run.
std::vector<CheckResult> run_invariant_checks(const Matrix& a, const BoundsReport& r,
                                              const SolverConfig& cfg);

inline bool all_pass(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

}  // namespace ssvb
