#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssvb/bounds.hpp"
#include "ssvb/checks.hpp"

namespace ssvb {

/// Per-stage wall times in microseconds. Kept in their own section so the
/// rest of a machine report can be compared byte for byte across runs.
struct StageTimings {
    int64_t parse_us = 0;
    int64_t bounds_us = 0;
    int64_t oracle_us = 0;
    int64_t total_us = 0;
};

struct ReportDocument {
    std::string schema_version = "1";
    std::string input_descriptor;
    BoundsReport bounds;
    bool include_trace = false;
    std::vector<CheckResult> checks;
    StageTimings timings;
};

/// Machine-readable JSON; deterministic key order, full-precision scalars.
std::string render_json(const ReportDocument& doc);

/// Human table, 6 significant digits. Traces are capped at the first 20 and
/// last 5 iterates.
std::string render_human(const ReportDocument& doc);

}  // namespace ssvb
