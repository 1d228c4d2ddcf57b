#include "ssvb/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ssvb {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string render_json(const ReportDocument& doc) {
    ordered_json j;
    j["schema_version"] = doc.schema_version;
    j["input"] = doc.input_descriptor;

    const BoundsReport& r = doc.bounds;
    ordered_json b;
    b["n"] = r.n;
    b["frob_sq"] = r.frob_sq;
    b["det_abs"] = r.det_abs;
    b["l"] = r.l;
    b["l0"] = r.l0;
    b["l1"] = r.l1;
    b["a"] = r.a;
    b["b"] = r.b;
    b["shifted_det_at_l0sq"] = r.shifted_det_at_l0sq;
    if (r.sigma_min) {
        b["sigma_min"] = *r.sigma_min;
        ordered_json ratios;
        ratios["l"] = r.l / *r.sigma_min;
        ratios["l0"] = r.l0 / *r.sigma_min;
        ratios["l1"] = r.l1 / *r.sigma_min;
        ratios["a"] = r.a / *r.sigma_min;
        ratios["b"] = r.b / *r.sigma_min;
        b["tightness"] = ratios;
    } else {
        b["sigma_min"] = nullptr;
    }
    b["iterations"] = r.b_trace.values.size();
    b["converged"] = r.b_trace.converged;
    b["residual"] = r.b_trace.residual;
    if (doc.include_trace) {
        b["trace"] = ordered_json{{"values", r.b_trace.values}, {"deltas", r.b_trace.deltas}};
    }
    b["ordering_ok"] = r.ordering_ok;
    b["notes"] = r.notes;
    j["bounds"] = b;

    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : doc.checks) {
        checks.push_back(
            ordered_json{{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}, {"detail", c.detail}});
    }
    j["checks"] = checks;

    j["timings_us"] = ordered_json{{"parse", doc.timings.parse_us},
                                   {"bounds", doc.timings.bounds_us},
                                   {"oracle", doc.timings.oracle_us},
                                   {"total", doc.timings.total_us}};
    return j.dump(2) + "\n";
}

std::string render_human(const ReportDocument& doc) {
    const BoundsReport& r = doc.bounds;
    std::ostringstream out;
    out << "input: " << doc.input_descriptor << "\n";
    out << "n = " << r.n << "   ||A||_F^2 = " << fmt6(r.frob_sq) << "   |det A| = "
        << fmt6(r.det_abs) << "\n\n";

    auto row = [&](const char* name, double value) {
        out << "  " << name;
        for (size_t pad = std::char_traits<char>::length(name); pad < 12; ++pad) {
            out << ' ';
        }
        out << fmt6(value);
        if (r.sigma_min && *r.sigma_min > 0.0) {
            out << "    " << fmt6(value / *r.sigma_min);
        }
        out << "\n";
    };

    out << "  bound       value";
    if (r.sigma_min) {
        out << "       bound/sigma_min";
    }
    out << "\n";
    row("l", r.l);
    row("l0", r.l0);
    row("l1", r.l1);
    row("a", r.a);
    row("b", r.b);
    if (r.sigma_min) {
        out << "  sigma_min   " << fmt6(*r.sigma_min) << "    (oracle)\n";
    }
    out << "\n";
    out << "fixed point: " << r.b_trace.values.size() << " iterate(s), "
        << (r.b_trace.converged ? "converged" : "NOT converged") << ", residual "
        << fmt6(r.b_trace.residual) << "\n";

    if (doc.include_trace) {
        const auto& v = r.b_trace.values;
        const size_t total = v.size();
        out << "trace:\n";
        for (size_t k = 0; k < total; ++k) {
            if (total > 25 && k == 20) {
                out << "  ... (" << total - 25 << " iterates elided)\n";
                k = total - 5;
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "  b_%-4zu = %.17g\n", k + 1, v[k]);
            out << buf;
        }
    }

    out << "ordering: " << (r.ordering_ok ? "ok" : "VIOLATED") << "\n";
    for (const std::string& n : r.notes) {
        out << "note: " << n << "\n";
    }

    if (!doc.checks.empty()) {
        out << "\nchecks:\n";
        for (const CheckResult& c : doc.checks) {
            out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
            for (size_t pad = c.name.size(); pad < 30; ++pad) {
                out << ' ';
            }
            out << c.detail << "\n";
        }
    }
    return out.str();
}

}  // namespace ssvb
