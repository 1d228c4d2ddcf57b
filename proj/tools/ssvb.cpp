// ssvb: lower bounds on the smallest singular value of a square matrix.
//
// Subcommands: compute, verify, sweep, gen. Exit codes: 0 ok, 2 singular
// input, 3 parse error, 4 numerical breakdown, 5 bad ensemble spec, 6 I/O
// failure (CLI usage errors exit with CLI11's own codes, >= 100).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ssvb/bounds.hpp"
#include "ssvb/checks.hpp"
#include "ssvb/errors.hpp"
#include "ssvb/io.hpp"
#include "ssvb/report.hpp"

namespace {

constexpr int kExitSingular = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitBadSpec = 5;
constexpr int kExitIo = 6;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int64_t us_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoFailure("read failure on '" + path + "'");
    }
    return buf.str();
}

ssvb::Matrix parse_text(const std::string& text, const std::string& format) {
    std::string fmt = format;
    if (fmt == "auto") {
        const size_t first = text.find_first_not_of(" \t\r\n");
        fmt = (first != std::string::npos && text.compare(first, 2, "%%") == 0) ? "mm" : "csv";
    }
    std::istringstream in(text);
    return fmt == "mm" ? ssvb::parse_matrix_market(in) : ssvb::parse_csv(in);
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ssvb::SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const ssvb::ParseError& e) {
        std::cerr << "error: line " << e.line << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const ssvb::NonSquareError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ssvb::UnsupportedQualifierError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ssvb::EnsembleSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadSpec;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ssvb::Error& e) {
        // NumericalBreakdown, DomainExceeded, NotConverged, BracketFailure,
        // Generation: all numerical-breakdown conditions for the CLI.
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

struct EnsembleFlags {
    std::string family;
    int n = 0;
    int trials = 0;
    uint64_t seed = 0;
    double kappa = 0.0;
    double scale = 0.0;
    bool has_kappa = false;
    bool has_scale = false;

    ssvb::EnsembleSpec to_spec() const {
        const auto fam = ssvb::family_from_name(family);
        if (!fam) {
            throw ssvb::EnsembleSpecError("unknown family '" + family + "'");
        }
        ssvb::EnsembleSpec spec;
        spec.family = *fam;
        spec.n = n;
        spec.trials = trials;
        spec.seed = seed;
        if (has_kappa) {
            spec.kappa = kappa;
        }
        if (has_scale) {
            spec.scale = scale;
        }
        spec.validate();
        return spec;
    }
};

void add_ensemble_flags(CLI::App* cmd, EnsembleFlags& f) {
    cmd->add_option("--family", f.family,
                    "uniform-random | ill-conditioned | scaled-orthogonal | integer-small | "
                    "complex-random")
        ->required();
    cmd->add_option("--n", f.n, "matrix dimension")->required();
    cmd->add_option("--trials", f.trials, "number of matrices")->required();
    cmd->add_option("--seed", f.seed, "64-bit generator seed")->required();
    cmd->add_option("--kappa", f.kappa, "target condition number (ill-conditioned)")
        ->each([&f](const std::string&) { f.has_kappa = true; });
    cmd->add_option("--scale", f.scale, "scale factor (scaled-orthogonal)")
        ->each([&f](const std::string&) { f.has_scale = true; });
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_compute(const std::string& path, const std::string& format, bool oracle, bool trace,
                bool machine) {
    const auto t_start = std::chrono::steady_clock::now();
    ssvb::ReportDocument doc;
    doc.include_trace = trace;

    auto t0 = std::chrono::steady_clock::now();
    const ssvb::Matrix a = parse_text(slurp(path), format);
    doc.timings.parse_us = us_since(t0);

    const ssvb::SolverConfig cfg;
    t0 = std::chrono::steady_clock::now();
    ssvb::BoundsReport r = ssvb::compute_all(a, cfg, false);
    doc.timings.bounds_us = us_since(t0);

    if (oracle) {
        t0 = std::chrono::steady_clock::now();
        ssvb::attach_oracle(r, a, cfg);
        doc.timings.oracle_us = us_since(t0);
    }
    doc.timings.total_us = us_since(t_start);

    std::ostringstream descriptor;
    descriptor << path << " (n=" << r.n << ")";
    doc.input_descriptor = descriptor.str();
    doc.bounds = std::move(r);
    std::cout << (machine ? ssvb::render_json(doc) : ssvb::render_human(doc));
    return 0;
}

int cmd_verify(const std::string& path, const std::string& format) {
    const ssvb::Matrix a = parse_text(slurp(path), format);
    const ssvb::SolverConfig cfg;
    const ssvb::BoundsReport r = ssvb::compute_all(a, cfg, true);
    const auto checks = ssvb::run_invariant_checks(a, r, cfg);
    for (const ssvb::CheckResult& c : checks) {
        std::cout << "[" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
        for (size_t pad = c.name.size(); pad < 32; ++pad) {
            std::cout << ' ';
        }
        std::cout << c.detail << "\n";
    }
    const bool ok = ssvb::all_pass(checks);
    std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
    return ok ? 0 : 1;
}

int cmd_sweep(const EnsembleFlags& flags, const std::string& out_path) {
    const ssvb::EnsembleSpec spec = flags.to_spec();
    const ssvb::SolverConfig cfg;

    std::ostringstream out;
    out << "n,seed,trial,frob_sq,det_abs,l,l0,l1,a,b,sigma_min,iters,ordering_ok\n";

    int chain_violations = 0;
    int not_converged = 0;
    double sum_ratio[5] = {0, 0, 0, 0, 0};
    double min_ratio[5] = {1, 1, 1, 1, 1};
    static const char* kBoundNames[5] = {"l", "l0", "l1", "a", "b"};

    for (int t = 0; t < spec.trials; ++t) {
        const ssvb::Matrix m = ssvb::generate_trial(spec, t);
        const ssvb::BoundsReport r = ssvb::compute_all(m, cfg, true);
        const double s = *r.sigma_min;
        const double bounds[5] = {r.l, r.l0, r.l1, r.a, r.b};
        for (int i = 0; i < 5; ++i) {
            const double ratio = bounds[i] / s;
            sum_ratio[i] += ratio;
            min_ratio[i] = std::min(min_ratio[i], ratio);
        }
        if (!r.ordering_ok) {
            ++chain_violations;
        }
        if (!r.b_trace.converged) {
            ++not_converged;
        }
        out << r.n << "," << spec.seed << "," << t << "," << fmt17(r.frob_sq) << ","
            << fmt17(r.det_abs) << "," << fmt17(r.l) << "," << fmt17(r.l0) << "," << fmt17(r.l1)
            << "," << fmt17(r.a) << "," << fmt17(r.b) << "," << fmt17(s) << ","
            << r.b_trace.values.size() << "," << (r.ordering_ok ? 1 : 0) << "\n";
    }

    out << "# summary family=" << ssvb::family_name(spec.family) << " n=" << spec.n
        << " trials=" << spec.trials << " seed=" << spec.seed << "\n";
    out << "# bound,mean_tightness,min_tightness\n";
    char buf[96];
    for (int i = 0; i < 5; ++i) {
        std::snprintf(buf, sizeof buf, "# %s,%.6g,%.6g\n", kBoundNames[i],
                      sum_ratio[i] / spec.trials, min_ratio[i]);
        out << buf;
    }
    out << "# chain_violations," << chain_violations << "\n";
    out << "# not_converged," << not_converged << "\n";

    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f || !(f << out.str())) {
            throw IoFailure("cannot write '" + out_path + "'");
        }
    }
    return 0;
}

int cmd_gen(const EnsembleFlags& flags, const std::string& out_dir) {
    const ssvb::EnsembleSpec spec = flags.to_spec();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoFailure("cannot create directory '" + out_dir + "': " + ec.message());
    }
    for (int t = 0; t < spec.trials; ++t) {
        const ssvb::Matrix m = ssvb::generate_trial(spec, t);
        std::ostringstream name;
        name << ssvb::family_name(spec.family) << "-" << spec.n << "-" << spec.seed << "-" << t
             << ".mtx";
        const std::filesystem::path file = std::filesystem::path(out_dir) / name.str();
        std::ofstream f(file, std::ios::binary);
        if (!f || !(f << ssvb::serialize_matrix_market(m))) {
            throw IoFailure("cannot write '" + file.string() + "'");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lower bounds on the smallest singular value of a nonsingular matrix"};
    app.require_subcommand(1);

    std::string path;
    std::string format = "auto";
    bool oracle = false;
    bool trace = false;
    bool machine = false;

    CLI::App* compute = app.add_subcommand("compute", "compute all bounds for one matrix file");
    compute->add_option("file", path, "matrix file")->required();
    compute->add_option("--format", format, "mm | csv (default: sniff the content)")
        ->check(CLI::IsMember({"auto", "mm", "csv"}));
    compute->add_flag("--oracle", oracle, "also compute sigma_min and tightness ratios");
    compute->add_flag("--trace", trace, "include the fixed-point iteration trace");
    compute->add_flag("--machine", machine, "emit a machine-readable JSON report");

    std::string vpath;
    std::string vformat = "auto";
    CLI::App* verify = app.add_subcommand("verify", "check every runtime invariant for one matrix");
    verify->add_option("file", vpath, "matrix file")->required();
    verify->add_option("--format", vformat, "mm | csv (default: sniff the content)")
        ->check(CLI::IsMember({"auto", "mm", "csv"}));

    EnsembleFlags sweep_flags;
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "run an ensemble and emit per-trial CSV rows");
    add_ensemble_flags(sweep, sweep_flags);
    sweep->add_option("--out", sweep_out, "output CSV path (default: stdout)");

    EnsembleFlags gen_flags;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "write ensemble matrices as MatrixMarket files");
    add_ensemble_flags(gen, gen_flags);
    gen->add_option("--out", gen_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (compute->parsed()) {
        return run_guarded([&] { return cmd_compute(path, format, oracle, trace, machine); });
    }
    if (verify->parsed()) {
        return run_guarded([&] { return cmd_verify(vpath, vformat); });
    }
    if (sweep->parsed()) {
        return run_guarded([&] { return cmd_sweep(sweep_flags, sweep_out); });
    }
    return run_guarded([&] { return cmd_gen(gen_flags, gen_out); });
}
