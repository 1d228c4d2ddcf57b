// End-to-end checks of the ssvb binary: exit codes, table contents, machine
// report stability, sweep determinism, gen round-trips.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ssvb/io.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SSVB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) {
    return std::string(SSVB_FIXTURE_DIR) + "/" + name;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "ssvb-cli-test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("compute prints the worked example values with the oracle") {
    const RunResult r = run_cli("compute " + fixture("example1.csv") + " --oracle");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0.0229885") != std::string::npos);
    CHECK(r.output.find("0.0229886") != std::string::npos);
    CHECK(r.output.find("0.0230691") != std::string::npos);
    CHECK(r.output.find("0.0231") != std::string::npos);

    const RunResult r3 = run_cli("compute " + fixture("example3.csv"));
    CHECK(r3.exit_code == 0);
    CHECK(r3.output.find("1.0367") != std::string::npos);
    CHECK(r3.output.find("1.3434") != std::string::npos);
    CHECK(r3.output.find("1.3455") != std::string::npos);
}

TEST_CASE("compute maps failures to the documented exit codes") {
    const RunResult singular = run_cli("compute " + fixture("singular.csv"));
    CHECK(singular.exit_code == 2);
    CHECK(singular.output.find("pivot") != std::string::npos);

    const auto garbage = temp_dir() / "garbage.csv";
    std::ofstream(garbage) << "1,zz\n3,4\n";
    CHECK(run_cli("compute " + garbage.string()).exit_code == 3);

    CHECK(run_cli("compute /nonexistent/i-do-not-exist.csv").exit_code == 6);

    const auto nonsquare = temp_dir() / "nonsquare.mtx";
    std::ofstream(nonsquare) << "%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n";
    CHECK(run_cli("compute " + nonsquare.string()).exit_code == 3);
}

TEST_CASE("compute reads MatrixMarket fixtures via sniffing and --format") {
    const RunResult sniffed = run_cli("compute " + fixture("example2.mtx") + " --oracle");
    CHECK(sniffed.exit_code == 0);
    CHECK(sniffed.output.find("1.92771") != std::string::npos);
    CHECK(sniffed.output.find("2.01806") != std::string::npos);
    CHECK(sniffed.output.find("2.31515") != std::string::npos);

    const RunResult forced = run_cli("compute " + fixture("example2.mtx") + " --format mm");
    CHECK(forced.exit_code == 0);
}

TEST_CASE("machine reports are byte-identical apart from timings") {
    const std::string cmd = "compute " + fixture("example1.csv") + " --oracle --trace --machine";
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    auto ja = nlohmann::json::parse(a.output);
    auto jb = nlohmann::json::parse(b.output);
    ja.erase("timings_us");
    jb.erase("timings_us");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja.at("schema_version") == "1");
}

TEST_CASE("verify passes on the worked examples and the 1x1 fixture") {
    const RunResult r2 = run_cli("verify " + fixture("example2.csv"));
    CHECK(r2.exit_code == 0);
    CHECK(r2.output.find("[PASS] lemma1") != std::string::npos);
    CHECK(r2.output.find("sigma_min - l0 = +") != std::string::npos);
    CHECK(r2.output.find("all checks passed") != std::string::npos);

    const RunResult r3 = run_cli("verify " + fixture("example3.csv"));
    CHECK(r3.exit_code == 0);

    const RunResult r1 = run_cli("verify " + fixture("one_by_one.csv"));
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("n1.all_bounds_equal") != std::string::npos);

    CHECK(run_cli("verify " + fixture("singular.csv")).exit_code == 2);
}

TEST_CASE("sweep validates flags, is deterministic, and reports zero violations") {
    CHECK(run_cli("sweep --family integer-small --n 3 --trials 0 --seed 7").exit_code == 5);
    CHECK(run_cli("sweep --family no-such-family --n 3 --trials 1 --seed 7").exit_code == 5);
    CHECK(run_cli("sweep --family ill-conditioned --n 3 --trials 1 --seed 7").exit_code == 5);

    const auto out1 = temp_dir() / "sweep1.csv";
    const auto out2 = temp_dir() / "sweep2.csv";
    const std::string flags = "sweep --family integer-small --n 3 --trials 25 --seed 7 --out ";
    CHECK(run_cli(flags + out1.string()).exit_code == 0);
    CHECK(run_cli(flags + out2.string()).exit_code == 0);
    const std::string text = slurp(out1);
    CHECK(text == slurp(out2));
    CHECK(text.find("n,seed,trial,") != std::string::npos);
    CHECK(text.find("# chain_violations,0") != std::string::npos);

    int rows = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#' && line[0] != 'n') {
            ++rows;
        }
    }
    CHECK(rows == 25);
}

TEST_CASE("gen writes parseable MatrixMarket files that compute cleanly") {
    CHECK(run_cli("gen --family integer-small --n 0 --trials 2 --seed 9 --out /tmp/x").exit_code ==
          5);

    const auto dir = temp_dir() / "gen";
    std::filesystem::remove_all(dir);
    const RunResult g = run_cli("gen --family integer-small --n 3 --trials 2 --seed 9 --out " +
                                dir.string());
    CHECK(g.exit_code == 0);
    for (int t = 0; t < 2; ++t) {
        const auto file = dir / ("integer-small-3-9-" + std::to_string(t) + ".mtx");
        REQUIRE(std::filesystem::exists(file));
        std::ifstream in(file);
        CHECK_NOTHROW(ssvb::parse_matrix_market(in));
        CHECK(run_cli("compute " + file.string() + " --oracle").exit_code == 0);
    }
}
