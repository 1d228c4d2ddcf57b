#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssvb/matrix.hpp"

namespace ssvb {

/// SplitMix64. Chosen because it is trivial to specify bit-exactly: outputs
/// depend only on 64-bit integer arithmetic, so every implementation of the
/// documented recipe reproduces the same matrices.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t state) : state_(state) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    /// Uniform integer in [0, k).
    uint64_t next_below(uint64_t k) { return next() % k; }

    /// One full avalanche pass of the SplitMix64 finalizer.
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    uint64_t state_;
};

enum class Family {
    UniformRandom,
    IllConditioned,
    ScaledOrthogonal,
    IntegerSmall,
    ComplexRandom,
};

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Description of a random matrix family for sweep/benchmark runs.
struct EnsembleSpec {
    Family family = Family::UniformRandom;
    int n = 0;
    int trials = 0;
    uint64_t seed = 0;
    std::optional<double> kappa;  // target condition number, ill-conditioned only
    std::optional<double> scale;  // scaled-orthogonal only, default 1

    /// Throws EnsembleSpecError on invalid fields.
    void validate() const;
};

/// Dense MatrixMarket parser: array and coordinate formats, real / complex /
/// integer fields, general qualifier only. Symmetric, hermitian and
/// skew-symmetric qualifiers are rejected rather than expanded.
Matrix parse_matrix_market(std::istream& in);

/// One row per line, comma separated. Complex entries use the forms
/// "re+imi" / "re-imi" / "imi"; everything else parses as a real.
Matrix parse_csv(std::istream& in);

/// Array-format MatrixMarket text, 17 significant digits (round-trips
/// bit-exactly through parse_matrix_market).
std::string serialize_matrix_market(const Matrix& m);

/// CSV text, 17 significant digits (round-trips bit-exactly through parse_csv).
std::string serialize_csv(const Matrix& m);

/// The matrix for one trial; a pure function of (spec, trial), so trials can
/// be produced in any order or in parallel. Trials in nonsingular families
/// resample (continuing the same per-trial stream) until the spectral oracle
/// reports sigma_min > 0, capped at 100 attempts.
Matrix generate_trial(const EnsembleSpec& spec, int trial);

/// All trials of the ensemble in trial order.
std::vector<Matrix> generate(const EnsembleSpec& spec);

}  // namespace ssvb
