#include "ssvb/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <sstream>

#include "ssvb/bounds.hpp"
#include "ssvb/errors.hpp"
#include "ssvb/spectral.hpp"

namespace ssvb {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double_token(const std::string& tok, int line) {
    std::string_view sv(tok);
    if (!sv.empty() && sv.front() == '+') {
        sv.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size() || sv.empty()) {
        throw ParseError("bad numeric literal '" + tok + "'", line);
    }
    if (!std::isfinite(v)) {
        throw ParseError("non-finite value '" + tok + "'", line);
    }
    return v;
}

long long parse_int_token(const std::string& tok, int line) {
    std::string_view sv(tok);
    if (!sv.empty() && sv.front() == '+') {
        sv.remove_prefix(1);
    }
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size() || sv.empty()) {
        throw ParseError("bad integer literal '" + tok + "'", line);
    }
    return v;
}

// Pulls whitespace-separated tokens out of a stream while tracking the
// current line and skipping %-comment lines.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next() {
        while (queue_pos_ >= queue_.size()) {
            std::string line;
            if (!std::getline(in_, line)) {
                return std::nullopt;
            }
            ++line_no_;
            const std::string t = trim(line);
            if (t.empty() || t.front() == '%') {
                continue;
            }
            queue_.clear();
            queue_pos_ = 0;
            std::istringstream split(t);
            std::string tok;
            while (split >> tok) {
                queue_.push_back(tok);
            }
        }
        return queue_[queue_pos_++];
    }

    std::string require(const char* what) {
        auto tok = next();
        if (!tok) {
            throw ParseError(std::string("unexpected end of input, expected ") + what, line_no_);
        }
        return *tok;
    }

    int line() const { return line_no_; }

private:
    std::istream& in_;
    std::vector<std::string> queue_;
    size_t queue_pos_ = 0;
    int line_no_ = 0;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool strictly_real(const std::complex<double>& z) {
    return z.imag() == 0.0 && !std::signbit(z.imag());
}

// Parses one CSV cell: "re", "re+imi", "re-imi" or "imi".
std::complex<double> parse_csv_cell(const std::string& cell, int line) {
    if (cell.empty()) {
        throw ParseError("empty cell", line);
    }
    const char last = cell.back();
    if (last != 'i' && last != 'I') {
        return {parse_double_token(cell, line), 0.0};
    }
    const std::string body = cell.substr(0, cell.size() - 1);
    if (body.empty()) {
        throw ParseError("bad complex literal '" + cell + "'", line);
    }
    // Split at the sign that separates re from im: the last '+'/'-' that is
    // neither the leading sign nor part of an exponent.
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        return {0.0, parse_double_token(body, line)};
    }
    const double re = parse_double_token(body.substr(0, split), line);
    const double im = parse_double_token(body.substr(split), line);
    return {re, im};
}

Matrix finish(int n, std::vector<Matrix::Scalar> entries, int line) {
    try {
        return Matrix(n, std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
    }
}

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

SplitMix64 trial_stream(uint64_t seed, int trial) {
    return SplitMix64(SplitMix64::mix(seed + (static_cast<uint64_t>(trial) + 1) * kGolden));
}

// Right-multiplies m (n x n, row-major) by the plane rotation G(i,j,theta).
void apply_rotation_right(std::vector<Matrix::Scalar>& m, int n, int i, int j, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int r = 0; r < n; ++r) {
        const Matrix::Scalar vi = m[static_cast<size_t>(r) * n + i];
        const Matrix::Scalar vj = m[static_cast<size_t>(r) * n + j];
        m[static_cast<size_t>(r) * n + i] = c * vi + s * vj;
        m[static_cast<size_t>(r) * n + j] = -s * vi + c * vj;
    }
}

// Left-multiplies m by G(i,j,theta).
void apply_rotation_left(std::vector<Matrix::Scalar>& m, int n, int i, int j, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int col = 0; col < n; ++col) {
        const Matrix::Scalar vi = m[static_cast<size_t>(i) * n + col];
        const Matrix::Scalar vj = m[static_cast<size_t>(j) * n + col];
        m[static_cast<size_t>(i) * n + col] = c * vi - s * vj;
        m[static_cast<size_t>(j) * n + col] = s * vi + c * vj;
    }
}

std::vector<double> rotation_angles(int n, SplitMix64& rng) {
    std::vector<double> angles;
    angles.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            angles.push_back(rng.next_unit() * 2.0 * std::numbers::pi);
        }
    }
    return angles;
}

Matrix draw_once(const EnsembleSpec& spec, SplitMix64& rng) {
    const int n = spec.n;
    const size_t nn = static_cast<size_t>(n) * n;
    switch (spec.family) {
        case Family::UniformRandom: {
            std::vector<Matrix::Scalar> e(nn);
            for (auto& z : e) {
                z = rng.next_symmetric();
            }
            return Matrix(n, std::move(e));
        }
        case Family::ComplexRandom: {
            std::vector<Matrix::Scalar> e(nn);
            for (auto& z : e) {
                const double re = rng.next_symmetric();
                const double im = rng.next_symmetric();
                z = {re, im};
            }
            return Matrix(n, std::move(e));
        }
        case Family::IntegerSmall: {
            std::vector<Matrix::Scalar> e(nn);
            for (auto& z : e) {
                z = static_cast<double>(static_cast<long long>(rng.next_below(19)) - 9);
            }
            return Matrix(n, std::move(e));
        }
        case Family::ScaledOrthogonal: {
            const double c = spec.scale.value_or(1.0);
            std::vector<Matrix::Scalar> m(nn, Matrix::Scalar(0.0));
            for (int i = 0; i < n; ++i) {
                m[static_cast<size_t>(i) * n + i] = c;
            }
            size_t k = 0;
            const auto angles = rotation_angles(n, rng);
            for (int i = 0; i < n - 1; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    apply_rotation_right(m, n, i, j, angles[k++]);
                }
            }
            return Matrix(n, std::move(m));
        }
        case Family::IllConditioned: {
            const double kappa = *spec.kappa;
            std::vector<Matrix::Scalar> m(nn, Matrix::Scalar(0.0));
            for (int i = 0; i < n; ++i) {
                const double expo = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
                m[static_cast<size_t>(i) * n + i] = std::pow(kappa, -expo);
            }
            // Left rotation angles are drawn first, then the right ones.
            const auto left = rotation_angles(n, rng);
            const auto right = rotation_angles(n, rng);
            size_t k = 0;
            for (int i = 0; i < n - 1; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    apply_rotation_left(m, n, i, j, left[k++]);
                }
            }
            k = 0;
            for (int i = 0; i < n - 1; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    apply_rotation_right(m, n, i, j, right[k++]);
                }
            }
            return Matrix(n, std::move(m));
        }
    }
    throw EnsembleSpecError("generate: unknown family");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::UniformRandom: return "uniform-random";
        case Family::IllConditioned: return "ill-conditioned";
        case Family::ScaledOrthogonal: return "scaled-orthogonal";
        case Family::IntegerSmall: return "integer-small";
        case Family::ComplexRandom: return "complex-random";
    }
    return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
    for (Family f : {Family::UniformRandom, Family::IllConditioned, Family::ScaledOrthogonal,
                     Family::IntegerSmall, Family::ComplexRandom}) {
        if (name == family_name(f)) {
            return f;
        }
    }
    return std::nullopt;
}

void EnsembleSpec::validate() const {
    if (n < 1) {
        throw EnsembleSpecError("ensemble: n must be >= 1");
    }
    if (trials < 1) {
        throw EnsembleSpecError("ensemble: trials must be >= 1");
    }
    if (kappa && !(std::isfinite(*kappa) && *kappa >= 1.0)) {
        throw EnsembleSpecError("ensemble: kappa must be finite and >= 1");
    }
    if (family == Family::IllConditioned && !kappa) {
        throw EnsembleSpecError("ensemble: ill-conditioned family requires kappa");
    }
    if (scale && !(std::isfinite(*scale) && *scale != 0.0)) {
        throw EnsembleSpecError("ensemble: scale must be finite and nonzero");
    }
}

Matrix parse_matrix_market(std::istream& in) {
    std::string banner_line;
    if (!std::getline(in, banner_line)) {
        throw ParseError("empty input", 1);
    }
    std::istringstream banner(trim(banner_line));
    std::string tag, object, format, field, qualifier;
    banner >> tag >> object >> format >> field >> qualifier;
    if (lower(tag) != "%%matrixmarket") {
        throw ParseError("missing %%MatrixMarket banner", 1);
    }
    if (lower(object) != "matrix") {
        throw ParseError("unsupported object '" + object + "'", 1);
    }
    format = lower(format);
    field = lower(field);
    qualifier = lower(qualifier);
    if (format != "array" && format != "coordinate") {
        throw ParseError("unsupported format '" + format + "'", 1);
    }
    if (field != "real" && field != "complex" && field != "integer") {
        throw ParseError("unsupported field '" + field + "'", 1);
    }
    if (qualifier == "symmetric" || qualifier == "hermitian" || qualifier == "skew-symmetric") {
        throw UnsupportedQualifierError(
            "qualifier '" + qualifier + "' is not supported; expand the matrix to 'general'");
    }
    if (qualifier != "general") {
        throw ParseError("unsupported qualifier '" + qualifier + "'", 1);
    }

    TokenReader tokens(in);
    const long long rows = parse_int_token(tokens.require("row count"), tokens.line());
    const long long cols = parse_int_token(tokens.require("column count"), tokens.line());
    if (rows < 1 || cols < 1) {
        throw ParseError("dimensions must be positive", tokens.line());
    }
    if (rows != cols) {
        std::ostringstream msg;
        msg << "matrix is " << rows << "x" << cols << ", expected square";
        throw NonSquareError(msg.str());
    }
    const int n = static_cast<int>(rows);
    std::vector<Matrix::Scalar> entries(static_cast<size_t>(n) * n, Matrix::Scalar(0.0));

    auto read_value = [&]() -> Matrix::Scalar {
        if (field == "complex") {
            const double re = parse_double_token(tokens.require("real part"), tokens.line());
            const double im = parse_double_token(tokens.require("imaginary part"), tokens.line());
            return {re, im};
        }
        if (field == "integer") {
            return {static_cast<double>(parse_int_token(tokens.require("value"), tokens.line())),
                    0.0};
        }
        return {parse_double_token(tokens.require("value"), tokens.line()), 0.0};
    };

    if (format == "array") {
        // Array bodies are column-major.
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                entries[static_cast<size_t>(i) * n + j] = read_value();
            }
        }
    } else {
        const long long nnz = parse_int_token(tokens.require("entry count"), tokens.line());
        if (nnz < 0 || nnz > rows * cols) {
            throw ParseError("implausible entry count", tokens.line());
        }
        for (long long k = 0; k < nnz; ++k) {
            const long long i = parse_int_token(tokens.require("row index"), tokens.line());
            const long long j = parse_int_token(tokens.require("column index"), tokens.line());
            if (i < 1 || i > n || j < 1 || j > n) {
                throw ParseError("index out of range", tokens.line());
            }
            entries[static_cast<size_t>(i - 1) * n + (j - 1)] = read_value();
        }
    }
    if (tokens.next()) {
        throw ParseError("unexpected trailing data", tokens.line());
    }
    return finish(n, std::move(entries), tokens.line());
}

Matrix parse_csv(std::istream& in) {
    std::vector<std::vector<Matrix::Scalar>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) {
            // Tolerate a trailing newline, nothing else.
            std::string rest;
            while (std::getline(in, rest)) {
                ++line_no;
                if (!trim(rest).empty()) {
                    throw ParseError("blank line inside matrix body", line_no - 1);
                }
            }
            break;
        }
        std::vector<Matrix::Scalar> row;
        size_t start = 0;
        while (true) {
            const size_t comma = t.find(',', start);
            const std::string cell =
                trim(t.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            row.push_back(parse_csv_cell(cell, line_no));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            std::ostringstream msg;
            msg << "ragged row: " << row.size() << " cells, expected " << rows.front().size();
            throw ParseError(msg.str(), line_no);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError("empty input", 1);
    }
    if (rows.size() != rows.front().size()) {
        std::ostringstream msg;
        msg << "matrix is " << rows.size() << "x" << rows.front().size() << ", expected square";
        throw NonSquareError(msg.str());
    }
    const int n = static_cast<int>(rows.size());
    std::vector<Matrix::Scalar> entries;
    entries.reserve(static_cast<size_t>(n) * n);
    for (auto& r : rows) {
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return finish(n, std::move(entries), line_no);
}

std::string serialize_matrix_market(const Matrix& m) {
    const int n = m.dim();
    bool real = true;
    for (const auto& z : m.entries()) {
        real = real && strictly_real(z);
    }
    std::ostringstream out;
    out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
    out << n << " " << n << "\n";
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Matrix::Scalar z = m(i, j);
            if (real) {
                out << fmt17(z.real()) << "\n";
            } else {
                out << fmt17(z.real()) << " " << fmt17(z.imag()) << "\n";
            }
        }
    }
    return out.str();
}

std::string serialize_csv(const Matrix& m) {
    const int n = m.dim();
    std::ostringstream out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) {
                out << ",";
            }
            const Matrix::Scalar z = m(i, j);
            if (strictly_real(z)) {
                out << fmt17(z.real());
            } else {
                out << fmt17(z.real()) << (std::signbit(z.imag()) ? "-" : "+")
                    << fmt17(std::abs(z.imag())) << "i";
            }
        }
        out << "\n";
    }
    return out.str();
}

Matrix generate_trial(const EnsembleSpec& spec, int trial) {
    spec.validate();
    if (trial < 0 || trial >= spec.trials) {
        throw EnsembleSpecError("generate: trial index out of range");
    }
    SplitMix64 rng = trial_stream(spec.seed, trial);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix m = draw_once(spec, rng);
        if (sigma_min_exact(m, SolverConfig{}) > 0.0) {
            return m;
        }
    }
    throw GenerationError("generate: 100 attempts produced only singular matrices");
}

std::vector<Matrix> generate(const EnsembleSpec& spec) {
    spec.validate();
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(spec.trials));
    for (int t = 0; t < spec.trials; ++t) {
        out.push_back(generate_trial(spec, t));
    }
    return out;
}

}  // namespace ssvb
