#pragma once

#include "r0colloc/analysis.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace r0colloc::cli {

enum class Command { Compute, Converge, Sweep, Eigenfunction, Bound };
enum class Format { Json, Csv };

/// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

struct RunConfig {
    Command command = Command::Compute;
    std::string preset;
    Scalars overrides;
    std::optional<int> degree;
    std::optional<int> nbar;
    std::vector<int> degree_list;
    std::vector<ParameterRange> vary;
    SolverPath method = SolverPath::NgoProduct;
    int points = kDefaultEvalPoints;
    std::optional<Format> format;
    std::string out;  // empty: standard output
};

/// Parse "lo:step:hi" into an ascending list of degrees.
std::vector<int> parse_degree_list(std::string_view text);

/// Parse argv (flags, optionally merged with a --config JSON file; flags win).
/// Throws std::invalid_argument on malformed input.
RunConfig parse_arguments(int argc, const char* const* argv);

/// Execute one command, writing the document to `out` (or to config.out) and
/// diagnostics to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + run with the exit-status mapping applied to parse errors.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits (round-trip exact); "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

}  // namespace r0colloc::cli
