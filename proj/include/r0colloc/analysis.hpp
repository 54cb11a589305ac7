#pragma once

#include "r0colloc/eigensolve.hpp"
#include "r0colloc/problem.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace r0colloc {

inline constexpr int kDefaultReferenceDegree = 1000;
inline constexpr int kDefaultEvalPoints = 1000;

struct Reference {
    enum class Provenance { Exact, Computed };
    double value = 0.0;
    Provenance provenance = Provenance::Exact;
    int degree = 0;  // N-bar for computed references
};

/// R0 at degree N-bar (one dense solve).
Reference reference_value(const Problem& problem, int nbar = kDefaultReferenceDegree,
                          SolverPath method = SolverPath::NgoProduct);

/// Exact value when the preset has one, otherwise reference_value(problem, nbar).
Reference auto_reference(const Problem& problem, int nbar = kDefaultReferenceDegree,
                         SolverPath method = SolverPath::NgoProduct);

struct ConvergenceOptions {
    int eval_points = kDefaultEvalPoints;
    SolverPath method = SolverPath::NgoProduct;
};

struct ConvergenceReport {
    std::vector<int> degrees;
    std::vector<double> r0_values;
    /// |R0_N - reference|; NaN where the solve failed.
    std::vector<double> r0_errors;
    /// Sup-norm eigenfunction error on eval_points equidistant points; NaN where
    /// unavailable. Empty when no exact eigenfunction was supplied.
    std::vector<double> eigfun_errors;
    /// One entry per degree; empty string when that degree completed normally.
    std::vector<std::string> notes;
    Reference reference;
    int eval_points = kDefaultEvalPoints;
};

/// R0 (and optionally eigenfunction) errors for each degree in `degrees`.
/// A failed degree is recorded in `notes` rather than aborting the study.
ConvergenceReport converge(const Problem& problem, std::span<const int> degrees,
                           const Reference& reference,
                           const std::optional<ExactEigenfunction>& exact_phi = std::nullopt,
                           const ConvergenceOptions& options = {});

/// Negated least-squares slope of log(error) against log(N) over finite, positive
/// errors with lo <= N <= hi. Needs at least three such points.
double estimate_order(const ConvergenceReport& report, int lo, int hi);
double estimate_order(std::span<const int> degrees, std::span<const double> errors);

/// Uniform grid of `points` values over [lo, hi], endpoints inclusive; geometric when
/// `log_spaced`.
struct ParameterRange {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;
    bool log_spaced = false;

    std::vector<double> grid() const;
};

/// Parse "key=lo:hi:P" or "key=lo:hi:P:log".
ParameterRange parse_parameter_range(std::string_view text);

struct SweepResult {
    std::vector<std::string> names;
    std::vector<std::vector<double>> grids;
    /// Row-major over the grids (first parameter slowest); NaN at failed points.
    std::vector<double> r0_values;
    int degree = 0;
    /// Flat indices of grid points whose solve threw.
    std::vector<std::size_t> failures;

    std::size_t size() const noexcept { return r0_values.size(); }
    double at(std::size_t i, std::size_t j = 0) const;
};

struct SweepOptions {
    SolverPath method = SolverPath::NgoProduct;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// R0 over the Cartesian grid of one or two preset scalars, each point solved
/// independently at degree `degree`.
SweepResult sweep(std::string_view preset, const Scalars& base_overrides,
                  std::span<const ParameterRange> vary, int degree,
                  const SweepOptions& options = {});

}  // namespace r0colloc
