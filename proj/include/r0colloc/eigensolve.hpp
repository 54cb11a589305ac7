#pragma once

#include "r0colloc/operator_pair.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace r0colloc {

/// Which similar matrix carries the spectrum.
enum class SolverPath {
    NgoProduct,    ///< B M^{-1}, the discrete next-generation matrix.
    MInverseLeft,  ///< M^{-1} B; same spectrum, eigenvector is Phi directly.
};

std::string_view to_string(SolverPath path);

/// Accepts "ngo", "ngo-product", "left", "m-inverse-left" (case-insensitive).
SolverPath parse_solver_path(std::string_view text);

/// Singular-M threshold on the 1-norm condition estimate of M_N.
inline constexpr double kMaxConditionEstimate = 1e13;

struct R0Result {
    double r0 = 0.0;
    /// Dominant generalized eigenvector Phi over the active nodes, normalized to unit
    /// max-norm with a positive largest-magnitude entry. Absent when the dominant
    /// eigenvalue is complex.
    std::optional<Vector> eigvec;
    /// M_N Phi (the eigenvector of B_N M_N^{-1}); present together with eigvec.
    std::optional<Vector> psi;
    /// ||B Phi - lambda M Phi||_inf / ||Phi||_inf; NaN without eigvec.
    double residual = 0.0;
    SolverPath method = SolverPath::NgoProduct;
    bool dominant_is_real = true;
    /// Dominant eigenvalue (signed); r0 is its modulus.
    std::complex<double> dominant;
    int degree = 0;
    double condition_estimate = 0.0;
    std::vector<int> active_indices;
    /// Full spectrum of the similar matrix, unsorted.
    std::vector<std::complex<double>> spectrum;
};

/// Spectral radius and dominant eigenpair of B Phi = lambda M Phi.
/// Throws NumericalError when M is singular to working precision (condition estimate
/// above kMaxConditionEstimate) or the QR iteration fails.
R0Result spectral_radius(const OperatorPair& pair, SolverPath method = SolverPath::NgoProduct);

/// Normalization point: rescale so that p(x) = value.
struct Anchor {
    double x = 0.0;
    double value = 1.0;
};

/// Evaluate the collocation polynomial of the dominant eigenvector at `queries`.
std::vector<double> eigenfunction(const R0Result& result, const CollocationMesh& mesh,
                                  std::span<const double> queries,
                                  std::optional<Anchor> anchor = std::nullopt);

/// All eigenvalues of a dense real matrix (LAPACK dgeev: balancing, Hessenberg
/// reduction, shifted QR).
std::vector<std::complex<double>> dense_eigenvalues(const Matrix& a);

}  // namespace r0colloc
