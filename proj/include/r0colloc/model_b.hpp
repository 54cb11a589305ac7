#pragma once

#include "r0colloc/operator_pair.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace r0colloc {

/// Infection kernel K(x, y): new infections at age x caused by infected of age y.
using Kernel = std::function<double(double, double)>;

/// Linearized age-structured epidemic in the survival-normalized variable:
///   u_t + u_x = int_0^l K(x, y) u(y) dy - (gamma + delta)(x) u,
///   u(0) = theta int_0^l beta(x) u(x) dx.
struct ModelBProblem {
    std::string preset;  // empty for user-built problems
    double length = 1.0;
    Kernel kernel;
    /// Combined removal and recovery rate gamma + delta; may blow up at x = l.
    Coefficient removal;
    /// Effective fertility beta = beta_0 Pi_0; only read when theta > 0.
    Coefficient fertility;
    double theta = 0.0;
    /// Survival in the infected class, Pi_1(x) = exp(-int_0^x (gamma + delta)).
    /// Optional; required by the explicit next-generation operator and the bound.
    Coefficient survival;
    /// Drop the node x = l from the discrete system (row and column).
    bool exclude_last_node = false;
    /// Preset scalars: "k", "mu", "gamma", "delta", "theta", "alpha", "l0", "l".
    Scalars scalars;
};

inline constexpr std::string_view kModelBPresets[] = {"B1", "B2.1", "B2.2", "B3"};

/// Build one of the reference instances B1, B2.1, B2.2, B3.
ModelBProblem preset_b(std::string_view name, const Scalars& overrides = {});

/// Mesh indices kept in the discrete system for this problem.
std::vector<int> active_indices(const ModelBProblem& problem, const CollocationMesh& mesh);

/// Assemble (B_N, M_N): row 0 holds the quadrature of the boundary condition
/// phi(0) = theta int beta phi, rows i >= 1 collocate phi' + (gamma + delta) phi against
/// the quadrature of the kernel integral.
OperatorPair assemble_b(const ModelBProblem& problem, const CollocationMesh& mesh);

/// Closed-form next-generation operator
///   (B M^{-1} psi)(x) = int K(x, y) [Pi_1(y) C + int_0^y Pi_1(y)/Pi_1(z) psi(z) dz] dy
/// evaluated at the active nodes of `mesh`, all integrals by Clenshaw-Curtis quadrature
/// of degree `fine_degree`. Independent of the collocation matrices.
Vector ngo_apply_explicit(const ModelBProblem& problem, const Coefficient& psi,
                          const CollocationMesh& mesh, int fine_degree = 400);

/// Same, with psi given by its samples at the active nodes of `mesh` (interpolated).
Vector ngo_apply_explicit(const ModelBProblem& problem, std::span<const double> psi_samples,
                          const CollocationMesh& mesh, int fine_degree = 400);

/// Upper bound int int K(x, y) [theta Pi_1(y) / (1 - theta int beta Pi_1) + 1] dy dx on
/// R0, by tensorized quadrature on `mesh`.
double upper_bound_b(const ModelBProblem& problem, const CollocationMesh& mesh);

}  // namespace r0colloc
