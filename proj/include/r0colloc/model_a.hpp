#pragma once

#include "r0colloc/operator_pair.hpp"

#include <string>
#include <string_view>

namespace r0colloc {

/// Linearized cell population with transport c, diffusion D, fertility beta and
/// mortality mu on [0, l] and zero-flux boundaries. Division is symmetric, so birth
/// contributes 2 beta and removes the mother at rate beta.
struct ModelAProblem {
    std::string preset;  // empty for user-built problems
    double length = 1.0;
    Coefficient velocity;
    Coefficient diffusion;
    Coefficient fertility;
    Coefficient mortality;
    /// Preset scalars: "d" (diffusion scale), "beta", "mu", "l".
    Scalars scalars;
};

/// Preset names accepted by preset_a.
inline constexpr std::string_view kModelAPresets[] = {"A1", "A2", "A3.1", "A3.2", "A3.3"};

/// Build one of the reference instances A1, A2, A3.1, A3.2, A3.3. Overrides may change
/// "d", "beta", "mu" and "l"; anything else is rejected with std::invalid_argument.
ModelAProblem preset_a(std::string_view name, const Scalars& overrides = {});

/// Assemble (B_N, M_N) on a mesh of degree >= 2.
///
/// Interior rows collocate [c phi - D phi']' + (beta + mu) phi = lambda^{-1} 2 beta phi;
/// rows 0 and N impose the zero-flux condition c phi - D phi' = 0 and carry zero birth.
/// When the diffusion vanishes at every node the outflow condition at x = l is replaced
/// by the interior equation there (the transport problem needs only the inflow
/// condition).
OperatorPair assemble_a(const ModelAProblem& problem, const CollocationMesh& mesh);

}  // namespace r0colloc
