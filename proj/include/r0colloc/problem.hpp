#pragma once

#include "r0colloc/model_a.hpp"
#include "r0colloc/model_b.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace r0colloc {

using Problem = std::variant<ModelAProblem, ModelBProblem>;

/// Dispatch on the preset family by the leading letter (A or B), case-insensitive.
Problem make_preset(std::string_view name, const Scalars& overrides = {});

bool is_model_b(const Problem& problem);
const std::string& preset_name(const Problem& problem);
double domain_length(const Problem& problem);

OperatorPair assemble(const Problem& problem, const CollocationMesh& mesh);

/// Closed-form R0 when the preset has one (A1, A2 with positive diffusion; B2.x).
std::optional<double> exact_r0(const Problem& problem);

/// Known generalized eigenfunction with the normalization point it is stated for.
struct ExactEigenfunction {
    Coefficient phi;
    double anchor = 0.0;
};

/// A1/A2 (positive diffusion): phi = exp(int_0^x c/D), phi(0) = 1.
/// B1: the constant-psi solution of the boundary-value problem, anchored at x = l.
/// B2.x: phi = x^3 (l - x)(4l - 3x)/12, anchored at l/2.
std::optional<ExactEigenfunction> exact_eigenfunction(const Problem& problem);

}  // namespace r0colloc
