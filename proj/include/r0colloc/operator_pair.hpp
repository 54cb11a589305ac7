#pragma once

#include "r0colloc/spectral.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace r0colloc {

/// Scalar function of position/age on [0, l].
using Coefficient = std::function<double(double)>;

/// Preset scalars and user overrides, keyed by lower-case parameter name.
using Scalars = std::map<std::string, double>;

/// Discrete birth/mortality pair of B_N Phi = lambda M_N Phi.
struct OperatorPair {
    Matrix birth;
    Matrix mortality;
    int degree = 0;
    double length = 0.0;
    /// Mesh indices retained in the system, in ascending order.
    std::vector<int> active_indices;
    /// Mesh nodes at the retained indices.
    std::vector<double> active_nodes;

    Eigen::Index dim() const noexcept { return birth.rows(); }
};

/// Coefficient given by its values at the nodes of one mesh. Evaluating it anywhere
/// else throws std::invalid_argument: tabulated data is never interpolated.
Coefficient node_table(const CollocationMesh& mesh, std::vector<double> values);

}  // namespace r0colloc
