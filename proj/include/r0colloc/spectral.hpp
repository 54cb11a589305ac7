#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace r0colloc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Chebyshev extremal points x_i = l (1 - cos(i pi / N)) / 2, i = 0..N, ascending.
/// Endpoints are exactly 0 and l; the set is symmetric about l/2.
std::vector<double> chebyshev_nodes(int degree, double length);

/// Barycentric weights 1 / prod_{k != j} (x_j - x_k) for arbitrary distinct nodes,
/// rescaled by the interval capacity so that products neither overflow nor underflow.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Derivative of the Lagrange basis at the nodes, h_{ij} = l_j'(x_i).
/// Works for any distinct nodes; diagonal entries use the negative-sum rule.
Matrix differentiation_matrix(std::span<const double> nodes);

/// Weights w_j = int_0^l l_j(x) dx for arbitrary distinct nodes in [0, l], obtained by
/// matching Chebyshev moments (exact for polynomials of degree <= N).
Vector quadrature_weights(std::span<const double> nodes, double length);

/// Clenshaw-Curtis weights on the Chebyshev extremal points of [0, l].
Vector clenshaw_curtis_weights(int degree, double length);

/// Evaluate the interpolating polynomial through (nodes, values) at each query using the
/// second (true) barycentric formula. Queries that coincide with a node return the stored
/// value exactly.
std::vector<double> barycentric_interpolate(std::span<const double> nodes,
                                            std::span<const double> values,
                                            std::span<const double> queries);

/// Same, with precomputed barycentric weights.
std::vector<double> barycentric_interpolate(std::span<const double> nodes,
                                            std::span<const double> weights,
                                            std::span<const double> values,
                                            std::span<const double> queries);

/// Chebyshev collocation data of degree N on [0, l]. Immutable once built.
class CollocationMesh {
public:
    CollocationMesh(int degree, double length);

    int degree() const noexcept { return degree_; }
    double length() const noexcept { return length_; }
    int size() const noexcept { return degree_ + 1; }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

    /// Differentiation matrix H_N.
    const Matrix& diffmat() const noexcept { return diffmat_; }

    /// Clenshaw-Curtis quadrature weights w_N, summing to l.
    const Vector& weights() const noexcept { return weights_; }

    /// Barycentric interpolation weights for the full node set.
    const std::vector<double>& bary_weights() const noexcept { return bary_; }

private:
    int degree_;
    double length_;
    std::vector<double> nodes_;
    std::vector<double> bary_;
    Matrix diffmat_;
    Vector weights_;
};

/// Integral of f over [a, b] by Clenshaw-Curtis quadrature of the given degree.
template <typename F>
double clenshaw_curtis_integral(F&& f, double a, double b, int degree) {
    if (!(b > a)) return 0.0;
    const Vector w = clenshaw_curtis_weights(degree, b - a);
    const std::vector<double> x = chebyshev_nodes(degree, b - a);
    double sum = 0.0;
    for (int j = 0; j <= degree; ++j) sum += w[j] * f(a + x[static_cast<std::size_t>(j)]);
    return sum;
}

}  // namespace r0colloc
