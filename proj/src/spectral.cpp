#include "r0colloc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace r0colloc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_distinct(std::span<const double> nodes) {
    if (nodes.empty()) throw std::invalid_argument("node set is empty");
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!(sorted[i] > sorted[i - 1])) {
            throw std::invalid_argument("nodes must be distinct (duplicate at " +
                                        std::to_string(sorted[i]) + ")");
        }
    }
}

}  // namespace

std::vector<double> chebyshev_nodes(int degree, double length) {
    if (degree < 1) throw std::invalid_argument("degree N must be >= 1");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("interval length must be positive and finite");

    // -cos(i pi / N) as sin(pi (2i - N) / 2N).
    std::vector<double> x(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i <= degree; ++i) {
        const double t = std::sin(kPi * (2 * i - degree) / (2.0 * degree));
        x[static_cast<std::size_t>(i)] = 0.5 * length * (1.0 + t);
    }
    x.front() = 0.0;
    x.back() = length;
    return x;
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
    require_distinct(nodes);
    const auto [lo, hi] = std::minmax_element(nodes.begin(), nodes.end());
    const double span_len = *hi - *lo;
    const double scale = span_len > 0.0 ? 4.0 / span_len : 1.0;

    const std::size_t n = nodes.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double prod = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j) prod *= scale * (nodes[j] - nodes[k]);
        }
        w[j] = 1.0 / prod;
    }
    return w;
}

Matrix differentiation_matrix(std::span<const double> nodes) {
    const std::vector<double> w = barycentric_weights(nodes);
    const auto n = static_cast<Eigen::Index>(nodes.size());
    Matrix h = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double diag = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            h(i, j) = (w[uj] / w[ui]) / (nodes[ui] - nodes[uj]);
            diag -= h(i, j);
        }
        h(i, i) = diag;
    }
    return h;
}

Vector quadrature_weights(std::span<const double> nodes, double length) {
    if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
    require_distinct(nodes);
    for (double x : nodes) {
        if (x < 0.0 || x > length)
            throw std::invalid_argument("nodes must lie in [0, l]");
    }
    const auto n = static_cast<Eigen::Index>(nodes.size());

    // Rows: Chebyshev polynomials T_k on [0, l]; columns: nodes.
    Matrix vt(n, n);
    Vector moments(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double t = 2.0 * nodes[static_cast<std::size_t>(j)] / length - 1.0;
        double t_prev = 1.0;
        double t_cur = t;
        vt(0, j) = 1.0;
        if (n > 1) vt(1, j) = t;
        for (Eigen::Index k = 2; k < n; ++k) {
            const double t_next = 2.0 * t * t_cur - t_prev;
            vt(k, j) = t_next;
            t_prev = t_cur;
            t_cur = t_next;
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        moments[k] = (k % 2 == 0) ? length / (1.0 - static_cast<double>(k * k)) : 0.0;
    }
    return vt.fullPivLu().solve(moments);
}

Vector clenshaw_curtis_weights(int degree, double length) {
    if (degree < 1) throw std::invalid_argument("degree N must be >= 1");
    if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");

    const int n = degree;
    Vector w = Vector::Zero(n + 1);
    if (n % 2 == 0) {
        w[0] = w[n] = 1.0 / (static_cast<double>(n) * n - 1.0);
    } else {
        w[0] = w[n] = 1.0 / (static_cast<double>(n) * n);
    }
    for (int i = 1; i < n; ++i) {
        const double theta = kPi * i / n;
        double v = 1.0;
        if (n % 2 == 0) {
            for (int k = 1; k < n / 2; ++k)
                v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
            v -= std::cos(n * theta) / (static_cast<double>(n) * n - 1.0);
        } else {
            for (int k = 1; k <= (n - 1) / 2; ++k)
                v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        }
        w[i] = 2.0 * v / n;
    }
    return w * (0.5 * length);
}

std::vector<double> barycentric_interpolate(std::span<const double> nodes,
                                            std::span<const double> values,
                                            std::span<const double> queries) {
    const std::vector<double> w = barycentric_weights(nodes);
    return barycentric_interpolate(nodes, w, values, queries);
}

std::vector<double> barycentric_interpolate(std::span<const double> nodes,
                                            std::span<const double> weights,
                                            std::span<const double> values,
                                            std::span<const double> queries) {
    if (nodes.size() != values.size() || nodes.size() != weights.size())
        throw std::invalid_argument("nodes, weights and values must have the same length");
    if (nodes.empty()) throw std::invalid_argument("node set is empty");

    std::vector<double> out(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const double x = queries[q];
        double num = 0.0;
        double den = 0.0;
        bool exact = false;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double diff = x - nodes[j];
            if (diff == 0.0) {
                out[q] = values[j];
                exact = true;
                break;
            }
            const double c = weights[j] / diff;
            num += c * values[j];
            den += c;
        }
        if (!exact) out[q] = num / den;
    }
    return out;
}

CollocationMesh::CollocationMesh(int degree, double length)
    : degree_(degree), length_(length), nodes_(chebyshev_nodes(degree, length)) {
    const int n = degree_;

    // Chebyshev-Lobatto barycentric weights (-1)^j delta_j.
    bary_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        double v = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == n) v *= 0.5;
        bary_[static_cast<std::size_t>(j)] = v;
    }

    // Closed-form entries with node differences computed from trigonometric identities,
    // then mapped from [-1, 1] to [0, l].
    diffmat_ = Matrix::Zero(n + 1, n + 1);
    const double scale = 2.0 / length_;
    for (int i = 0; i <= n; ++i) {
        const double ci = (i == 0 || i == n) ? 2.0 : 1.0;
        double diag = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            const double dt = 2.0 * std::sin(kPi * (i + j) / (2.0 * n)) *
                              std::sin(kPi * (i - j) / (2.0 * n));
            const double hij = scale * sign * (ci / cj) / dt;
            diffmat_(i, j) = hij;
            diag -= hij;
        }
        diffmat_(i, i) = diag;
    }

    weights_ = clenshaw_curtis_weights(degree_, length_);
}

}  // namespace r0colloc
