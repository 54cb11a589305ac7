#include "r0colloc/model_a.hpp"

#include "scalars.hpp"

#include <cmath>
#include <stdexcept>

namespace r0colloc {

Coefficient node_table(const CollocationMesh& mesh, std::vector<double> values) {
    if (values.size() != mesh.nodes().size())
        throw std::invalid_argument("node table must have one value per mesh node");
    return [nodes = mesh.nodes(), values = std::move(values)](double x) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i] == x) return values[i];
        }
        throw std::invalid_argument("tabulated coefficient evaluated off its mesh");
    };
}

ModelAProblem preset_a(std::string_view name, const Scalars& overrides) {
    const std::string key = detail::to_lower(name);

    Scalars scalars;
    bool immortal = false;
    bool proportional = false;
    if (key == "a1") {
        scalars = {{"d", 1.0}, {"beta", 1.0}, {"l", 1.0}};
        scalars = detail::merge_overrides(scalars, overrides, {"d", "beta", "l"}, "A1");
        immortal = true;
    } else if (key == "a2") {
        scalars = {{"d", 1.0}, {"beta", 1.5}, {"mu", 1.0}, {"l", 1.0}};
        scalars = detail::merge_overrides(scalars, overrides, {"d", "beta", "mu", "l"}, "A2");
        proportional = true;
    } else if (key == "a3.1" || key == "a3.2" || key == "a3.3") {
        const double d = key == "a3.1" ? 1.0 : (key == "a3.2" ? 1e-6 : 0.0);
        scalars = {{"d", d}, {"beta", 10.0}, {"mu", 1.0}, {"l", 1.0}};
        scalars = detail::merge_overrides(scalars, overrides, {"d", "beta", "mu", "l"}, name);
    } else {
        throw std::invalid_argument("unknown model A preset '" + std::string(name) +
                                    "' (expected A1, A2, A3.1, A3.2 or A3.3)");
    }

    const double l = scalars.at("l");
    const double d = scalars.at("d");
    const double beta = scalars.at("beta");
    const double mu = immortal ? 0.0 : scalars.at("mu");
    if (!(l > 0.0)) throw std::invalid_argument("l must be positive");
    if (d < 0.0) throw std::invalid_argument("diffusion scale D must be >= 0");
    if (beta < 0.0 || mu < 0.0)
        throw std::invalid_argument("fertility and mortality scales must be >= 0");
    if (beta == 0.0 && mu == 0.0)
        throw std::invalid_argument("fertility and mortality cannot both vanish");

    ModelAProblem p;
    p.preset = key == "a1" ? "A1" : key == "a2" ? "A2" : "A3." + key.substr(3);
    p.length = l;
    p.scalars = scalars;
    p.velocity = [l](double x) { return l - x; };
    p.diffusion = [l, d](double x) { return d * (4.0 * x * (l - x) / (l * l) + 1.0); };
    p.mortality = [l, mu](double x) { return mu * x / l; };
    if (proportional) {
        p.fertility = [l, mu, beta](double x) { return beta * mu * x / l; };
    } else {
        p.fertility = [l, beta](double x) {
            return beta * (27.0 / (2.0 * l * l * l) * x * x * (l - x) + 1.0);
        };
    }
    return p;
}

OperatorPair assemble_a(const ModelAProblem& problem, const CollocationMesh& mesh) {
    const int n = mesh.degree();
    if (n < 2)
        throw std::invalid_argument("model A needs N >= 2 (at least one interior node)");
    if (std::abs(mesh.length() - problem.length) > 1e-14 * problem.length)
        throw std::invalid_argument("mesh interval does not match the problem domain");
    if (!problem.velocity || !problem.diffusion || !problem.fertility || !problem.mortality)
        throw std::invalid_argument("model A problem has an undefined coefficient");

    const Eigen::Index size = n + 1;
    Vector c(size), d(size), beta(size), sigma(size);
    for (int i = 0; i <= n; ++i) {
        const double x = mesh.node(i);
        c[i] = problem.velocity(x);
        d[i] = problem.diffusion(x);
        beta[i] = problem.fertility(x);
        sigma[i] = beta[i] + problem.mortality(x);
        if (!std::isfinite(c[i]) || !std::isfinite(d[i]) || !std::isfinite(sigma[i]))
            throw std::invalid_argument("model A coefficient is not finite at x = " +
                                        std::to_string(x));
        if (d[i] < 0.0 || beta[i] < 0.0 || sigma[i] < beta[i])
            throw std::invalid_argument("diffusion, fertility and mortality must be >= 0");
        if (i > 0 && i < n && !(c[i] > 0.0))
            throw std::invalid_argument("velocity must be positive inside (0, l)");
    }
    if (sigma.maxCoeff() == 0.0)
        throw std::invalid_argument("fertility + mortality vanishes at every node");
    const bool no_diffusion = d.cwiseAbs().maxCoeff() == 0.0;

    const Matrix& h = mesh.diffmat();
    // Flux operator phi -> c phi - D phi'.
    Matrix flux = -(d.asDiagonal() * h);
    flux.diagonal() += c;
    Matrix m = h * flux;
    m.diagonal() += sigma;

    Matrix b = Matrix::Zero(size, size);
    for (int i = 1; i < n; ++i) b(i, i) = 2.0 * beta[i];

    m.row(0) = flux.row(0);
    if (no_diffusion) {
        b(n, n) = 2.0 * beta[n];
    } else {
        m.row(n) = flux.row(n);
    }

    OperatorPair pair;
    pair.birth = std::move(b);
    pair.mortality = std::move(m);
    pair.degree = n;
    pair.length = mesh.length();
    pair.active_indices.resize(static_cast<std::size_t>(size));
    for (int i = 0; i <= n; ++i) pair.active_indices[static_cast<std::size_t>(i)] = i;
    pair.active_nodes = mesh.nodes();
    return pair;
}

}  // namespace r0colloc
