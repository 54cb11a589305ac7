#include "r0colloc/model_b.hpp"

#include "r0colloc/errors.hpp"
#include "scalars.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace r0colloc {

namespace {

// Degree of the Clenshaw-Curtis rule used for preset normalizing constants.
constexpr int kNormalizationDegree = 2000;

double integrate(const Coefficient& f, double l) {
    return clenshaw_curtis_integral(f, 0.0, l, kNormalizationDegree);
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("vertical transmission theta must lie in [0, 1]");
}

ModelBProblem make_b1(const Scalars& overrides) {
    Scalars s = {{"k", 52.0},    {"mu", 28.0},        {"gamma", 1.0},
                 {"delta", 1.0}, {"theta", 1.0 / 7.0}, {"l", 1.0}};
    s = detail::merge_overrides(s, overrides, {"k", "mu", "gamma", "delta", "theta", "l"}, "B1");
    const double k = s.at("k"), mu = s.at("mu"), l = s.at("l");
    const double rate = s.at("gamma") + s.at("delta");
    if (!(l > 0.0)) throw std::invalid_argument("l must be positive");
    if (k < 0.0 || !(mu > 0.0) || s.at("gamma") < 0.0 || s.at("delta") < 0.0)
        throw std::invalid_argument("B1 needs k >= 0, mu > 0, gamma >= 0, delta >= 0");
    check_theta(s.at("theta"));

    ModelBProblem p;
    p.preset = "B1";
    p.length = l;
    p.theta = s.at("theta");
    p.kernel = [k, mu](double, double y) { return k * mu * std::exp(-mu * y); };
    p.removal = [rate](double) { return rate; };
    p.fertility = [mu](double x) { return mu * std::exp(-mu * x); };
    p.survival = [rate](double x) { return std::exp(-rate * x); };
    p.scalars = std::move(s);
    return p;
}

ModelBProblem make_b2(std::string_view name, double alpha_default, const Scalars& overrides) {
    Scalars s = {{"k", 16065.0 / 64.0}, {"alpha", alpha_default}, {"l", 1.0}};
    s = detail::merge_overrides(s, overrides, {"k", "alpha", "l"}, name);
    const double k = s.at("k"), alpha = s.at("alpha"), l = s.at("l");
    if (!(l > 0.0)) throw std::invalid_argument("l must be positive");
    if (k < 0.0 || !(alpha > 0.0))
        throw std::invalid_argument("B2 needs k >= 0 and alpha > 0");

    // int_0^l ((l - x)/l)^alpha dx = l / (alpha + 1).
    const double pi0_integral = l / (alpha + 1.0);

    ModelBProblem p;
    p.preset = std::string(name);
    p.length = l;
    p.theta = 0.0;
    p.kernel = [k, alpha, l, pi0_integral](double x, double y) {
        const double pi0 = y >= l ? 0.0 : std::pow((l - y) / l, alpha);
        return k * x * x * (l - x) * (l - x) * pi0 / pi0_integral;
    };
    p.removal = [l](double x) {
        return x >= l ? std::numeric_limits<double>::infinity() : 1.0 / (l - x);
    };
    p.survival = [l](double x) { return x >= l ? 0.0 : (l - x) / l; };
    p.exclude_last_node = true;
    p.scalars = std::move(s);
    return p;
}

ModelBProblem make_b3(const Scalars& overrides) {
    Scalars s = {{"k", 25.0},    {"alpha", 0.1}, {"gamma", 1.0},
                 {"delta", 1.0}, {"theta", 0.5}, {"l", 1.0}};
    const bool l0_given = overrides.count("l0") > 0 || overrides.count("L0") > 0;
    s = detail::merge_overrides(s, overrides,
                                {"k", "alpha", "gamma", "delta", "theta", "l0", "l"}, "B3");
    const double l = s.at("l");
    if (!(l > 0.0)) throw std::invalid_argument("l must be positive");
    if (!l0_given) s["l0"] = 0.1 * l;
    const double k = s.at("k"), alpha = s.at("alpha"), l0 = s.at("l0");
    const double rate = s.at("gamma") + s.at("delta");
    if (k < 0.0 || alpha < 0.0 || !(l0 > 0.0) || s.at("gamma") < 0.0 || s.at("delta") < 0.0)
        throw std::invalid_argument(
            "B3 needs k >= 0, alpha >= 0, l0 > 0, gamma >= 0, delta >= 0");
    check_theta(s.at("theta"));

    const Coefficient pi0 = [alpha, l](double x) {
        if (alpha == 0.0) return 1.0;
        return x >= l ? 0.0 : std::exp(-alpha * x / (l - x));
    };
    const Coefficient b_pi0 = [pi0, l](double x) {
        const double r = x / l;
        return r * r * std::exp(-6.0 * r) * pi0(x);
    };
    const double pi0_integral = integrate(pi0, l);
    const double b_pi0_integral = integrate(b_pi0, l);

    ModelBProblem p;
    p.preset = "B3";
    p.length = l;
    p.theta = s.at("theta");
    p.kernel = [k, l0, pi0, pi0_integral](double x, double y) {
        const double r = (x - y) / l0;
        return k * std::exp(-r * r) * pi0(y) / pi0_integral;
    };
    p.removal = [rate](double) { return rate; };
    p.fertility = [b_pi0, b_pi0_integral](double x) { return b_pi0(x) / b_pi0_integral; };
    p.survival = [rate](double x) { return std::exp(-rate * x); };
    p.scalars = std::move(s);
    return p;
}

std::vector<double> take(const std::vector<double>& v, const std::vector<int>& idx) {
    std::vector<double> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(v[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace

ModelBProblem preset_b(std::string_view name, const Scalars& overrides) {
    const std::string key = detail::to_lower(name);
    if (key == "b1") return make_b1(overrides);
    if (key == "b2.1") return make_b2("B2.1", 0.25, overrides);
    if (key == "b2.2") return make_b2("B2.2", 1.0, overrides);
    if (key == "b3") return make_b3(overrides);
    throw std::invalid_argument("unknown model B preset '" + std::string(name) +
                                "' (expected B1, B2.1, B2.2 or B3)");
}

std::vector<int> active_indices(const ModelBProblem& problem, const CollocationMesh& mesh) {
    const int last = problem.exclude_last_node ? mesh.degree() - 1 : mesh.degree();
    std::vector<int> idx;
    for (int i = 0; i <= last; ++i) idx.push_back(i);
    return idx;
}

OperatorPair assemble_b(const ModelBProblem& problem, const CollocationMesh& mesh) {
    if (std::abs(mesh.length() - problem.length) > 1e-14 * problem.length)
        throw std::invalid_argument("mesh interval does not match the problem domain");
    if (!problem.kernel || !problem.removal)
        throw std::invalid_argument("model B problem has an undefined kernel or removal rate");
    check_theta(problem.theta);
    if (problem.theta > 0.0 && !problem.fertility)
        throw std::invalid_argument("theta > 0 requires a fertility function");

    const std::vector<int> idx = active_indices(problem, mesh);
    const auto size = static_cast<Eigen::Index>(idx.size());
    const Matrix& h = mesh.diffmat();
    const Vector& w = mesh.weights();

    Matrix b = Matrix::Zero(size, size);
    Matrix m = Matrix::Zero(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const int i = idx[static_cast<std::size_t>(r)];
        const double xi = mesh.node(i);
        if (i == 0) {
            for (Eigen::Index s = 0; s < size; ++s) {
                const int j = idx[static_cast<std::size_t>(s)];
                m(r, s) = (j == 0 ? 1.0 : 0.0);
                if (problem.theta > 0.0)
                    m(r, s) -= problem.theta * w[j] * problem.fertility(mesh.node(j));
            }
            continue;
        }
        const double rate = problem.removal(xi);
        if (!std::isfinite(rate))
            throw NumericalError("removal rate gamma + delta is not finite at retained node x = " +
                                 std::to_string(xi));
        for (Eigen::Index s = 0; s < size; ++s) {
            const int j = idx[static_cast<std::size_t>(s)];
            b(r, s) = w[j] * problem.kernel(xi, mesh.node(j));
            m(r, s) = h(i, j);
        }
        m(r, r) += rate;
    }
    if (!b.allFinite() || !m.allFinite())
        throw NumericalError("model B matrices contain non-finite entries");

    OperatorPair pair;
    pair.birth = std::move(b);
    pair.mortality = std::move(m);
    pair.degree = mesh.degree();
    pair.length = mesh.length();
    pair.active_nodes = take(mesh.nodes(), idx);
    pair.active_indices = idx;
    return pair;
}

Vector ngo_apply_explicit(const ModelBProblem& problem, const Coefficient& psi,
                          const CollocationMesh& mesh, int fine_degree) {
    if (!problem.survival)
        throw std::invalid_argument("explicit next-generation operator needs Pi_1 in closed form");
    if (!problem.kernel) throw std::invalid_argument("model B problem has no kernel");
    if (problem.theta > 0.0 && !problem.fertility)
        throw std::invalid_argument("theta > 0 requires a fertility function");

    const double l = problem.length;
    const std::vector<double> y = chebyshev_nodes(fine_degree, l);
    const Vector v = clenshaw_curtis_weights(fine_degree, l);
    const std::vector<double> unit_nodes = chebyshev_nodes(fine_degree, 1.0);
    const Vector unit_weights = clenshaw_curtis_weights(fine_degree, 1.0);

    const auto f = static_cast<std::size_t>(fine_degree) + 1;
    std::vector<double> pi1(f), inner(f);
    for (std::size_t k = 0; k < f; ++k) pi1[k] = problem.survival(y[k]);
    for (std::size_t k = 0; k < f; ++k) {
        // inner[k] = int_0^{y_k} Pi_1(y_k)/Pi_1(z) psi(z) dz; vanishes where Pi_1(y_k) = 0.
        if (y[k] == 0.0 || pi1[k] == 0.0) {
            inner[k] = 0.0;
            continue;
        }
        double sum = 0.0;
        for (std::size_t q = 0; q < f; ++q) {
            const double z = y[k] * unit_nodes[q];
            const double ratio = q + 1 == f ? 1.0 : pi1[k] / problem.survival(z);
            sum += unit_weights[static_cast<Eigen::Index>(q)] * ratio * psi(z);
        }
        inner[k] = y[k] * sum;
    }

    double constant = 0.0;
    if (problem.theta > 0.0) {
        double beta_inner = 0.0;
        double beta_pi1 = 0.0;
        for (std::size_t k = 0; k < f; ++k) {
            const double beta = problem.fertility(y[k]);
            beta_inner += v[static_cast<Eigen::Index>(k)] * beta * inner[k];
            beta_pi1 += v[static_cast<Eigen::Index>(k)] * beta * pi1[k];
        }
        const double denom = 1.0 - problem.theta * beta_pi1;
        if (!(denom > 0.0))
            throw std::invalid_argument("1 - theta int beta Pi_1 must be positive");
        constant = problem.theta * beta_inner / denom;
    }

    const std::vector<int> idx = active_indices(problem, mesh);
    Vector out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double x = mesh.node(idx[r]);
        double sum = 0.0;
        for (std::size_t k = 0; k < f; ++k) {
            sum += v[static_cast<Eigen::Index>(k)] * problem.kernel(x, y[k]) *
                   (pi1[k] * constant + inner[k]);
        }
        out[static_cast<Eigen::Index>(r)] = sum;
    }
    return out;
}

Vector ngo_apply_explicit(const ModelBProblem& problem, std::span<const double> psi_samples,
                          const CollocationMesh& mesh, int fine_degree) {
    const std::vector<double> nodes = take(mesh.nodes(), active_indices(problem, mesh));
    if (psi_samples.size() != nodes.size())
        throw std::invalid_argument("psi samples must match the active nodes");
    const std::vector<double> bary = barycentric_weights(nodes);
    const std::vector<double> values(psi_samples.begin(), psi_samples.end());
    const Coefficient psi = [&nodes, &bary, &values](double x) {
        const double q[1] = {x};
        return barycentric_interpolate(nodes, bary, values, q)[0];
    };
    return ngo_apply_explicit(problem, psi, mesh, fine_degree);
}

double upper_bound_b(const ModelBProblem& problem, const CollocationMesh& mesh) {
    if (!problem.kernel) throw std::invalid_argument("model B problem has no kernel");
    const int n = mesh.degree();
    const Vector& w = mesh.weights();

    Vector factor = Vector::Ones(n + 1);
    if (problem.theta > 0.0) {
        if (!problem.survival || !problem.fertility)
            throw std::invalid_argument("theta > 0 bound needs Pi_1 and beta");
        Vector pi1(n + 1);
        double beta_pi1 = 0.0;
        for (int j = 0; j <= n; ++j) {
            pi1[j] = problem.survival(mesh.node(j));
            beta_pi1 += w[j] * problem.fertility(mesh.node(j)) * pi1[j];
        }
        const double denom = 1.0 - problem.theta * beta_pi1;
        if (!(denom > 0.0))
            throw std::invalid_argument("1 - theta int beta Pi_1 must be positive");
        factor += (problem.theta / denom) * pi1;
    }

    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        double row = 0.0;
        for (int j = 0; j <= n; ++j) row += w[j] * problem.kernel(mesh.node(i), mesh.node(j)) * factor[j];
        total += w[i] * row;
    }
    return total;
}

}  // namespace r0colloc
