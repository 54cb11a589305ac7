#include "r0colloc/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace r0colloc {

Problem make_preset(std::string_view name, const Scalars& overrides) {
    if (!name.empty() && (name[0] == 'A' || name[0] == 'a')) return preset_a(name, overrides);
    if (!name.empty() && (name[0] == 'B' || name[0] == 'b')) return preset_b(name, overrides);
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected A1, A2, A3.1, A3.2, A3.3, B1, B2.1, B2.2 or B3)");
}

bool is_model_b(const Problem& problem) {
    return std::holds_alternative<ModelBProblem>(problem);
}

const std::string& preset_name(const Problem& problem) {
    return std::visit([](const auto& p) -> const std::string& { return p.preset; }, problem);
}

double domain_length(const Problem& problem) {
    return std::visit([](const auto& p) { return p.length; }, problem);
}

OperatorPair assemble(const Problem& problem, const CollocationMesh& mesh) {
    if (const auto* a = std::get_if<ModelAProblem>(&problem)) return assemble_a(*a, mesh);
    return assemble_b(std::get<ModelBProblem>(problem), mesh);
}

namespace {

// B1 with constant removal rate rho: psi is constant, phi' + rho phi = 1 and
// phi(0) = theta int beta phi give phi in closed form.
struct B1Solution {
    double phi0, rho;
};

std::optional<B1Solution> b1_solution(const ModelBProblem& p) {
    const double mu = p.scalars.at("mu");
    const double rho = p.scalars.at("gamma") + p.scalars.at("delta");
    const double l = p.length;
    if (!(rho > 0.0)) return std::nullopt;
    const double a = mu / (mu + rho) * (-std::expm1(-(mu + rho) * l));
    const double b = -std::expm1(-mu * l);
    return B1Solution{p.theta * (b - a) / (rho * (1.0 - p.theta * a)), rho};
}

}  // namespace

std::optional<double> exact_r0(const Problem& problem) {
    if (const auto* a = std::get_if<ModelAProblem>(&problem)) {
        if (a->scalars.count("d") == 0 || !(a->scalars.at("d") > 0.0)) return std::nullopt;
        if (a->preset == "A1") return 2.0;
        if (a->preset == "A2") {
            const double beta = a->scalars.at("beta");
            return 2.0 * beta / (beta + 1.0);
        }
        return std::nullopt;
    }
    const auto& b = std::get<ModelBProblem>(problem);
    if (b.preset == "B2.1" || b.preset == "B2.2") {
        const double k = b.scalars.at("k"), alpha = b.scalars.at("alpha"), l = b.length;
        return 2.0 * k * (alpha + 1.0) * std::pow(l, 5) /
               ((alpha + 2.0) * (alpha + 4.0) * (alpha + 5.0) * (alpha + 6.0));
    }
    if (b.preset == "B1") {
        const auto sol = b1_solution(b);
        if (!sol) return std::nullopt;
        const double k = b.scalars.at("k"), mu = b.scalars.at("mu"), l = b.length;
        const double rho = sol->rho;
        return k * mu *
               ((sol->phi0 - 1.0 / rho) * (-std::expm1(-(mu + rho) * l)) / (mu + rho) +
                (-std::expm1(-mu * l)) / (rho * mu));
    }
    return std::nullopt;
}

std::optional<ExactEigenfunction> exact_eigenfunction(const Problem& problem) {
    if (const auto* a = std::get_if<ModelAProblem>(&problem)) {
        if (a->preset != "A1" && a->preset != "A2") return std::nullopt;
        if (!(a->scalars.at("d") > 0.0)) return std::nullopt;
        // int_0^x c/D by a degree-64 Clenshaw-Curtis rule.
        const Coefficient c = a->velocity;
        const Coefficient d = a->diffusion;
        return ExactEigenfunction{
            [c, d](double x) {
                return std::exp(clenshaw_curtis_integral(
                    [&](double y) { return c(y) / d(y); }, 0.0, x, 64));
            },
            0.0};
    }
    const auto& b = std::get<ModelBProblem>(problem);
    if (b.preset == "B2.1" || b.preset == "B2.2") {
        const double l = b.length;
        return ExactEigenfunction{
            [l](double x) { return x * x * x * (l - x) * (4.0 * l - 3.0 * x) / 12.0; }, 0.5 * l};
    }
    if (b.preset == "B1") {
        const auto sol = b1_solution(b);
        if (!sol) return std::nullopt;
        const double phi0 = sol->phi0, rho = sol->rho;
        return ExactEigenfunction{
            [phi0, rho](double x) { return std::exp(-rho * x) * (phi0 - 1.0 / rho) + 1.0 / rho; },
            b.length};
    }
    return std::nullopt;
}

}  // namespace r0colloc
