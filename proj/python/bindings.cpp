#include "r0colloc/analysis.hpp"
#include "r0colloc/errors.hpp"
#include "r0colloc/model_b.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace r0colloc;

namespace {

R0Result solve(const std::string& preset, int n, const Scalars& overrides, const std::string& method) {
    const Problem p = make_preset(preset, overrides);
    return spectral_radius(assemble(p, CollocationMesh(n, domain_length(p))), parse_solver_path(method));
}

const ModelBProblem& as_model_b(const Problem& p) {
    const auto* b = std::get_if<ModelBProblem>(&p);
    if (!b) throw std::invalid_argument("preset '" + preset_name(p) + "' is not a model B preset");
    return *b;
}

}  // namespace

PYBIND11_MODULE(_r0colloc, m) {
    m.doc() = "Basic reproduction numbers of structured population models by Chebyshev collocation";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("chebyshev_nodes", &chebyshev_nodes, py::arg("degree"), py::arg("length") = 1.0);
    m.def("clenshaw_curtis_weights", &clenshaw_curtis_weights, py::arg("degree"), py::arg("length") = 1.0);
    m.def("differentiation_matrix",
          [](const std::vector<double>& nodes) { return differentiation_matrix(nodes); }, py::arg("nodes"));
    m.def(
        "barycentric_interpolate",
        [](const std::vector<double>& nodes, const std::vector<double>& values,
           const std::vector<double>& queries) { return barycentric_interpolate(nodes, values, queries); },
        py::arg("nodes"), py::arg("values"), py::arg("queries"));

    m.def(
        "assemble",
        [](const std::string& preset, int n, const Scalars& overrides) {
            const Problem p = make_preset(preset, overrides);
            const OperatorPair pair = assemble(p, CollocationMesh(n, domain_length(p)));
            return py::make_tuple(pair.birth, pair.mortality, pair.active_nodes);
        },
        py::arg("preset"), py::arg("n"), py::arg("overrides") = Scalars{},
        "Return (B, M, active_nodes) for a preset at degree n.");

    m.def(
        "compute",
        [](const std::string& preset, int n, const Scalars& overrides, const std::string& method) {
            const R0Result r = solve(preset, n, overrides, method);
            py::dict d;
            d["r0"] = r.r0;
            d["residual"] = r.residual;
            d["method"] = std::string(to_string(r.method));
            d["dominant_is_real"] = r.dominant_is_real;
            d["condition_estimate"] = r.condition_estimate;
            d["eigvec"] = r.eigvec ? py::cast(*r.eigvec) : py::none();
            d["spectrum"] = r.spectrum;
            return d;
        },
        py::arg("preset"), py::arg("n"), py::arg("overrides") = Scalars{}, py::arg("method") = "ngo");

    m.def(
        "eigenfunction",
        [](const std::string& preset, int n, const std::vector<double>& x, const Scalars& overrides,
           const std::string& method) {
            const Problem p = make_preset(preset, overrides);
            const CollocationMesh mesh(n, domain_length(p));
            const R0Result r = spectral_radius(assemble(p, mesh), parse_solver_path(method));
            return eigenfunction(r, mesh, x);
        },
        py::arg("preset"), py::arg("n"), py::arg("x"), py::arg("overrides") = Scalars{},
        py::arg("method") = "ngo");

    m.def(
        "exact_r0",
        [](const std::string& preset, const Scalars& overrides) { return exact_r0(make_preset(preset, overrides)); },
        py::arg("preset"), py::arg("overrides") = Scalars{});

    m.def(
        "reference",
        [](const std::string& preset, int nbar, const Scalars& overrides) {
            return reference_value(make_preset(preset, overrides), nbar).value;
        },
        py::arg("preset"), py::arg("nbar") = kDefaultReferenceDegree, py::arg("overrides") = Scalars{});

    m.def(
        "converge",
        [](const std::string& preset, const std::vector<int>& degrees, const Scalars& overrides,
           std::optional<int> nbar, int points) {
            const Problem p = make_preset(preset, overrides);
            const Reference ref = nbar ? reference_value(p, *nbar) : auto_reference(p);
            const ConvergenceReport rep =
                converge(p, degrees, ref, exact_eigenfunction(p), ConvergenceOptions{points});
            py::dict d;
            d["degrees"] = rep.degrees;
            d["r0"] = rep.r0_values;
            d["err_r0"] = rep.r0_errors;
            d["err_phi"] = rep.eigfun_errors;
            d["reference"] = rep.reference.value;
            d["notes"] = rep.notes;
            return d;
        },
        py::arg("preset"), py::arg("degrees"), py::arg("overrides") = Scalars{},
        py::arg("nbar") = std::nullopt, py::arg("points") = kDefaultEvalPoints);

    m.def(
        "estimate_order",
        [](const std::vector<int>& degrees, const std::vector<double>& errors) {
            return estimate_order(degrees, errors);
        },
        py::arg("degrees"), py::arg("errors"));

    m.def(
        "sweep",
        [](const std::string& preset, const std::vector<std::string>& vary, int n, const Scalars& overrides,
           const std::string& method) {
            std::vector<ParameterRange> ranges;
            for (const auto& v : vary) ranges.push_back(parse_parameter_range(v));
            SweepResult res;
            {
                py::gil_scoped_release release;
                res = sweep(preset, overrides, ranges, n, SweepOptions{parse_solver_path(method), 0});
            }
            py::dict d;
            d["names"] = res.names;
            d["grids"] = res.grids;
            d["r0"] = res.r0_values;
            d["failures"] = res.failures;
            return d;
        },
        py::arg("preset"), py::arg("vary"), py::arg("n"), py::arg("overrides") = Scalars{},
        py::arg("method") = "ngo", "Ranges are 'key=lo:hi:P[:log]'; r0 is row-major over the grid.");

    m.def(
        "upper_bound",
        [](const std::string& preset, int n, const Scalars& overrides) {
            const Problem p = make_preset(preset, overrides);
            if (!is_model_b(p)) return 2.0;
            return upper_bound_b(as_model_b(p), CollocationMesh(n, domain_length(p)));
        },
        py::arg("preset"), py::arg("n") = 400, py::arg("overrides") = Scalars{});

    m.def(
        "ngo_apply",
        [](const std::string& preset, int n, const std::function<double(double)>& psi,
           const Scalars& overrides) {
            const Problem p = make_preset(preset, overrides);
            return ngo_apply_explicit(as_model_b(p), psi, CollocationMesh(n, domain_length(p)));
        },
        py::arg("preset"), py::arg("n"), py::arg("psi"), py::arg("overrides") = Scalars{},
        "Explicit next-generation operator applied to psi, sampled at the active nodes.");
}
