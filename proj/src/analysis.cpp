#include "r0colloc/analysis.hpp"

#include "scalars.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <variant>

namespace r0colloc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_double(std::string_view s, std::string_view what) {
    std::string buf(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(buf, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != buf.size())
        throw std::invalid_argument("cannot parse " + std::string(what) + " '" + buf + "'");
    return v;
}

}  // namespace

Reference reference_value(const Problem& problem, int nbar, SolverPath method) {
    if (nbar < 2) throw std::invalid_argument("reference degree N-bar must be >= 2");
    const CollocationMesh mesh(nbar, domain_length(problem));
    const R0Result res = spectral_radius(assemble(problem, mesh), method);
    return Reference{res.r0, Reference::Provenance::Computed, nbar};
}

Reference auto_reference(const Problem& problem, int nbar, SolverPath method) {
    if (const auto exact = exact_r0(problem)) return Reference{*exact, Reference::Provenance::Exact, 0};
    return reference_value(problem, nbar, method);
}

ConvergenceReport converge(const Problem& problem, std::span<const int> degrees,
                           const Reference& reference,
                           const std::optional<ExactEigenfunction>& exact_phi,
                           const ConvergenceOptions& options) {
    if (!std::is_sorted(degrees.begin(), degrees.end()))
        throw std::invalid_argument("degree list must be ascending");
    if (exact_phi && options.eval_points < 2)
        throw std::invalid_argument("evaluation mesh needs at least 2 points");

    ConvergenceReport report;
    report.reference = reference;
    report.eval_points = options.eval_points;
    report.degrees.assign(degrees.begin(), degrees.end());

    const double l = domain_length(problem);
    std::vector<double> eval_x;
    std::vector<double> exact_values;
    if (exact_phi) {
        eval_x.resize(static_cast<std::size_t>(options.eval_points));
        exact_values.resize(eval_x.size());
        for (std::size_t k = 0; k < eval_x.size(); ++k) {
            eval_x[k] = l * static_cast<double>(k) / static_cast<double>(eval_x.size() - 1);
            exact_values[k] = exact_phi->phi(eval_x[k]);
        }
    }
    const double anchor_value = exact_phi ? exact_phi->phi(exact_phi->anchor) : 0.0;

    for (int n : degrees) {
        double r0 = kNaN, err = kNaN, phi_err = kNaN;
        std::string note;
        try {
            const CollocationMesh mesh(n, l);
            const R0Result res = spectral_radius(assemble(problem, mesh), options.method);
            r0 = res.r0;
            err = std::abs(res.r0 - reference.value);
            if (exact_phi) {
                if (!res.dominant_is_real || !res.eigvec) {
                    note = "dominant eigenvalue is complex; eigenfunction error skipped";
                } else {
                    const auto p = eigenfunction(res, mesh, eval_x,
                                                 Anchor{exact_phi->anchor, anchor_value});
                    phi_err = 0.0;
                    for (std::size_t k = 0; k < p.size(); ++k)
                        phi_err = std::max(phi_err, std::abs(p[k] - exact_values[k]));
                }
            }
        } catch (const std::exception& e) {
            note = e.what();
        }
        report.r0_values.push_back(r0);
        report.r0_errors.push_back(err);
        if (exact_phi) report.eigfun_errors.push_back(phi_err);
        report.notes.push_back(std::move(note));
    }
    return report;
}

double estimate_order(std::span<const int> degrees, std::span<const double> errors) {
    if (degrees.size() != errors.size())
        throw std::invalid_argument("degrees and errors must have equal length");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (!(errors[i] > 0.0) || !std::isfinite(errors[i]) || degrees[i] <= 0) continue;
        const double x = std::log(static_cast<double>(degrees[i]));
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 3)
        throw std::invalid_argument("order estimate needs at least 3 nonzero errors in the window");
    const double denom = count * sxx - sx * sx;
    if (!(denom > 0.0)) throw std::invalid_argument("order estimate needs distinct degrees");
    return -(count * sxy - sx * sy) / denom;
}

double estimate_order(const ConvergenceReport& report, int lo, int hi) {
    std::vector<int> n;
    std::vector<double> e;
    for (std::size_t i = 0; i < report.degrees.size(); ++i) {
        if (report.degrees[i] < lo || report.degrees[i] > hi) continue;
        n.push_back(report.degrees[i]);
        e.push_back(report.r0_errors[i]);
    }
    return estimate_order(n, e);
}

std::vector<double> ParameterRange::grid() const {
    if (points < 2) throw std::invalid_argument("a parameter range needs P >= 2 points");
    if (log_spaced && !(lo > 0.0 && hi > 0.0))
        throw std::invalid_argument("log-spaced range needs positive endpoints");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        g[static_cast<std::size_t>(i)] =
            log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                       : lo + t * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

ParameterRange parse_parameter_range(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw std::invalid_argument("range must look like key=lo:hi:P[:log], got '" +
                                    std::string(text) + "'");
    ParameterRange r;
    r.name = detail::to_lower(text.substr(0, eq));
    std::vector<std::string_view> parts;
    std::string_view rest = text.substr(eq + 1);
    while (true) {
        const auto c = rest.find(':');
        parts.push_back(rest.substr(0, c));
        if (c == std::string_view::npos) break;
        rest = rest.substr(c + 1);
    }
    if (parts.size() != 3 && parts.size() != 4)
        throw std::invalid_argument("range must look like key=lo:hi:P[:log], got '" +
                                    std::string(text) + "'");
    r.lo = parse_double(parts[0], "range start");
    r.hi = parse_double(parts[1], "range end");
    int p = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), p);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size())
        throw std::invalid_argument("cannot parse point count '" + std::string(parts[2]) + "'");
    r.points = p;
    if (parts.size() == 4) {
        if (detail::to_lower(parts[3]) != "log")
            throw std::invalid_argument("range spacing must be 'log', got '" +
                                        std::string(parts[3]) + "'");
        r.log_spaced = true;
    }
    if (r.points < 2) throw std::invalid_argument("a parameter range needs P >= 2 points");
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw std::invalid_argument("range endpoints must be finite");
    return r;
}

double SweepResult::at(std::size_t i, std::size_t j) const {
    const std::size_t cols = grids.size() > 1 ? grids[1].size() : 1;
    return r0_values.at(i * cols + j);
}

SweepResult sweep(std::string_view preset, const Scalars& base_overrides,
                  std::span<const ParameterRange> vary, int degree,
                  const SweepOptions& options) {
    if (vary.empty() || vary.size() > 2)
        throw std::invalid_argument("a sweep varies one or two parameters");
    if (degree < 1) throw std::invalid_argument("sweep degree N must be >= 1");

    SweepResult out;
    out.degree = degree;
    for (const auto& r : vary) {
        out.names.push_back(r.name);
        out.grids.push_back(r.grid());
    }
    const std::size_t rows = out.grids[0].size();
    const std::size_t cols = vary.size() > 1 ? out.grids[1].size() : 1;
    const std::size_t total = rows * cols;
    out.r0_values.assign(total, kNaN);

    // Parameter names are validated once, before the grid.
    {
        const Problem base = make_preset(preset, base_overrides);
        const Scalars& known = std::visit([](const auto& p) -> const Scalars& { return p.scalars; }, base);
        for (const auto& r : vary) {
            if (known.count(detail::to_lower(r.name)) == 0)
                throw std::invalid_argument("unknown parameter '" + r.name + "' for preset " +
                                            preset_name(base));
        }
        if (vary.size() == 2 && detail::to_lower(vary[0].name) == detail::to_lower(vary[1].name))
            throw std::invalid_argument("a 2D sweep needs two distinct parameters");
    }

    std::vector<char> failed(total, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            try {
                Scalars s = base_overrides;
                s[vary[0].name] = out.grids[0][idx / cols];
                if (vary.size() > 1) s[vary[1].name] = out.grids[1][idx % cols];
                const Problem problem = make_preset(preset, s);
                const CollocationMesh mesh(degree, domain_length(problem));
                out.r0_values[idx] = spectral_radius(assemble(problem, mesh), options.method).r0;
            } catch (const std::exception&) {
                failed[idx] = 1;
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (std::size_t i = 0; i < total; ++i) {
        if (failed[i]) out.failures.push_back(i);
    }
    return out;
}

}  // namespace r0colloc
