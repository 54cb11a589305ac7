#include "r0colloc/cli.hpp"

#include "r0colloc/errors.hpp"
#include "scalars.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

namespace r0colloc::cli {

namespace {

using json = nlohmann::json;

struct HelpRequested {
    std::string text;
};

int parse_int(std::string_view s, std::string_view what) {
    std::string buf(s);
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(buf, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != buf.size())
        throw std::invalid_argument("cannot parse " + std::string(what) + " '" + buf + "'");
    return v;
}

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

Command parse_command(std::string_view name) {
    const std::string n = detail::to_lower(name);
    if (n == "compute") return Command::Compute;
    if (n == "converge") return Command::Converge;
    if (n == "sweep") return Command::Sweep;
    if (n == "eigenfunction") return Command::Eigenfunction;
    if (n == "bound") return Command::Bound;
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
    const std::string n = detail::to_lower(name);
    if (n == "json") return Format::Json;
    if (n == "csv") return Format::Csv;
    throw std::invalid_argument("unknown output format '" + std::string(name) +
                                "' (expected json or csv)");
}

void add_override(Scalars& scalars, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw std::invalid_argument("--set expects key=value, got '" + std::string(assignment) + "'");
    scalars[detail::to_lower(assignment.substr(0, eq))] =
        parse_double(assignment.substr(eq + 1), "value for " + std::string(assignment.substr(0, eq)));
}

// Flat document rows: ordered key/value pairs.
using Field = std::variant<double, long long, bool, std::string>;
using Row = std::vector<std::pair<std::string, Field>>;

std::string json_value(const Field& f) {
    if (const auto* d = std::get_if<double>(&f)) {
        return std::isfinite(*d) ? format_number(*d) : "null";
    }
    if (const auto* i = std::get_if<long long>(&f)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&f)) return *b ? "true" : "false";
    return json(std::get<std::string>(f)).dump();
}

std::string csv_value(const Field& f) {
    if (const auto* d = std::get_if<double>(&f)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&f)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&f)) return *b ? "true" : "false";
    return std::get<std::string>(f);
}

std::string json_object(const Row& row) {
    std::string s = "{";
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ", ";
        s += json(row[i].first).dump() + ": " + json_value(row[i].second);
    }
    return s + "}";
}

// Object documents (compute, bound).
std::string render_object(const Row& row, Format format) {
    if (format == Format::Json) return json_object(row) + "\n";
    std::string header, values;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) {
            header += ',';
            values += ',';
        }
        header += row[i].first;
        values += csv_value(row[i].second);
    }
    return header + "\n" + values + "\n";
}

// Table documents (converge, sweep, eigenfunction). Cells are preformatted for CSV.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Field>> rows;
};

std::string render_table(const Table& table, Format format) {
    std::string s;
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (i) s += ',';
            s += table.header[i];
        }
        s += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) s += ',';
                s += csv_value(row[i]);
            }
            s += '\n';
        }
        return s;
    }
    s = "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        Row obj;
        for (std::size_t i = 0; i < table.header.size(); ++i)
            obj.emplace_back(table.header[i], table.rows[r][i]);
        s += (r ? ",\n " : "\n ") + json_object(obj);
    }
    return s + "\n]\n";
}

std::string csv_optional(double v) { return std::isnan(v) ? std::string() : format_number(v); }

int require_degree(const RunConfig& config) {
    if (!config.degree) throw std::invalid_argument("this command needs --n");
    if (*config.degree < 1) throw std::invalid_argument("--n must be >= 1");
    return *config.degree;
}

std::string do_compute(const RunConfig& config, std::ostream& err) {
    const Problem problem = make_preset(config.preset, config.overrides);
    const int n = require_degree(config);
    const CollocationMesh mesh(n, domain_length(problem));
    const R0Result res = spectral_radius(assemble(problem, mesh), config.method);
    if (!res.dominant_is_real) err << "warning: dominant eigenvalue is complex\n";

    Row row = {{"preset", preset_name(problem)},
               {"N", static_cast<long long>(n)},
               {"r0", res.r0},
               {"residual", res.residual},
               {"method", std::string(to_string(res.method))},
               {"dominant_is_real", res.dominant_is_real}};
    if (const auto* b = std::get_if<ModelBProblem>(&problem))
        row.emplace_back("upper_bound", upper_bound_b(*b, mesh));
    return render_object(row, config.format.value_or(Format::Json));
}

std::string do_bound(const RunConfig& config) {
    const Problem problem = make_preset(config.preset, config.overrides);
    double bound = 2.0;  // symmetric division
    if (const auto* b = std::get_if<ModelBProblem>(&problem)) {
        const int n = config.degree.value_or(400);
        if (n < 1) throw std::invalid_argument("--n must be >= 1");
        bound = upper_bound_b(*b, CollocationMesh(n, b->length));
    }
    return render_object({{"preset", preset_name(problem)}, {"upper_bound", bound}},
                         config.format.value_or(Format::Json));
}

std::string do_converge(const RunConfig& config, std::ostream& err) {
    const Problem problem = make_preset(config.preset, config.overrides);
    if (config.degree_list.empty()) throw std::invalid_argument("converge needs --n-list");
    const Reference ref = config.nbar
                              ? reference_value(problem, *config.nbar, config.method)
                              : auto_reference(problem, kDefaultReferenceDegree, config.method);
    const ConvergenceReport rep = converge(problem, config.degree_list, ref,
                                           exact_eigenfunction(problem),
                                           ConvergenceOptions{config.points, config.method});
    Table t{{"N", "err_r0", "err_phi"}, {}};
    for (std::size_t i = 0; i < rep.degrees.size(); ++i) {
        const double phi = rep.eigfun_errors.empty() ? std::nan("") : rep.eigfun_errors[i];
        Field phi_field = config.format.value_or(Format::Csv) == Format::Csv
                              ? Field(csv_optional(phi))
                              : Field(phi);
        t.rows.push_back({static_cast<long long>(rep.degrees[i]), rep.r0_errors[i], phi_field});
        if (!rep.notes[i].empty()) err << "N=" << rep.degrees[i] << ": " << rep.notes[i] << "\n";
    }
    return render_table(t, config.format.value_or(Format::Csv));
}

std::string do_sweep(const RunConfig& config, std::ostream& err) {
    if (config.vary.empty() || config.vary.size() > 2)
        throw std::invalid_argument("sweep needs one or two --vary ranges");
    const int n = require_degree(config);
    const SweepResult res = sweep(config.preset, config.overrides, config.vary, n,
                                  SweepOptions{config.method, 0});
    Table t;
    for (const auto& name : res.names) t.header.push_back(name);
    t.header.push_back("r0");
    const std::size_t cols = res.grids.size() > 1 ? res.grids[1].size() : 1;
    for (std::size_t idx = 0; idx < res.size(); ++idx) {
        std::vector<Field> row{res.grids[0][idx / cols]};
        if (res.grids.size() > 1) row.emplace_back(res.grids[1][idx % cols]);
        row.emplace_back(res.r0_values[idx]);
        t.rows.push_back(std::move(row));
    }
    if (!res.failures.empty())
        err << "warning: " << res.failures.size() << " grid point(s) failed and are reported as nan\n";
    return render_table(t, config.format.value_or(Format::Csv));
}

std::string do_eigenfunction(const RunConfig& config) {
    const Problem problem = make_preset(config.preset, config.overrides);
    const int n = require_degree(config);
    if (config.points < 2) throw std::invalid_argument("--points must be >= 2");
    const double l = domain_length(problem);
    const CollocationMesh mesh(n, l);
    const R0Result res = spectral_radius(assemble(problem, mesh), config.method);
    if (!res.eigvec)
        throw NumericalError("dominant eigenvalue is complex; no real eigenfunction at N = " +
                             std::to_string(n));

    std::vector<double> xs(static_cast<std::size_t>(config.points));
    for (std::size_t k = 0; k < xs.size(); ++k)
        xs[k] = l * static_cast<double>(k) / static_cast<double>(xs.size() - 1);
    const std::vector<double> phi = eigenfunction(res, mesh, xs);

    std::vector<double> nodes;
    for (int i : res.active_indices) nodes.push_back(mesh.node(i));
    const Vector& psi_nodes = *res.psi;
    const std::vector<double> psi = barycentric_interpolate(
        nodes, std::vector<double>(psi_nodes.data(), psi_nodes.data() + psi_nodes.size()), xs);

    Table t{{"x", "phi", "psi"}, {}};
    for (std::size_t k = 0; k < xs.size(); ++k) t.rows.push_back({xs[k], phi[k], psi[k]});
    return render_table(t, config.format.value_or(Format::Csv));
}

void merge_config_file(RunConfig& cfg, const std::string& path, bool have_command,
                       const std::function<bool(const char*)>& given) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");

    const auto as_string = [](const json& v, const char* key) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number()) return v.dump();
        throw std::invalid_argument(std::string("config key '") + key + "' must be a string");
    };
    const auto as_int = [](const json& v, const char* key) {
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_string()) return parse_int(v.get<std::string>(), key);
        throw std::invalid_argument(std::string("config key '") + key + "' must be an integer");
    };

    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* known[] = {"command", "preset", "n",      "nbar",   "n-list", "set",
                                      "vary",    "method", "points", "format", "out"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return it.key() == k; }) == std::end(known))
            throw std::invalid_argument("unknown config key '" + it.key() + "'");
    }

    if (!have_command && j.contains("command")) cfg.command = parse_command(as_string(j["command"], "command"));
    if (!given("--preset") && j.contains("preset")) cfg.preset = as_string(j["preset"], "preset");
    if (!given("--n") && j.contains("n")) cfg.degree = as_int(j["n"], "n");
    if (!given("--nbar") && j.contains("nbar")) cfg.nbar = as_int(j["nbar"], "nbar");
    if (!given("--n-list") && j.contains("n-list")) {
        const json& v = j["n-list"];
        if (v.is_array()) {
            cfg.degree_list.clear();
            for (const auto& e : v) cfg.degree_list.push_back(as_int(e, "n-list"));
        } else {
            cfg.degree_list = parse_degree_list(as_string(v, "n-list"));
        }
    }
    if (j.contains("set")) {
        // File overrides first, flag overrides on top.
        Scalars merged;
        const json& v = j["set"];
        if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!it.value().is_number())
                    throw std::invalid_argument("config 'set' values must be numbers");
                merged[detail::to_lower(it.key())] = it.value().get<double>();
            }
        } else if (v.is_array()) {
            for (const auto& e : v) add_override(merged, as_string(e, "set"));
        } else {
            throw std::invalid_argument("config 'set' must be an object or an array");
        }
        for (const auto& [k, val] : cfg.overrides) merged[k] = val;
        cfg.overrides = std::move(merged);
    }
    if (!given("--vary") && j.contains("vary")) {
        const json& v = j["vary"];
        cfg.vary.clear();
        if (v.is_array()) {
            for (const auto& e : v) cfg.vary.push_back(parse_parameter_range(as_string(e, "vary")));
        } else {
            cfg.vary.push_back(parse_parameter_range(as_string(v, "vary")));
        }
    }
    if (!given("--method") && j.contains("method"))
        cfg.method = parse_solver_path(as_string(j["method"], "method"));
    if (!given("--points") && j.contains("points")) cfg.points = as_int(j["points"], "points");
    if (!given("--format") && j.contains("format")) cfg.format = parse_format(as_string(j["format"], "format"));
    if (!given("--out") && j.contains("out")) cfg.out = as_string(j["out"], "out");
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<int> parse_degree_list(std::string_view text) {
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    while (true) {
        const auto c = rest.find(':');
        parts.push_back(rest.substr(0, c));
        if (c == std::string_view::npos) break;
        rest = rest.substr(c + 1);
    }
    std::vector<int> out;
    if (parts.size() == 1) {
        // Comma-separated explicit list.
        std::string_view s = text;
        while (!s.empty()) {
            const auto c = s.find(',');
            out.push_back(parse_int(s.substr(0, c), "degree"));
            if (c == std::string_view::npos) break;
            s = s.substr(c + 1);
        }
    } else if (parts.size() == 3) {
        const int lo = parse_int(parts[0], "degree list start");
        const int step = parse_int(parts[1], "degree list step");
        const int hi = parse_int(parts[2], "degree list end");
        if (step <= 0 || hi < lo) throw std::invalid_argument("--n-list needs step > 0 and lo <= hi");
        for (int n = lo; n <= hi; n += step) out.push_back(n);
    } else {
        throw std::invalid_argument("--n-list expects lo:step:hi or a comma-separated list");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1) throw std::invalid_argument("degrees in --n-list must be >= 1");
        if (i && out[i] <= out[i - 1]) throw std::invalid_argument("--n-list must be ascending");
    }
    return out;
}

RunConfig parse_arguments(int argc, const char* const* argv) {
    CLI::App app{"Basic reproduction numbers of structured population models by Chebyshev "
                 "collocation",
                 "r0colloc"};
    app.require_subcommand(0, 1);

    std::string preset, n_list, method = "ngo", format, out, config_path;
    std::vector<std::string> sets, varies;
    int n = 0, nbar = 0, points = kDefaultEvalPoints;

    auto* o_preset = app.add_option("--preset", preset, "A1, A2, A3.1, A3.2, A3.3, B1, B2.1, B2.2, B3");
    auto* o_n = app.add_option("--n", n, "collocation degree N");
    auto* o_nbar = app.add_option("--nbar", nbar, "reference degree for converge (default: exact or 1000)");
    auto* o_nlist = app.add_option("--n-list", n_list, "degrees for converge, lo:step:hi");
    app.add_option("--set", sets, "override a preset scalar, key=value (repeatable)");
    auto* o_vary = app.add_option("--vary", varies, "sweep range key=lo:hi:P[:log] (repeatable, at most 2)");
    auto* o_method = app.add_option("--method", method, "eigen path: ngo (B M^-1) or left (M^-1 B)");
    auto* o_points = app.add_option("--points", points, "evaluation points M");
    auto* o_format = app.add_option("--format", format, "json or csv");
    auto* o_out = app.add_option("--out", out, "output file (default: stdout)");
    app.add_option("--config", config_path, "JSON file with the same keys as the flags");

    const char* names[] = {"compute", "converge", "sweep", "eigenfunction", "bound"};
    const char* help[] = {"R0 at one degree", "error table over --n-list",
                          "R0 over a 1D or 2D parameter grid",
                          "dominant eigenfunction on --points equidistant points",
                          "upper bound on R0"};
    std::vector<CLI::App*> subs;
    for (int i = 0; i < 5; ++i) {
        auto* s = app.add_subcommand(names[i], help[i]);
        s->fallthrough();
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    RunConfig cfg;
    bool have_command = false;
    for (int i = 0; i < 5; ++i) {
        if (subs[static_cast<std::size_t>(i)]->parsed()) {
            cfg.command = parse_command(names[i]);
            have_command = true;
        }
    }
    if (o_preset->count()) cfg.preset = preset;
    if (o_n->count()) cfg.degree = n;
    if (o_nbar->count()) cfg.nbar = nbar;
    if (o_nlist->count()) cfg.degree_list = parse_degree_list(n_list);
    for (const auto& s : sets) add_override(cfg.overrides, s);
    for (const auto& v : varies) cfg.vary.push_back(parse_parameter_range(v));
    cfg.method = parse_solver_path(method);
    cfg.points = points;
    if (o_format->count()) cfg.format = parse_format(format);
    if (o_out->count()) cfg.out = out;

    if (!config_path.empty()) {
        const std::map<std::string, CLI::Option*> flag = {
            {"--preset", o_preset}, {"--n", o_n},         {"--nbar", o_nbar},
            {"--n-list", o_nlist},  {"--vary", o_vary},   {"--method", o_method},
            {"--points", o_points}, {"--format", o_format}, {"--out", o_out}};
        merge_config_file(cfg, config_path, have_command,
                          [&](const char* k) { return flag.at(k)->count() > 0; });
    } else if (!have_command) {
        throw std::invalid_argument("no command given (compute, converge, sweep, eigenfunction, bound)");
    }
    if (cfg.preset.empty()) throw std::invalid_argument("--preset is required");
    if (cfg.nbar && *cfg.nbar < 2) throw std::invalid_argument("--nbar must be >= 2");
    return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::string doc;
        switch (config.command) {
            case Command::Compute: doc = do_compute(config, err); break;
            case Command::Converge: doc = do_converge(config, err); break;
            case Command::Sweep: doc = do_sweep(config, err); break;
            case Command::Eigenfunction: doc = do_eigenfunction(config); break;
            case Command::Bound: doc = do_bound(config); break;
        }
        if (config.out.empty()) {
            out << doc;
        } else {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot write output file '" + config.out + "'");
            file << doc;
        }
        return kExitOk;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_arguments(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return run(cfg, out, err);
}

}  // namespace r0colloc::cli
