#include "srnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "srnet/errors.hpp"

namespace srnet {

namespace {

// Canonical potential at the target density; used to pick the physical root
// when several equilibria coexist at one grid point.
double selection_metric(const MeanFieldSolution& sol) {
    return sol.free_energy + sol.mu * sol.rho;
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const std::string& flag : flags) {
        if (!out.empty()) out += ';';
        out += flag;
    }
    return out;
}

std::string csv_field(const std::optional<double>& value) {
    return value ? format_sig12(*value) : std::string();
}

}  // namespace

std::string format_sig12(double value) {
    std::ostringstream out;
    out << std::setprecision(12) << value;
    return out.str();
}

SweepVariable sweep_variable_from_name(const std::string& name) {
    if (name == "rho") return SweepVariable::Rho;
    if (name == "temperature") return SweepVariable::Temperature;
    if (name == "gamma") return SweepVariable::Gamma;
    if (name == "delta") return SweepVariable::Delta;
    throw InvalidParameter("variable",
                           "must be one of rho, temperature, gamma, delta");
}

std::string to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::Rho: return "rho";
        case SweepVariable::Temperature: return "temperature";
        case SweepVariable::Gamma: return "gamma";
        case SweepVariable::Delta: return "delta";
    }
    return "unknown";
}

SweepSpec spec_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("config", e.what());
    }
    SweepSpec spec;
    try {
        if (doc.contains("variable")) {
            spec.variable = sweep_variable_from_name(doc["variable"]);
        }
        if (doc.contains("from")) spec.from = doc["from"];
        if (doc.contains("to")) spec.to = doc["to"];
        if (doc.contains("steps")) spec.steps = doc["steps"];
        if (doc.contains("out")) spec.out_path = doc["out"];
        if (doc.contains("format")) spec.format = doc["format"];
        if (doc.contains("all_roots")) spec.all_roots = doc["all_roots"];
        if (doc.contains("fixed")) {
            const auto& f = doc["fixed"];
            if (f.contains("gamma")) spec.fixed.gamma = f["gamma"];
            if (f.contains("k_min")) spec.fixed.k_min = f["k_min"];
            if (f.contains("n_nodes")) spec.fixed.n_nodes = f["n_nodes"];
            if (f.contains("omega0")) spec.fixed.omega0 = f["omega0"];
            if (f.contains("delta")) spec.fixed.delta = f["delta"];
            if (f.contains("g")) spec.fixed.g = f["g"];
            if (f.contains("temperature")) spec.fixed.temperature = f["temperature"];
            if (f.contains("rho")) spec.fixed.rho = f["rho"];
        }
        if (doc.contains("solve")) {
            const auto& s = doc["solve"];
            if (s.contains("tol_gap")) spec.solve.tol_gap = s["tol_gap"];
            if (s.contains("tol_rho")) spec.solve.tol_rho = s["tol_rho"];
            if (s.contains("scan_points")) spec.solve.scan_points = s["scan_points"];
            if (s.contains("bracket_scale")) {
                spec.solve.bracket_scale = s["bracket_scale"];
            }
            if (s.contains("quad_rel_tol")) {
                spec.solve.quad_rel_tol = s["quad_rel_tol"];
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("config", e.what());
    }
    if (spec.format != "csv" && spec.format != "json") {
        throw InvalidParameter("format", "must be csv or json");
    }
    return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (!(spec.from < spec.to)) {
        throw InvalidParameter("from", "sweep range requires from < to");
    }
    if (spec.steps < 2) throw InvalidParameter("steps", "must be >= 2");
    if (spec.variable == SweepVariable::Gamma && !(spec.from > 1.0)) {
        throw InvalidParameter("from", "gamma sweep requires from > 1");
    }
    if (spec.variable == SweepVariable::Temperature && spec.from < 0.0) {
        throw InvalidParameter("from", "temperature sweep requires from >= 0");
    }

    std::vector<SweepRow> rows;
    for (int i = 0; i < spec.steps; ++i) {
        const double v = spec.from + (spec.to - spec.from) *
                                         static_cast<double>(i) /
                                         static_cast<double>(spec.steps - 1);
        double gamma = spec.fixed.gamma;
        double delta = spec.fixed.delta;
        double temperature = spec.fixed.temperature;
        double rho = spec.fixed.rho;
        switch (spec.variable) {
            case SweepVariable::Rho: rho = v; break;
            case SweepVariable::Temperature: temperature = v; break;
            case SweepVariable::Gamma: gamma = v; break;
            case SweepVariable::Delta: delta = v; break;
        }

        const DegreeModel model =
            make_degree_model(gamma, spec.fixed.k_min, spec.fixed.n_nodes);
        const SystemParams params = make_system_params(
            spec.fixed.omega0, delta, spec.fixed.n_nodes, spec.fixed.g);
        const Moments moments = moments_closed_form(model);
        const double mass = raw_moment_closed_form(model, 0);
        const double mean_k = moments.mean_k / mass;  // solver-consistent measure

        SweepRow base;
        base.swept = v;
        base.zeta = moments.zeta;
        base.mean_k = mean_k;
        if (std::fabs(delta) <
            2.0 * params.g_collective * std::sqrt(mean_k)) {
            base.flags.push_back("branch-merge");
        }

        std::vector<MeanFieldSolution> roots;
        bool numeric_failure = false;
        try {
            roots = solve_equilibrium(params, model, temperature, rho, spec.solve);
        } catch (const NumericError&) {
            numeric_failure = true;
        }

        if (roots.empty()) {
            SweepRow row = base;
            row.flags.push_back(numeric_failure ? "numeric-failure"
                                                : "no-solution");
            rows.push_back(std::move(row));
            continue;
        }

        const auto best = std::min_element(
            roots.begin(), roots.end(),
            [](const MeanFieldSolution& a, const MeanFieldSolution& b) {
                return selection_metric(a) < selection_metric(b);
            });

        std::optional<double> mu_lower, mu_upper;
        double metric_lower = std::numeric_limits<double>::infinity();
        double metric_upper = std::numeric_limits<double>::infinity();
        for (const MeanFieldSolution& sol : roots) {
            const double metric = selection_metric(sol);
            if (sol.branch == Branch::Lower && metric < metric_lower) {
                metric_lower = metric;
                mu_lower = sol.mu;
            }
            if (sol.branch == Branch::Upper && metric < metric_upper) {
                metric_upper = metric;
                mu_upper = sol.mu;
            }
        }

        if (spec.all_roots) {
            for (const MeanFieldSolution& sol : roots) {
                SweepRow row = base;
                if (sol.branch == Branch::Lower) {
                    row.mu_lower = sol.mu;
                } else {
                    row.mu_upper = sol.mu;
                }
                row.lambda_total = sol.lambda_total;
                row.s_z = sol.s_z;
                row.rho = sol.rho;
                row.phase = to_string(sol.phase);
                row.flags.push_back("all-roots");
                rows.push_back(std::move(row));
            }
            continue;
        }

        SweepRow row = base;
        row.mu_lower = mu_lower;
        row.mu_upper = mu_upper;
        row.lambda_total = best->lambda_total;
        row.s_z = best->s_z;
        row.rho = best->rho;
        row.phase = to_string(best->phase);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "swept,mu_lower,mu_upper,lambda,s_z,rho,phase,zeta,mean_k,flags\n";
    for (const SweepRow& row : rows) {
        out += format_sig12(row.swept);
        out += ',';
        out += csv_field(row.mu_lower);
        out += ',';
        out += csv_field(row.mu_upper);
        out += ',';
        out += csv_field(row.lambda_total);
        out += ',';
        out += csv_field(row.s_z);
        out += ',';
        out += csv_field(row.rho);
        out += ',';
        out += row.phase;
        out += ',';
        out += format_sig12(row.zeta);
        out += ',';
        out += format_sig12(row.mean_k);
        out += ',';
        out += join_flags(row.flags);
        out += '\n';
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json doc = nlohmann::json::array();
    auto set_opt = [](nlohmann::json& obj, const char* key,
                      const std::optional<double>& value) {
        if (value) {
            obj[key] = *value;
        } else {
            obj[key] = nullptr;
        }
    };
    for (const SweepRow& row : rows) {
        nlohmann::json obj;
        obj["swept"] = row.swept;
        set_opt(obj, "mu_lower", row.mu_lower);
        set_opt(obj, "mu_upper", row.mu_upper);
        set_opt(obj, "lambda", row.lambda_total);
        set_opt(obj, "s_z", row.s_z);
        set_opt(obj, "rho", row.rho);
        obj["phase"] = row.phase;
        obj["zeta"] = row.zeta;
        obj["mean_k"] = row.mean_k;
        obj["flags"] = row.flags;
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

double phase_boundary(const SystemParams& params, const DegreeModel& model,
                      double rho, double t_lo, double t_hi, double tol,
                      const SolveOptions& options) {
    if (params.delta != 0.0) {
        throw InvalidParameter("delta", "phase boundary requires delta = 0");
    }
    if (!(rho > -0.5 && rho < 0.0)) {
        throw InvalidParameter("rho", "must lie in (-1/2, 0)");
    }
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
        throw InvalidParameter("t_lo", "requires 0 < t_lo < t_hi");
    }
    if (!(tol > 0.0)) throw InvalidParameter("tol", "must be > 0");

    auto superradiant_at = [&](double temperature) {
        const auto roots = solve_equilibrium(params, model, temperature, rho,
                                             options);
        return std::any_of(roots.begin(), roots.end(),
                           [](const MeanFieldSolution& sol) {
                               return sol.lambda_intensive > 1e-6;
                           });
    };

    bool sr_lo = superradiant_at(t_lo);
    bool sr_hi = superradiant_at(t_hi);
    if (sr_lo == sr_hi) {
        std::ostringstream msg;
        msg << "phase_boundary: endpoints share the same phase over ["
            << t_lo << ", " << t_hi << "]";
        throw NumericError(msg.str());
    }

    double lo = t_lo, hi = t_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (superradiant_at(mid) == sr_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace srnet
