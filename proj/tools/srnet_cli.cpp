#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srnet/dissipative.hpp"
#include "srnet/errors.hpp"
#include "srnet/meanfield.hpp"
#include "srnet/netmodel.hpp"
#include "srnet/sweep.hpp"

namespace {

using srnet::format_sig12;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw srnet::InvalidParameter("out", "cannot open output file: " + path);
    }
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw srnet::InvalidParameter("config", "cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string format_complex(const std::complex<double>& z) {
    std::string out = format_sig12(z.real());
    out += z.imag() < 0.0 ? " - " : " + ";
    out += format_sig12(std::fabs(z.imag()));
    out += "i";
    return out;
}

void print_solution(const srnet::MeanFieldSolution& sol) {
    std::cout << "mu=" << format_sig12(sol.mu)
              << " lambda=" << format_sig12(sol.lambda_total)
              << " lambda_intensive=" << format_sig12(sol.lambda_intensive)
              << " s_z=" << format_sig12(sol.s_z)
              << " rho=" << format_sig12(sol.rho)
              << " phase=" << srnet::to_string(sol.phase)
              << " branch=" << srnet::to_string(sol.branch)
              << " free_energy=" << format_sig12(sol.free_energy) << "\n";
}

struct MomentsArgs {
    double gamma = 4.0;
    double k_min = 2.0;
    long n_nodes = 300;
    bool as_json = false;
};

void run_moments(const MomentsArgs& args) {
    const srnet::DegreeModel model =
        srnet::make_degree_model(args.gamma, args.k_min, args.n_nodes);
    const srnet::Moments moments = srnet::moments_closed_form(model);
    if (args.as_json) {
        nlohmann::json doc;
        doc["k_max"] = model.k_max;
        doc["mean_k"] = moments.mean_k;
        doc["mean_k2"] = moments.mean_k2;
        doc["zeta"] = moments.zeta;
        doc["regime"] = srnet::to_string(moments.regime);
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout << "k_max=" << format_sig12(model.k_max)
              << " mean_k=" << format_sig12(moments.mean_k)
              << " mean_k2=" << format_sig12(moments.mean_k2)
              << " zeta=" << format_sig12(moments.zeta)
              << " regime=" << srnet::to_string(moments.regime) << "\n";
}

struct SolveArgs {
    double rho = 0.0;
    double temperature = 1e-6;
    double gamma = 4.0;
    double k_min = 2.0;
    long n_nodes = 300;
    double delta = 0.0;
    double omega0 = 0.0;
    double g = 1.0;
    bool all_roots = false;
};

void run_solve(const SolveArgs& args) {
    const srnet::DegreeModel model =
        srnet::make_degree_model(args.gamma, args.k_min, args.n_nodes);
    const srnet::SystemParams params =
        srnet::make_system_params(args.omega0, args.delta, args.n_nodes, args.g);
    const auto roots =
        srnet::solve_equilibrium(params, model, args.temperature, args.rho);
    if (roots.empty()) {
        const srnet::Moments moments = srnet::moments_closed_form(model);
        const double radius =
            10.0 * std::max(std::fabs(args.delta),
                            args.g * std::sqrt(moments.zeta));
        std::ostringstream msg;
        msg << "no solution in scanned range mu in ["
            << format_sig12(params.mu0() - radius) << ", "
            << format_sig12(params.mu0() + radius) << "]";
        throw srnet::NumericError(msg.str());
    }
    if (args.all_roots) {
        for (const auto& sol : roots) print_solution(sol);
        return;
    }
    const auto best = std::min_element(
        roots.begin(), roots.end(),
        [](const srnet::MeanFieldSolution& a, const srnet::MeanFieldSolution& b) {
            return a.free_energy + a.mu * a.rho < b.free_energy + b.mu * b.rho;
        });
    print_solution(*best);
}

struct TcArgs {
    double rho = -0.25;
    double gamma = 4.0;
    double k_min = 2.0;
    long n_nodes = 300;
    bool literal_sign = false;
};

void run_tc(const TcArgs& args) {
    const srnet::DegreeModel model =
        srnet::make_degree_model(args.gamma, args.k_min, args.n_nodes);
    const srnet::Moments moments = srnet::moments_closed_form(model);
    const srnet::SystemParams params =
        srnet::make_system_params(0.0, 0.0, args.n_nodes);
    const double t_c = srnet::critical_temperature(params, moments.zeta, args.rho,
                                                   args.literal_sign);
    std::cout << "zeta=" << format_sig12(moments.zeta)
              << " t_c=" << format_sig12(t_c) << "\n";
}

struct BranchesArgs {
    double mean_k = 1.0;
    double delta = 0.0;
    double kappa = 0.0;
    double depol = 0.0;
    double omega0 = 0.0;
    double g = 1.0;
};

void run_branches(const BranchesArgs& args) {
    const srnet::SystemParams params =
        srnet::make_system_params(args.omega0, args.delta, 2, args.g);
    const srnet::DissipativeParams d =
        srnet::make_dissipative_params(args.kappa, args.depol);
    const srnet::DissipativeBranches branches =
        srnet::polariton_branches_lossy(params, args.mean_k, d);
    std::cout << "mu1=" << format_complex(branches.mu1)
              << " mu2=" << format_complex(branches.mu2) << "\n";
}

struct SweepArgs {
    std::string config_path;
    std::string variable;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> steps;
    std::string out_path;
    std::string format;
    bool all_roots = false;
};

void run_sweep_cmd(const SweepArgs& args) {
    srnet::SweepSpec spec;
    if (!args.config_path.empty()) {
        spec = srnet::spec_from_json(read_file(args.config_path));
    }
    // CLI flags take precedence over config keys.
    if (!args.variable.empty()) {
        spec.variable = srnet::sweep_variable_from_name(args.variable);
    }
    if (args.from) spec.from = *args.from;
    if (args.to) spec.to = *args.to;
    if (args.steps) spec.steps = *args.steps;
    if (!args.out_path.empty()) spec.out_path = args.out_path;
    if (!args.format.empty()) spec.format = args.format;
    if (args.all_roots) spec.all_roots = true;
    if (spec.format != "csv" && spec.format != "json") {
        throw srnet::InvalidParameter("format", "must be csv or json");
    }
    if (spec.out_path.empty()) {
        throw srnet::InvalidParameter("out", "output path required");
    }

    const auto rows = srnet::run_sweep(spec);
    write_file(spec.out_path,
               spec.format == "csv" ? srnet::sweep_csv(rows)
                                    : srnet::sweep_json(rows));
    std::cout << "wrote " << rows.size() << " rows to " << spec.out_path << "\n";
}

struct SampleArgs {
    double gamma = 4.0;
    double k_min = 2.0;
    long n_nodes = 300;
    std::uint64_t seed = 1;
    int count = 1;
};

void run_sample(const SampleArgs& args) {
    if (args.count < 1) {
        throw srnet::InvalidParameter("count", "must be >= 1");
    }
    const srnet::DegreeModel model =
        srnet::make_degree_model(args.gamma, args.k_min, args.n_nodes);
    for (int i = 0; i < args.count; ++i) {
        const srnet::DegreeSample sample =
            srnet::sample_degrees(model, args.seed + static_cast<std::uint64_t>(i));
        std::cout << "seed=" << sample.seed
                  << " mean_k=" << format_sig12(sample.empirical_mean_k)
                  << " zeta=" << format_sig12(sample.empirical_zeta)
                  << " degrees=";
        for (std::size_t j = 0; j < sample.degrees.size(); ++j) {
            if (j > 0) std::cout << ',';
            std::cout << sample.degrees[j];
        }
        std::cout << "\n";
    }
}

struct DynamicsArgs {
    std::string config_path;
    double t_end = 1.0;
    double dt = 1e-3;
    std::string out_path;
};

void run_dynamics(const DynamicsArgs& args) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(args.config_path));
    } catch (const nlohmann::json::exception& e) {
        throw srnet::InvalidParameter("config", e.what());
    }

    double omega0 = 0.0, delta = 0.0, g = 1.0, mean_k = 1.0;
    double kappa = 0.0, depol = 0.0;
    double lam_re = 1.0, lam_im = 0.0, sm_re = 0.0, sm_im = 0.0;
    try {
        if (doc.contains("omega0")) omega0 = doc["omega0"];
        if (doc.contains("delta")) delta = doc["delta"];
        if (doc.contains("g")) g = doc["g"];
        if (doc.contains("mean_k")) mean_k = doc["mean_k"];
        if (doc.contains("kappa")) kappa = doc["kappa"];
        if (doc.contains("gamma_depol")) depol = doc["gamma_depol"];
        if (doc.contains("lambda_re")) lam_re = doc["lambda_re"];
        if (doc.contains("lambda_im")) lam_im = doc["lambda_im"];
        if (doc.contains("sminus_re")) sm_re = doc["sminus_re"];
        if (doc.contains("sminus_im")) sm_im = doc["sminus_im"];
    } catch (const nlohmann::json::exception& e) {
        throw srnet::InvalidParameter("config", e.what());
    }

    const srnet::SystemParams params =
        srnet::make_system_params(omega0, delta, 2, g);
    const srnet::DissipativeParams d =
        srnet::make_dissipative_params(kappa, depol);
    const srnet::FieldPolarizationState init{{lam_re, lam_im}, {sm_re, sm_im}, 0.0};
    const auto trajectory = srnet::integrate_langevin(params, mean_k, d, init,
                                                      args.t_end, args.dt);

    std::string csv = "t,re_lambda,im_lambda,re_sminus,im_sminus\n";
    for (const auto& state : trajectory) {
        csv += format_sig12(state.t);
        csv += ',';
        csv += format_sig12(state.lambda_c.real());
        csv += ',';
        csv += format_sig12(state.lambda_c.imag());
        csv += ',';
        csv += format_sig12(state.s_minus.real());
        csv += ',';
        csv += format_sig12(state.s_minus.imag());
        csv += '\n';
    }
    write_file(args.out_path, csv);
    std::cout << "wrote " << trajectory.size() << " samples to " << args.out_path
              << "\n";
}

struct SuperstrongArgs {
    double mean_k = 1.0;
    double g_uev = 1836.0;
    double kappa_uev = 0.0;
    double depol_uev = 0.0;
    std::optional<double> fsr_uev;
    std::optional<double> cavity_length_m;
};

void run_superstrong(const SuperstrongArgs& args) {
    double fsr = 0.0;
    if (args.fsr_uev && args.cavity_length_m) {
        throw srnet::InvalidParameter(
            "fsr-uev", "give either --fsr-uev or --cavity-length-m, not both");
    }
    if (args.fsr_uev) {
        fsr = *args.fsr_uev;
    } else if (args.cavity_length_m) {
        fsr = srnet::kHBarMicroEvS *
              srnet::fsr_from_cavity_length(*args.cavity_length_m);
    }
    const srnet::SystemParams params =
        srnet::make_system_params(0.0, 0.0, 2, args.g_uev);
    const srnet::DissipativeParams d =
        srnet::make_dissipative_params(args.kappa_uev, args.depol_uev, fsr);
    const srnet::SuperstrongReport report =
        srnet::superstrong_condition(params, args.mean_k, d);
    std::cout << "g_sqrt_mean_k_uev=" << format_sig12(report.g_sqrt_mean_k)
              << " fsr_uev=" << format_sig12(fsr)
              << " exceeds_depol=" << (report.exceeds_depol ? "yes" : "no")
              << " exceeds_kappa=" << (report.exceeds_kappa ? "yes" : "no")
              << " exceeds_fsr=" << (report.exceeds_fsr ? "yes" : "no")
              << " superstrong=" << (report.superstrong ? "yes" : "no")
              << " margin_depol=" << format_sig12(report.margin_depol)
              << " margin_kappa=" << format_sig12(report.margin_kappa)
              << " margin_fsr=" << format_sig12(report.margin_fsr) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Superradiant phase transition solver for network-coupled "
                 "two-level systems"};
    app.require_subcommand(1);

    MomentsArgs moments_args;
    auto* moments = app.add_subcommand(
        "moments", "Degree-distribution cutoff, moments, and regime");
    moments->add_option("--gamma", moments_args.gamma, "Degree exponent")
        ->required();
    moments->add_option("--kmin", moments_args.k_min, "Minimum degree")
        ->required();
    moments->add_option("--nodes", moments_args.n_nodes, "Number of nodes")
        ->required();
    moments->add_flag("--json", moments_args.as_json, "Emit JSON");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand(
        "solve", "Equilibrium solutions at fixed excitation density");
    solve->add_option("--rho", solve_args.rho, "Excitation density")->required();
    solve->add_option("--temp", solve_args.temperature, "Temperature (g units)")
        ->required();
    solve->add_option("--gamma", solve_args.gamma, "Degree exponent")->required();
    solve->add_option("--kmin", solve_args.k_min, "Minimum degree")->required();
    solve->add_option("--nodes", solve_args.n_nodes, "Number of nodes")
        ->required();
    solve->add_option("--delta", solve_args.delta, "Photon detuning (g units)")
        ->required();
    solve->add_option("--omega0", solve_args.omega0, "TLS frequency (g units)")
        ->required();
    solve->add_option("--g", solve_args.g, "Collective coupling");
    solve->add_flag("--all-roots", solve_args.all_roots, "Print every root");

    TcArgs tc_args;
    auto* tc = app.add_subcommand("tc", "Critical temperature at delta = 0");
    tc->add_option("--rho", tc_args.rho, "Excitation density in (-1/2, 0)")
        ->required();
    tc->add_option("--gamma", tc_args.gamma, "Degree exponent")->required();
    tc->add_option("--kmin", tc_args.k_min, "Minimum degree")->required();
    tc->add_option("--nodes", tc_args.n_nodes, "Number of nodes")->required();
    tc->add_flag("--literal-sign", tc_args.literal_sign,
                 "Use the artanh(2 rho) denominator as printed");

    BranchesArgs branches_args;
    auto* branches =
        app.add_subcommand("branches", "Polariton branch energies (with losses)");
    branches->add_option("--mean-k", branches_args.mean_k, "Mean degree")
        ->required();
    branches->add_option("--delta", branches_args.delta, "Photon detuning")
        ->required();
    branches->add_option("--kappa", branches_args.kappa, "Photon loss rate");
    branches->add_option("--depol", branches_args.depol, "Depolarization rate");
    branches->add_option("--omega0", branches_args.omega0, "TLS frequency");
    branches->add_option("--g", branches_args.g, "Collective coupling");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV/JSON");
    sweep->add_option("--config", sweep_args.config_path, "JSON config path");
    sweep->add_option("--var", sweep_args.variable,
                      "Swept variable: rho|temperature|gamma|delta");
    sweep->add_option("--from", sweep_args.from, "Sweep start");
    sweep->add_option("--to", sweep_args.to, "Sweep end");
    sweep->add_option("--steps", sweep_args.steps, "Grid points (>= 2)");
    sweep->add_option("--out", sweep_args.out_path, "Output path");
    sweep->add_option("--format", sweep_args.format, "csv or json");
    sweep->add_flag("--all-roots", sweep_args.all_roots,
                    "One row per root instead of branch selection");

    SampleArgs sample_args;
    auto* sample =
        app.add_subcommand("sample", "Deterministic degree-sequence sampling");
    sample->add_option("--gamma", sample_args.gamma, "Degree exponent")
        ->required();
    sample->add_option("--kmin", sample_args.k_min, "Minimum degree")->required();
    sample->add_option("--nodes", sample_args.n_nodes, "Number of nodes")
        ->required();
    sample->add_option("--seed", sample_args.seed, "RNG seed")->required();
    sample->add_option("--count", sample_args.count, "Number of sequences");

    DynamicsArgs dynamics_args;
    auto* dynamics =
        app.add_subcommand("dynamics", "Field/polarization trajectory to CSV");
    dynamics->add_option("--config", dynamics_args.config_path, "JSON config")
        ->required();
    dynamics->add_option("--t-end", dynamics_args.t_end, "End time (1/g units)")
        ->required();
    dynamics->add_option("--dt", dynamics_args.dt, "Time step")->required();
    dynamics->add_option("--out", dynamics_args.out_path, "Output CSV path")
        ->required();

    SuperstrongArgs superstrong_args;
    auto* superstrong = app.add_subcommand(
        "check-superstrong", "Collective superstrong-coupling condition");
    superstrong->add_option("--mean-k", superstrong_args.mean_k, "Mean degree")
        ->required();
    superstrong->add_option("--g-uev", superstrong_args.g_uev,
                            "Collective coupling in micro-eV")
        ->required();
    superstrong->add_option("--kappa-uev", superstrong_args.kappa_uev,
                            "Photon loss rate in micro-eV");
    superstrong->add_option("--depol-uev", superstrong_args.depol_uev,
                            "Depolarization rate in micro-eV");
    superstrong->add_option("--fsr-uev", superstrong_args.fsr_uev,
                            "Free spectral range in micro-eV");
    superstrong->add_option("--cavity-length-m", superstrong_args.cavity_length_m,
                            "Cavity length in meters");

    try {
        app.parse(argc, argv);
        if (moments->parsed()) run_moments(moments_args);
        if (solve->parsed()) run_solve(solve_args);
        if (tc->parsed()) run_tc(tc_args);
        if (branches->parsed()) run_branches(branches_args);
        if (sweep->parsed()) run_sweep_cmd(sweep_args);
        if (sample->parsed()) run_sample(sample_args);
        if (dynamics->parsed()) run_dynamics(dynamics_args);
        if (superstrong->parsed()) run_superstrong(superstrong_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const srnet::InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const srnet::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
