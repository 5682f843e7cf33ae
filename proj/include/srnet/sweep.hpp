#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srnet/meanfield.hpp"

namespace srnet {

enum class SweepVariable { Rho, Temperature, Gamma, Delta };

SweepVariable sweep_variable_from_name(const std::string& name);
std::string to_string(SweepVariable variable);

// Full fixed-parameter record for one sweep; the swept field is ignored.
struct FixedParams {
    double gamma = 4.0;
    double k_min = 2.0;
    long n_nodes = 300;
    double omega0 = 0.0;
    double delta = 0.0;
    double g = 1.0;
    double temperature = 1e-6;
    double rho = 0.0;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::Rho;
    double from = 0.0;
    double to = 1.0;
    int steps = 2;
    FixedParams fixed;
    std::string out_path;
    std::string format = "csv";  // csv | json
    bool all_roots = false;
    SolveOptions solve;
};

// Throws InvalidParameter on malformed input (unknown keys are ignored;
// field names mirror the JSON keys).
SweepSpec spec_from_json(const std::string& json_text);

struct SweepRow {
    double swept = 0.0;
    std::optional<double> mu_lower;     // best lower-branch root
    std::optional<double> mu_upper;     // best upper-branch root
    std::optional<double> lambda_total; // of the selected solution
    std::optional<double> s_z;
    std::optional<double> rho;
    std::string phase;                  // empty when no solution
    double zeta = 0.0;
    double mean_k = 0.0;
    std::vector<std::string> flags;     // branch-merge, no-solution, ...
};

// One row per grid point (one row per root in all-roots mode); points with
// no solution carry the no-solution flag instead of being dropped. Rows are
// ordered by swept value, then by mu.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Fixed schema: swept,mu_lower,mu_upper,lambda,s_z,rho,phase,zeta,mean_k,flags
// with 12-significant-digit numbers and empty fields for missing values.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

// Largest temperature in [t_lo, t_hi] with a superradiant solution
// (lambda > 1e-6), located by bisection to tolerance tol. Requires
// delta = 0 and rho in (-1/2, 0); endpoints must straddle the boundary.
double phase_boundary(const SystemParams& params, const DegreeModel& model,
                      double rho, double t_lo, double t_hi, double tol,
                      const SolveOptions& options = {});

// value printed with 12 significant digits (shared by every writer so that
// reruns stay byte-identical).
std::string format_sig12(double value);

}  // namespace srnet
