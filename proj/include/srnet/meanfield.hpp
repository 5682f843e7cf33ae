#pragma once

#include <string>
#include <utility>
#include <vector>

#include "srnet/netmodel.hpp"

namespace srnet {

// All energies and temperatures are measured in units of the collective
// coupling g = g0 sqrt(N). (omega0, delta) are the single source of truth;
// omega_ph and mu0 are derived.
struct SystemParams {
    double g_collective = 1.0;
    double omega0 = 0.0;
    double delta = 0.0;
    long n_nodes = 2;

    double omega_ph() const { return omega0 + delta; }
    double mu0() const { return 0.5 * (omega_ph() + omega0); }
    double g_single() const;  // g / sqrt(N)
};

SystemParams make_system_params(double omega0, double delta, long n_nodes,
                                double g_collective = 1.0);

// Energy in g-units -> micro-eV, given the collective coupling in micro-eV.
double to_microev(double value_in_g, double g_uev);

enum class Phase { Normal, Superradiant };
enum class Branch { Lower, Upper };

std::string to_string(Phase phase);
std::string to_string(Branch branch);

struct MeanFieldSolution {
    double temperature = 0.0;
    double rho = 0.0;
    double mu = 0.0;
    double lambda_total = 0.0;      // Lambda, sqrt of the photon number
    double lambda_intensive = 0.0;  // Lambda / sqrt(N)
    double s_z = 0.0;
    Phase phase = Phase::Normal;
    Branch branch = Branch::Lower;
    double free_energy = 0.0;       // grand potential per node at (mu, lambda)
    double gap_residual = 0.0;
};

struct CriticalPoint {
    double t_c = 0.0;
    double zeta_c = 0.0;
    double x = 0.0;
    double x_c = 0.0;
    long n_c = 0;
    double mean_k_c = 0.0;
};

struct SolveOptions {
    double tol_gap = 1e-8;
    double tol_rho = 1e-10;
    int scan_points = 400;
    double bracket_scale = 10.0;  // R = bracket_scale * max(|delta|, g sqrt(zeta))
    int max_bisect = 200;
    double lambda_floor = 1e-9;
    double lambda2_cap = 1e6;
    double quad_rel_tol = 1e-10;
};

// Mean-field free energy per node, f = Omega_ph <k> lambda^2
//   - T Int ln(2 cosh(beta Gamma(k)/2)) p(k) dk,
// with Gamma(k) = sqrt(Omega0^2 + 4 k^2 g^2 lambda^2). T = 0 takes the
// beta->infinity limit of the thermal term. The thermal average runs over
// the node-degree measure normalized on [k_min, k_max].
double free_energy_density(const SystemParams& params, const DegreeModel& model,
                           double temperature, double mu, double lambda_intensive,
                           double quad_rel_tol = 1e-10);

// Omega_ph - (g^2/<k>) Int (k^2/Gamma) tanh(beta Gamma/2) p(k) dk.
// Zero at a superradiant stationary point.
double gap_equation_residual(const SystemParams& params, const DegreeModel& model,
                             double temperature, double mu, double lambda_intensive,
                             double quad_rel_tol = 1e-10);

// <k> lambda^2 - (1/2) Int (Omega0/Gamma) tanh(beta Gamma/2) p(k) dk.
double density_equation(const SystemParams& params, const DegreeModel& model,
                        double temperature, double mu, double lambda_intensive,
                        double quad_rel_tol = 1e-10);

// Collective population imbalance at (mu, lambda).
double population_imbalance(const SystemParams& params, const DegreeModel& model,
                            double temperature, double mu, double lambda_intensive,
                            double quad_rel_tol = 1e-10);

// All equilibrium points with excitation density rho_target at temperature T:
// the normal-phase root (closed-form inversion of the density equation at
// lambda = 0) plus every superradiant root located by the mu-scan /
// lambda^2-bisection procedure. No selection is applied; free energy is
// attached to each solution.
std::vector<MeanFieldSolution> solve_equilibrium(const SystemParams& params,
                                                 const DegreeModel& model,
                                                 double temperature,
                                                 double rho_target,
                                                 const SolveOptions& options = {});

// T -> 0 excitation branches: mu0 +/- (1/2) sqrt(D^2 - 8 g^2 <k> (rho - <k> L^2/N)).
// Returns (upper mu1, lower mu2); throws BranchMergeError when the
// discriminant is negative (|delta| > 2 g sqrt(<k>) violated).
std::pair<double, double> mu_branches_zero_t(const SystemParams& params,
                                             double mean_k, double rho,
                                             double lambda_total);

// High-temperature branches: the zero-T form with <k> -> zeta inside the
// discriminant. Valid for any gamma > 1.
std::pair<double, double> mu_branches_high_t(const SystemParams& params,
                                             double zeta, double mean_k,
                                             double rho, double lambda_total);

// Critical temperature at delta = 0 for rho in (-1/2, 0):
//   T_c = g sqrt(-2 zeta rho) / (2 artanh(-2 rho)).
// The sign convention artanh(-2 rho) keeps T_c positive; literal_sign = true
// reproduces the form with artanh(2 rho) in the denominator instead
// (negative for rho < 0), for reproducibility audits.
double critical_temperature(const SystemParams& params, double zeta, double rho,
                            bool literal_sign = false);

// zeta_c = -2 T^2 [artanh(2 rho)]^2 / (rho g^2); a superradiant solution
// exists at (T, rho, delta = 0) iff zeta >= zeta_c.
double critical_zeta(const SystemParams& params, double temperature, double rho);

// x = (beta g / 4) sqrt(-2 zeta rho).
double scaling_variable(const SystemParams& params, double temperature,
                        double zeta, double rho);

// CriticalPoint at (T, rho, delta = 0) for a network with the given moments.
CriticalPoint make_critical_point(const SystemParams& params, double zeta,
                                  double mean_k, double temperature, double rho);

// Near-threshold order parameter Lambda = sqrt((N_c x_c / <k_c>)(x/x_c - 1)).
double order_parameter_scaling(const CriticalPoint& critical, double x);

// Large-density upper-branch asymptote Lambda ~ sqrt(N rho / <k>).
double lambda_upper_asymptote(long n_nodes, double rho, double mean_k);

}  // namespace srnet
