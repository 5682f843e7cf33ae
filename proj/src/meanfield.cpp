#include "srnet/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "srnet/errors.hpp"
#include "srnet/quadrature.hpp"

namespace srnet {

namespace {

constexpr double kTanhSaturation = 350.0;  // beta*Gamma/2 beyond this: tanh = 1
constexpr double kSmallArgument = 1e-8;    // beta*Gamma/2 below this: series

// ln(2 cosh(x)) for x >= 0 without overflow.
double ln_2cosh(double x) {
    if (x > kTanhSaturation) return x;
    return x + std::log1p(std::exp(-2.0 * x));
}

// Thermal averages over the node-degree measure. Eq-level integrals carry
// the distribution normalized on [k_min, k_max] so that the lambda = 0
// closed forms (normal-phase inversion, critical temperature) hold exactly
// with the truncated-moment zeta.
class ThermalKernel {
public:
    ThermalKernel(const SystemParams& params, const DegreeModel& model,
                  double temperature, double quad_rel_tol)
        : params_(params),
          model_(model),
          temperature_(temperature),
          beta_(temperature > 0.0 ? 1.0 / temperature : 0.0),
          mass_(raw_moment_closed_form(model, 0)),
          mean_k_(raw_moment_closed_form(model, 1) / mass_) {
        opts_.rel_tol = quad_rel_tol;
        opts_.abs_tol = 1e-14;
    }

    double mean_k() const { return mean_k_; }
    bool zero_t() const { return temperature_ == 0.0; }

    double gamma_k(double k, double omega0_det, double lambda) const {
        const double g = params_.g_collective;
        const double c = 2.0 * k * g * lambda;
        return std::hypot(omega0_det, c);
    }

    // tanh(beta Gamma / 2) / Gamma, with the removable Gamma -> 0 limit and
    // the saturation guard.
    double tanh_factor(double gamma) const {
        if (zero_t()) return 1.0 / gamma;
        const double x = 0.5 * beta_ * gamma;
        if (x < kSmallArgument) return 0.5 * beta_ * (1.0 - x * x / 3.0);
        if (x > kTanhSaturation) return 1.0 / gamma;
        return std::tanh(x) / gamma;
    }

    template <typename F>
    double node_average(F&& f) const {
        return integrate_log_axis(
                   [this, &f](double k) { return f(k) * degree_pdf(model_, k); },
                   model_.k_min, model_.k_max, opts_) /
               mass_;
    }

    double gap_residual(double mu, double lambda) const {
        const double omega0_det = params_.omega0 - mu;
        const double omega_ph_det = params_.omega_ph() - mu;
        const double g2 = params_.g_collective * params_.g_collective;
        const double integral = node_average([this, omega0_det, lambda](double k) {
            return k * k * tanh_factor(gamma_k(k, omega0_det, lambda));
        });
        return omega_ph_det - g2 / mean_k_ * integral;
    }

    double population_imbalance(double mu, double lambda) const {
        const double omega0_det = params_.omega0 - mu;
        return -node_average([this, omega0_det, lambda](double k) {
            return omega0_det * tanh_factor(gamma_k(k, omega0_det, lambda));
        });
    }

    double density(double mu, double lambda) const {
        return mean_k_ * lambda * lambda + 0.5 * population_imbalance(mu, lambda);
    }

    double free_energy(double mu, double lambda) const {
        const double omega0_det = params_.omega0 - mu;
        const double omega_ph_det = params_.omega_ph() - mu;
        const double coherent = omega_ph_det * mean_k_ * lambda * lambda;
        if (zero_t()) {
            return coherent - node_average([this, omega0_det, lambda](double k) {
                       return 0.5 * gamma_k(k, omega0_det, lambda);
                   });
        }
        return coherent -
               temperature_ * node_average([this, omega0_det, lambda](double k) {
                   return ln_2cosh(0.5 * beta_ * gamma_k(k, omega0_det, lambda));
               });
    }

private:
    const SystemParams& params_;
    const DegreeModel& model_;
    double temperature_;
    double beta_;
    double mass_;
    double mean_k_;
    QuadratureOptions opts_;
};

}  // namespace

double SystemParams::g_single() const {
    return g_collective / std::sqrt(static_cast<double>(n_nodes));
}

SystemParams make_system_params(double omega0, double delta, long n_nodes,
                                double g_collective) {
    if (n_nodes < 2) throw InvalidParameter("n_nodes", "must be >= 2");
    if (!(g_collective > 0.0)) throw InvalidParameter("g_collective", "must be > 0");
    return {g_collective, omega0, delta, n_nodes};
}

double to_microev(double value_in_g, double g_uev) { return value_in_g * g_uev; }

std::string to_string(Phase phase) {
    return phase == Phase::Normal ? "normal" : "superradiant";
}

std::string to_string(Branch branch) {
    return branch == Branch::Lower ? "lower" : "upper";
}

double free_energy_density(const SystemParams& params, const DegreeModel& model,
                           double temperature, double mu, double lambda_intensive,
                           double quad_rel_tol) {
    ThermalKernel kernel(params, model, temperature, quad_rel_tol);
    return kernel.free_energy(mu, lambda_intensive);
}

double gap_equation_residual(const SystemParams& params, const DegreeModel& model,
                             double temperature, double mu, double lambda_intensive,
                             double quad_rel_tol) {
    ThermalKernel kernel(params, model, temperature, quad_rel_tol);
    return kernel.gap_residual(mu, lambda_intensive);
}

double density_equation(const SystemParams& params, const DegreeModel& model,
                        double temperature, double mu, double lambda_intensive,
                        double quad_rel_tol) {
    ThermalKernel kernel(params, model, temperature, quad_rel_tol);
    return kernel.density(mu, lambda_intensive);
}

double population_imbalance(const SystemParams& params, const DegreeModel& model,
                            double temperature, double mu, double lambda_intensive,
                            double quad_rel_tol) {
    ThermalKernel kernel(params, model, temperature, quad_rel_tol);
    return kernel.population_imbalance(mu, lambda_intensive);
}

namespace {

// Superradiant order parameter at fixed mu: the gap residual is monotone
// increasing in lambda^2, so the root (when G(0) < 0 and Omega_ph > 0) is
// located by doubling then bisection. Returns 0 when no root exists.
double solve_lambda2(const ThermalKernel& kernel, const SystemParams& params,
                     double mu, const SolveOptions& options) {
    const double omega_ph_det = params.omega_ph() - mu;
    if (omega_ph_det <= 0.0) return 0.0;
    if (kernel.gap_residual(mu, 0.0) >= 0.0) return 0.0;

    double hi = 1e-6;
    while (kernel.gap_residual(mu, std::sqrt(hi)) < 0.0) {
        hi *= 2.0;
        if (hi > options.lambda2_cap) {
            throw NumericError("solve_lambda2: no sign change below lambda^2 cap");
        }
    }
    double lo = hi > 1e-6 ? 0.5 * hi : 0.0;
    for (int iter = 0; iter < options.max_bisect; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double residual = kernel.gap_residual(mu, std::sqrt(mid));
        (residual < 0.0 ? lo : hi) = mid;
        // The residual alone is not enough: at high temperature it is nearly
        // flat in lambda^2, so the interval must shrink until the implied
        // density uncertainty is negligible too.
        if (std::fabs(residual) <= 0.01 * options.tol_gap &&
            kernel.mean_k() * (hi - lo) <= 0.1 * options.tol_rho) {
            break;
        }
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

struct DensityPoint {
    double mu = 0.0;
    double rho = std::numeric_limits<double>::quiet_NaN();
    double lambda2 = 0.0;
    bool valid = false;
};

DensityPoint density_point(const ThermalKernel& kernel, const SystemParams& params,
                           double mu, const SolveOptions& options) {
    DensityPoint point;
    point.mu = mu;
    try {
        point.lambda2 = solve_lambda2(kernel, params, mu, options);
        point.rho = kernel.density(mu, std::sqrt(point.lambda2));
        point.valid = true;
    } catch (const NumericError&) {
        point.valid = false;
    }
    return point;
}

MeanFieldSolution build_solution(const ThermalKernel& kernel,
                                 const SystemParams& params, double temperature,
                                 double mu, double lambda2,
                                 const SolveOptions& options) {
    MeanFieldSolution sol;
    sol.temperature = temperature;
    sol.mu = mu;
    sol.lambda_intensive = std::sqrt(lambda2);
    sol.lambda_total =
        sol.lambda_intensive * std::sqrt(static_cast<double>(params.n_nodes));
    sol.s_z = kernel.population_imbalance(mu, sol.lambda_intensive);
    sol.rho = kernel.density(mu, sol.lambda_intensive);
    sol.phase = sol.lambda_intensive > options.lambda_floor ? Phase::Superradiant
                                                            : Phase::Normal;
    sol.branch = mu >= params.mu0() ? Branch::Upper : Branch::Lower;
    sol.free_energy = kernel.free_energy(mu, sol.lambda_intensive);
    sol.gap_residual = kernel.gap_residual(mu, sol.lambda_intensive);
    return sol;
}

}  // namespace

std::vector<MeanFieldSolution> solve_equilibrium(const SystemParams& params,
                                                 const DegreeModel& model,
                                                 double temperature,
                                                 double rho_target,
                                                 const SolveOptions& options) {
    if (rho_target < -0.5) {
        throw InvalidParameter("rho_target", "must be >= -1/2");
    }
    if (temperature < 0.0) {
        throw InvalidParameter("temperature", "must be >= 0");
    }

    ThermalKernel kernel(params, model, temperature, options.quad_rel_tol);
    const Moments moments = moments_closed_form(model);
    const double g = params.g_collective;
    const double mu0 = params.mu0();
    const double scale = std::max({1.0, std::fabs(params.delta),
                                   g * std::sqrt(moments.zeta)});

    std::vector<MeanFieldSolution> solutions;

    // Normal-phase root: closed-form inversion of the density equation at
    // lambda = 0 (undefined at T = 0, where the normal density saturates).
    double mu_normal = std::numeric_limits<double>::quiet_NaN();
    if (temperature > 0.0 && std::fabs(2.0 * rho_target) < 1.0) {
        mu_normal = params.omega0 + 2.0 * temperature * std::atanh(2.0 * rho_target);
        solutions.push_back(
            build_solution(kernel, params, temperature, mu_normal, 0.0, options));
    }

    // Superradiant roots: coarse mu grid over mu0 +/- R, with extra points
    // clustered at omega0 and omega_ph where the superradiant bands can be
    // much narrower than the coarse spacing.
    const double bracket =
        options.bracket_scale * std::max(std::fabs(params.delta),
                                         g * std::sqrt(moments.zeta));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(options.scan_points) + 64);
    for (int i = 0; i < options.scan_points; ++i) {
        const double t = static_cast<double>(i) /
                         static_cast<double>(options.scan_points - 1);
        grid.push_back(mu0 - bracket + 2.0 * bracket * t);
    }
    const double cluster_offsets[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2,
                                      0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
    for (double anchor : {params.omega0, params.omega_ph()}) {
        for (double off : cluster_offsets) {
            grid.push_back(anchor - off * g);
            grid.push_back(anchor + off * g);
        }
        grid.push_back(anchor);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [scale](double a, double b) {
                               return std::fabs(a - b) < 1e-13 * scale;
                           }),
               grid.end());

    std::vector<DensityPoint> points;
    points.reserve(grid.size());
    for (double mu : grid) {
        points.push_back(density_point(kernel, params, mu, options));
    }

    auto add_root = [&](double mu, double lambda2) {
        // A lambda = 0 root located by the scan is the normal solution found
        // again, up to bisection error; keep the closed-form one.
        if (lambda2 == 0.0 && std::isfinite(mu_normal) &&
            std::fabs(mu - mu_normal) < 1e-6 * std::max(1.0, std::fabs(mu_normal))) {
            return;
        }
        for (const MeanFieldSolution& existing : solutions) {
            if (std::fabs(existing.mu - mu) < 1e-9 * scale &&
                std::fabs(existing.lambda_intensive - std::sqrt(lambda2)) < 1e-7) {
                return;
            }
        }
        solutions.push_back(
            build_solution(kernel, params, temperature, mu, lambda2, options));
    };

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const DensityPoint& a = points[i];
        const DensityPoint& b = points[i + 1];
        if (!a.valid || !b.valid) continue;
        const double ha = a.rho - rho_target;
        const double hb = b.rho - rho_target;
        if (ha == 0.0) {
            add_root(a.mu, a.lambda2);
            continue;
        }
        if (ha * hb > 0.0) continue;

        double lo = a.mu, hi = b.mu;
        double h_lo = ha;
        double mu_root = 0.5 * (lo + hi);
        double lambda2_root = 0.0;
        double h_mid = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < options.max_bisect; ++iter) {
            mu_root = 0.5 * (lo + hi);
            const DensityPoint mid = density_point(kernel, params, mu_root, options);
            if (!mid.valid) {
                throw NumericError("solve_equilibrium: quadrature failed during "
                                   "mu bisection");
            }
            lambda2_root = mid.lambda2;
            h_mid = mid.rho - rho_target;
            if (std::fabs(h_mid) <= options.tol_rho) break;
            if (h_lo * h_mid <= 0.0) {
                hi = mu_root;
            } else {
                lo = mu_root;
                h_lo = h_mid;
            }
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::fabs(mu_root))) {
                break;
            }
        }
        if (std::fabs(h_mid) > 1e-6) {
            std::ostringstream msg;
            msg << "solve_equilibrium: mu bisection stalled at mu = " << mu_root
                << ", |rho - target| = " << std::fabs(h_mid);
            throw NumericError(msg.str());
        }
        add_root(mu_root, lambda2_root);
    }

    std::sort(solutions.begin(), solutions.end(),
              [](const MeanFieldSolution& a, const MeanFieldSolution& b) {
                  return a.mu < b.mu;
              });
    return solutions;
}

std::pair<double, double> mu_branches_zero_t(const SystemParams& params,
                                             double mean_k, double rho,
                                             double lambda_total) {
    const double g2 = params.g_collective * params.g_collective;
    const double photon_density =
        mean_k * lambda_total * lambda_total / static_cast<double>(params.n_nodes);
    const double disc =
        params.delta * params.delta - 8.0 * g2 * mean_k * (rho - photon_density);
    if (disc < 0.0) {
        throw BranchMergeError(
            "mu branches merge: discriminant negative (|delta| > 2 g sqrt(<k>) "
            "violated)");
    }
    const double half = 0.5 * std::sqrt(disc);
    return {params.mu0() + half, params.mu0() - half};
}

std::pair<double, double> mu_branches_high_t(const SystemParams& params,
                                             double zeta, double mean_k,
                                             double rho, double lambda_total) {
    const double g2 = params.g_collective * params.g_collective;
    const double photon_density =
        mean_k * lambda_total * lambda_total / static_cast<double>(params.n_nodes);
    const double disc =
        params.delta * params.delta - 8.0 * g2 * zeta * (rho - photon_density);
    if (disc < 0.0) {
        throw BranchMergeError(
            "mu branches merge: discriminant negative (|delta| > 2 g sqrt(zeta) "
            "violated)");
    }
    const double half = 0.5 * std::sqrt(disc);
    return {params.mu0() + half, params.mu0() - half};
}

double critical_temperature(const SystemParams& params, double zeta, double rho,
                            bool literal_sign) {
    if (!(rho > -0.5 && rho < 0.0)) {
        throw InvalidParameter("rho", "critical temperature defined for rho in "
                                      "(-1/2, 0)");
    }
    const double g = params.g_collective;
    if (literal_sign) {
        // As printed: negative for rho < 0 because artanh(2 rho) < 0.
        return std::sqrt(-8.0 * g * g * zeta * rho) / (4.0 * std::atanh(2.0 * rho));
    }
    return g * std::sqrt(-2.0 * zeta * rho) / (2.0 * std::atanh(-2.0 * rho));
}

double critical_zeta(const SystemParams& params, double temperature, double rho) {
    if (!(rho > -0.5 && rho < 0.0)) {
        throw InvalidParameter("rho", "critical zeta defined for rho in (-1/2, 0)");
    }
    if (!(temperature > 0.0)) {
        throw InvalidParameter("temperature", "must be > 0");
    }
    const double g = params.g_collective;
    const double a = std::atanh(2.0 * rho);
    return -2.0 * temperature * temperature * a * a / (rho * g * g);
}

double scaling_variable(const SystemParams& params, double temperature,
                        double zeta, double rho) {
    if (!(temperature > 0.0)) {
        throw InvalidParameter("temperature", "must be > 0");
    }
    return 0.25 * params.g_collective / temperature * std::sqrt(-2.0 * zeta * rho);
}

CriticalPoint make_critical_point(const SystemParams& params, double zeta,
                                  double mean_k, double temperature, double rho) {
    CriticalPoint point;
    point.t_c = critical_temperature(params, zeta, rho);
    point.zeta_c = critical_zeta(params, temperature, rho);
    point.x = scaling_variable(params, temperature, zeta, rho);
    point.x_c = scaling_variable(params, point.t_c, zeta, rho);
    point.n_c = params.n_nodes;
    point.mean_k_c = mean_k;
    return point;
}

double order_parameter_scaling(const CriticalPoint& critical, double x) {
    if (x < critical.x_c) {
        throw InvalidParameter("x", "below x_c: normal phase");
    }
    return std::sqrt(static_cast<double>(critical.n_c) * critical.x_c /
                     critical.mean_k_c * (x / critical.x_c - 1.0));
}

double lambda_upper_asymptote(long n_nodes, double rho, double mean_k) {
    return std::sqrt(static_cast<double>(n_nodes) * rho / mean_k);
}

}  // namespace srnet
