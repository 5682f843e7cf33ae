#include "srnet/dissipative.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "srnet/errors.hpp"

namespace srnet {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

using cplx = std::complex<double>;

// Larger real part first; ties broken by larger imaginary part.
bool branch_before(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

double margin_ratio(double value, double threshold) {
    if (threshold == 0.0) return std::numeric_limits<double>::infinity();
    return value / threshold;
}

}  // namespace

DissipativeParams make_dissipative_params(double kappa, double gamma_depol,
                                          double omega_fsr) {
    if (kappa < 0.0) throw InvalidParameter("kappa", "must be >= 0");
    if (gamma_depol < 0.0) throw InvalidParameter("gamma_depol", "must be >= 0");
    if (omega_fsr < 0.0) throw InvalidParameter("omega_fsr", "must be >= 0");
    return {kappa, gamma_depol, omega_fsr};
}

double fsr_from_cavity_length(double length_m) {
    if (!(length_m > 0.0)) throw InvalidParameter("length_m", "must be > 0");
    return kSpeedOfLight / (2.0 * length_m);
}

DissipativeBranches polariton_branches_lossy(const SystemParams& params,
                                             double mean_k,
                                             const DissipativeParams& d) {
    if (!(mean_k > 0.0)) throw InvalidParameter("mean_k", "must be > 0");
    const double g = params.g_collective;
    const cplx i(0.0, 1.0);
    const cplx center = params.mu0() - 0.5 * i * (d.kappa + d.gamma_depol);
    const cplx inner = params.delta - i * (d.kappa - d.gamma_depol);
    const cplx half = 0.5 * std::sqrt(inner * inner + 4.0 * g * g * mean_k);
    cplx mu1 = center + half;
    cplx mu2 = center - half;
    if (!branch_before(mu1, mu2)) std::swap(mu1, mu2);
    return {mu1, mu2};
}

std::array<cplx, 4> langevin_matrix(const SystemParams& params, double mean_k,
                                    const DissipativeParams& d) {
    const double g = params.g_collective;
    const cplx i(0.0, 1.0);
    return {-(i * params.omega_ph() + d.kappa) * mean_k, -i * g,
            -i * g * mean_k, -(i * params.omega0 + d.gamma_depol)};
}

std::pair<cplx, cplx> eigenvalues_2x2(const std::array<cplx, 4>& m) {
    const cplx tr = m[0] + m[3];
    const cplx det = m[0] * m[3] - m[1] * m[2];
    const cplx half = 0.5 * std::sqrt(tr * tr - 4.0 * det);
    cplx e1 = 0.5 * tr + half;
    cplx e2 = 0.5 * tr - half;
    if (!branch_before(e1, e2)) std::swap(e1, e2);
    return {e1, e2};
}

EigenvalueDiscrepancy eigenvalue_discrepancy_report(const SystemParams& params,
                                                    double mean_k,
                                                    const DissipativeParams& d) {
    const cplx i(0.0, 1.0);
    const auto [e1, e2] = eigenvalues_2x2(langevin_matrix(params, mean_k, d));
    // nu = -i mu: the mode energy is i * eigenvalue.
    cplx dyn1 = i * e1;
    cplx dyn2 = i * e2;
    if (!branch_before(dyn1, dyn2)) std::swap(dyn1, dyn2);
    const DissipativeBranches closed = polariton_branches_lossy(params, mean_k, d);
    EigenvalueDiscrepancy report;
    report.dynamics_mu1 = dyn1;
    report.dynamics_mu2 = dyn2;
    report.branch_mu1 = closed.mu1;
    report.branch_mu2 = closed.mu2;
    report.max_abs_diff =
        std::max(std::abs(dyn1 - closed.mu1), std::abs(dyn2 - closed.mu2));
    return report;
}

std::vector<FieldPolarizationState> integrate_langevin(
    const SystemParams& params, double mean_k, const DissipativeParams& d,
    const FieldPolarizationState& init, double t_end, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("dt", "must be > 0");
    if (!(t_end > 0.0)) throw InvalidParameter("t_end", "must be > 0");
    if (dt > t_end) throw InvalidParameter("dt", "must not exceed t_end");
    const double fastest =
        std::max(std::fabs(params.omega_ph()) * mean_k, std::fabs(params.omega0));
    if (dt * fastest >= 0.1) {
        throw InvalidParameter("dt", "dt * max(|omega_ph| <k>, |omega0|) must be "
                                     "< 0.1");
    }

    const auto m = langevin_matrix(params, mean_k, d);
    auto deriv = [&m](const cplx& lam, const cplx& sm) {
        return std::pair<cplx, cplx>{m[0] * lam + m[1] * sm,
                                     m[2] * lam + m[3] * sm};
    };

    const long n_steps = static_cast<long>(std::llround(t_end / dt));
    std::vector<FieldPolarizationState> trajectory;
    trajectory.reserve(static_cast<std::size_t>(n_steps) + 1);

    cplx lam = init.lambda_c;
    cplx sm = init.s_minus;
    double t = init.t;
    trajectory.push_back({lam, sm, t});
    for (long step = 0; step < n_steps; ++step) {
        const auto [k1l, k1s] = deriv(lam, sm);
        const auto [k2l, k2s] = deriv(lam + 0.5 * dt * k1l, sm + 0.5 * dt * k1s);
        const auto [k3l, k3s] = deriv(lam + 0.5 * dt * k2l, sm + 0.5 * dt * k2s);
        const auto [k4l, k4s] = deriv(lam + dt * k3l, sm + dt * k3s);
        lam += dt / 6.0 * (k1l + 2.0 * k2l + 2.0 * k3l + k4l);
        sm += dt / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        t = init.t + static_cast<double>(step + 1) * dt;
        if (std::abs(lam) > 1e12 || std::abs(sm) > 1e12) {
            std::ostringstream msg;
            msg << "integrate_langevin: state diverged at t = " << t
                << " (|Lambda| = " << std::abs(lam) << ", |S_-| = " << std::abs(sm)
                << ")";
            throw NumericError(msg.str());
        }
        trajectory.push_back({lam, sm, t});
    }
    return trajectory;
}

SuperstrongReport superstrong_condition(const SystemParams& params,
                                        double mean_k,
                                        const DissipativeParams& d) {
    if (!(mean_k > 0.0)) throw InvalidParameter("mean_k", "must be > 0");
    SuperstrongReport report;
    report.g_sqrt_mean_k = params.g_collective * std::sqrt(mean_k);
    report.exceeds_depol = report.g_sqrt_mean_k > d.gamma_depol;
    report.exceeds_kappa = report.g_sqrt_mean_k > d.kappa;
    report.exceeds_fsr = report.g_sqrt_mean_k > d.omega_fsr;
    report.superstrong =
        report.exceeds_depol && report.exceeds_kappa && report.exceeds_fsr;
    report.margin_depol = margin_ratio(report.g_sqrt_mean_k, d.gamma_depol);
    report.margin_kappa = margin_ratio(report.g_sqrt_mean_k, d.kappa);
    report.margin_fsr = margin_ratio(report.g_sqrt_mean_k, d.omega_fsr);
    return report;
}

}  // namespace srnet
