#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "srnet/meanfield.hpp"

namespace srnet {

// Loss rates in units of g; omega_fsr = c/2L is the cavity free spectral
// range. Note: the depolarization rate is named gamma_depol to avoid the
// clash with the gap function Gamma(k).
struct DissipativeParams {
    double kappa = 0.0;
    double gamma_depol = 0.0;
    double omega_fsr = 0.0;
};

DissipativeParams make_dissipative_params(double kappa, double gamma_depol,
                                          double omega_fsr = 0.0);

// omega_fsr from the cavity length (meters), in angular frequency (rad/s).
double fsr_from_cavity_length(double length_m);

struct DissipativeBranches {
    std::complex<double> mu1;  // larger real part (ties: larger imaginary part)
    std::complex<double> mu2;
};

struct FieldPolarizationState {
    std::complex<double> lambda_c;  // field amplitude Lambda(t)
    std::complex<double> s_minus;   // collective polarization S_-(t)
    double t = 0.0;
};

// mu_{1,2} = mu0 - i(kappa+Gamma)/2 +/- (1/2) sqrt((delta - i(kappa-Gamma))^2
//            + 4 g^2 <k>), principal square root.
DissipativeBranches polariton_branches_lossy(const SystemParams& params,
                                             double mean_k,
                                             const DissipativeParams& d);

// Coefficient matrix of the linear mean-field dynamics, as printed:
//   dLambda/dt = -(i omega_ph + kappa) <k> Lambda - i g S_-
//   dS_-/dt    = -(i omega0  + Gamma)     S_-    - i g <k> Lambda
// Row order (Lambda, S_-). The <k> factor multiplies the full first bracket;
// the eigenvalues therefore match -i * (Eq-13 branches) only at <k> = 1,
// which eigenvalue_discrepancy_report exposes.
std::array<std::complex<double>, 4> langevin_matrix(const SystemParams& params,
                                                    double mean_k,
                                                    const DissipativeParams& d);

// Eigenvalues of the 2x2 matrix {m[0], m[1]; m[2], m[3]}, ordered by
// descending real part (ties: descending imaginary part).
std::pair<std::complex<double>, std::complex<double>>
eigenvalues_2x2(const std::array<std::complex<double>, 4>& m);

struct EigenvalueDiscrepancy {
    std::complex<double> dynamics_mu1;  // i * eigenvalue, branch-ordered
    std::complex<double> dynamics_mu2;
    std::complex<double> branch_mu1;    // closed-form branch energies
    std::complex<double> branch_mu2;
    double max_abs_diff = 0.0;
};

// Side-by-side comparison of the dynamical eigen-energies and the
// closed-form branch energies. They coincide only at <k> = 1.
EigenvalueDiscrepancy eigenvalue_discrepancy_report(const SystemParams& params,
                                                    double mean_k,
                                                    const DissipativeParams& d);

// Classic fourth-order fixed-step integration of the linear dynamics.
// Requires dt * max(|omega_ph| <k>, |omega0|) < 0.1; aborts with
// NumericError if |state| exceeds 1e12.
std::vector<FieldPolarizationState> integrate_langevin(
    const SystemParams& params, double mean_k, const DissipativeParams& d,
    const FieldPolarizationState& init, double t_end, double dt);

struct SuperstrongReport {
    double g_sqrt_mean_k = 0.0;  // collective rate g sqrt(<k>), same unit as inputs
    bool exceeds_depol = false;
    bool exceeds_kappa = false;
    bool exceeds_fsr = false;
    bool superstrong = false;    // conjunction of the three
    double margin_depol = 0.0;   // ratio g sqrt(<k>) / threshold (inf if zero)
    double margin_kappa = 0.0;
    double margin_fsr = 0.0;
};

// g sqrt(<k>) > Gamma, kappa, omega_fsr, all compared in one consistent
// unit (callers pass rates already converted, e.g. micro-eV).
SuperstrongReport superstrong_condition(const SystemParams& params,
                                        double mean_k,
                                        const DissipativeParams& d);

// hbar in micro-eV * s, for converting angular frequency to energy.
inline constexpr double kHBarMicroEvS = 6.582119569e-10;

}  // namespace srnet
