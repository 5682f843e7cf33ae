#pragma once

#include <functional>

namespace srnet {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 48;
};

// Adaptive Simpson integration of f over [a, b].
// Throws NumericError if the depth limit is exhausted before the local
// error estimate drops below tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Integrate f(k) over [k_lo, k_hi] after the substitution u = ln k, so that
// heavy-tailed integrands become exponentially decaying in u.
double integrate_log_axis(const std::function<double(double)>& f, double k_lo,
                          double k_hi, const QuadratureOptions& opts = {});

}  // namespace srnet
