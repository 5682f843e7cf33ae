#include "srnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srnet/errors.hpp"

namespace srnet {

namespace {

struct Panel {
    double mid;
    double fm;
    double whole;  // Simpson estimate over the panel
};

Panel simpson(const std::function<double(double)>& f, double a, double fa,
              double b, double fb) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    return {m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, const Panel& p, double eps, int depth) {
    const Panel left = simpson(f, a, fa, p.mid, p.fm);
    const Panel right = simpson(f, p.mid, p.fm, b, fb);
    const double delta = left.whole + right.whole - p.whole;
    // Roundoff floor: once the correction is at the level of double-precision
    // noise on the panel sums, further refinement cannot help.
    const double noise = 32.0 * std::numeric_limits<double>::epsilon() *
                         (std::fabs(left.whole) + std::fabs(right.whole));
    if (std::fabs(delta) <= std::max(15.0 * eps, noise)) {
        return left.whole + right.whole + delta / 15.0;
    }
    if (depth <= 0) {
        throw NumericError("adaptive quadrature: depth limit exhausted");
    }
    return adapt(f, a, fa, p.mid, p.fm, left, 0.5 * eps, depth - 1) +
           adapt(f, p.mid, p.fm, b, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const Panel whole = simpson(f, a, fa, b, fb);
    const double scale = std::fabs(whole.whole);
    const double eps = std::max(opts.abs_tol, opts.rel_tol * scale);
    return adapt(f, a, fa, b, fb, whole, eps, opts.max_depth);
}

double integrate_log_axis(const std::function<double(double)>& f, double k_lo,
                          double k_hi, const QuadratureOptions& opts) {
    if (k_lo <= 0.0) {
        throw InvalidParameter("k_lo", "log-axis quadrature needs k > 0");
    }
    auto g = [&f, k_lo, k_hi](double u) {
        // exp(log k) can land a last-bit outside [k_lo, k_hi]; clamp so the
        // integrand never sees a spurious out-of-support point.
        const double k = std::clamp(std::exp(u), k_lo, k_hi);
        return f(k) * k;  // dk = k du
    };
    return integrate(g, std::log(k_lo), std::log(k_hi), opts);
}

}  // namespace srnet
