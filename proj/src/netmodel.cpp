#include "srnet/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srnet/errors.hpp"
#include "srnet/quadrature.hpp"

namespace srnet {

namespace {

constexpr double kLogSwitch = 1e-9;  // |gamma - (m+1)| below this: log formula

}  // namespace

DegreeModel make_degree_model(double gamma, double k_min, long n_nodes) {
    if (!(gamma > 1.0)) {
        throw InvalidParameter("gamma", "must exceed 1 (distribution not normalizable)");
    }
    if (!(k_min >= 1.0)) {
        throw InvalidParameter("k_min", "must be >= 1");
    }
    if (n_nodes < 2) {
        throw InvalidParameter("n_nodes", "must be >= 2");
    }
    const double k_max =
        k_min * std::pow(static_cast<double>(n_nodes), 1.0 / (gamma - 1.0));
    return {gamma, k_min, n_nodes, k_max};
}

double degree_pdf(const DegreeModel& model, double k) {
    if (k < model.k_min || k > model.k_max) return 0.0;
    return (model.gamma - 1.0) * std::pow(model.k_min, model.gamma - 1.0) *
           std::pow(k, -model.gamma);
}

double raw_moment_closed_form(const DegreeModel& model, int m) {
    const double g = model.gamma;
    const double a = model.k_min;
    const double b = model.k_max;
    const double prefactor = (g - 1.0) * std::pow(a, g - 1.0);
    const double expo = static_cast<double>(m) - g + 1.0;
    if (std::fabs(expo) < kLogSwitch) {
        return prefactor * std::log(b / a);
    }
    return prefactor * (std::pow(b, expo) - std::pow(a, expo)) / expo;
}

double raw_moment_quadrature(const DegreeModel& model, int m, double rel_tol) {
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 0.0;
    return integrate_log_axis(
        [&model, m](double k) { return std::pow(k, m) * degree_pdf(model, k); },
        model.k_min, model.k_max, opts);
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::Anomalous: return "anomalous";
        case Regime::Boundary2: return "boundary-2";
        case Regime::ScaleFree: return "scale-free";
        case Regime::Boundary3: return "boundary-3";
        case Regime::Random: return "random";
    }
    return "unknown";
}

Regime classify_regime(double gamma) {
    if (gamma == 2.0) return Regime::Boundary2;
    if (gamma == 3.0) return Regime::Boundary3;
    if (gamma < 2.0) return Regime::Anomalous;
    if (gamma < 3.0) return Regime::ScaleFree;
    return Regime::Random;
}

Moments moments_closed_form(const DegreeModel& model) {
    const double mean_k = raw_moment_closed_form(model, 1);
    const double mean_k2 = raw_moment_closed_form(model, 2);
    return {mean_k, mean_k2, mean_k2 / mean_k, classify_regime(model.gamma)};
}

Moments moments_quadrature(const DegreeModel& model, double rel_tol) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-4) {
        throw InvalidParameter("rel_tol", "must lie in (0, 1e-4]");
    }
    const double mean_k = raw_moment_quadrature(model, 1, rel_tol);
    const double mean_k2 = raw_moment_quadrature(model, 2, rel_tol);
    return {mean_k, mean_k2, mean_k2 / mean_k, classify_regime(model.gamma)};
}

DegreeSample sample_degrees(const DegreeModel& model, std::uint64_t seed) {
    // splitmix64 stream; fully specified here so sequences stay bit-identical
    // across platforms and standard-library versions.
    std::uint64_t state = seed;
    auto next_u64 = [&state]() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto next_unit = [&next_u64]() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    };

    const double g = model.gamma;
    const double a_pow = std::pow(model.k_min, 1.0 - g);
    const double b_pow = std::pow(model.k_max, 1.0 - g);
    const long floor_deg = static_cast<long>(std::ceil(model.k_min));
    const long cap_deg = static_cast<long>(std::ceil(model.k_max));

    DegreeSample sample;
    sample.seed = seed;
    sample.degrees.reserve(static_cast<std::size_t>(model.n_nodes));
    for (long i = 0; i < model.n_nodes; ++i) {
        const double u = next_unit();
        const double k = std::pow(a_pow - u * (a_pow - b_pow), 1.0 / (1.0 - g));
        long d = std::lround(k);
        d = std::clamp(d, floor_deg, cap_deg);
        sample.degrees.push_back(d);
    }

    long long sum = 0;
    for (long d : sample.degrees) sum += d;
    if (sum % 2 != 0) {
        auto lowest = std::min_element(sample.degrees.begin(), sample.degrees.end());
        ++*lowest;
        ++sum;
    }

    double s1 = 0.0, s2 = 0.0;
    for (long d : sample.degrees) {
        s1 += static_cast<double>(d);
        s2 += static_cast<double>(d) * static_cast<double>(d);
    }
    const double n = static_cast<double>(model.n_nodes);
    sample.empirical_mean_k = s1 / n;
    sample.empirical_zeta = (s2 / n) / sample.empirical_mean_k;
    return sample;
}

}  // namespace srnet
