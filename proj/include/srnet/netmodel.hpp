#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srnet {

// Continuum power-law degree distribution p(k) = (gamma-1) k_min^(gamma-1) k^-gamma
// on [k_min, k_max], with the natural cutoff k_max = k_min N^(1/(gamma-1)).
struct DegreeModel {
    double gamma;
    double k_min;
    long n_nodes;
    double k_max;  // derived, never set independently
};

DegreeModel make_degree_model(double gamma, double k_min, long n_nodes);

// p(k) for k in [k_min, k_max], zero outside.
double degree_pdf(const DegreeModel& model, double k);

// Raw moment <k^m> on the truncated support [k_min, k_max] (closed form,
// logarithmic antiderivative at gamma = m + 1). m = 0 gives the total mass
// 1 - 1/N of the cutoff convention.
double raw_moment_closed_form(const DegreeModel& model, int m);

// Same moment by adaptive quadrature on the log axis (independent route).
double raw_moment_quadrature(const DegreeModel& model, int m, double rel_tol);

enum class Regime { Anomalous, Boundary2, ScaleFree, Boundary3, Random };

std::string to_string(Regime regime);
Regime classify_regime(double gamma);

struct Moments {
    double mean_k;
    double mean_k2;
    double zeta;  // <k^2>/<k>
    Regime regime;
};

Moments moments_closed_form(const DegreeModel& model);

// rel_tol must lie in (0, 1e-4].
Moments moments_quadrature(const DegreeModel& model, double rel_tol);

struct DegreeSample {
    std::vector<long> degrees;
    std::uint64_t seed;
    double empirical_mean_k;
    double empirical_zeta;
};

// Inverse-CDF sampling from the truncated continuous distribution, rounded
// to the nearest integer >= k_min. If the degree sum comes out odd, the
// lowest-degree node gains one edge stub (configuration-model feasibility).
// Bit-identical output for identical (model, seed).
DegreeSample sample_degrees(const DegreeModel& model, std::uint64_t seed);

}  // namespace srnet
