#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "srnet/errors.hpp"
#include "srnet/netmodel.hpp"

using namespace srnet;

namespace {

const double kGammaGrid[] = {1.1, 1.5, 1.9, 2.0, 2.1, 2.5, 3.0, 3.5, 4.5};
const double kKminGrid[] = {1.0, 2.0, 5.0};
const long kNodesGrid[] = {100, 300, 10000};

}  // namespace

TEST_CASE("natural cutoff and pdf normalization") {
    const DegreeModel model = make_degree_model(4.0, 2.0, 300);
    CHECK(model.k_max == doctest::Approx(2.0 * std::pow(300.0, 1.0 / 3.0))
                             .epsilon(1e-14));
    // Reference value checked against an independent evaluation.
    CHECK(model.k_max == doctest::Approx(13.3886590016434).epsilon(1e-12));

    // Total mass of the truncated distribution is 1 - 1/N by construction.
    for (double gamma : kGammaGrid) {
        for (double k_min : kKminGrid) {
            for (long n : kNodesGrid) {
                const DegreeModel m = make_degree_model(gamma, k_min, n);
                const double mass = raw_moment_closed_form(m, 0);
                CHECK(mass == doctest::Approx(1.0 - 1.0 / static_cast<double>(n))
                                  .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("pdf vanishes outside the support") {
    const DegreeModel model = make_degree_model(2.5, 2.0, 300);
    CHECK(degree_pdf(model, 1.999) == 0.0);
    CHECK(degree_pdf(model, model.k_max + 1e-9) == 0.0);
    CHECK(degree_pdf(model, 2.0) > 0.0);
}

TEST_CASE("closed-form moments agree with quadrature") {
    for (double gamma : kGammaGrid) {
        for (double k_min : kKminGrid) {
            for (long n : kNodesGrid) {
                const DegreeModel m = make_degree_model(gamma, k_min, n);
                for (int order = 0; order <= 2; ++order) {
                    const double closed = raw_moment_closed_form(m, order);
                    const double quad = raw_moment_quadrature(m, order, 1e-12);
                    CHECK(quad == doctest::Approx(closed).epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("moments are continuous across the logarithmic special cases") {
    // gamma = m + 1 switches to the log antiderivative; the two formulas
    // must join smoothly.
    for (double boundary : {2.0, 3.0}) {
        const DegreeModel at = make_degree_model(boundary, 2.0, 300);
        const DegreeModel below = make_degree_model(boundary - 1e-7, 2.0, 300);
        const DegreeModel above = make_degree_model(boundary + 1e-7, 2.0, 300);
        const int order = static_cast<int>(boundary) - 1;
        const double ref = raw_moment_closed_form(at, order);
        CHECK(raw_moment_closed_form(below, order) ==
              doctest::Approx(ref).epsilon(1e-5));
        CHECK(raw_moment_closed_form(above, order) ==
              doctest::Approx(ref).epsilon(1e-5));
    }
}

TEST_CASE("reference moments for the fig-2 network") {
    const Moments m = moments_closed_form(make_degree_model(4.0, 2.0, 300));
    CHECK(m.mean_k == doctest::Approx(2.93305670499178).epsilon(1e-12));
    CHECK(m.mean_k2 == doctest::Approx(10.2074381013771).epsilon(1e-12));
    CHECK(m.zeta == doctest::Approx(3.48013663834219).epsilon(1e-12));
    CHECK(m.regime == Regime::Random);
}

TEST_CASE("anomalous-regime moments, gamma = 1.5") {
    // k_max = 2 * 300^2, <k> = 598 exactly, <k^2> = 2/3 * 53999998.
    const DegreeModel model = make_degree_model(1.5, 2.0, 300);
    const Moments m = moments_closed_form(model);
    CHECK(model.k_max == doctest::Approx(180000.0).epsilon(1e-12));
    CHECK(m.mean_k == doctest::Approx(598.0).epsilon(1e-12));
    CHECK(m.mean_k2 == doctest::Approx(2.0 / 3.0 * 53999998.0).epsilon(1e-12));
    CHECK(m.zeta == doctest::Approx(60200.6666666667).epsilon(1e-10));
    CHECK(m.regime == Regime::Anomalous);
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(1.5) == Regime::Anomalous);
    CHECK(classify_regime(2.0) == Regime::Boundary2);
    CHECK(classify_regime(2.5) == Regime::ScaleFree);
    CHECK(classify_regime(3.0) == Regime::Boundary3);
    CHECK(classify_regime(4.0) == Regime::Random);
    CHECK(to_string(Regime::ScaleFree) == "scale-free");
}

TEST_CASE("moments monotone in gamma at large gamma: mean degree -> k_min") {
    double prev = moments_closed_form(make_degree_model(5.0, 2.0, 300)).mean_k;
    for (double gamma : {10.0, 20.0, 50.0}) {
        const double mean_k =
            moments_closed_form(make_degree_model(gamma, 2.0, 300)).mean_k;
        CHECK(mean_k < prev);
        prev = mean_k;
    }
    CHECK(prev == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("parameter validation names the offending field") {
    CHECK_THROWS_AS(make_degree_model(1.0, 2.0, 300), InvalidParameter);
    CHECK_THROWS_AS(make_degree_model(4.0, 0.5, 300), InvalidParameter);
    CHECK_THROWS_AS(make_degree_model(4.0, 2.0, 1), InvalidParameter);
    try {
        make_degree_model(0.9, 2.0, 300);
    } catch (const InvalidParameter& e) {
        CHECK(e.field() == "gamma");
    }
    const DegreeModel model = make_degree_model(4.0, 2.0, 300);
    CHECK_THROWS_AS(moments_quadrature(model, 1e-3), InvalidParameter);
    CHECK_THROWS_AS(moments_quadrature(model, 0.0), InvalidParameter);
}

TEST_CASE("degree sampling is deterministic and seed-sensitive") {
    const DegreeModel model = make_degree_model(2.5, 2.0, 1000);
    const DegreeSample a = sample_degrees(model, 42);
    const DegreeSample b = sample_degrees(model, 42);
    const DegreeSample c = sample_degrees(model, 43);
    CHECK(a.degrees == b.degrees);
    CHECK(a.degrees != c.degrees);
    CHECK(a.seed == 42);
}

TEST_CASE("sampled degrees respect the support and graphicality parity") {
    for (double gamma : {1.5, 2.5, 4.0}) {
        const DegreeModel model = make_degree_model(gamma, 2.0, 2000);
        const DegreeSample sample = sample_degrees(model, 7);
        REQUIRE(sample.degrees.size() == 2000);
        long long sum = 0;
        for (long d : sample.degrees) {
            CHECK(d >= 2);
            CHECK(d <= static_cast<long>(std::ceil(model.k_max)));
            sum += d;
        }
        CHECK(sum % 2 == 0);
    }
}

TEST_CASE("empirical moments track the ensemble for a tame exponent") {
    const DegreeModel model = make_degree_model(4.0, 2.0, 10000);
    const Moments m = moments_closed_form(model);
    const DegreeSample sample = sample_degrees(model, 12345);
    CHECK(sample.empirical_mean_k == doctest::Approx(m.mean_k).epsilon(0.05));
    CHECK(sample.empirical_zeta == doctest::Approx(m.zeta).epsilon(0.10));
}

TEST_CASE("heavy-tailed samples contain hubs") {
    const DegreeModel model = make_degree_model(2.1, 2.0, 10000);
    const DegreeSample sample = sample_degrees(model, 99);
    const long max_degree =
        *std::max_element(sample.degrees.begin(), sample.degrees.end());
    CHECK(max_degree > 50);  // far beyond k_min: the tail is populated
}
