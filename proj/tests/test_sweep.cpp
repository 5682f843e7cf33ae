#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "srnet/errors.hpp"
#include "srnet/sweep.hpp"

using namespace srnet;

namespace {

SweepSpec small_rho_sweep() {
    SweepSpec spec;
    spec.variable = SweepVariable::Rho;
    spec.from = -0.3;
    spec.to = 0.3;
    spec.steps = 7;
    spec.fixed.gamma = 4.0;
    spec.fixed.k_min = 2.0;
    spec.fixed.n_nodes = 300;
    spec.fixed.omega0 = 792.0;
    spec.fixed.delta = 9.0;
    spec.fixed.temperature = 1e-6;
    return spec;
}

bool has_flag(const SweepRow& row, const std::string& flag) {
    return std::find(row.flags.begin(), row.flags.end(), flag) !=
           row.flags.end();
}

}  // namespace

TEST_CASE("sweep variables parse and print round-trip") {
    for (const char* name : {"rho", "temperature", "gamma", "delta"}) {
        CHECK(to_string(sweep_variable_from_name(name)) == name);
    }
    CHECK_THROWS_AS(sweep_variable_from_name("kappa"), InvalidParameter);
}

TEST_CASE("config parsing and validation") {
    const std::string text = R"({
        "variable": "gamma",
        "from": 1.5,
        "to": 6.0,
        "steps": 12,
        "fixed": {"gamma": 4.0, "k_min": 2.0, "n_nodes": 300,
                  "omega0": 792.0, "delta": 9.0, "temperature": 1e-6,
                  "rho": 0.3},
        "out": "curve.csv",
        "format": "csv",
        "all_roots": true
    })";
    const SweepSpec spec = spec_from_json(text);
    CHECK(spec.variable == SweepVariable::Gamma);
    CHECK(spec.from == 1.5);
    CHECK(spec.to == 6.0);
    CHECK(spec.steps == 12);
    CHECK(spec.fixed.rho == 0.3);
    CHECK(spec.fixed.omega0 == 792.0);
    CHECK(spec.out_path == "curve.csv");
    CHECK(spec.all_roots);

    CHECK_THROWS_AS(spec_from_json("not json"), InvalidParameter);
    CHECK_THROWS_AS(spec_from_json(R"({"format": "xml"})"), InvalidParameter);
    CHECK_THROWS_AS(spec_from_json(R"({"variable": "bogus"})"),
                    InvalidParameter);
}

TEST_CASE("invalid sweep ranges are rejected") {
    SweepSpec spec = small_rho_sweep();
    spec.from = spec.to;
    CHECK_THROWS_AS(run_sweep(spec), InvalidParameter);
    spec = small_rho_sweep();
    spec.steps = 1;
    CHECK_THROWS_AS(run_sweep(spec), InvalidParameter);
    spec = small_rho_sweep();
    spec.variable = SweepVariable::Gamma;
    spec.from = 0.5;
    spec.to = 4.0;
    CHECK_THROWS_AS(run_sweep(spec), InvalidParameter);
}

TEST_CASE("csv schema is fixed and reruns are byte-identical") {
    const SweepSpec spec = small_rho_sweep();
    const std::string first = sweep_csv(run_sweep(spec));
    const std::string second = sweep_csv(run_sweep(spec));
    CHECK(first == second);
    CHECK(first.rfind(
              "swept,mu_lower,mu_upper,lambda,s_z,rho,phase,zeta,mean_k,flags\n",
              0) == 0);
    // One data line per grid point, each with exactly nine commas.
    std::size_t lines = 0;
    for (std::size_t pos = first.find('\n'); pos != std::string::npos;
         pos = first.find('\n', pos + 1)) {
        ++lines;
    }
    CHECK(lines == 8);  // header + 7 rows
}

TEST_CASE("rows are ordered and satisfy the density closure") {
    const auto rows = run_sweep(small_rho_sweep());
    REQUIRE(rows.size() == 7);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].swept < rows[i + 1].swept);
    }
    for (const auto& row : rows) {
        if (row.phase != "superradiant") continue;
        REQUIRE(row.lambda_total.has_value());
        REQUIRE(row.s_z.has_value());
        REQUIRE(row.rho.has_value());
        const double photon_density = row.mean_k * (*row.lambda_total) *
                                      (*row.lambda_total) / 300.0;
        CHECK(std::fabs(photon_density + 0.5 * (*row.s_z) - *row.rho) < 1e-6);
        CHECK(*row.rho == doctest::Approx(row.swept).epsilon(1e-6));
    }
}

TEST_CASE("branch-merge flag tracks the detuning inequality") {
    SweepSpec spec = small_rho_sweep();
    SUBCASE("gamma = 4: |delta| = 9 exceeds 2 sqrt(<k>), no flag") {
        for (const auto& row : run_sweep(spec)) {
            CHECK_FALSE(has_flag(row, "branch-merge"));
        }
    }
    SUBCASE("gamma = 1.5: 2 sqrt(<k>) ~ 49 swamps |delta| = 9, flag raised") {
        spec.fixed.gamma = 1.5;
        spec.from = 0.1;
        spec.to = 0.3;
        spec.steps = 3;
        for (const auto& row : run_sweep(spec)) {
            CHECK(has_flag(row, "branch-merge"));
        }
    }
}

TEST_CASE("unreachable densities yield explicit no-solution rows") {
    SweepSpec spec = small_rho_sweep();
    spec.fixed.temperature = 0.0;  // no normal root at T = 0
    spec.from = 9e6;               // beyond the lambda^2 cap
    spec.to = 1e7;
    spec.steps = 2;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(has_flag(row, "no-solution"));
        CHECK_FALSE(row.lambda_total.has_value());
        CHECK_FALSE(row.mu_lower.has_value());
        CHECK(row.phase.empty());
    }
    // Missing values render as empty CSV fields.
    const std::string csv = sweep_csv(rows);
    CHECK(csv.find(",,,,,,") != std::string::npos);
}

TEST_CASE("all-roots mode emits one row per root") {
    SweepSpec spec = small_rho_sweep();
    spec.from = -0.2;
    spec.to = 0.2;
    spec.steps = 2;
    spec.all_roots = true;
    const auto rows = run_sweep(spec);
    CHECK(rows.size() > 2);  // superradiant + normal roots per point
    for (const auto& row : rows) {
        CHECK(has_flag(row, "all-roots"));
    }
}

TEST_CASE("gamma sweep regenerates the network per point") {
    SweepSpec spec = small_rho_sweep();
    spec.variable = SweepVariable::Gamma;
    spec.from = 2.5;
    spec.to = 4.5;
    spec.steps = 3;
    spec.fixed.rho = 0.3;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);
    // zeta decreases monotonically with gamma in this window.
    CHECK(rows[0].zeta > rows[1].zeta);
    CHECK(rows[1].zeta > rows[2].zeta);
}

TEST_CASE("json writer mirrors the csv rows") {
    const auto rows = run_sweep(small_rho_sweep());
    const std::string doc = sweep_json(rows);
    CHECK(doc.find("\"swept\"") != std::string::npos);
    CHECK(doc.find("\"phase\"") != std::string::npos);
    CHECK(sweep_json(rows) == doc);  // deterministic
}

TEST_CASE("phase boundary bisection matches the closed form") {
    const SystemParams params = make_system_params(0.0, 0.0, 300);
    const DegreeModel model = make_degree_model(4.0, 2.0, 300);
    const Moments m = moments_closed_form(model);
    const double boundary =
        phase_boundary(params, model, -0.25, 1e-4, 1e2, 1e-6);
    const double oracle = critical_temperature(params, m.zeta, -0.25);
    CHECK(boundary == doctest::Approx(oracle).epsilon(1e-3));
    CHECK(boundary == doctest::Approx(1.2006).epsilon(1e-3));
}

TEST_CASE("phase boundary requires a straddling bracket") {
    const SystemParams params = make_system_params(0.0, 0.0, 300);
    const DegreeModel model = make_degree_model(4.0, 2.0, 300);
    // Both endpoints far above T_c: same phase, no bracket.
    CHECK_THROWS_AS(phase_boundary(params, model, -0.25, 50.0, 100.0, 1e-6),
                    NumericError);
    const SystemParams detuned = make_system_params(0.0, 9.0, 300);
    CHECK_THROWS_AS(phase_boundary(detuned, model, -0.25, 1e-4, 1e2, 1e-6),
                    InvalidParameter);
    CHECK_THROWS_AS(phase_boundary(params, model, 0.25, 1e-4, 1e2, 1e-6),
                    InvalidParameter);
}

TEST_CASE("numbers print with 12 significant digits") {
    CHECK(format_sig12(1.0) == "1");
    CHECK(format_sig12(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig12(792.40259700612345) == "792.402597006");
}
