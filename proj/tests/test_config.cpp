#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "softbell/config.hpp"
#include "softbell/errors.hpp"

using namespace softbell;

namespace {

const char* kSample = R"(# CHSH run
generator.seed = 7
generator.n_events = 5000
generator.settings_A = z; polar(90, 0)
generator.settings_B = polar(45, 0); polar(135, 0)
emission.alpha = 0.0072992701
emission.E_min = 1e-4   # detector resolution
cut.solid_angle = 0.01
cut.energy_window = 0.4, 0.6
analysis.correlations = A0:B0; A1:B1
analysis.chsh = A0,A1,B0,B1
analysis.violations = false
output.dir = out
log.level = warn
)";

template <typename F>
ConfigError config_error(F&& f) {
    try {
        f();
    } catch (const ConfigError& err) {
        return err;
    }
    FAIL("expected a ConfigError");
    return ConfigError("", 0, "");
}

RunConfig random_config(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, 4);
    RunConfig c;
    c.generator.seed = g();
    c.generator.n_events = 1 + g() % 1000000;
    c.generator.smear_sigma = 3.0 * u(g);
    c.generator.max_retries = static_cast<int>(g() % 500);
    c.generator.settings_A.clear();
    c.generator.settings_B.clear();
    for (int i = count(g); i > 0; --i) c.generator.settings_A.push_back(oracle::random_direction(g));
    for (int i = count(g); i > 0; --i) c.generator.settings_B.push_back(oracle::random_direction(g));
    auto& em = c.generator.emission;
    em.alpha = 0.99 * u(g);
    em.E_total = 1.0 + u(g);
    em.E_A = 0.5 * u(g);
    em.m_B = 0.3 * u(g);
    em.E_min = std::pow(10.0, -1.0 - 6.0 * u(g));
    em.kappa_rad = 3.0 * u(g);
    em.kappa_par = 3.0 * u(g);
    em.k_max = 1 + static_cast<int>(g() % 12);
    c.cut.solid_angle = CoincidenceCut::kFullSolidAngle * (1e-6 + u(g) * (1 - 1e-6));
    if (u(g) < 0.5) c.cut.energy_window = std::make_pair(0.1 * u(g), 0.5 + u(g));
    const int nA = static_cast<int>(c.generator.settings_A.size());
    const int nB = static_cast<int>(c.generator.settings_B.size());
    for (int i = count(g) - 1; i > 0; --i) c.analyses.correlations.emplace_back(g() % nA, g() % nB);
    if (u(g) < 0.5) {
        c.analyses.chsh.push_back({static_cast<int>(g() % nA), static_cast<int>(g() % nA), static_cast<int>(g() % nB),
                                   static_cast<int>(g() % nB)});
    }
    c.analyses.violations = u(g) < 0.5;
    c.output.dir = u(g) < 0.5 ? "" : "runs/out" + std::to_string(g() % 100);
    c.log_level = u(g) < 0.5 ? "info" : "debug";
    return c;
}

}  // namespace

TEST_CASE("sample config parses") {
    const auto c = parse_run_config(kSample);
    CHECK(c.generator.seed == 7);
    CHECK(c.generator.n_events == 5000);
    REQUIRE(c.generator.settings_A.size() == 2);
    CHECK(c.generator.settings_A[0] == Direction::unit_z());
    CHECK(c.generator.settings_B[1].x() == doctest::Approx(std::sqrt(0.5)));
    CHECK(c.generator.emission.alpha == 0.0072992701);
    CHECK(c.generator.emission.E_min == 1e-4);
    CHECK(c.generator.emission.kappa_rad == 1.0);  // default
    CHECK(c.cut.solid_angle == 0.01);
    REQUIRE(c.cut.energy_window.has_value());
    CHECK(c.cut.energy_window->second == 0.6);
    CHECK(c.analyses.correlations == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(c.analyses.chsh.size() == 1);
    CHECK_FALSE(c.analyses.violations);
    CHECK(c.output.dir == "out");
    CHECK(c.log_level == "warn");

    const auto plan = c.analysis_plan();
    CHECK(plan.chsh.front()[1] == c.generator.settings_A[1]);
}

TEST_CASE("validation errors name field and line") {
    SUBCASE("E_min = 0") {
        const auto err = config_error([] { parse_run_config("emission.alpha = 0\nemission.E_min = 0\n"); });
        CHECK(err.field() == "emission.E_min");
        CHECK(err.line() == 2);
    }
    SUBCASE("bad number") {
        const auto err = config_error([] { parse_run_config("\n\ngenerator.smear_sigma = wide\n"); });
        CHECK(err.field() == "generator.smear_sigma");
        CHECK(err.line() == 3);
    }
    SUBCASE("unknown key") {
        const auto err = config_error([] { parse_run_config("emission.beta = 1\n"); });
        CHECK(err.field() == "emission.beta");
        CHECK(err.line() == 1);
    }
    SUBCASE("missing equals sign") {
        const auto err = config_error([] { parse_run_config("emission.alpha 0.1\n"); });
        CHECK(err.line() == 1);
    }
    SUBCASE("reference outside the settings lists") {
        const auto err = config_error([] { parse_run_config("generator.settings_A = z\nanalysis.correlations = A1:B0\n"); });
        CHECK(err.field() == "analysis.correlations");
        CHECK(err.line() == 2);
    }
    SUBCASE("malformed direction") {
        const auto err = config_error([] { parse_run_config("generator.settings_B = z; sideways\n"); });
        CHECK(err.field() == "generator.settings_B");
    }
    SUBCASE("negative event count") {
        const auto err = config_error([] { parse_run_config("generator.n_events = -3\n"); });
        CHECK(err.field() == "generator.n_events");
    }
    SUBCASE("solid angle beyond 4 pi") {
        const auto err = config_error([] { parse_run_config("cut.solid_angle = 20\n"); });
        CHECK(err.field() == "cut.solid_angle");
        CHECK(err.line() == 1);
    }
    SUBCASE("unknown log level") {
        const auto err = config_error([] { parse_run_config("log.level = loud\n"); });
        CHECK(err.field() == "log.level");
    }
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 g(1234);
    for (int i = 0; i < 300; ++i) {
        const auto c = random_config(g);
        REQUIRE_NOTHROW(c.validate());
        const auto text = serialize_run_config(c);
        const auto back = parse_run_config(text);
        CHECK(back == c);
        CHECK(serialize_run_config(back) == text);
    }
}

TEST_CASE("overlays replace keys") {
    auto kv = KeyValueConfig::parse(kSample);
    kv.overlay(KeyValueConfig::parse("cut.solid_angle = 0.5\n"));
    CHECK(run_config_from(kv).cut.solid_angle == 0.5);
    CHECK(run_config_from(kv).generator.seed == 7);
}

TEST_CASE("sweep specs") {
    const auto kv = KeyValueConfig::parse("sweep.parameter = kappa_par\nsweep.values = 0, 1, 2.5\nsweep.n_events = 100\n");
    const auto spec = sweep_spec_from(kv);
    CHECK(spec.parameter == "kappa_par");
    CHECK(spec.values == std::vector<double>{0.0, 1.0, 2.5});
    CHECK(spec.n_events == 100);

    const auto base = parse_run_config(kSample);
    const auto point = apply_sweep_point(base, spec, 2.5);
    CHECK(point.generator.emission.kappa_par == 2.5);
    CHECK(point.generator.n_events == 100);
    CHECK(apply_sweep_point(base, SweepSpec{"solid_angle", {0.1}, 0}, 0.1).cut.solid_angle == 0.1);
    CHECK(apply_sweep_point(base, SweepSpec{"E_min", {0.1}, 0}, 0.1).generator.emission.E_min == 0.1);

    // A sweep block next to a run config does not upset the run parser.
    CHECK_NOTHROW(parse_run_config(std::string(kSample) + "sweep.parameter = alpha\nsweep.values = 0.1\n"));

    const auto non_monotone = KeyValueConfig::parse("sweep.parameter = alpha\nsweep.values = 0.1, 0.3, 0.2\n");
    CHECK(config_error([&] { sweep_spec_from(non_monotone); }).field() == "sweep.values");
    const auto descending = KeyValueConfig::parse("sweep.parameter = E_min\nsweep.values = 1e-2, 1e-3, 1e-4\n");
    CHECK(sweep_spec_from(descending).values.size() == 3);
    const auto bad_name = KeyValueConfig::parse("sweep.parameter = m_B\nsweep.values = 0.1\n");
    CHECK(config_error([&] { sweep_spec_from(bad_name); }).field() == "sweep.parameter");
    const auto empty = KeyValueConfig::parse("sweep.parameter = alpha\nsweep.values = \n");
    CHECK_THROWS_AS(sweep_spec_from(empty), ConfigError);
}
