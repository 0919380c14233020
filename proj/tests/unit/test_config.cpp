#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "pmsim/config.hpp"
#include "pmsim/error.hpp"

using namespace pmsim;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no pmsim::Error thrown");
    return ErrorCode::SvdFailure;
}

Config random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::bernoulli_distribution coin(0.5);
    Config c;
    c.molecule.kappa_mu_over_g_mu = u(rng);
    c.molecule.kappa_p_over_kappa_mu = u(rng);
    c.molecule.delta_match = coin(rng);
    c.molecule.g_p_over_g_mu = u(rng);
    c.molecule.g_i_over_g_s = u(rng);
    c.molecule.gamma_over_g_mu = u(rng) * 1e-3;
    c.molecule.omega0_mu = u(rng) - 5.0;
    if (coin(rng)) c.molecule.overrides = {{"kappa", {{"idler", u(rng)}}}};
    c.pump.kind = coin(rng) ? PumpConfig::Kind::Qubit : PumpConfig::Kind::Single;
    c.pump.dwp_over_g_mu = u(rng);
    c.pump.a = u(rng);
    c.pump.b = u(rng);
    c.pump.phi_a = u(rng);
    c.pump.phi_b = u(rng);
    c.grid.count = 64 + static_cast<std::size_t>(u(rng) * 100);
    c.grid.half_width_over_g_mu = u(rng);
    c.analysis.herald = coin(rng) ? AnalysisConfig::Herald::TopHat : AnalysisConfig::Herald::Mode;
    c.analysis.schmidt_scope = coin(rng) ? AnalysisConfig::Scope::Full : AnalysisConfig::Scope::Auto;
    c.analysis.bin_window_over_delta = u(rng);
    if (coin(rng)) {
        c.sweep = SweepConfig{{"pump.dwp_over_g_mu", {u(rng), 10.0 + u(rng)}}, std::nullopt, {"K", "theta"}, 2};
        if (coin(rng)) c.sweep->axis2 = SweepAxisConfig{"molecule.kappa_p_over_kappa_mu", {1.0, 2.0, 3.0}};
    }
    c.output.format = coin(rng) ? OutputConfig::Format::Json : OutputConfig::Format::Csv;
    c.output.path = coin(rng) ? "out/dir" : "";
    c.output.emit_gnuplot = coin(rng);
    if (coin(rng)) c.fixture = FixtureConfig{FixtureConfig::Kind::TwoMode, 100, 4.5};
    return c;
}

}  // namespace

TEST_CASE("empty document yields the defaults") {
    const Config c = Config::from_json(json::object());
    CHECK(c.schema == 1);
    CHECK(c.molecule.kappa_mu_over_g_mu == 0.1);
    CHECK(c.molecule.kappa_p_over_kappa_mu == 30.0);
    CHECK(c.pump.dwp_over_g_mu == 0.6);
    CHECK(c.grid.count == 1024);
    CHECK(c.grid.half_width_over_g_mu == 3.0);
    CHECK(!c.sweep);
    CHECK(!c.fixture);
}

TEST_CASE("to_json and from_json round-trip") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const Config c = random_config(rng);
        const json doc = c.to_json();
        const json again = Config::from_json(doc).to_json();
        CHECK(doc == again);
        CHECK(Config::from_json(json::parse(doc.dump())).to_json() == doc);
    }
}

TEST_CASE("unknown keys and wrong types are config errors") {
    CHECK(code_of([] { Config::from_json({{"molecul", json::object()}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { Config::from_json({{"pump", {{"width", 1.0}}}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { Config::from_json({{"pump", {{"dwp_over_g_mu", "wide"}}}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { Config::from_json({{"pump", {{"kind", "triple"}}}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { Config::from_json({{"schema", 2}}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { Config::from_json(json::array()); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { Config::from_json({{"sweep", {{"metrics", {"K"}}}}}); }) == ErrorCode::InvalidConfig);
    CHECK(is_config_error(ErrorCode::InvalidConfig));
    CHECK(!is_config_error(ErrorCode::SvdFailure));
}

TEST_CASE("pump keys use the upper-case amplitude names") {
    const Config c = Config::from_json({{"pump", {{"kind", "qubit"}, {"A", 2.0}, {"B", 0.5}, {"phi_b", 1.0}}}});
    CHECK(c.pump.kind == PumpConfig::Kind::Qubit);
    CHECK(c.pump.a == 2.0);
    CHECK(c.pump.b == 0.5);
    CHECK(c.pump.phi_b == 1.0);
}

TEST_CASE("dotted overrides") {
    json doc = Config{}.to_json();
    apply_override(doc, "pump.dwp_over_g_mu", "0.25");
    apply_override(doc, "pump.kind", "qubit");
    apply_override(doc, "molecule.overrides.kappa.idler", "0.2");
    apply_override(doc, "analysis.herald", "\"tophat\"");
    const Config c = Config::from_json(doc);
    CHECK(c.pump.dwp_over_g_mu == 0.25);
    CHECK(c.pump.kind == PumpConfig::Kind::Qubit);
    CHECK(c.analysis.herald == AnalysisConfig::Herald::TopHat);
    CHECK(c.molecule.overrides["kappa"]["idler"] == 0.2);
    CHECK(code_of([&] { apply_override(doc, "pump..x", "1"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([&] { apply_override(doc, "pump.kind.x", "1"); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("numeric path lookups") {
    json doc = Config{}.to_json();
    CHECK(get_number(doc, "grid.count") == 1024.0);
    set_number(doc, "pump.phi_b", 0.5);
    CHECK(get_number(doc, "pump.phi_b") == 0.5);
    CHECK(code_of([&] { get_number(doc, "pump.kind"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([&] { set_number(doc, "pump.nothing", 1.0); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("config files") {
    const std::string missing = "/nonexistent/pmsim/config.json";
    try {
        load_config(missing);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidConfig);
        CHECK(std::string(e.what()).find(missing) != std::string::npos);
    }
    const std::string path = "pmsim_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"schema": 1, "pump": {"dwp_over_g_mu": 0.3}})";
    }
    CHECK(load_config(path).pump.dwp_over_g_mu == 0.3);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK(code_of([&] { load_config(path); }) == ErrorCode::InvalidConfig);
    std::remove(path.c_str());
}
