#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>

#include "pmsim/config.hpp"
#include "pmsim/error.hpp"
#include "pmsim/pipeline.hpp"
#include "pmsim/sweep.hpp"
#include "pmsim/transfer.hpp"

using namespace pmsim;

namespace {

Config small_config() {
    Config c;
    c.grid.count = 700;
    c.grid.half_width_over_g_mu = 2.0;
    return c;
}

SweepSpec two_axis_spec(unsigned threads) {
    SweepSpec spec;
    spec.base = small_config().to_json();
    spec.axis1 = {"molecule.kappa_p_over_kappa_mu", {10.0, 30.0}};
    spec.axis2 = SweepAxis{"pump.dwp_over_g_mu", {0.4, 0.6, 0.9}};
    spec.metrics = {Metric::K, Metric::P};
    spec.threads = threads;
    return spec;
}

bool same_bits(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST_CASE("delta matching examples") {
    MoleculeParams p;
    p.kappa = {3.0, 0.1, 0.1};
    const MoleculeParams m = enforce_delta_match(p);
    CHECK(m.g.pump == doctest::Approx(std::sqrt(1.0 - 0.00125 + 9.0 / 8.0)).epsilon(1e-14));
    CHECK(m.g.pump == doctest::Approx(1.45731).epsilon(1e-5));
    CHECK(m.kappa.pump / m.g.pump == doctest::Approx(2.058).epsilon(1e-3));
    CHECK(splitting(m, FieldLabel::Pump) == doctest::Approx(splitting(m, FieldLabel::Signal)).epsilon(1e-14));

    MoleculeParams same;
    CHECK(enforce_delta_match(same).g.pump == doctest::Approx(1.0).epsilon(1e-15));

    MoleculeParams edge;
    edge.kappa = {std::sqrt(8.0), 0.0, 0.0};
    const MoleculeParams e = enforce_delta_match(edge);
    CHECK(e.g.pump == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(splitting(e, FieldLabel::Pump) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quoted pump ratios are consistent with matched splittings") {
    const double g_p = 1.46;
    const double kappa_p = 2.06 * g_p;
    const double ratio = splitting(g_p, kappa_p) / splitting(1.0, 0.1);
    CHECK(std::abs(ratio - 1.001) <= 0.002);
}

TEST_CASE("delta matching is idempotent and preserves the other fields") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        MoleculeParams p;
        p.g.signal = u(rng);
        p.kappa = {u(rng), 0.5 * p.g.signal, u(rng)};
        const MoleculeParams once = enforce_delta_match(p);
        CHECK(enforce_delta_match(once) == once);
        MoleculeParams restored = once;
        restored.g.pump = p.g.pump;
        CHECK(restored == p);
        CHECK(splitting(once, FieldLabel::Pump) == doctest::Approx(splitting(once, FieldLabel::Signal)).epsilon(1e-12));
    }
}

TEST_CASE("metric names round-trip") {
    for (Metric m : {Metric::K, Metric::P, Metric::Theta, Metric::Phi, Metric::Fidelity, Metric::HeraldWeight}) {
        CHECK(parse_metric(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_metric("entropy"), Error);
}

TEST_CASE("sweep validation") {
    SweepSpec spec = two_axis_spec(1);
    CHECK_NOTHROW(spec.validate());
    spec.axis2->values = {0.4, 0.4, 0.9};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.axis2->values = {0.9, 0.6, 0.4};
    CHECK_NOTHROW(spec.validate());
    spec.axis2->path = "pump.kind";
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.axis2->path = "pump.no_such_key";
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.axis2->path = spec.axis1.path;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.axis2.reset();
    spec.metrics.clear();
    CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("single-point sweep matches a direct evaluation") {
    SweepSpec spec;
    spec.base = small_config().to_json();
    spec.axis1 = {"pump.dwp_over_g_mu", {0.6}};
    spec.metrics = {Metric::K, Metric::P};
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 1);
    CHECK(std::isnan(table.rows[0].value2));
    const PointMetrics direct = evaluate(resolve(small_config()));
    CHECK(table.rows[0].values.at(Metric::K) == direct.schmidt_number);
    CHECK(table.rows[0].values.at(Metric::P) == direct.purity);
}

TEST_CASE("serial and parallel sweeps agree bit for bit") {
    const SweepTable serial = run_sweep(two_axis_spec(1));
    const SweepTable parallel = run_sweep(two_axis_spec(3));
    REQUIRE(serial.rows.size() == 6);
    REQUIRE(parallel.rows.size() == 6);
    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        const SweepRow& a = serial.rows[k];
        const SweepRow& b = parallel.rows[k];
        CHECK(a.index1 == k / 3);
        CHECK(a.index2 == k % 3);
        CHECK(a.index1 == b.index1);
        CHECK(a.index2 == b.index2);
        CHECK(!a.error);
        for (const auto& [metric, value] : a.values) CHECK(same_bits(value, b.values.at(metric)));
    }
    const SweepTable again = run_sweep(two_axis_spec(1));
    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        CHECK(same_bits(serial.rows[k].values.at(Metric::K), again.rows[k].values.at(Metric::K)));
    }
}

TEST_CASE("a failing point is recorded without aborting the sweep") {
    SweepSpec spec;
    spec.base = small_config().to_json();
    spec.axis1 = {"molecule.kappa_mu_over_g_mu", {0.1, 3.0}};
    spec.metrics = {Metric::K, Metric::Theta};
    spec.threads = 2;
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 2);
    CHECK(!table.rows[0].error);
    CHECK(table.rows[0].values.at(Metric::K) > 1.0);
    CHECK(std::isnan(table.rows[0].values.at(Metric::Theta)));
    REQUIRE(table.rows[1].error);
    CHECK(*table.rows[1].error == ErrorCode::OvercoupledForSplitting);
    CHECK(!table.rows[1].message.empty());
    CHECK(std::isnan(table.rows[1].values.at(Metric::K)));
}

TEST_CASE("log10(K-1) along the pump bandwidth has at most two inflections") {
    SweepSpec spec;
    spec.base = small_config().to_json();
    spec.axis1 = {"pump.dwp_over_g_mu", {0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5}};
    set_number(spec.base, "molecule.kappa_p_over_kappa_mu", 50.0);
    const SweepTable table = run_sweep(spec);
    std::vector<double> y;
    for (const auto& row : table.rows) {
        REQUIRE(!row.error);
        y.push_back(std::log10(row.values.at(Metric::K) - 1.0));
    }
    int flips = 0;
    double last_sign = 0.0;
    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        const double second = y[k + 1] - 2.0 * y[k] + y[k - 1];
        const double sign = second > 0 ? 1.0 : -1.0;
        if (last_sign != 0.0 && sign != last_sign) ++flips;
        last_sign = sign;
    }
    CHECK(flips <= 2);
}

TEST_CASE("worker count honours PMSIM_THREADS") {
    ::setenv("PMSIM_THREADS", "2", 1);
    CHECK(worker_count(8) == 2);
    CHECK(worker_count(1) == 1);
    CHECK(worker_count(0) <= 2);
    ::setenv("PMSIM_THREADS", "junk", 1);
    CHECK(worker_count(3) == 3);
    ::unsetenv("PMSIM_THREADS");
    CHECK(worker_count(5) == 5);
}

TEST_CASE("sweep spec from a config document") {
    Config c = small_config();
    c.sweep = SweepConfig{{"pump.dwp_over_g_mu", {0.5, 0.6}}, std::nullopt, {"K", "P"}, 1};
    const SweepSpec spec = make_sweep_spec(c);
    CHECK(spec.axis1.values.size() == 2);
    CHECK(spec.metrics == std::vector<Metric>{Metric::K, Metric::P});
    CHECK(!spec.base.contains("sweep"));
    c.sweep->metrics = {"bogus"};
    CHECK_THROWS_AS(make_sweep_spec(c), Error);
    c.sweep.reset();
    CHECK_THROWS_AS(make_sweep_spec(c), Error);
}
