#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pmsim/error.hpp"
#include "pmsim/pump.hpp"
#include "pmsim/sweep.hpp"
#include "pmsim/transfer.hpp"

using namespace pmsim;

namespace {

const ResponseFn kFlat = [](double) { return cdouble{1.0, 0.0}; };

PumpSpec single(double center, double bandwidth) {
    return PumpSpec{{{1.0, center, 0.0}}, sigma_from_bandwidth(bandwidth)};
}

// Operating point of the bin-splitting figures with delta_p = delta_mu.
MoleculeParams fig4_params() {
    MoleculeParams p;
    p.kappa = {3.0, 0.1, 0.1};
    return enforce_delta_match(p);
}

double max_relative_change(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        scale = std::max(scale, std::abs(a[k]));
        diff = std::max(diff, std::abs(a[k] - b[k]));
    }
    return diff / scale;
}

}  // namespace

TEST_CASE("pump amplitude peak and half maximum") {
    const PumpSpec spec = single(0.3, 0.6);
    CHECK(pump_amplitude(spec, 0.3) == cdouble{1.0, 0.0});
    CHECK(std::norm(pump_amplitude(spec, 0.3 + 0.3)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::norm(pump_amplitude(spec, 0.3 - 0.3)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spec.bandwidth() == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("well-separated components do not interfere") {
    const double sigma = sigma_from_bandwidth(0.4);
    const double sep = 20.0 / std::sqrt(sigma);
    const PumpSpec spec{{{1.0, 0.0, 0.0}, {1.0, sep, 0.0}}, sigma};
    const PumpSpec first{{{1.0, 0.0, 0.0}}, sigma};
    const PumpSpec second{{{1.0, sep, 0.0}}, sigma};
    for (double w : {0.0, sep}) {
        CHECK(std::abs(pump_amplitude(spec, w)) == doctest::Approx(1.0).epsilon(1e-6));
        const cdouble cross = pump_amplitude(spec, w) - pump_amplitude(first, w) - pump_amplitude(second, w);
        CHECK(std::abs(cross) < 1e-6);
        CHECK(std::abs(pump_amplitude(w == 0.0 ? second : first, w)) < 1e-6);
    }
}

TEST_CASE("pump spec validation") {
    CHECK_THROWS_AS(PumpSpec{}.validate(), Error);
    CHECK_THROWS_AS((PumpSpec{{{0.0, 0.0, 0.0}}, 1.0}.validate()), Error);
    CHECK_THROWS_AS((PumpSpec{{{1.0, 0.0, 0.0}}, 0.0}.validate()), Error);
    CHECK_THROWS_AS((PumpSpec{{{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, 1.0}.validate()), Error);
    CHECK_THROWS_AS((PumpSpec{{{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {1.0, 2.0, 0.0}}, 1.0}.validate()), Error);
    CHECK_NOTHROW((PumpSpec{{{0.0, 0.0, 0.0}, {2.0, 1.0, 0.0}}, 1.0}.validate()));
    const PumpSpec n = PumpSpec{{{0.5, 0.0, 0.0}, {2.0, 1.0, 0.0}}, 1.0}.normalized();
    CHECK(n.components[0].weight == doctest::Approx(0.25));
    CHECK(n.components[1].weight == doctest::Approx(1.0));
}

TEST_CASE("flat response reproduces the Gaussian self-convolution") {
    const double center = 0.25;
    const PumpSpec spec = single(center, 0.6);
    const auto grid = FrequencyGrid::centered(center, 1.5, 128);
    const PumpConvolution conv = convolve(spec, kFlat, grid, grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < conv.values.size(); ++k) {
        const double s = conv.sum_frequency(k);
        const double ref = oracle::gaussian_self_convolution(spec.sigma, center, s);
        if (ref < 1e-12) continue;
        worst = std::max(worst, std::abs(conv.values[k] - ref) / ref);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("two equal components give 1:2:1 humps") {
    const double sigma = sigma_from_bandwidth(0.1);
    const double c1 = -0.5;
    const double c2 = 0.5;
    const PumpSpec spec{{{1.0, c1, 0.0}, {1.0, c2, 0.0}}, sigma};
    const auto grid = FrequencyGrid::centered(0.0, 1.5, 301);
    const PumpConvolution conv = convolve(spec, kFlat, grid, grid);
    auto at = [&](double s) {
        const double k = (s - conv.s_start) / conv.s_step;
        return std::abs(conv.values[static_cast<std::size_t>(std::lround(k))]);
    };
    const double low = at(2.0 * c1);
    const double mid = at(c1 + c2);
    const double high = at(2.0 * c2);
    CHECK(mid / low == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(high / low == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("convolution depends only on the sum frequency") {
    const MoleculeParams p = fig4_params();
    const PumpSpec spec{{{1.0, 0.0, 0.3}, {0.7, 1.0, -0.2}}, sigma_from_bandwidth(0.6)};
    const auto grid = FrequencyGrid::centered(0.0, 3.0, 96);
    const PumpConvolution conv = convolve(spec, p, grid, grid);
    // Direct evaluation of the integral at each (i, j) cell along a few anti-diagonals.
    const ModeResponse mp = mode_response(p, FieldLabel::Pump);
    auto loaded = [&](double w) { return mp(w) * pump_amplitude(spec, w); };
    double scale = 0.0;
    for (const auto& v : conv.values) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t d : {40ul, 95ul, 120ul}) {
        const cdouble reference = conv.values[d];
        for (std::size_t i = (d >= grid.count ? d - grid.count + 1 : 0); i <= std::min(d, grid.count - 1); i += 7) {
            worst = std::max(worst, std::abs(conv.at(i, d - i) - reference) / scale);
        }
        const double s = conv.sum_frequency(d);
        const cdouble brute = oracle::trapezoid_convolution(loaded, s, -8.0, 9.0, 400000);
        CHECK(std::abs(brute - reference) / scale < 1e-6);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("common phase shift leaves |I_p| unchanged") {
    const MoleculeParams p = fig4_params();
    const auto grid = FrequencyGrid::centered(0.0, 3.0, 128);
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 5; ++trial) {
        const double pa = phase(rng);
        const double pb = phase(rng);
        const double shift = phase(rng);
        const PumpSpec base{{{1.0, 0.0, pa}, {0.8, 1.0, pb}}, sigma_from_bandwidth(0.6)};
        PumpSpec shifted = base;
        for (auto& c : shifted.components) c.phase += shift;
        const PumpConvolution a = convolve(base, p, grid, grid);
        const PumpConvolution b = convolve(shifted, p, grid, grid);
        double worst = 0.0;
        for (std::size_t k = 0; k < a.values.size(); ++k) {
            worst = std::max(worst, std::abs(std::abs(a.values[k]) - std::abs(b.values[k])));
            // The global phase is exp(-2 i shift).
            const cdouble rotated = a.values[k] * std::exp(cdouble{0.0, -2.0 * shift});
            CHECK(std::abs(rotated - b.values[k]) < 1e-12);
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("halving the quadrature step changes I_p below 1e-8") {
    const MoleculeParams p = fig4_params();
    const PumpSpec spec{{{1.0, 0.0, 0.0}, {1.0, 0.99937, 0.0}}, sigma_from_bandwidth(0.6)};
    const auto grid = FrequencyGrid::centered(0.0, 3.0, 128);
    const PumpConvolution coarse = convolve(spec, p, grid, grid);
    QuadratureOptions fine;
    fine.step = coarse.quadrature.step / 2.0;
    const PumpConvolution refined = convolve(spec, p, grid, grid, fine);
    CHECK(max_relative_change(coarse.values, refined.values) < 1e-8);
}

TEST_CASE("a window that clips the integrand is rejected") {
    const MoleculeParams p = fig4_params();
    const auto grid = FrequencyGrid::centered(0.0, 3.0, 128);
    QuadratureOptions narrow;
    narrow.window_widths = 1.0;
    CHECK_THROWS_AS(convolve(single(0.0, 0.6), p, grid, grid, narrow), Error);
    try {
        convolve(single(0.0, 0.6), p, grid, grid, narrow);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::QuadratureWindowTooNarrow);
    }
}

TEST_CASE("grids with different steps are rejected") {
    const auto a = FrequencyGrid::centered(0.0, 3.0, 128);
    const auto b = FrequencyGrid::centered(0.0, 2.0, 128);
    CHECK_THROWS_AS(convolve(single(0.0, 0.6), kFlat, a, b), Error);
}

TEST_CASE("physical pump response: humps at the pump-mode sums") {
    const MoleculeParams p = fig4_params();
    const double delta = splitting(p, FieldLabel::Pump);
    const double upper = p.omega0.pump + delta / 2.0;
    const auto grid = FrequencyGrid::centered(0.0, 1.5, 512);

    SUBCASE("narrow two-component pump resolves three humps") {
        const PumpSpec spec{{{1.0, p.omega0.pump, 0.0}, {1.0, upper, 0.0}}, sigma_from_bandwidth(0.2)};
        const PumpConvolution conv = convolve(spec, p, grid, grid);
        std::vector<double> mag(conv.values.size());
        for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(conv.values[k]);
        const auto maxima = oracle::local_maxima(mag);
        REQUIRE(maxima.size() == 3);
        const double expected[3] = {2.0 * p.omega0.pump, p.omega0.pump + upper, 2.0 * upper};
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(conv.sum_frequency(maxima[k]) - expected[k]) <= conv.s_step);
        }
    }

    SUBCASE("at the operating bandwidth the humps merge") {
        const PumpSpec spec{{{1.0, p.omega0.pump, 0.0}, {1.0, upper, 0.0}}, sigma_from_bandwidth(0.6)};
        const PumpConvolution conv = convolve(spec, p, grid, grid);
        std::vector<double> mag(conv.values.size());
        for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(conv.values[k]);
        const auto maxima = oracle::local_maxima(mag);
        REQUIRE(maxima.size() == 1);
        CHECK(conv.sum_frequency(maxima[0]) == doctest::Approx(0.988).epsilon(5e-3));
    }
}
