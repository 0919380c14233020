#include "pmsim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pmsim/error.hpp"
#include "pmsim/schmidt.hpp"
#include "pmsim/sweep.hpp"
#include "pmsim/transfer.hpp"

namespace pmsim {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxGridCount = 16384;

void apply_field_overrides(const json& block, const char* key, PerField<double>& target) {
    const auto it = block.find(key);
    if (it == block.end()) return;
    if (!it->is_object()) throw Error(ErrorCode::InvalidConfig, std::string("overrides.") + key + " must be an object");
    for (const auto& [name, value] : it->items()) {
        if (!value.is_number()) {
            throw Error(ErrorCode::InvalidConfig, "overrides." + std::string(key) + "." + name + " must be a number");
        }
        bool matched = false;
        for (FieldLabel label : kAllFields) {
            if (name == to_string(label)) {
                target[label] = value.get<double>();
                matched = true;
            }
        }
        if (!matched) throw Error(ErrorCode::InvalidConfig, "unknown field label '" + name + "'");
    }
}

}  // namespace

PumpCenters pump_centers(const MoleculeParams& params) {
    const double delta_i = splitting(params, FieldLabel::Idler);
    const double delta_s = splitting(params, FieldLabel::Signal);
    const double mid = 0.5 * (params.omega0.idler + params.omega0.signal);
    return {mid + 0.25 * (delta_i - delta_s), mid + 0.25 * (delta_i + delta_s),
            mid - 0.25 * (delta_i + delta_s)};
}

MoleculeParams resolve_molecule(const MoleculeConfig& config) {
    MoleculeParams p;
    const double g_mu = 1.0;
    p.g = {config.g_p_over_g_mu * g_mu, g_mu, config.g_i_over_g_s * g_mu};
    const double kappa_mu = config.kappa_mu_over_g_mu * g_mu;
    p.kappa = {config.kappa_p_over_kappa_mu * kappa_mu, kappa_mu, kappa_mu};
    const double gamma = config.gamma_over_g_mu * g_mu;
    p.gamma_x_pump = gamma;
    p.gamma_y = {gamma, gamma, gamma};
    p.gamma_z = {0.0, gamma, gamma};
    p.omega0 = {config.omega0_mu, config.omega0_mu, config.omega0_mu};

    const json& o = config.overrides;
    for (const auto& [key, value] : o.items()) {
        static constexpr const char* kKnown[] = {"g", "kappa", "gamma_x_pump", "gamma_y", "gamma_z", "omega0"};
        if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }) ==
            std::end(kKnown)) {
            throw Error(ErrorCode::InvalidConfig, "unknown molecule override '" + key + "'");
        }
    }
    apply_field_overrides(o, "g", p.g);
    apply_field_overrides(o, "kappa", p.kappa);
    apply_field_overrides(o, "gamma_y", p.gamma_y);
    apply_field_overrides(o, "gamma_z", p.gamma_z);
    apply_field_overrides(o, "omega0", p.omega0);
    if (const auto it = o.find("gamma_x_pump"); it != o.end()) {
        if (!it->is_number()) throw Error(ErrorCode::InvalidConfig, "overrides.gamma_x_pump must be a number");
        p.gamma_x_pump = it->get<double>();
    }
    if (config.delta_match) {
        validate(p, ValidationMode::TransferOnly);
        p = enforce_delta_match(p);
    }
    return p;
}

Scenario resolve(const Config& config) {
    Scenario s;
    s.params = resolve_molecule(config.molecule);
    const bool qubit = config.pump.kind == PumpConfig::Kind::Qubit;
    s.mode = qubit ? ValidationMode::QubitGeneration : ValidationMode::BinSplitting;
    s.params = validate(s.params, s.mode);

    const PumpCenters centers = pump_centers(s.params);
    s.pump.sigma = sigma_from_bandwidth(config.pump.dwp_over_g_mu * s.params.g.signal);
    if (qubit) {
        if (!(config.pump.a >= 0.0) || !(config.pump.b >= 0.0)) {
            throw Error(ErrorCode::InvalidPump, "pump A and B must be >= 0");
        }
        s.pump.components = {{std::sqrt(config.pump.a), centers.cross, 0.5 * config.pump.phi_a},
                             {std::sqrt(config.pump.b), centers.upper, 0.5 * config.pump.phi_b}};
        s.target = programmed_target(config.pump.a, config.pump.b, config.pump.phi_a, config.pump.phi_b);
    } else {
        s.pump.components = {{1.0, centers.upper, 0.0}};
    }
    s.pump.validate();

    if (config.grid.count < FrequencyGrid::kMinCount || config.grid.count > kMaxGridCount) {
        throw Error(ErrorCode::InvalidGrid, "grid.count must lie in [64, 16384]");
    }
    const double half_width = config.grid.half_width_over_g_mu * s.params.g.signal;
    s.idler_grid = FrequencyGrid::centered(s.params.omega0.idler, half_width, config.grid.count);
    s.signal_grid = FrequencyGrid::centered(s.params.omega0.signal, half_width, config.grid.count);
    if (!(config.grid.quadrature_points_per_width > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "grid.quadrature_points_per_width must be > 0");
    }
    s.quadrature.points_per_width = config.grid.quadrature_points_per_width;

    s.herald = config.analysis.herald == AnalysisConfig::Herald::Mode
                   ? HeraldFilter::mode_projection()
                   : HeraldFilter::upper_bin_top_hat(s.params, config.analysis.tophat_width_over_delta);
    switch (config.analysis.schmidt_scope) {
        case AnalysisConfig::Scope::Auto: s.single_bin_schmidt = !qubit; break;
        case AnalysisConfig::Scope::Full: s.single_bin_schmidt = false; break;
        case AnalysisConfig::Scope::Bin: s.single_bin_schmidt = true; break;
    }
    if (!(config.analysis.bin_window_over_delta > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "analysis.bin_window_over_delta must be > 0");
    }
    s.bin_window_over_delta = config.analysis.bin_window_over_delta;
    s.max_bin_overlap = config.analysis.max_bin_overlap;
    return s;
}

Jsa build_jsa(const Scenario& scenario) {
    const MoleculeParams params = validate(scenario.params, scenario.mode);
    return build_jsa(params, scenario.pump, scenario.idler_grid, scenario.signal_grid, scenario.quadrature);
}

Jsa upper_bin_window(const Jsa& jsa, const MoleculeParams& params, double window_over_delta) {
    const PeakPair idler = peak_decomposition(params, FieldLabel::Idler);
    const PeakPair signal = peak_decomposition(params, FieldLabel::Signal);
    const double half_i = 0.5 * window_over_delta * idler.delta;
    const double half_s = 0.5 * window_over_delta * signal.delta;
    return restrict(jsa, idler.center_plus() - half_i, idler.center_plus() + half_i,
                    signal.center_plus() - half_s, signal.center_plus() + half_s);
}

PointMetrics evaluate(const Scenario& scenario) {
    const Jsa jsa = build_jsa(scenario);
    PointMetrics metrics;
    metrics.jsa_norm = jsa.norm;
    metrics.schmidt_number =
        scenario.single_bin_schmidt
            ? schmidt_number(upper_bin_window(jsa, scenario.params, scenario.bin_window_over_delta))
            : schmidt_number(jsa);
    metrics.purity = 1.0 / metrics.schmidt_number;

    if (scenario.target) {
        const SignalState heralded = herald(jsa, scenario.params, scenario.herald);
        metrics.herald_weight = heralded.herald_weight;
        metrics.qubit = extract_bins(heralded, scenario.params, scenario.max_bin_overlap);
        metrics.fidelity = fidelity(*metrics.qubit, *scenario.target);
    }
    return metrics;
}

Jsa make_fixture(const FixtureConfig& fixture) {
    if (fixture.count < 2 || !(fixture.half_width > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "fixture needs count >= 2 and half_width > 0");
    }
    const FrequencyGrid grid = FrequencyGrid::centered(0.0, fixture.half_width, fixture.count);
    const auto n = static_cast<Eigen::Index>(fixture.count);
    auto normalized = [&](auto&& fn) {
        Eigen::VectorXd v(n);
        for (Eigen::Index k = 0; k < n; ++k) v[k] = fn(grid[static_cast<std::size_t>(k)]);
        return Eigen::VectorXd(v / (v.norm() * std::sqrt(grid.step)));
    };
    const Eigen::VectorXd hg0 = normalized([](double x) { return std::exp(-0.5 * x * x); });
    const Eigen::VectorXd hg1 = normalized([](double x) { return x * std::exp(-0.5 * x * x); });

    Eigen::MatrixXd samples = hg0 * hg0.transpose();
    if (fixture.kind == FixtureConfig::Kind::TwoMode) {
        samples = (samples + hg1 * hg1.transpose()) / std::numbers::sqrt2;
    }
    return make_jsa(grid, grid, samples.cast<std::complex<double>>());
}

}  // namespace pmsim
