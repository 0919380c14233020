#include "pmsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "pmsim/pipeline.hpp"

namespace pmsim {

MoleculeParams enforce_delta_match(const MoleculeParams& params) {
    MoleculeParams out = params;
    const double g_mu = params.g.signal;
    const double kappa_mu = params.kappa.signal;
    const double kappa_p = params.kappa.pump;
    out.g.pump = std::sqrt(g_mu * g_mu - kappa_mu * kappa_mu / 8.0 + kappa_p * kappa_p / 8.0);
    return out;
}

std::string_view to_string(Metric metric) noexcept {
    switch (metric) {
        case Metric::K: return "K";
        case Metric::P: return "P";
        case Metric::Theta: return "theta";
        case Metric::Phi: return "phi";
        case Metric::Fidelity: return "fidelity";
        case Metric::HeraldWeight: return "herald_weight";
    }
    return "unknown";
}

Metric parse_metric(std::string_view name) {
    for (Metric m : {Metric::K, Metric::P, Metric::Theta, Metric::Phi, Metric::Fidelity,
                     Metric::HeraldWeight}) {
        if (name == to_string(m)) return m;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown sweep metric '" + std::string(name) + "'");
}

namespace {

void check_axis(const nlohmann::json& base, const SweepAxis& axis) {
    get_number(base, axis.path);
    if (axis.values.empty()) throw Error(ErrorCode::InvalidConfig, "sweep axis has no values");
    if (axis.values.size() < 2) return;
    const bool increasing = axis.values[1] > axis.values[0];
    for (std::size_t k = 1; k < axis.values.size(); ++k) {
        const bool ok = increasing ? axis.values[k] > axis.values[k - 1]
                                   : axis.values[k] < axis.values[k - 1];
        if (!ok) {
            throw Error(ErrorCode::InvalidConfig, "sweep values for '" + axis.path + "' are not strictly monotone");
        }
    }
}

SweepRow evaluate_row(const SweepSpec& spec, std::size_t i1, std::size_t i2) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRow row;
    row.index1 = i1;
    row.index2 = i2;
    row.value1 = spec.axis1.values[i1];
    row.value2 = spec.axis2 ? spec.axis2->values[i2] : nan;
    for (Metric m : spec.metrics) row.values[m] = nan;

    try {
        nlohmann::json doc = spec.base;
        set_number(doc, spec.axis1.path, row.value1);
        if (spec.axis2) set_number(doc, spec.axis2->path, row.value2);
        const PointMetrics point = evaluate(resolve(Config::from_json(doc)));
        for (Metric m : spec.metrics) {
            double value = nan;
            switch (m) {
                case Metric::K: value = point.schmidt_number; break;
                case Metric::P: value = point.purity; break;
                case Metric::Theta: value = point.qubit ? point.qubit->theta : nan; break;
                case Metric::Phi: value = point.qubit ? point.qubit->phi : nan; break;
                case Metric::Fidelity: value = point.fidelity.value_or(nan); break;
                case Metric::HeraldWeight: value = point.herald_weight.value_or(nan); break;
            }
            row.values[m] = value;
        }
    } catch (const Error& e) {
        row.error = e.code();
        row.message = e.what();
    }
    return row;
}

}  // namespace

void SweepSpec::validate() const {
    check_axis(base, axis1);
    if (axis2) {
        check_axis(base, *axis2);
        if (axis2->path == axis1.path) {
            throw Error(ErrorCode::InvalidConfig, "sweep axes must use different paths");
        }
    }
    if (metrics.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs at least one metric");
}

SweepSpec make_sweep_spec(const Config& config) {
    if (!config.sweep) throw Error(ErrorCode::InvalidConfig, "config has no sweep block");
    Config base = config;
    base.sweep.reset();
    SweepSpec spec;
    spec.base = base.to_json();
    spec.axis1 = {config.sweep->axis1.path, config.sweep->axis1.values};
    if (config.sweep->axis2) spec.axis2 = SweepAxis{config.sweep->axis2->path, config.sweep->axis2->values};
    spec.metrics.clear();
    for (const auto& name : config.sweep->metrics) spec.metrics.push_back(parse_metric(name));
    spec.threads = config.sweep->threads;
    spec.validate();
    return spec;
}

unsigned worker_count(unsigned requested) {
    unsigned workers = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("PMSIM_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(cap, &end, 10);
        if (end != cap && value > 0) workers = std::min(workers, static_cast<unsigned>(value));
    }
    return std::max(1u, workers);
}

SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepTable table;
    table.spec = spec;
    const std::size_t n1 = table.size1();
    const std::size_t n2 = table.size2();
    const std::size_t total = n1 * n2;
    table.rows.resize(total);

    const unsigned workers = std::min<unsigned>(worker_count(spec.threads), static_cast<unsigned>(total));
    if (workers <= 1) {
        for (std::size_t k = 0; k < total; ++k) table.rows[k] = evaluate_row(spec, k / n2, k % n2);
        return table;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < total; k = next++) {
                table.rows[k] = evaluate_row(spec, k / n2, k % n2);
            }
        });
    }
    pool.clear();
    return table;
}

}  // namespace pmsim
