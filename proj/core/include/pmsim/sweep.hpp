#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pmsim/config.hpp"
#include "pmsim/error.hpp"
#include "pmsim/params.hpp"

namespace pmsim {

// Solves delta_p = delta_mu for the pump ring-ring coupling:
//   g_p = sqrt(g_mu^2 - kappa_mu^2 / 8 + kappa_p^2 / 8), mu = signal.
MoleculeParams enforce_delta_match(const MoleculeParams& params);

enum class Metric { K, P, Theta, Phi, Fidelity, HeraldWeight };

std::string_view to_string(Metric metric) noexcept;
// Accepts K, P, theta, phi, fidelity, herald_weight; throws InvalidConfig otherwise.
Metric parse_metric(std::string_view name);

struct SweepAxis {
    std::string path;             // dotted path to a scalar in the config document
    std::vector<double> values;   // strictly monotone
};

struct SweepSpec {
    nlohmann::json base;          // canonical config document (defaults filled in)
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<Metric> metrics{Metric::K};
    unsigned threads = 0;         // 0: hardware concurrency, capped by PMSIM_THREADS

    // Throws InvalidConfig for unresolvable paths or non-monotone values.
    void validate() const;
};

// Builds a spec from a config carrying a `sweep` block.
SweepSpec make_sweep_spec(const Config& config);

struct SweepRow {
    std::size_t index1 = 0;
    std::size_t index2 = 0;
    double value1 = 0.0;
    double value2 = 0.0;          // NaN without a second axis
    std::map<Metric, double> values;  // NaN where a metric does not apply
    std::optional<ErrorCode> error;
    std::string message;
};

// Rows are ordered by (index1, index2) regardless of worker count.
struct SweepTable {
    SweepSpec spec;
    std::vector<SweepRow> rows;

    std::size_t size1() const noexcept { return spec.axis1.values.size(); }
    std::size_t size2() const noexcept { return spec.axis2 ? spec.axis2->values.size() : 1; }
};

// Point failures are recorded in their row and never abort the sweep.
SweepTable run_sweep(const SweepSpec& spec);

// min(requested or hardware concurrency, PMSIM_THREADS when set), at least 1.
unsigned worker_count(unsigned requested);

}  // namespace pmsim
