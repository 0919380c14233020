#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pmsim {

// JSON configuration document, schema version 1. Keys are ratios that mirror
// the figure captions; every rate is in units of g_signal (g_mu).
struct MoleculeConfig {
    double kappa_mu_over_g_mu = 0.1;
    double kappa_p_over_kappa_mu = 30.0;
    bool delta_match = true;        // solve g_p from delta_p = delta_mu
    double g_p_over_g_mu = 1.46;    // used when delta_match is false
    double g_i_over_g_s = 1.0;
    double gamma_over_g_mu = 0.0;   // every loss rate
    double omega0_mu = 0.0;         // signal and idler centre; pump follows energy matching
    // Explicit per-field values applied after the ratios, e.g.
    // {"kappa": {"idler": 0.2}, "gamma_y": {"pump": 1e-4}, "gamma_x_pump": 0, "omega0": {...}}
    nlohmann::json overrides = nlohmann::json::object();
};

struct PumpConfig {
    enum class Kind { Single, Qubit };
    Kind kind = Kind::Single;       // Single: one Gaussian at omega_{++}
    double dwp_over_g_mu = 0.6;     // FWHM of |alpha|^2
    double a = 1.0;
    double b = 1.0;
    double phi_a = 0.0;
    double phi_b = 0.0;
};

struct GridConfig {
    std::size_t count = 1024;
    double half_width_over_g_mu = 3.0;
    double quadrature_points_per_width = 32.0;
};

struct AnalysisConfig {
    enum class Herald { Mode, TopHat };
    enum class Scope { Auto, Full, Bin };
    Herald herald = Herald::Mode;
    double tophat_width_over_delta = 0.5;
    Scope schmidt_scope = Scope::Auto;  // Auto: Bin for a single pump, Full for a qubit pump
    double bin_window_over_delta = 0.5;
    double max_bin_overlap = 0.05;
};

struct SweepAxisConfig {
    std::string path;
    std::vector<double> values;
};

struct SweepConfig {
    SweepAxisConfig axis1;
    std::optional<SweepAxisConfig> axis2;
    std::vector<std::string> metrics{"K"};
    unsigned threads = 0;
};

struct OutputConfig {
    enum class Format { Csv, Json };
    Format format = Format::Csv;
    std::string path;               // default output directory, overridden by --out
    bool emit_gnuplot = true;
};

// Synthetic JSA used to check the Schmidt analysis end to end.
struct FixtureConfig {
    enum class Kind { Separable, TwoMode };
    Kind kind = Kind::Separable;
    std::size_t count = 128;
    double half_width = 6.0;
};

struct Config {
    int schema = 1;
    MoleculeConfig molecule;
    PumpConfig pump;
    GridConfig grid;
    AnalysisConfig analysis;
    std::optional<SweepConfig> sweep;
    OutputConfig output;
    std::optional<FixtureConfig> fixture;

    // Throws pmsim::Error(InvalidConfig) on unknown keys, wrong types or schema mismatch.
    static Config from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

Config load_config(const std::string& path);

// Sets the dotted `path` in `doc` to `value`, parsed as JSON when possible and
// kept as a string otherwise. Missing intermediate objects are created.
void apply_override(nlohmann::json& doc, const std::string& path, const std::string& value);

// Scalar lookups on a dotted path; throw InvalidConfig when absent or not a number.
double get_number(const nlohmann::json& doc, const std::string& path);
void set_number(nlohmann::json& doc, const std::string& path, double value);

}  // namespace pmsim
