#include "pmsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pmsim/error.hpp"

namespace pmsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

// Reads keys out of one JSON object and rejects any it did not consume.
class ObjectReader {
public:
    ObjectReader(const json& object, std::string where) : object_(object), where_(std::move(where)) {
        if (!object_.is_object()) fail(where_ + " must be a JSON object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        const auto it = object_.find(key);
        if (it == object_.end()) return;
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            fail(where_ + "." + key + " has the wrong type");
        }
    }

    void read_number(const char* key, double& out) {
        seen_.insert(key);
        const auto it = object_.find(key);
        if (it == object_.end()) return;
        if (!it->is_number()) fail(where_ + "." + key + " must be a number");
        out = it->get<double>();
    }

    const json* child(const char* key) {
        seen_.insert(key);
        const auto it = object_.find(key);
        return it == object_.end() ? nullptr : &*it;
    }

    template <typename Enum, std::size_t N>
    void read_enum(const char* key, Enum& out, const std::pair<const char*, Enum> (&names)[N]) {
        std::string text;
        read(key, text);
        if (text.empty()) return;
        for (const auto& [name, value] : names) {
            if (text == name) {
                out = value;
                return;
            }
        }
        fail(where_ + "." + key + " has unknown value '" + text + "'");
    }

    void finish() const {
        for (const auto& [key, value] : object_.items()) {
            if (!seen_.contains(key)) fail("unknown key " + where_ + "." + key);
        }
    }

private:
    const json& object_;
    std::string where_;
    std::set<std::string> seen_;
};

constexpr std::pair<const char*, PumpConfig::Kind> kPumpKinds[] = {
    {"single", PumpConfig::Kind::Single}, {"qubit", PumpConfig::Kind::Qubit}};
constexpr std::pair<const char*, AnalysisConfig::Herald> kHeralds[] = {
    {"mode", AnalysisConfig::Herald::Mode}, {"tophat", AnalysisConfig::Herald::TopHat}};
constexpr std::pair<const char*, AnalysisConfig::Scope> kScopes[] = {
    {"auto", AnalysisConfig::Scope::Auto},
    {"full", AnalysisConfig::Scope::Full},
    {"bin", AnalysisConfig::Scope::Bin}};
constexpr std::pair<const char*, OutputConfig::Format> kFormats[] = {
    {"csv", OutputConfig::Format::Csv}, {"json", OutputConfig::Format::Json}};
constexpr std::pair<const char*, FixtureConfig::Kind> kFixtures[] = {
    {"separable", FixtureConfig::Kind::Separable}, {"two_mode", FixtureConfig::Kind::TwoMode}};

template <typename Enum, std::size_t N>
std::string name_of(Enum value, const std::pair<const char*, Enum> (&names)[N]) {
    for (const auto& [name, v] : names) {
        if (v == value) return name;
    }
    return {};
}

SweepAxisConfig read_axis(const json& doc, const std::string& where) {
    SweepAxisConfig axis;
    ObjectReader r(doc, where);
    r.read("path", axis.path);
    r.read("values", axis.values);
    r.finish();
    if (axis.path.empty()) fail(where + ".path is required");
    if (axis.values.empty()) fail(where + ".values must not be empty");
    return axis;
}

json axis_to_json(const SweepAxisConfig& axis) {
    return {{"path", axis.path}, {"values", axis.values}};
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream stream(path);
    std::string part;
    while (std::getline(stream, part, '.')) {
        if (part.empty()) fail("malformed key path '" + path + "'");
        parts.push_back(part);
    }
    if (parts.empty()) fail("empty key path");
    return parts;
}

}  // namespace

Config Config::from_json(const json& doc) {
    Config c;
    ObjectReader root(doc, "config");
    root.read("schema", c.schema);
    if (c.schema != 1) fail("unsupported schema version " + std::to_string(c.schema));

    if (const json* m = root.child("molecule")) {
        ObjectReader r(*m, "molecule");
        r.read_number("kappa_mu_over_g_mu", c.molecule.kappa_mu_over_g_mu);
        r.read_number("kappa_p_over_kappa_mu", c.molecule.kappa_p_over_kappa_mu);
        r.read("delta_match", c.molecule.delta_match);
        r.read_number("g_p_over_g_mu", c.molecule.g_p_over_g_mu);
        r.read_number("g_i_over_g_s", c.molecule.g_i_over_g_s);
        r.read_number("gamma_over_g_mu", c.molecule.gamma_over_g_mu);
        r.read_number("omega0_mu", c.molecule.omega0_mu);
        if (const json* o = r.child("overrides")) {
            if (!o->is_object()) fail("molecule.overrides must be an object");
            c.molecule.overrides = *o;
        }
        r.finish();
    }
    if (const json* p = root.child("pump")) {
        ObjectReader r(*p, "pump");
        r.read_enum("kind", c.pump.kind, kPumpKinds);
        r.read_number("dwp_over_g_mu", c.pump.dwp_over_g_mu);
        r.read_number("A", c.pump.a);
        r.read_number("B", c.pump.b);
        r.read_number("phi_a", c.pump.phi_a);
        r.read_number("phi_b", c.pump.phi_b);
        r.finish();
    }
    if (const json* g = root.child("grid")) {
        ObjectReader r(*g, "grid");
        r.read("count", c.grid.count);
        r.read_number("half_width_over_g_mu", c.grid.half_width_over_g_mu);
        r.read_number("quadrature_points_per_width", c.grid.quadrature_points_per_width);
        r.finish();
    }
    if (const json* a = root.child("analysis")) {
        ObjectReader r(*a, "analysis");
        r.read_enum("herald", c.analysis.herald, kHeralds);
        r.read_number("tophat_width_over_delta", c.analysis.tophat_width_over_delta);
        r.read_enum("schmidt_scope", c.analysis.schmidt_scope, kScopes);
        r.read_number("bin_window_over_delta", c.analysis.bin_window_over_delta);
        r.read_number("max_bin_overlap", c.analysis.max_bin_overlap);
        r.finish();
    }
    if (const json* s = root.child("sweep"); s && !s->is_null()) {
        ObjectReader r(*s, "sweep");
        SweepConfig sweep;
        const json* axis1 = r.child("axis1");
        if (!axis1) fail("sweep.axis1 is required");
        sweep.axis1 = read_axis(*axis1, "sweep.axis1");
        if (const json* axis2 = r.child("axis2"); axis2 && !axis2->is_null()) {
            sweep.axis2 = read_axis(*axis2, "sweep.axis2");
        }
        r.read("metrics", sweep.metrics);
        r.read("threads", sweep.threads);
        r.finish();
        c.sweep = std::move(sweep);
    }
    if (const json* o = root.child("output")) {
        ObjectReader r(*o, "output");
        r.read_enum("format", c.output.format, kFormats);
        r.read("path", c.output.path);
        r.read("emit_gnuplot", c.output.emit_gnuplot);
        r.finish();
    }
    if (const json* f = root.child("fixture"); f && !f->is_null()) {
        ObjectReader r(*f, "fixture");
        FixtureConfig fixture;
        r.read_enum("kind", fixture.kind, kFixtures);
        r.read("count", fixture.count);
        r.read_number("half_width", fixture.half_width);
        r.finish();
        c.fixture = fixture;
    }
    root.finish();
    return c;
}

json Config::to_json() const {
    json doc;
    doc["schema"] = schema;
    doc["molecule"] = {
        {"kappa_mu_over_g_mu", molecule.kappa_mu_over_g_mu},
        {"kappa_p_over_kappa_mu", molecule.kappa_p_over_kappa_mu},
        {"delta_match", molecule.delta_match},
        {"g_p_over_g_mu", molecule.g_p_over_g_mu},
        {"g_i_over_g_s", molecule.g_i_over_g_s},
        {"gamma_over_g_mu", molecule.gamma_over_g_mu},
        {"omega0_mu", molecule.omega0_mu},
        {"overrides", molecule.overrides},
    };
    doc["pump"] = {
        {"kind", name_of(pump.kind, kPumpKinds)},
        {"dwp_over_g_mu", pump.dwp_over_g_mu},
        {"A", pump.a},
        {"B", pump.b},
        {"phi_a", pump.phi_a},
        {"phi_b", pump.phi_b},
    };
    doc["grid"] = {
        {"count", grid.count},
        {"half_width_over_g_mu", grid.half_width_over_g_mu},
        {"quadrature_points_per_width", grid.quadrature_points_per_width},
    };
    doc["analysis"] = {
        {"herald", name_of(analysis.herald, kHeralds)},
        {"tophat_width_over_delta", analysis.tophat_width_over_delta},
        {"schmidt_scope", name_of(analysis.schmidt_scope, kScopes)},
        {"bin_window_over_delta", analysis.bin_window_over_delta},
        {"max_bin_overlap", analysis.max_bin_overlap},
    };
    if (sweep) {
        json s = {{"axis1", axis_to_json(sweep->axis1)},
                  {"metrics", sweep->metrics},
                  {"threads", sweep->threads}};
        if (sweep->axis2) s["axis2"] = axis_to_json(*sweep->axis2);
        doc["sweep"] = std::move(s);
    }
    doc["output"] = {
        {"format", name_of(output.format, kFormats)},
        {"path", output.path},
        {"emit_gnuplot", output.emit_gnuplot},
    };
    if (fixture) {
        doc["fixture"] = {{"kind", name_of(fixture->kind, kFixtures)},
                          {"count", fixture->count},
                          {"half_width", fixture->half_width}};
    }
    return doc;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("cannot parse config file '" + path + "': " + e.what());
    }
    return Config::from_json(doc);
}

void apply_override(json& doc, const std::string& path, const std::string& value) {
    const auto parts = split_path(path);
    json* node = &doc;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
        json& next = (*node)[parts[k]];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) fail("override path '" + path + "' crosses a non-object");
        node = &next;
    }
    json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
    (*node)[parts.back()] = parsed.is_discarded() ? json(value) : std::move(parsed);
}

double get_number(const json& doc, const std::string& path) {
    const json* node = &doc;
    for (const auto& part : split_path(path)) {
        if (!node->is_object() || !node->contains(part)) fail("path '" + path + "' does not exist");
        node = &(*node)[part];
    }
    if (!node->is_number()) fail("path '" + path + "' is not a scalar number");
    return node->get<double>();
}

void set_number(json& doc, const std::string& path, double value) {
    get_number(doc, path);
    json* node = &doc;
    for (const auto& part : split_path(path)) node = &(*node)[part];
    *node = value;
}

}  // namespace pmsim
