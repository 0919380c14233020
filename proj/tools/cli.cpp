#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmsim/config.hpp"
#include "pmsim/error.hpp"
#include "pmsim/output.hpp"
#include "pmsim/pipeline.hpp"
#include "pmsim/schmidt.hpp"
#include "pmsim/sweep.hpp"
#include "pmsim/transfer.hpp"

namespace pmsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
};

// Everything a subcommand needs, plus the files it wrote.
struct Context {
    std::string command;
    Config config;
    fs::path out;
    json summary = json::object();
    std::vector<std::string> files;

    fs::path file(const std::string& name) {
        files.push_back((out / name).string());
        return out / name;
    }
};

Config load(const Options& options) {
    json doc = json::object();
    if (!options.config_path.empty()) {
        std::ifstream in(options.config_path);
        if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config file '" + options.config_path + "'");
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::InvalidConfig, "cannot parse config file '" + options.config_path + "': " + e.what());
        }
    }
    for (const auto& item : options.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorCode::InvalidConfig, "--set expects key=value, got '" + item + "'");
        }
        apply_override(doc, item.substr(0, eq), item.substr(eq + 1));
    }
    return Config::from_json(doc);
}

void write_table(Context& ctx, const std::string& stem, const std::vector<output::Column>& columns) {
    if (ctx.config.output.format == OutputConfig::Format::Csv) {
        output::write_columns(ctx.file(stem + ".csv"), columns);
        return;
    }
    json doc = json::object();
    for (const auto& c : columns) doc[c.name] = c.values;
    const fs::path path = ctx.file(stem + ".json");
    fs::create_directories(path.parent_path());
    std::ofstream(path) << doc.dump() << '\n';
}

void write_axis(Context& ctx, const std::string& name, const std::vector<double>& values) {
    output::write_matrix(ctx.file(name), Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
}

std::vector<double> sample_abs2(const FrequencyGrid& grid, auto&& fn) {
    std::vector<double> out(grid.count);
    for (std::size_t k = 0; k < grid.count; ++k) out[k] = std::norm(fn(grid[k]));
    return out;
}

json splitting_summary(const MoleculeParams& p) {
    json s = json::object();
    for (FieldLabel label : kAllFields) {
        const double g = p.g[label];
        const double kappa = p.kappa[label];
        s[std::string(to_string(label))] = kappa <= max_splitting_kappa(g) ? json(splitting(g, kappa)) : json(nullptr);
    }
    return s;
}

void run_transfer(Context& ctx) {
    const Scenario s = resolve(ctx.config);
    const MoleculeParams& p = s.params;
    const FrequencyGrid& grid = s.signal_grid;
    std::vector<output::Column> columns{{"omega", grid.values()}};
    for (FieldLabel label : kAllFields) {
        const ModeResponse mode = mode_response(p, label);
        std::vector<double> re(grid.count);
        std::vector<double> im(grid.count);
        std::vector<double> abs2(grid.count);
        for (std::size_t k = 0; k < grid.count; ++k) {
            const cdouble m = mode(grid[k]);
            re[k] = m.real();
            im[k] = m.imag();
            abs2[k] = std::norm(m);
        }
        const std::string name(to_string(label));
        columns.push_back({name + "_re", std::move(re)});
        columns.push_back({name + "_im", std::move(im)});
        columns.push_back({name + "_abs2", std::move(abs2)});
    }
    write_table(ctx, "transfer", columns);
    if (ctx.config.output.emit_gnuplot && ctx.config.output.format == OutputConfig::Format::Csv) {
        std::vector<std::string> header;
        for (const auto& c : columns) header.push_back(c.name);
        output::write_gnuplot_lines(ctx.file("transfer.gp"), "transfer.csv", header,
                                    {{"pump_abs2", "|M_p|^2"}, {"signal_abs2", "|M_s|^2"}, {"idler_abs2", "|M_i|^2"}},
                                    "omega / g_mu", "|M|^2");
    }
    ctx.summary["g"] = {{"pump", p.g.pump}, {"signal", p.g.signal}, {"idler", p.g.idler}};
    ctx.summary["kappa"] = {{"pump", p.kappa.pump}, {"signal", p.kappa.signal}, {"idler", p.kappa.idler}};
    ctx.summary["delta"] = splitting_summary(p);
}

void run_jsa(Context& ctx) {
    const Scenario s = resolve(ctx.config);
    const Jsa jsa = build_jsa(s);
    const Eigen::MatrixXd intensity = jsi(jsa);
    output::write_matrix(ctx.file("jsi.csv"), intensity);
    write_axis(ctx, "jsi_idler_axis.csv", jsa.idler.values());
    write_axis(ctx, "jsi_signal_axis.csv", jsa.signal.values());
    if (ctx.config.output.emit_gnuplot) {
        output::write_gnuplot_heatmap(ctx.file("jsi.gp"), "jsi.csv", "jsi_signal_axis.csv", "jsi_idler_axis.csv",
                                      "omega_s / g_mu", "omega_i / g_mu", "|F(omega_i, omega_s)|^2");
    }
    Eigen::Index pi = 0;
    Eigen::Index ps = 0;
    const double peak = intensity.maxCoeff(&pi, &ps);
    ctx.summary["norm"] = jsa.norm;
    ctx.summary["count"] = {jsa.idler.count, jsa.signal.count};
    ctx.summary["step"] = jsa.idler.step;
    ctx.summary["peak"] = {{"omega_i", jsa.idler[static_cast<std::size_t>(pi)]},
                           {"omega_s", jsa.signal[static_cast<std::size_t>(ps)]},
                           {"jsi", peak}};
}

Jsa analysed_jsa(const Scenario& s, const Jsa& full) {
    return s.single_bin_schmidt ? upper_bin_window(full, s.params, s.bin_window_over_delta) : full;
}

void run_schmidt(Context& ctx) {
    std::optional<Jsa> jsa;
    if (ctx.config.fixture) {
        jsa = make_fixture(*ctx.config.fixture);
        ctx.summary["source"] = "fixture";
    } else {
        const Scenario s = resolve(ctx.config);
        jsa = analysed_jsa(s, build_jsa(s));
        ctx.summary["source"] = s.single_bin_schmidt ? "bin" : "full";
    }
    const SchmidtResult r = decompose(*jsa);
    std::vector<double> index(r.size());
    std::vector<double> lambdas(r.lambdas.data(), r.lambdas.data() + r.lambdas.size());
    for (std::size_t n = 0; n < index.size(); ++n) index[n] = static_cast<double>(n);
    write_table(ctx, "lambdas", {{"n", index}, {"lambda", lambdas}});
    const Eigen::Index modes = std::min<Eigen::Index>(4, r.idler_modes.cols());
    std::vector<output::Column> columns{{"omega_i", jsa->idler.values()}};
    for (Eigen::Index n = 0; n < modes; ++n) {
        std::vector<double> abs2(jsa->idler.count);
        for (std::size_t k = 0; k < abs2.size(); ++k) abs2[k] = std::norm(r.idler_modes(static_cast<Eigen::Index>(k), n));
        columns.push_back({"psi" + std::to_string(n) + "_abs2", std::move(abs2)});
    }
    write_table(ctx, "idler_modes", columns);
    ctx.summary["K"] = r.schmidt_number;
    ctx.summary["P"] = r.purity;
    ctx.summary["lambdas"] = lambdas;
}

void run_qubit(Context& ctx) {
    const Scenario s = resolve(ctx.config);
    const Jsa jsa = build_jsa(s);
    const SignalState signal = herald(jsa, s.params, s.herald);
    const QubitState q = extract_bins(signal, s.params, s.max_bin_overlap);
    const double k = schmidt_number(analysed_jsa(s, jsa));

    std::vector<double> re(signal.grid.count);
    std::vector<double> im(signal.grid.count);
    std::vector<double> abs2(signal.grid.count);
    for (std::size_t i = 0; i < signal.grid.count; ++i) {
        const cdouble v = signal.amplitude[static_cast<Eigen::Index>(i)];
        re[i] = v.real();
        im[i] = v.imag();
        abs2[i] = std::norm(v);
    }
    write_table(ctx, "heralded_signal", {{"omega_s", signal.grid.values()}, {"re", re}, {"im", im}, {"abs2", abs2}});
    if (ctx.config.output.emit_gnuplot && ctx.config.output.format == OutputConfig::Format::Csv) {
        output::write_gnuplot_lines(ctx.file("heralded_signal.gp"), "heralded_signal.csv",
                                    {"omega_s", "re", "im", "abs2"}, {{"abs2", "|psi_s|^2"}}, "omega_s / g_mu",
                                    "|psi_s|^2");
    }
    ctx.summary["theta"] = q.theta;
    ctx.summary["phi"] = q.phi;
    ctx.summary["amp_a"] = {q.amp_a.real(), q.amp_a.imag()};
    ctx.summary["amp_b"] = {q.amp_b.real(), q.amp_b.imag()};
    ctx.summary["leakage"] = q.leakage;
    ctx.summary["bin_overlap"] = q.bin_overlap;
    ctx.summary["fidelity"] = s.target ? json(fidelity(q, *s.target)) : json(nullptr);
    if (s.target) ctx.summary["target"] = {{"theta", s.target->theta}, {"phi", s.target->phi}};
    ctx.summary["herald_weight"] = signal.herald_weight;
    ctx.summary["K"] = k;
    ctx.summary["P"] = 1.0 / k;
}

std::string label_of(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(dot + 1);
}

void emit_sweep(Context& ctx, const SweepTable& table, bool log_excess_k) {
    output::write_sweep_long(ctx.file("sweep.csv"), table);
    const SweepSpec& spec = table.spec;
    std::size_t failures = 0;
    for (const auto& row : table.rows) failures += row.error ? 1 : 0;

    auto emit_metric = [&](const std::string& name, const Eigen::MatrixXd& m) {
        if (spec.axis2) {
            output::write_matrix(ctx.file("sweep_" + name + ".csv"), m);
            if (ctx.config.output.emit_gnuplot) {
                output::write_gnuplot_heatmap(ctx.file("sweep_" + name + ".gp"), "sweep_" + name + ".csv",
                                              "sweep_axis2.csv", "sweep_axis1.csv", label_of(spec.axis2->path),
                                              label_of(spec.axis1.path), name);
            }
        } else {
            std::vector<double> col(m.data(), m.data() + m.size());
            write_table(ctx, "sweep_" + name, {{label_of(spec.axis1.path), spec.axis1.values}, {name, col}});
        }
    };
    if (spec.axis2) {
        write_axis(ctx, "sweep_axis1.csv", spec.axis1.values);
        write_axis(ctx, "sweep_axis2.csv", spec.axis2->values);
    }
    for (Metric metric : spec.metrics) emit_metric(std::string(to_string(metric)), output::sweep_matrix(table, metric));
    if (log_excess_k) {
        Eigen::MatrixXd m = output::sweep_matrix(table, Metric::K);
        m = m.unaryExpr([](double k) { return k > 1.0 ? std::log10(k - 1.0) : kNan; });
        emit_metric("log10_K_minus_1", m);
    }
    ctx.summary["points"] = table.rows.size();
    ctx.summary["failures"] = failures;
    ctx.summary["axis1"] = {{"path", spec.axis1.path}, {"count", spec.axis1.values.size()}};
    if (spec.axis2) ctx.summary["axis2"] = {{"path", spec.axis2->path}, {"count", spec.axis2->values.size()}};
    ctx.summary["threads"] = worker_count(spec.threads);
}

void run_sweep_command(Context& ctx) {
    const SweepSpec spec = make_sweep_spec(ctx.config);
    emit_sweep(ctx, run_sweep(spec), false);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return v;
}

void run_fig3(Context& ctx) {
    Config config = ctx.config;
    if (!config.sweep) {
        config.sweep = SweepConfig{{"molecule.kappa_p_over_kappa_mu", linspace(5.0, 50.0, 10)},
                                   SweepAxisConfig{"pump.dwp_over_g_mu", linspace(0.1, 1.5, 15)},
                                   {"K"},
                                   0};
    }
    if (config.pump.kind != PumpConfig::Kind::Single) {
        throw Error(ErrorCode::InvalidConfig, "repro-fig3 uses the single-Gaussian pump (pump.kind = \"single\")");
    }
    SweepSpec spec = make_sweep_spec(config);
    if (std::find(spec.metrics.begin(), spec.metrics.end(), Metric::K) == spec.metrics.end()) {
        spec.metrics.insert(spec.metrics.begin(), Metric::K);
    }
    const SweepTable table = run_sweep(spec);
    emit_sweep(ctx, table, true);

    const SweepRow* best = nullptr;
    for (const auto& row : table.rows) {
        if (row.error) continue;
        if (!best || row.values.at(Metric::K) < best->values.at(Metric::K)) best = &row;
    }
    if (best) {
        ctx.summary["min_K"] = {{"K", best->values.at(Metric::K)}, {"axis1", best->value1}, {"axis2", best->value2}};
    }
}

void run_fig4(Context& ctx) {
    const Scenario s = resolve(ctx.config);
    const MoleculeParams& p = s.params;
    const FrequencyGrid grid = FrequencyGrid::centered(p.omega0.signal, ctx.config.grid.half_width_over_g_mu * p.g.signal,
                                                       ctx.config.grid.count);
    std::vector<double> detuning(grid.count);
    for (std::size_t k = 0; k < grid.count; ++k) detuning[k] = grid[k] - p.omega0.signal;
    const ModeResponse mp = mode_response(p, FieldLabel::Pump);
    const ModeResponse ms = mode_response(p, FieldLabel::Signal);
    const PumpSpec pump = s.pump.normalized();
    write_table(ctx, "fig4", {{"detuning", detuning},
                              {"Mp_abs2", sample_abs2(grid, mp)},
                              {"Ms_abs2", sample_abs2(grid, ms)},
                              {"alpha_abs2", sample_abs2(grid, [&](double w) { return pump_amplitude(pump, w); })}});
    if (ctx.config.output.emit_gnuplot && ctx.config.output.format == OutputConfig::Format::Csv) {
        output::write_gnuplot_lines(ctx.file("fig4.gp"), "fig4.csv", {"detuning", "Mp_abs2", "Ms_abs2", "alpha_abs2"},
                                    {{"Mp_abs2", "|M_p|^2"}, {"Ms_abs2", "|M_s|^2"}, {"alpha_abs2", "|alpha|^2"}},
                                    "(omega - omega_0) / g_mu", "intensity");
    }
    const double delta_p = splitting(p.g.pump, p.kappa.pump);
    const double delta_mu = splitting(p.g.signal, p.kappa.signal);
    ctx.summary["kappa_p_over_g_p"] = p.kappa.pump / p.g.pump;
    ctx.summary["g_p_over_g_mu"] = p.g.pump / p.g.signal;
    ctx.summary["kappa_p_over_kappa_mu"] = p.kappa.pump / p.kappa.signal;
    ctx.summary["delta_p_over_delta_mu"] = delta_p / delta_mu;
}

using Handler = void (*)(Context&);

int execute(const std::string& command, Handler handler, const Options& options, std::ostream& out,
            std::ostream& err) {
    json summary = {{"schema", 1}, {"command", command}};
    auto fail = [&](int code, std::string_view error_code, const std::string& message) {
        err << "pmsim " << command << ": " << message << '\n';
        summary["status"] = "error";
        summary["error_code"] = error_code;
        summary["message"] = message;
        out << summary.dump() << '\n';
        return code;
    };
    try {
        Context ctx;
        ctx.command = command;
        ctx.config = load(options);
        std::string dir = options.out_dir.empty() ? ctx.config.output.path : options.out_dir;
        ctx.out = dir.empty() ? fs::path("pmsim_out") / command : fs::path(dir);
        fs::create_directories(ctx.out);
        handler(ctx);
        summary["status"] = "ok";
        summary.update(ctx.summary);
        summary["out"] = ctx.out.string();
        summary["files"] = ctx.files;
        out << summary.dump() << '\n';
        return kOk;
    } catch (const Error& e) {
        return fail(is_config_error(e.code()) ? kConfigError : kNumericalError, to_string(e.code()), e.what());
    } catch (const fs::filesystem_error& e) {
        return fail(kConfigError, "InvalidConfig", e.what());
    } catch (const std::exception& e) {
        return fail(kNumericalError, "Internal", e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photonic-molecule biphoton simulator", "pmsim"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        Handler handler;
    };
    const Command commands[] = {
        {"transfer", "Transfer functions of the pump, signal and idler modes", run_transfer},
        {"jsa", "Joint spectral intensity on the configured grid", run_jsa},
        {"schmidt", "Schmidt spectrum, K and purity", run_schmidt},
        {"qubit", "Herald the idler and extract the signal frequency-bin qubit", run_qubit},
        {"sweep", "Parameter sweep described by the config's sweep block", run_sweep_command},
        {"repro-fig3", "Schmidt-number map over pump linewidth and bandwidth", run_fig3},
        {"repro-fig4", "Pump and signal transfer profiles with the pump spectrum", run_fig4},
    };
    Options options;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", options.config_path, "JSON config file");
        sub->add_option("--set", options.overrides, "Override a config value, dotted.key=value (repeatable)");
        sub->add_option("--out", options.out_dir, "Output directory");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "pmsim: " << e.what() << '\n' << app.help();
        return kConfigError;
    }
    for (const auto& c : commands) {
        if (app.get_subcommand(c.name)->parsed()) return execute(c.name, c.handler, options, out, err);
    }
    return kConfigError;
}

}  // namespace pmsim::cli
