// fcqed — scenario runner for two atoms in fibre-coupled cavities.
//
// Subcommands: run, sweep, decouple, spectrum, list-presets.  All rates on the
// command line are in units of the nominal coupling g = |g1|, times in 1/g.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fcqed/fcqed.hpp"

namespace {

struct Overrides {
    std::optional<double> g1, g1_arg, g2, g2_arg, nu, Delta, phi;
    std::optional<double> kappa, gamma, beta, t_max, dt, theta, g_hz;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> target, initial_state, observables;
    std::string out;
};

void add_override_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--g1", ov.g1, "|g1| in units of the nominal g");
    cmd->add_option("--g1-arg", ov.g1_arg, "phase of g1 (rad)");
    cmd->add_option("--g2", ov.g2, "|g2| in units of g");
    cmd->add_option("--g2-arg", ov.g2_arg, "phase of g2 (rad)");
    cmd->add_option("--nu", ov.nu, "fibre-cavity coupling in units of g");
    cmd->add_option("--Delta", ov.Delta, "detuning of atom 2 in units of g");
    cmd->add_option("--phi", ov.phi, "fibre propagation phase (rad)");
    cmd->add_option("--kappa", ov.kappa, "spontaneous emission rate in units of g");
    cmd->add_option("--gamma", ov.gamma, "cavity decay rate in units of g");
    cmd->add_option("--beta", ov.beta, "fibre decay rate in units of g");
    cmd->add_option("--t-max", ov.t_max, "time window in 1/g");
    cmd->add_option("--dt", ov.dt, "grid step in 1/g");
    cmd->add_option("--target", ov.target, "gate target: none|swap|cphase");
    cmd->add_option("--theta", ov.theta, "cphase target phase (rad)");
    cmd->add_option("--initial-state", ov.initial_state, "00|01|10|11|++|bell");
    cmd->add_option("--observables", ov.observables, "comma-separated output columns");
    cmd->add_option("--seed", ov.seed, "seed for Monte-Carlo paths");
    cmd->add_option("--g-hz", ov.g_hz, "physical value of g in Hz (footer comment only)");
    cmd->add_option("--out", ov.out, "output CSV path (default: stdout)");
}

fcqed::ScenarioConfig load_config(const std::string& source) {
    if (const fcqed::Preset* p = fcqed::find_preset(source)) return p->config;
    return fcqed::parse_config_file(source);
}

fcqed::ScenarioConfig apply_overrides(fcqed::ScenarioConfig cfg, const Overrides& ov) {
    using fcqed::apply_config_key;
    using fcqed::format_double;
    const auto set = [&](const char* key, const std::optional<double>& v) {
        if (v) apply_config_key(cfg, key, format_double(*v));
    };
    set("g1", ov.g1); set("g1_arg", ov.g1_arg);
    set("g2", ov.g2); set("g2_arg", ov.g2_arg);
    set("nu", ov.nu); set("Delta", ov.Delta); set("phi", ov.phi);
    set("kappa", ov.kappa); set("gamma", ov.gamma); set("beta", ov.beta);
    set("t_max", ov.t_max); set("dt", ov.dt); set("theta", ov.theta);
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.target) apply_config_key(cfg, "target", *ov.target);
    if (ov.initial_state) apply_config_key(cfg, "initial_state", *ov.initial_state);
    if (ov.observables) apply_config_key(cfg, "observables", *ov.observables);
    return cfg;
}

void add_unit_footer(fcqed::ResultTable& table, const Overrides& ov) {
    if (!ov.g_hz) return;
    table.footers.push_back("g = " + fcqed::format_double(*ov.g_hz) +
                            " Hz; 1 time unit = " + fcqed::format_double(1.0 / *ov.g_hz) +
                            " s; 1 rate unit = " + fcqed::format_double(*ov.g_hz) + " Hz");
}

void write_table(const fcqed::ResultTable& table, const std::string& out) {
    if (out.empty())
        std::cout << fcqed::to_csv(table);
    else
        fcqed::emit_csv(table, out);
}

std::string target_column_label(const fcqed::ScenarioConfig& cfg) {
    return cfg.target == fcqed::ScenarioConfig::Target::swap ? "swap" : "cphase";
}

int run_command(const std::string& source, const Overrides& ov) {
    const fcqed::ScenarioConfig cfg = apply_overrides(load_config(source), ov);
    fcqed::ResultTable table = fcqed::run_scenario(cfg);
    add_unit_footer(table, ov);
    write_table(table, ov.out);
    return 0;
}

int sweep_command(const std::string& source, const std::string& axis,
                  const std::vector<double>& values, const Overrides& ov) {
    const fcqed::ScenarioConfig cfg = apply_overrides(load_config(source), ov);
    const auto points = fcqed::sweep(cfg, axis, values);
    for (const auto& pt : points) {
        fcqed::ResultTable table = pt.table;
        add_unit_footer(table, ov);
        if (ov.out.empty()) {
            std::cout << fcqed::to_csv(table);
            continue;
        }
        // one file per value: insert _<axis>=<value> before the extension
        std::string path = ov.out;
        const std::string tag = "_" + axis + "=" + fcqed::format_double(pt.value);
        const auto dot = path.rfind('.');
        if (dot == std::string::npos) path += tag;
        else path.insert(dot, tag);
        fcqed::emit_csv(table, path);
        std::cout << fcqed::format_double(pt.value) << " -> " << path << "\n";
    }
    return 0;
}

int decouple_command(const std::string& source, const Overrides& ov) {
    const fcqed::ScenarioConfig cfg = apply_overrides(load_config(source), ov);
    cfg.validate();
    const fcqed::SectorSpectra spectra = fcqed::diagonalize(cfg.params);
    const auto minima = fcqed::find_decoupling_times(spectra, cfg.t_max, cfg.dt);

    fcqed::ResultTable table;
    table.comments.push_back("decoupling minima of: " + cfg.name);
    table.comments.push_back("units: time in 1/g, angles in rad");
    table.columns = {"t", "leakage"};
    const bool with_gate = cfg.target != fcqed::ScenarioConfig::Target::none;
    if (with_gate) {
        table.columns.push_back("theta");
        table.columns.push_back("F_" + target_column_label(cfg) + "_opt");
    }
    for (const auto& m : minima) {
        std::vector<double> row{m.time, m.leakage};
        if (with_gate) {
            const fcqed::KrausSet ks = fcqed::kraus_set(spectra, m.time);
            double theta = std::numeric_limits<double>::quiet_NaN();
            double guess1 = 0.0, guess2 = 0.0;
            try {
                const auto ext = fcqed::extract_controlled_phase(ks);
                theta = ext.theta;
                guess1 = ext.theta1;
                guess2 = ext.theta2;
            } catch (const std::runtime_error&) {}
            const auto ch = fcqed::channel_from_kraus(ks);
            const Eigen::Matrix4cd tgt =
                cfg.target == fcqed::ScenarioConfig::Target::swap
                    ? fcqed::GateTarget::swap_gate().matrix
                    : fcqed::GateTarget::cphase(cfg.theta).matrix;
            row.push_back(theta);
            row.push_back(fcqed::optimize_local_phases(ch, tgt, guess1, guess2).fidelity);
        }
        table.rows.push_back(std::move(row));
    }
    add_unit_footer(table, ov);
    write_table(table, ov.out);
    return 0;
}

int spectrum_command(const std::string& source, const Overrides& ov) {
    const fcqed::ScenarioConfig cfg = apply_overrides(load_config(source), ov);
    cfg.params.validate();

    fcqed::ResultTable table;
    table.comments.push_back("sector spectra of: " + cfg.name);
    table.comments.push_back("units: eigenvalues in g");
    table.columns = {"sector", "index", "eigenvalue"};
    const fcqed::SectorSpectra spectra = fcqed::diagonalize(cfg.params);
    for (int n = 0; n <= 2; ++n) {
        const auto& w = spectra.eigenvalues[static_cast<std::size_t>(n)];
        for (Eigen::Index i = 0; i < w.size(); ++i)
            table.rows.push_back({double(n), double(i), w(i)});
    }
    const auto nm = fcqed::normal_mode_frequencies(cfg.params);
    table.footers.push_back("normal-mode frequencies (c, c-, c+): " +
                            fcqed::format_double(nm.frequencies[0]) + ", " +
                            fcqed::format_double(nm.frequencies[1]) + ", " +
                            fcqed::format_double(nm.frequencies[2]));
    add_unit_footer(table, ov);
    write_table(table, ov.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fcqed — gates between two atoms in fibre-coupled optical cavities"};
    app.require_subcommand(1);

    std::string source, axis;
    std::vector<double> values;
    Overrides ov;

    CLI::App* run = app.add_subcommand("run", "run a preset or config file over a time grid");
    run->add_option("source", source, "preset name or config file")->required();
    add_override_options(run, ov);

    CLI::App* sw = app.add_subcommand("sweep", "repeat a scenario along one parameter axis");
    sw->add_option("source", source, "preset name or config file")->required();
    sw->add_option("--axis", axis, "g1|g2|nu|Delta|phi|kappa|gamma|beta|all_couplings_scale")
        ->required();
    sw->add_option("--values", values, "comma-separated axis values")
        ->required()
        ->delimiter(',');
    add_override_options(sw, ov);

    CLI::App* dec = app.add_subcommand("decouple", "locate decoupling times (leakage minima)");
    dec->add_option("source", source, "preset name or config file")->required();
    add_override_options(dec, ov);

    CLI::App* spec = app.add_subcommand("spectrum", "sector eigenvalues and normal modes");
    spec->add_option("source", source, "preset name or config file")->required();
    add_override_options(spec, ov);

    app.add_subcommand("list-presets", "list the named scenario presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list-presets")) {
            for (const auto& p : fcqed::presets())
                std::printf("%-20s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
        if (app.got_subcommand(run)) return run_command(source, ov);
        if (app.got_subcommand(sw)) return sweep_command(source, axis, values, ov);
        if (app.got_subcommand(dec)) return decouple_command(source, ov);
        if (app.got_subcommand(spec)) return spectrum_command(source, ov);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
