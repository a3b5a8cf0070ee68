// scenario.hpp — Named scenario runner: figure reproductions, sweeps, CSV
//
// All rates on this surface are in units of the nominal coupling g = |g1| of
// the unscaled scenario; times in 1/g.  Presets are pure data.

#pragma once

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcqed/dynamics.hpp"
#include "fcqed/entanglement.hpp"
#include "fcqed/gates.hpp"
#include "fcqed/model.hpp"
#include "fcqed/open_system.hpp"

namespace fcqed {

struct ScenarioConfig {
    enum class Target { none, swap, cphase };

    std::string name{"custom"};
    SystemParams params;
    double t_max{5.0};
    double dt{0.01};
    Target target{Target::none};
    double theta{0.0};                 // cphase target phase, radians
    std::string initial_state{"++"};   // for eof / populations outputs
    std::vector<std::string> observables{"leakage"};
    std::uint64_t seed{0};

    bool dissipative() const {
        return params.kappa > 0.0 || params.gamma > 0.0 || params.beta > 0.0;
    }

    void validate() const {
        params.validate();
        if (!(t_max > 0.0)) throw std::invalid_argument("config: t_max: must be > 0");
        if (!(dt > 0.0)) throw std::invalid_argument("config: dt: must be > 0");
        if (dt >= t_max) throw std::invalid_argument("config: dt: must be < t_max");
        for (const auto& o : observables) {
            if (o != "leakage" && o != "fidelity_raw" && o != "fidelity_phase_opt" &&
                o != "theta" && o != "eof" && o != "populations")
                throw std::invalid_argument("config: observables: unknown observable '" + o + "'");
            if ((o == "fidelity_raw" || o == "fidelity_phase_opt") && target == Target::none)
                throw std::invalid_argument("config: target: required for observable '" + o + "'");
        }
    }
};

inline Eigen::Vector4cd parse_initial_state(const std::string& name) {
    if (name == "00") return {1, 0, 0, 0};
    if (name == "01") return {0, 1, 0, 0};
    if (name == "10") return {0, 0, 1, 0};
    if (name == "11") return {0, 0, 0, 1};
    if (name == "++") return Eigen::Vector4cd{0.5, 0.5, 0.5, 0.5};
    if (name == "bell") return Eigen::Vector4cd{1.0 / std::numbers::sqrt2, 0, 0,
                                                1.0 / std::numbers::sqrt2};
    throw std::invalid_argument("config: initial_state: unknown state '" + name + "'");
}

// ---------------------------------- presets ----------------------------------

struct Preset {
    std::string name;
    std::string description;
    ScenarioConfig config;
};

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = [] {
        std::vector<Preset> v;
        const auto swap_cfg = [](double nu, double dt) {
            ScenarioConfig c;
            c.params.nu = nu;
            c.t_max = 5.0;
            c.dt = dt;
            c.target = ScenarioConfig::Target::swap;
            c.observables = {"leakage", "fidelity_raw", "fidelity_phase_opt"};
            return c;
        };
        const auto cphase_params = [](double g2) {
            SystemParams p;
            p.g2 = g2;
            p.nu = 100.0;
            p.delta_detuning = -10.0;
            return p;
        };

        ScenarioConfig c;

        c = swap_cfg(1.0, 0.01); c.name = "fig1-swap-nu1.0";
        v.push_back({c.name, "swap emulation, nu/g = 1.0, delta = Delta = 0", c});
        c = swap_cfg(1.1, 0.01); c.name = "fig1-swap-nu1.1";
        v.push_back({c.name, "swap emulation, nu/g = 1.1, delta = Delta = 0", c});
        c = swap_cfg(1.2, 0.01); c.name = "fig1-swap-nu1.2";
        v.push_back({c.name, "swap emulation, nu/g = 1.2, delta = Delta = 0", c});
        c = swap_cfg(100.0, 0.002); c.name = "swap-far-detuned";
        v.push_back({c.name, "swap via the fibre-free normal mode, nu/g = 100", c});

        c = ScenarioConfig{};
        c.name = "fig2-cphase";
        c.params = cphase_params(1.5);
        c.t_max = 30.0;
        c.dt = 0.002;
        c.target = ScenarioConfig::Target::cphase;
        c.theta = 0.15 * std::numbers::pi;
        c.observables = {"leakage", "fidelity_raw", "fidelity_phase_opt", "theta"};
        v.push_back({c.name,
                     "controlled-phase sequence, nu = 100g = 200|delta| = 10|Delta|", c});

        const auto eof_cfg = [&](double g2) {
            ScenarioConfig e;
            e.params = cphase_params(g2);
            e.t_max = 30.0;
            e.dt = 0.02;
            e.target = ScenarioConfig::Target::none;
            e.initial_state = "++";
            e.observables = {"eof"};
            return e;
        };
        c = eof_cfg(1.0); c.name = "fig3-eof-delta0";
        v.push_back({c.name, "entanglement of formation from |++>, delta = 0", c});
        c = eof_cfg(1.5); c.name = "fig3-eof-delta0.5";
        v.push_back({c.name, "entanglement of formation from |++>, delta = 0.5g", c});
        c = eof_cfg(2.0); c.name = "fig3-eof-delta1";
        v.push_back({c.name, "entanglement of formation from |++>, delta = g", c});
        return v;
    }();
    return table;
}

inline const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

// ------------------------------- config parsing -------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + ": not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: " + key + ": trailing characters in '" + value + "'");
    return d;
}

}  // namespace detail

// One `key = value` assignment; shared by the config file parser and CLI flags.
inline void apply_config_key(ScenarioConfig& cfg, const std::string& key,
                             const std::string& value) {
    using detail::parse_double;
    if (key == "name") { cfg.name = value; return; }
    if (key == "g1") { cfg.params.g1 = std::polar(parse_double(key, value), std::arg(cfg.params.g1)); return; }
    if (key == "g1_arg") { cfg.params.g1 = std::polar(std::abs(cfg.params.g1), parse_double(key, value)); return; }
    if (key == "g2") { cfg.params.g2 = std::polar(parse_double(key, value), std::arg(cfg.params.g2)); return; }
    if (key == "g2_arg") { cfg.params.g2 = std::polar(std::abs(cfg.params.g2), parse_double(key, value)); return; }
    if (key == "nu") { cfg.params.nu = parse_double(key, value); return; }
    if (key == "Delta") { cfg.params.delta_detuning = parse_double(key, value); return; }
    if (key == "phi") { cfg.params.phi = parse_double(key, value); return; }
    if (key == "kappa") { cfg.params.kappa = parse_double(key, value); return; }
    if (key == "gamma") { cfg.params.gamma = parse_double(key, value); return; }
    if (key == "beta") { cfg.params.beta = parse_double(key, value); return; }
    if (key == "t_max") { cfg.t_max = parse_double(key, value); return; }
    if (key == "dt") { cfg.dt = parse_double(key, value); return; }
    if (key == "theta") { cfg.theta = parse_double(key, value); return; }
    if (key == "seed") { cfg.seed = static_cast<std::uint64_t>(parse_double(key, value)); return; }
    if (key == "initial_state") { cfg.initial_state = value; return; }
    if (key == "target") {
        if (value == "none") cfg.target = ScenarioConfig::Target::none;
        else if (value == "swap") cfg.target = ScenarioConfig::Target::swap;
        else if (value == "cphase") cfg.target = ScenarioConfig::Target::cphase;
        else throw std::invalid_argument("config: target: expected none|swap|cphase, got '" + value + "'");
        return;
    }
    if (key == "observables") {
        cfg.observables.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (!item.empty()) cfg.observables.push_back(item);
        }
        return;
    }
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

// Flat `key = value` file, '#' starts a comment.
inline ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        apply_config_key(cfg, detail::trim(line.substr(0, eq)),
                         detail::trim(line.substr(eq + 1)));
    }
    return cfg;
}

// -------------------------------- result tables -------------------------------

struct ResultTable {
    std::vector<std::string> comments;  // emitted first, each as a '# ' line
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> footers;   // emitted after the data, '# ' lines
};

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string to_csv(const ResultTable& t) {
    std::string out;
    for (const auto& c : t.comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    for (const auto& f : t.footers) out += "# " + f + "\n";
    return out;
}

inline void emit_csv(const ResultTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    out << to_csv(t);
    if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

// -------------------------------- scenario run --------------------------------

namespace detail {

inline std::string target_label(ScenarioConfig::Target t) {
    return t == ScenarioConfig::Target::swap ? "swap" : "cphase";
}

inline Eigen::Matrix4cd target_matrix(const ScenarioConfig& cfg) {
    return cfg.target == ScenarioConfig::Target::swap
               ? GateTarget::swap_gate().matrix
               : GateTarget::cphase(cfg.theta).matrix;
}

}  // namespace detail

// One row per grid time t = 0, dt, ..., with the requested observables.
// Closed-system path when all decay rates vanish, master-equation path
// otherwise.  The leakage column always refers to the coherent dynamics.
inline ResultTable run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    ResultTable table;
    table.comments.push_back("scenario: " + cfg.name);
    table.comments.push_back("units: time in 1/g, rates in g, angles in rad");

    table.columns.push_back("t");
    const std::string tl = detail::target_label(cfg.target);
    for (const auto& o : cfg.observables) {
        if (o == "leakage") table.columns.push_back("leakage");
        else if (o == "fidelity_raw") table.columns.push_back("F_" + tl + "_raw");
        else if (o == "fidelity_phase_opt") table.columns.push_back("F_" + tl + "_opt");
        else if (o == "theta") table.columns.push_back("theta");
        else if (o == "eof") table.columns.push_back("eof");
        else {
            table.columns.insert(table.columns.end(), {"p00", "p01", "p10", "p11"});
        }
    }

    std::vector<double> ts{0.0};
    for (int k = 1; k * cfg.dt <= cfg.t_max + 0.5 * cfg.dt; ++k) ts.push_back(k * cfg.dt);

    const bool want_channel = [&] {
        for (const auto& o : cfg.observables)
            if (o != "leakage") return true;
        return false;
    }();

    const SectorSpectra spectra = diagonalize(cfg.params);
    const Eigen::Vector4cd psi0 = parse_initial_state(cfg.initial_state);
    const Eigen::Matrix4cd rho0 = psi0 * psi0.adjoint();

    std::vector<ChannelMatrix> grid_channels;
    if (cfg.dissipative() && want_channel) {
        const Liouvillian li = build_liouvillian(cfg.params);
        grid_channels = tomography_channels_on_grid(li, 0.0, cfg.dt,
                                                    static_cast<int>(ts.size()));
    }

    const Eigen::Matrix4cd tgt =
        cfg.target == ScenarioConfig::Target::none ? Eigen::Matrix4cd::Identity()
                                                   : detail::target_matrix(cfg);

    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        std::vector<double> row{t};

        KrausSet ks;
        ChannelMatrix ch;
        bool have_ks = false, have_ch = false;
        const auto ensure_kraus = [&] {
            if (!have_ks) { ks = kraus_set(spectra, t); have_ks = true; }
        };
        const auto ensure_channel = [&] {
            if (have_ch) return;
            if (cfg.dissipative()) ch = grid_channels[k];
            else { ensure_kraus(); ch = channel_from_kraus(ks); }
            have_ch = true;
        };

        for (const auto& o : cfg.observables) {
            if (o == "leakage") {
                ensure_kraus();
                row.push_back(leakage(ks));
            } else if (o == "fidelity_raw") {
                ensure_channel();
                row.push_back(average_fidelity(ch, tgt));
            } else if (o == "fidelity_phase_opt") {
                ensure_channel();
                double g1 = 0.0, g2 = 0.0;
                try {
                    ensure_kraus();
                    const auto guess = extract_controlled_phase(ks);
                    g1 = guess.theta1;
                    g2 = guess.theta2;
                } catch (const std::runtime_error&) {}
                row.push_back(optimize_local_phases(ch, tgt, g1, g2).fidelity);
            } else if (o == "theta") {
                double th = std::numeric_limits<double>::quiet_NaN();
                try {
                    if (cfg.dissipative()) {
                        ensure_channel();
                        th = extract_controlled_phase(ch).theta;
                    } else {
                        ensure_kraus();
                        th = extract_controlled_phase(ks).theta;
                    }
                } catch (const std::runtime_error&) {}  // phase undefined off-gate
                row.push_back(th);
            } else if (o == "eof") {
                ensure_channel();
                row.push_back(entanglement_of_formation(apply_channel(ch, rho0)));
            } else {  // populations
                ensure_channel();
                const Eigen::Matrix4cd r = apply_channel(ch, rho0);
                for (int m = 0; m < 4; ++m) row.push_back(r(m, m).real());
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---------------------------------- sweeps ------------------------------------

struct SweepPoint {
    double value;
    ResultTable table;
};

// Independent runs along one parameter axis; "all_couplings_scale" multiplies
// |g1|, |g2| and nu jointly.  Results keep the order of `values`.
inline std::vector<SweepPoint> sweep(const ScenarioConfig& base, const std::string& axis,
                                     const std::vector<double>& values) {
    const bool scale_axis = axis == "all_couplings_scale";
    if (!scale_axis && axis != "g1" && axis != "g2" && axis != "nu" && axis != "Delta" &&
        axis != "phi" && axis != "kappa" && axis != "gamma" && axis != "beta")
        throw std::invalid_argument("sweep: unknown axis '" + axis + "'");

    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (const double v : values) {
        ScenarioConfig cfg = base;
        if (scale_axis) {
            cfg.params.g1 *= v;
            cfg.params.g2 *= v;
            cfg.params.nu *= v;
        } else {
            apply_config_key(cfg, axis, format_double(v));
        }
        cfg.name = base.name + " [" + axis + " = " + format_double(v) + "]";
        out.push_back({v, run_scenario(cfg)});
    }
    return out;
}

}  // namespace fcqed
