#include "cqed/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "cqed/analytic.hpp"
#include "cqed/integrate.hpp"
#include "cqed/metrics.hpp"

namespace cqed {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

// Effective-model state at time t for Omega = 1 and the given gamma/Omega,
// either from the closed form or from the RK4 oracle.
DensityMatrix state_at(double omega_t, double gamma_ratio, bool oracle, double dt) {
    const SystemParams p{1.0, 1.0, gamma_ratio};
    if (!oracle) return rho_exact(omega_t, p).rho;
    if (omega_t <= 0.0) return initial_eg_state();
    const Trajectory traj =
        integrate_effective(initial_eg_state(), p, {omega_t}, {dt, StepMethod::rk4});
    return traj.states.back();
}

// One trajectory over a whole Omega*t grid (oracle mode for fig5/fig6/sweep).
std::vector<DensityMatrix> states_on_grid(const std::vector<double>& omega_t, double gamma_ratio,
                                          bool oracle, double dt) {
    std::vector<DensityMatrix> out;
    out.reserve(omega_t.size());
    if (!oracle) {
        const SystemParams p{1.0, 1.0, gamma_ratio};
        for (double t : omega_t) out.push_back(rho_exact(t, p).rho);
        return out;
    }
    const SystemParams p{1.0, 1.0, gamma_ratio};
    return integrate_effective(initial_eg_state(), p, omega_t, {dt, StepMethod::rk4}).states;
}

} // namespace

RunConfig default_config(const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    if (command == "fig2") {
        cfg.gamma_ratio = {0.0, 0.01, 0.05, 0.1};
        cfg.grid = 100;
        cfg.t_max = 3.0 * kPi;
        cfg.ratio_min = 0.01;
        cfg.ratio_max = 1.0 / 3.0;
    } else if (command == "fig3") {
        cfg.gamma_ratio = {0.0, 0.2, 0.4};
        cfg.grid = 181;
        cfg.ks = {0};
    } else if (command == "fig5" || command == "fig6") {
        cfg.grid = 81;
        cfg.t_max = 2.0 * kPi;
        cfg.gamma_axis_max = 1.0;
    } else if (command == "threshold") {
        cfg.ks = {0, 1, 2, 3, 4};
    } else if (command == "sweep") {
        cfg.gamma_ratio = {0.0, 0.2, 0.4};
        cfg.grid = 201;
        cfg.t_max = 2.0 * kPi;
    } else if (command == "verify") {
        cfg.format = "csv";
    } else {
        throw ConfigError("unknown command: " + command);
    }
    return cfg;
}

void apply_json_config(RunConfig& cfg, const nlohmann::json& j) {
    require(j.is_object(), "config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "gamma_ratio")
                cfg.gamma_ratio = val.get<std::vector<double>>();
            else if (key == "k")
                cfg.ks = val.is_array() ? val.get<std::vector<int>>() : std::vector<int>{val.get<int>()};
            else if (key == "grid")
                cfg.grid = val.get<int>();
            else if (key == "t_max")
                cfg.t_max = val.get<double>();
            else if (key == "ratio_min")
                cfg.ratio_min = val.get<double>();
            else if (key == "ratio_max")
                cfg.ratio_max = val.get<double>();
            else if (key == "gamma_axis_max")
                cfg.gamma_axis_max = val.get<double>();
            else if (key == "oracle")
                cfg.oracle = val.get<bool>();
            else if (key == "dt")
                cfg.dt = val.get<double>();
            else if (key == "n_max")
                cfg.n_max = val.get<int>();
            else if (key == "out")
                cfg.out = val.get<std::string>();
            else if (key == "format")
                cfg.format = val.get<std::string>();
            else if (key == "only")
                cfg.only = val.get<std::string>();
            else
                throw ConfigError("unknown config key: " + key);
        } catch (const nlohmann::json::exception&) {
            throw ConfigError("bad value for config key: " + key);
        }
    }
}

nlohmann::json effective_config(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["format"] = cfg.format;
    j["out"] = cfg.out;
    j["oracle"] = cfg.oracle;
    j["dt"] = cfg.dt;
    if (cfg.command == "fig2") {
        j["gamma_ratio"] = cfg.gamma_ratio;
        j["grid"] = cfg.grid;
        j["t_max"] = cfg.t_max;
        j["ratio_min"] = cfg.ratio_min;
        j["ratio_max"] = cfg.ratio_max;
    } else if (cfg.command == "fig3") {
        j["gamma_ratio"] = cfg.gamma_ratio;
        j["grid"] = cfg.grid;
        j["k"] = cfg.ks.empty() ? 0 : cfg.ks.front();
    } else if (cfg.command == "fig5" || cfg.command == "fig6") {
        j["grid"] = cfg.grid;
        j["t_max"] = cfg.t_max;
        if (cfg.gamma_ratio.empty())
            j["gamma_axis_max"] = cfg.gamma_axis_max;
        else
            j["gamma_ratio"] = cfg.gamma_ratio;
    } else if (cfg.command == "threshold") {
        j["k"] = cfg.ks;
    } else if (cfg.command == "sweep") {
        j["gamma_ratio"] = cfg.gamma_ratio;
        j["grid"] = cfg.grid;
        j["t_max"] = cfg.t_max;
    } else if (cfg.command == "verify") {
        j["only"] = cfg.only;
    }
    return j;
}

Table fig2_table(const RunConfig& cfg) {
    require(cfg.grid >= 1, "fig2: grid must be >= 1");
    require(!cfg.gamma_ratio.empty(), "fig2: need at least one gamma ratio");
    for (double g : cfg.gamma_ratio) require(g >= 0.0, "fig2: gamma ratio must be >= 0");
    require(cfg.ratio_min > 0.0, "fig2: lambda/delta must be positive");
    require(cfg.ratio_max <= 1.0 / 3.0 + 1e-12, "fig2: lambda/delta must stay within the dispersive regime (<= 1/3)");
    require(cfg.ratio_min <= cfg.ratio_max, "fig2: empty lambda/delta range");
    require(cfg.t_max > 0.0, "fig2: t_max (lambda*t) must be positive");

    Table tab;
    tab.columns.push_back("lambda_over_delta");
    for (double g : cfg.gamma_ratio) {
        tab.columns.push_back("p_eg_gamma_" + fmt_short(g));
        tab.columns.push_back("p_ge_gamma_" + fmt_short(g));
        tab.columns.push_back("p_gg_gamma_" + fmt_short(g));
    }

    const double lambda_t = cfg.t_max;
    for (double r : linspace(cfg.ratio_min, cfg.ratio_max, cfg.grid)) {
        std::vector<double> row = {r};
        for (double g : cfg.gamma_ratio) {
            JointProbs jp;
            if (!cfg.oracle) {
                // Omega t = (lambda t)(lambda/delta), gamma t = (gamma/lambda)(lambda t)
                jp = closed_form_joint_probs(1.0, g * lambda_t, lambda_t * r);
            } else {
                const SystemParams p{1.0, 1.0 / r, g};
                const Trajectory traj = integrate_effective(
                    initial_eg_state(), p, {lambda_t}, {cfg.dt / p.omega_eff(), StepMethod::rk4});
                jp = joint_probabilities(traj.states.back());
            }
            row.insert(row.end(), {jp.eg, jp.ge, jp.gg});
        }
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

Table fig3_table(const RunConfig& cfg) {
    require(cfg.grid >= 2, "fig3: grid must be >= 2");
    require(!cfg.gamma_ratio.empty(), "fig3: need at least one gamma ratio");
    require(!cfg.ks.empty() && cfg.ks.front() >= 0, "fig3: k must be >= 0");

    const InteractionTimeIndex idx{cfg.ks.front()};
    const double tk = idx.time(1.0);

    std::vector<DensityMatrix> states;
    for (double g : cfg.gamma_ratio) states.push_back(state_at(tk, g, cfg.oracle, cfg.dt));

    Table tab;
    tab.columns.push_back("phi");
    for (double g : cfg.gamma_ratio) tab.columns.push_back("beta_gamma_" + fmt_short(g));
    for (double phi : linspace(0.0, 2.0 * kPi, cfg.grid)) {
        std::vector<double> row = {phi};
        for (const auto& st : states) row.push_back(bell_signal(st, phi));
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

namespace {

Table surface_table(const RunConfig& cfg, const char* value_column,
                    double (*metric)(const DensityMatrix&)) {
    require(cfg.grid >= 2, "surface: grid must be >= 2");
    require(cfg.t_max > 0.0, "surface: t_max must be positive");

    std::vector<double> gammas = cfg.gamma_ratio;
    if (gammas.empty()) {
        require(cfg.gamma_axis_max > 0.0, "surface: gamma axis must be positive");
        gammas = linspace(0.0, cfg.gamma_axis_max, cfg.grid);
    }
    const std::vector<double> times = linspace(0.0, cfg.t_max, cfg.grid);

    Table tab;
    tab.columns = {"gamma_over_omega", "omega_t", value_column};
    for (double g : gammas) {
        const std::vector<DensityMatrix> states = states_on_grid(times, g, cfg.oracle, cfg.dt);
        for (size_t i = 0; i < times.size(); ++i)
            tab.rows.push_back({g, times[i], metric(states[i])});
    }
    return tab;
}

} // namespace

Table fig5_table(const RunConfig& cfg) { return surface_table(cfg, "fmax", &max_teleport_fidelity); }

Table fig6_table(const RunConfig& cfg) { return surface_table(cfg, "concurrence", &concurrence); }

Table threshold_table(const RunConfig& cfg) {
    require(!cfg.ks.empty(), "threshold: need at least one k");
    for (int k : cfg.ks) require(k >= 0, "threshold: k must be >= 0");

    Table tab;
    tab.columns = {"k", "omega_t_k", "gamma_max_over_omega", "gamma_max_bisect", "rel_error"};
    for (int k : cfg.ks) {
        const InteractionTimeIndex idx{k};
        const double tk = idx.time(1.0);
        const double formula = gamma_max(idx, 1.0);
        const double target = 2.0 / 3.0 + 1e-9;
        auto fmax_at = [&](double g) {
            return max_teleport_fidelity(state_at(tk, g, cfg.oracle, cfg.dt));
        };
        double lo = 0.0, hi = 2.0 * formula + 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (fmax_at(mid) > target ? lo : hi) = mid;
        }
        const double found = 0.5 * (lo + hi);
        tab.rows.push_back({static_cast<double>(k), tk, formula, found,
                            std::abs(found - formula) / formula});
    }
    return tab;
}

Table sweep_table(const RunConfig& cfg) {
    require(cfg.grid >= 2, "sweep: grid must be >= 2");
    require(!cfg.gamma_ratio.empty(), "sweep: need at least one gamma ratio");
    require(cfg.t_max > 0.0, "sweep: t_max must be positive");

    const std::vector<double> times = linspace(0.0, cfg.t_max, cfg.grid);
    Table tab;
    tab.columns = {"gamma_over_omega", "omega_t",       "p_eg",  "p_ge",
                   "p_gg",             "p_ee",          "bell_amplitude", "bell_phase",
                   "concurrence",      "fmax",          "epr_fidelity",   "purity"};
    for (double g : cfg.gamma_ratio) {
        const std::vector<DensityMatrix> states = states_on_grid(times, g, cfg.oracle, cfg.dt);
        for (size_t i = 0; i < times.size(); ++i) {
            const ChannelReport rep = channel_report(states[i]);
            tab.rows.push_back({g, times[i], rep.probs[0], rep.probs[1], rep.probs[2], rep.probs[3],
                                rep.bell_amplitude, rep.bell_phase, rep.concurrence, rep.fmax,
                                rep.epr_fidelity, rep.purity});
        }
    }
    return tab;
}

std::string render_table(const Table& table, const RunConfig& cfg) {
    const nlohmann::json conf = effective_config(cfg);
    if (cfg.format == "csv") {
        std::string out = "# config " + conf.dump() + "\n";
        for (size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? "," : "") + table.columns[c];
        out += "\n";
        for (const auto& row : table.rows) {
            for (size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + fmt17(row[c]);
            out += "\n";
        }
        return out;
    }
    if (cfg.format == "json") {
        nlohmann::json j;
        j["config"] = conf;
        j["columns"] = table.columns;
        nlohmann::json data = nlohmann::json::object();
        for (size_t c = 0; c < table.columns.size(); ++c) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& row : table.rows) arr.push_back(row[c]);
            data[table.columns[c]] = std::move(arr);
        }
        j["data"] = std::move(data);
        return j.dump(2) + "\n";
    }
    throw ConfigError("unknown format: " + cfg.format);
}

std::string render_report(const std::vector<CheckResult>& checks, const RunConfig& cfg) {
    const nlohmann::json conf = effective_config(cfg);
    if (cfg.format == "csv") {
        std::string out = "# config " + conf.dump() + "\n";
        out += "id,relation,value,expected,tolerance,pass,detail\n";
        for (const auto& c : checks) {
            out += c.id + "," + c.relation + "," + fmt17(c.value) + "," + fmt17(c.expected) + "," +
                   fmt17(c.tolerance) + "," + (c.pass ? "1" : "0") + "," + c.detail + "\n";
        }
        return out;
    }
    if (cfg.format == "json") {
        nlohmann::json j;
        j["config"] = conf;
        j["all_pass"] = all_passed(checks);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
            arr.push_back({{"id", c.id},
                           {"relation", c.relation},
                           {"value", c.value},
                           {"expected", c.expected},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"detail", c.detail}});
        }
        j["checks"] = std::move(arr);
        return j.dump(2) + "\n";
    }
    throw ConfigError("unknown format: " + cfg.format);
}

int run_command(const RunConfig& cfg_in) {
    RunConfig cfg = cfg_in;
    require(cfg.format == "csv" || cfg.format == "json", "format must be csv or json");
    if (cfg.out.empty()) cfg.out = cfg.command + "." + cfg.format;

    std::string payload;
    int status = 0;
    if (cfg.command == "verify") {
        const std::vector<CheckResult> checks = run_acceptance(cfg.only);
        require(!checks.empty(), "verify: --only matched no checks");
        for (const auto& c : checks) std::cout << format_check_line(c) << "\n";
        payload = render_report(checks, cfg);
        status = all_passed(checks) ? 0 : 1;
    } else {
        Table tab;
        if (cfg.command == "fig2")
            tab = fig2_table(cfg);
        else if (cfg.command == "fig3")
            tab = fig3_table(cfg);
        else if (cfg.command == "fig5")
            tab = fig5_table(cfg);
        else if (cfg.command == "fig6")
            tab = fig6_table(cfg);
        else if (cfg.command == "threshold")
            tab = threshold_table(cfg);
        else if (cfg.command == "sweep")
            tab = sweep_table(cfg);
        else
            throw ConfigError("unknown command: " + cfg.command);
        payload = render_table(tab, cfg);
    }

    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + cfg.out);
    f << payload;
    if (!f.good()) throw ConfigError("failed writing output file: " + cfg.out);
    return status;
}

} // namespace cqed
