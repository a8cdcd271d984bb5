// Command-line front end: reproduces the standard data sets (fig2/fig3/
// fig5/fig6), sweeps channel metrics, locates the teleportation threshold
// and runs the verification suite. Data only; plotting is out of scope.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqed/errors.hpp"
#include "cqed/figures.hpp"

namespace {

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

void bind_common(CLI::App* sub, cqed::RunConfig& cfg, std::string& config_path) {
    sub->add_option("--gamma-ratio", cfg.gamma_ratio,
                    "decay ratio (gamma/lambda for fig2, gamma/Omega otherwise); repeatable");
    sub->add_option("--k", cfg.ks, "interaction-time index t_k = (2k+1)pi/4W; repeatable");
    sub->add_option("--grid", cfg.grid, "grid points per axis");
    sub->add_option("--t-max", cfg.t_max, "time-axis end (lambda*t for fig2, Omega*t otherwise)");
    sub->add_flag("--oracle", cfg.oracle, "compute states with the RK4 propagator instead of the closed form");
    sub->add_option("--dt", cfg.dt, "integrator step in units of 1/Omega (1/lambda for the full model)");
    sub->add_option("--n-max", cfg.n_max, "Fock cutoff for full-model runs");
    sub->add_option("--out", cfg.out, "output path (default: <command>.<format>)");
    sub->add_option("--format", cfg.format, "output format: csv or json");
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two identical two-level atoms coupled through a dispersive cavity with "
                 "spontaneous emission: joint probabilities, Bell signal, concurrence and "
                 "teleportation fidelity as machine-readable data."};
    app.require_subcommand(1);

    const std::map<std::string, std::string> commands = {
        {"fig2", "joint detection probabilities vs lambda/delta at fixed lambda*t"},
        {"fig3", "Bell signal beta(phi) at the interaction time t_k"},
        {"fig5", "teleportation fidelity over the (Omega*t, gamma/Omega) plane"},
        {"fig6", "concurrence over the (Omega*t, gamma/Omega) plane"},
        {"threshold", "largest decay rate that still beats the classical fidelity 2/3"},
        {"sweep", "full channel report over (gamma/Omega, Omega*t)"},
        {"verify", "run the verification suite and write a report"},
    };

    std::map<std::string, cqed::RunConfig> cfgs;
    std::string config_path_opt;

    try {
        nlohmann::json file_config;
        const std::string config_path = find_config_path(argc, argv);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw cqed::ConfigError("cannot open config file: " + config_path);
            try {
                f >> file_config;
            } catch (const nlohmann::json::exception& e) {
                throw cqed::ConfigError(std::string("config file is not valid JSON: ") + e.what());
            }
        }

        for (const auto& [name, desc] : commands) {
            cfgs[name] = cqed::default_config(name);
            if (!file_config.is_null()) cqed::apply_json_config(cfgs[name], file_config);
            CLI::App* sub = app.add_subcommand(name, desc);
            bind_common(sub, cfgs[name], config_path_opt);
            if (name == "fig2") {
                sub->add_option("--ratio-min", cfgs[name].ratio_min, "lambda/delta axis start");
                sub->add_option("--ratio-max", cfgs[name].ratio_max, "lambda/delta axis end (<= 1/3)");
            }
            if (name == "fig5" || name == "fig6")
                sub->add_option("--gamma-max", cfgs[name].gamma_axis_max,
                                "gamma/Omega axis end (ignored when --gamma-ratio is given)");
            if (name == "verify")
                sub->add_option("--only", cfgs[name].only, "run only checks whose id contains this substring");
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }

        for (const auto& [name, desc] : commands)
            if (app.got_subcommand(name)) return cqed::run_command(cfgs[name]);
        return 2;
    } catch (const cqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
