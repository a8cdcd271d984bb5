#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/verify.hpp"

namespace cqed {

/// Resolved run configuration for one CLI command. Precedence:
/// command defaults < config file (JSON) < command-line flags.
struct RunConfig {
    std::string command;
    std::vector<double> gamma_ratio; // gamma/lambda for fig2, gamma/Omega elsewhere
    std::vector<int> ks = {0};
    int grid = 0;
    double t_max = 0.0;       // lambda*t for fig2, Omega*t elsewhere
    double ratio_min = 0.0;   // fig2: lambda/delta axis
    double ratio_max = 0.0;
    double gamma_axis_max = 0.0; // fig5/fig6 gamma/Omega axis upper end
    bool oracle = false;
    double dt = 1e-3; // in units of 1/Omega (effective) or 1/lambda (full)
    int n_max = 2;
    std::string out;
    std::string format = "csv";
    std::string only;
};

RunConfig default_config(const std::string& command);

/// Merges config-file values onto `cfg`; unknown keys raise ConfigError.
void apply_json_config(RunConfig& cfg, const nlohmann::json& j);

nlohmann::json effective_config(const RunConfig& cfg);

/// Columnar numeric output shared by the CSV and JSON writers.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table fig2_table(const RunConfig& cfg);
Table fig3_table(const RunConfig& cfg);
Table fig5_table(const RunConfig& cfg);
Table fig6_table(const RunConfig& cfg);
Table threshold_table(const RunConfig& cfg);
Table sweep_table(const RunConfig& cfg);

/// CSV: one `# config {...}` comment line, a header row, then rows with 17
/// significant digits and LF endings. JSON: config echo plus column arrays.
std::string render_table(const Table& table, const RunConfig& cfg);
std::string render_report(const std::vector<CheckResult>& checks, const RunConfig& cfg);

/// Runs the command named by cfg.command and writes cfg.out; returns the
/// process exit status (0 ok, 1 verification failure).
int run_command(const RunConfig& cfg);

} // namespace cqed
