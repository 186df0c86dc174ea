// optomech: command-line front end.
//
//   optomech run --scenario fig2-sym --out out/fig2
//   optomech run --config my.cfg --format csv
//   optomech sweep --config presets/fig2_sym.cfg --key left.finesse,right.finesse --start 1e5 --stop 3e5 --steps 5
//   optomech verify
//
// Exit codes: 0 success, 2 config/usage, 3 numerical divergence, 4 I/O.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optomech/runner/presets.hpp"
#include "optomech/runner/run.hpp"
#include "optomech/runner/sweep.hpp"
#include "optomech/testkit/verify.hpp"

namespace {

using namespace optomech;

std::string report_table(const RunResult& r) {
    std::string out = "pair,onset_time_s,pattern,saturation,zero_intervals,insufficient_horizon\n";
    for (PairId p : all_pairs) {
        const auto& rep = r.report_for(p);
        out += to_string(p);
        out += ',';
        if (rep.onset_time) out += io::format_double(*rep.onset_time);
        out += ',';
        out += to_string(rep.pattern);
        out += ',';
        if (rep.saturation_value) out += io::format_double(*rep.saturation_value);
        out += ',' + std::to_string(rep.zero_interval_count) + ',' + (rep.insufficient_horizon ? "true" : "false") + '\n';
    }
    return out;
}

nlohmann::ordered_json sweep_json(const SweepResult& s) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.runs.size(); ++i) {
        auto j = summary_json(s.runs[i]);
        rows.push_back({{"value", s.values[i]},
                        {"onset_time_s", j["onset_time_s"]},
                        {"pattern", j["pattern"]},
                        {"saturation", j["saturation"]}});
    }
    return {{"keys", s.keys}, {"rows", rows}};
}

std::vector<std::string> split_keys(const std::string& list) {
    std::vector<std::string> keys;
    std::stringstream ss(list);
    for (std::string k; std::getline(ss, k, ',');)
        if (!k.empty()) keys.push_back(k);
    return keys;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double-cavity optomechanical entanglement simulator"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));

    std::string config, scenario;
    std::filesystem::path out_dir = "out";
    auto* run = app.add_subcommand("run", "run one scenario and write samples.csv, summary.json, plot data");
    auto* run_cfg = run->add_option("--config", config, "scenario file (key = value)");
    auto* run_scn = run->add_option("--scenario", scenario, "built-in scenario")
                        ->check(CLI::IsMember({"fig2-sym", "fig2-asym", "fig2-left-only", "fig3"}));
    run_cfg->excludes(run_scn);
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));

    std::string sweep_keys;
    double start = 0.0, stop = 0.0;
    std::size_t steps = 0, workers = 0;
    auto* sw = app.add_subcommand("sweep", "sweep one numeric key (comma-separated keys move together)");
    sw->add_option("--config", config, "base scenario file")->required();
    sw->add_option("--key", sweep_keys, "config key(s)")->required();
    sw->add_option("--start", start)->required();
    sw->add_option("--stop", stop)->required();
    sw->add_option("--steps", steps)->required();
    sw->add_option("--workers", workers, "worker threads (0 = all cores)");
    sw->add_option("--out", out_dir, "output directory");
    sw->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "run the oracle cross-checks");
    verify->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        if (*run) {
            if (config.empty() && scenario.empty()) throw ConfigError("run needs --config or --scenario", "");
            const Scenario s = config.empty() ? presets::load(scenario) : load_config(config);
            const RunResult r = run_scenario(s, out_dir);
            emit_plot_data(r, out_dir);
            if (format == "csv")
                std::cout << report_table(r);
            else
                std::cout << summary_json(r).dump(2) << '\n';
        } else if (*sw) {
            const Scenario base = load_config(config);
            const SweepResult s = sweep(base, split_keys(sweep_keys), start, stop, steps, out_dir, workers);
            if (format == "csv")
                std::cout << sweep_csv(s);
            else
                std::cout << sweep_json(s).dump(2) << '\n';
        } else if (*verify) {
            const auto results = testkit::run_verification();
            bool ok = true;
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            if (format == "csv") std::cout << "check,passed,seconds,detail\n";
            for (const auto& r : results) {
                ok = ok && r.passed;
                if (format == "csv")
                    std::cout << r.name << ',' << (r.passed ? "true" : "false") << ',' << r.seconds << ',' << r.detail << '\n';
                else
                    j.push_back({{"check", r.name}, {"passed", r.passed}, {"seconds", r.seconds}, {"detail", r.detail}});
            }
            if (format == "json") std::cout << j.dump(2) << '\n';
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::io);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    }
    return 0;
}
