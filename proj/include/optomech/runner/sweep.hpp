// sweep.hpp: one-dimensional parameter sweeps over numeric config keys.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "optomech/runner/run.hpp"

namespace optomech {

struct SweepResult {
    std::vector<std::string> keys;  // all set to the same grid value
    std::vector<double> values;
    std::vector<RunResult> runs;  // ordered by grid value index
    std::filesystem::path table_path;
};

/// Uniform grid start..stop with `steps` points (both endpoints included).
inline std::vector<double> sweep_grid(double start, double stop, std::size_t steps) {
    if (steps < 2) throw ConfigError("sweep needs at least 2 steps", "steps");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw ConfigError("sweep bounds must be finite", "start");
    if (start == stop) throw ConfigError("degenerate sweep grid (start == stop)", "start");
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i)
        v[i] = i + 1 == steps ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return v;
}

/// Base scenario with every key in `keys` overridden by `value`.
inline Scenario scenario_with(const Scenario& base, const std::vector<std::string>& keys, double value) {
    ConfigValues v = base.source;
    for (const auto& k : keys) v[k] = ConfigEntry{io::format_double(value), 0};
    return scenario_from_values(v, base.name);
}

/// `value,TD_ML,TD_MR,TD_LR,pattern_ML,pattern_MR,pattern_LR,sat_ML,sat_MR,sat_LR`; empty cells for none.
inline std::string sweep_csv(const SweepResult& s) {
    std::string out = "value,TD_ML,TD_MR,TD_LR,pattern_ML,pattern_MR,pattern_LR,sat_ML,sat_MR,sat_LR\n";
    auto cell = [&](const std::optional<double>& v) {
        if (v) io::append_double(out, *v);
    };
    for (std::size_t i = 0; i < s.runs.size(); ++i) {
        io::append_double(out, s.values[i]);
        for (PairId p : all_pairs) {
            out += ',';
            cell(s.runs[i].report_for(p).onset_time);
        }
        for (PairId p : all_pairs) {
            out += ',';
            out += to_string(s.runs[i].report_for(p).pattern);
        }
        for (PairId p : all_pairs) {
            out += ',';
            cell(s.runs[i].report_for(p).saturation_value);
        }
        out += '\n';
    }
    return out;
}

/// Runs the grid on up to `workers` threads (0 = hardware concurrency). Each run writes only
/// into its own run_NNN directory; the table is written afterwards from the calling thread.
inline SweepResult sweep(const Scenario& base, const std::vector<std::string>& keys, double start, double stop,
                         std::size_t steps, const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                         std::size_t workers = 0) {
    if (keys.empty()) throw ConfigError("sweep needs a key", "key");
    for (const auto& k : keys)
        if (!config_keys::numeric(k)) throw ConfigError("not a numeric config key", k);

    SweepResult res;
    res.keys = keys;
    res.values = sweep_grid(start, stop, steps);

    // validate every grid point up front so bad values fail before any work starts
    std::vector<Scenario> scenarios;
    for (double v : res.values) scenarios.push_back(scenario_with(base, keys, v));

    res.runs.resize(steps);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, steps);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < steps; i = next++) {
            try {
                std::optional<std::filesystem::path> dir;
                if (out_dir) {
                    std::string tag = std::to_string(i);
                    tag.insert(0, 3 - std::min<std::size_t>(3, tag.size()), '0');
                    dir = *out_dir / ("run_" + tag);
                }
                res.runs[i] = run_scenario(scenarios[i], dir);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    if (out_dir) {
        io::ensure_directory(*out_dir);
        res.table_path = *out_dir / "sweep.csv";
        io::write_text_file(res.table_path, sweep_csv(res));
    }
    return res;
}

}  // namespace optomech
