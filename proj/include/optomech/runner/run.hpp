// run.hpp: end-to-end scenario pipeline and its serialized outputs.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optomech/dynamics.hpp"
#include "optomech/entanglement.hpp"
#include "optomech/runner/config.hpp"
#include "optomech/runner/io.hpp"
#include "optomech/steady_state.hpp"

namespace optomech {

inline constexpr int summary_schema_version = 1;

struct RunResult {
    Scenario scenario;
    DerivedParams derived;
    std::vector<SteadyState> steady_states;
    std::optional<ThresholdReport> threshold;  // symmetric configurations only
    std::vector<TrajectorySample> samples;
    std::array<NegativitySeries, 3> series;  // indexed by PairId
    std::array<TransferReport, 3> reports;
    std::filesystem::path samples_path;
    std::filesystem::path summary_path;

    const NegativitySeries& series_for(PairId p) const { return series[static_cast<std::size_t>(p)]; }
    const TransferReport& report_for(PairId p) const { return reports[static_cast<std::size_t>(p)]; }

    std::size_t stable_count() const {
        std::size_t n = 0;
        for (const auto& s : steady_states) n += s.stable ? 1 : 0;
        return n;
    }
};

inline TransferOptions transfer_options(const Scenario& s, const DerivedParams& d) {
    return default_transfer_options(d, s.eps_on, s.hold_periods);
}

/// `t_s,q,p,re_aL,im_aL,re_aR,im_aR,EN_ML,EN_MR,EN_LR,vmin_ML,vmin_MR,vmin_LR`
inline std::string samples_csv(const RunResult& r) {
    std::string out = "t_s,q,p,re_aL,im_aL,re_aR,im_aR,EN_ML,EN_MR,EN_LR,vmin_ML,vmin_MR,vmin_LR\n";
    out.reserve(out.size() + r.samples.size() * 260);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const auto& s = r.samples[i];
        for (double v : {s.t, s.mean.q, s.mean.p, s.mean.alpha_L.real(), s.mean.alpha_L.imag(), s.mean.alpha_R.real(),
                         s.mean.alpha_R.imag()}) {
            io::append_double(out, v);
            out += ',';
        }
        for (const auto& ser : r.series) {
            io::append_double(out, ser.E_N[i]);
            out += ',';
        }
        for (std::size_t k = 0; k < 3; ++k) {
            io::append_double(out, r.series[k].v_minus[i]);
            out += k < 2 ? ',' : '\n';
        }
    }
    return out;
}

inline nlohmann::ordered_json summary_json(const RunResult& r) {
    using nlohmann::ordered_json;
    auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    const auto& s = r.scenario;
    const auto& d = r.derived;

    ordered_json j;
    j["schema_version"] = summary_schema_version;
    j["scenario"] = {
        {"name", s.name},
        {"frequency_convention", to_string(s.params.frequency_convention)},
        {"drive_mode", to_string(s.drive_mode)},
        {"t_end_s", s.trajectory.t_end},
        {"dt_s", s.trajectory.dt},
        {"sample_every", s.trajectory.sample_every},
        {"eps_on", s.eps_on},
        {"hold_periods", s.hold_periods},
    };
    j["derived"] = {
        {"kappa_L", d.kappa_L}, {"kappa_R", d.kappa_R}, {"eps_L", d.eps_L},     {"eps_R", d.eps_R},
        {"g0_L", d.g0_L},       {"g0_R", d.g0_R},       {"omega_M", d.omega_M}, {"Gamma_M", d.Gamma_M},
        {"nbar", d.nbar},       {"Delta0_L", d.Delta0_L}, {"Delta0_R", d.Delta0_R},
    };

    ordered_json onset, pattern, saturation, zeros, horizon, flagged;
    for (PairId p : all_pairs) {
        const auto& rep = r.report_for(p);
        onset[to_string(p)] = opt(rep.onset_time);
        pattern[to_string(p)] = to_string(rep.pattern);
        saturation[to_string(p)] = opt(rep.saturation_value);
        zeros[to_string(p)] = rep.zero_interval_count;
        horizon[to_string(p)] = rep.insufficient_horizon;
        flagged[to_string(p)] = r.series_for(p).nonphysical_count();
    }
    j["onset_time_s"] = onset;
    j["pattern"] = pattern;
    j["saturation"] = saturation;
    j["zero_interval_count"] = zeros;
    j["insufficient_horizon"] = horizon;
    j["nonphysical_samples"] = flagged;

    ordered_json states = ordered_json::array();
    for (const auto& ss : r.steady_states) {
        states.push_back({
            {"q", ss.q},
            {"alpha_L", {ss.alpha_L.real(), ss.alpha_L.imag()}},
            {"alpha_R", {ss.alpha_R.real(), ss.alpha_R.imag()}},
            {"stable", ss.stable},
            {"verdict", to_string(ss.verdict)},
            {"residual", ss.residual},
            {"multiplicity", ss.multiplicity},
        });
    }
    j["steady_states"] = states;
    j["stable_count"] = r.stable_count();

    if (r.threshold) {
        const auto& t = *r.threshold;
        j["threshold"] = {
            {"condition_i", t.condition_i},
            {"condition_ii_negative_branch", t.condition_ii_negative_branch},
            {"condition_ii_positive_branch", t.condition_ii_positive_branch},
            {"reduced_inequality", t.reduced_inequality},
            {"regime", to_string(t.regime_label)},
        };
    } else {
        j["threshold"] = nullptr;
    }
    return j;
}

/// Derives, solves for equilibria, integrates, analyses all three pairs. When `out_dir` is
/// given, writes samples.csv and summary.json there.
inline RunResult run_scenario(const Scenario& s, const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
    RunResult r;
    r.scenario = s;
    r.derived = derive_params(s.params);
    r.steady_states = fixed_points(r.derived);
    if (is_symmetric(r.derived) && r.derived.Delta0_L > 0.0) r.threshold = threshold_report(r.derived);

    r.samples = integrate(r.derived, s.trajectory);
    const TransferOptions opt = transfer_options(s, r.derived);
    for (PairId p : all_pairs) {
        const auto k = static_cast<std::size_t>(p);
        r.series[k] = negativity_series(r.samples, p);
        r.reports[k] = transfer_report(r.series[k], opt);
    }

    if (out_dir) {
        io::ensure_directory(*out_dir);
        r.samples_path = *out_dir / "samples.csv";
        r.summary_path = *out_dir / "summary.json";
        io::write_text_file(r.samples_path, samples_csv(r));
        io::write_text_file(r.summary_path, summary_json(r).dump(2) + "\n");
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// plot data
// ---------------------------------------------------------------------------------------------

inline std::string negativity_csv(const NegativitySeries& s) {
    std::string out = "t_s,EN,v_minus\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        io::append_double(out, s.times[i]);
        out += ',';
        io::append_double(out, s.E_N[i]);
        out += ',';
        io::append_double(out, s.v_minus[i]);
        out += '\n';
    }
    return out;
}

/// Inverse of negativity_csv (times, E_N and v_minus only).
inline NegativitySeries parse_negativity_csv(std::string_view text, PairId pair) {
    NegativitySeries s;
    s.pair = pair;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        const std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        if (header) {
            if (line != "t_s,EN,v_minus") throw IoError("unexpected negativity CSV header");
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto f = io::split_csv(line);
        if (f.size() != 3) throw IoError("negativity CSV row needs 3 fields");
        s.times.push_back(io::parse_double(f[0]));
        s.E_N.push_back(io::parse_double(f[1]));
        s.v_minus.push_back(io::parse_double(f[2]));
        s.nonphysical.push_back(false);
    }
    return s;
}

inline std::string gnuplot_script(const RunResult& r) {
    std::string g;
    g += "# gnuplot -p plot.gp\n";
    g += "set datafile separator ','\n";
    g += "set key autotitle columnhead\n";
    g += "set xlabel 't (us)'\n";
    g += "set ylabel 'E_N'\n";
    g += "set title '" + r.scenario.name + "'\n";
    g += "set multiplot layout 3,1\n";
    for (PairId p : all_pairs) {
        const std::string name = to_string(p);
        g += "plot 'EN_" + name + ".csv' using ($1*1e6):2 with lines title '" + name + "'\n";
    }
    g += "unset multiplot\n";
    return g;
}

inline std::vector<std::filesystem::path> emit_plot_data(const RunResult& r, const std::filesystem::path& out_dir) {
    for (const auto& s : r.series)
        if (s.size() == 0) throw InvalidParameter("emit_plot_data: empty series");
    io::ensure_directory(out_dir);
    std::vector<std::filesystem::path> paths;
    for (PairId p : all_pairs) {
        const auto path = out_dir / (std::string("EN_") + to_string(p) + ".csv");
        io::write_text_file(path, negativity_csv(r.series_for(p)));
        paths.push_back(path);
    }
    const auto gp = out_dir / "plot.gp";
    io::write_text_file(gp, gnuplot_script(r));
    paths.push_back(gp);
    return paths;
}

}  // namespace optomech
