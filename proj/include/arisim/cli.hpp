// SPDX-License-Identifier: Apache-2.0
//
// arisim: link-level simulator for aerial-RIS assisted CoMP-NOMA downlinks
// Copyright (C) 2026 The arisim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ARISIM_CLI_HPP
#define ARISIM_CLI_HPP

#include "arisim/config.hpp"
#include "arisim/error.hpp"
#include "arisim/feedback.hpp"
#include "arisim/montecarlo.hpp"
#include "arisim/optimizer.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace arisim::cli {

inline constexpr const char *kVersion = "1.0.0";

enum ExitCode : int
{
    exit_ok = 0,
    exit_invalid = 2,
    exit_io = 3,
};

// Shortest representation that round-trips a double.
inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter
{
public:
    explicit CsvWriter(const std::vector<std::string> &header) { row(header); }

    void row(const std::vector<std::string> &cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
        ++rows_;
    }

    const std::string &text() const { return text_; }
    std::size_t data_rows() const { return rows_ - 1; }

private:
    std::string text_;
    std::size_t rows_ = 0;
};

inline std::string num(double v) { return format_number(v); }
inline std::string num(std::size_t v) { return std::to_string(v); }

struct ExperimentOutput
{
    std::string csv;
    std::size_t rows = 0;
    Json summary = Json::object();
};

inline ExperimentOutput sumrate_vs_elements(const ExperimentConfig &cfg, TrialPlan plan)
{
    const auto points = sweep_elements(plan, cfg.scenario());
    CsvWriter w({"M", "sum_rate_mean", "sum_rate_stderr"});
    for (const ElementPoint &p : points)
        w.row({num(p.elements), num(p.sum.mean), num(p.sum.std_error)});
    return {w.text(), w.data_rows(), {{"points", points.size()}}};
}

inline ExperimentOutput rate_vs_power(const ExperimentConfig &cfg, TrialPlan plan)
{
    const auto records = collect_power_sweep(plan, cfg.scenario());
    const auto curve = summarize_rates(plan, records);
    CsvWriter w({"p_tx_dbm", "rate_near_1_mean", "rate_near_1_stderr", "rate_near_2_mean", "rate_near_2_stderr",
                 "rate_near_1_to_far_mean", "rate_near_1_to_far_stderr", "rate_near_2_to_far_mean",
                 "rate_near_2_to_far_stderr", "rate_far_mean", "rate_far_stderr", "sum_rate_mean", "sum_rate_stderr"});
    for (const RatePoint &p : curve)
        w.row({num(p.p_tx_dbm), num(p.near[0].mean), num(p.near[0].std_error), num(p.near[1].mean),
               num(p.near[1].std_error), num(p.near_decoding_far[0].mean), num(p.near_decoding_far[0].std_error),
               num(p.near_decoding_far[1].mean), num(p.near_decoding_far[1].std_error), num(p.far.mean),
               num(p.far.std_error), num(p.sum.mean), num(p.sum.std_error)});
    return {w.text(), w.data_rows(), {{"points", curve.size()}}};
}

inline ExperimentOutput outage_vs_power(const ExperimentConfig &cfg, TrialPlan plan)
{
    const auto records = collect_power_sweep(plan, cfg.scenario());
    struct Series
    {
        std::string name;
        std::vector<ProportionEstimate> curve;
    };
    std::vector<Series> series;
    for (bool ris : {true, false}) {
        const std::string suffix = ris ? "" : "_noris";
        series.push_back({"near_1" + suffix, near_outage_curve(plan, records, 0, ris)});
        series.push_back({"near_2" + suffix, near_outage_curve(plan, records, 1, ris)});
        series.push_back({"far_comp" + suffix, far_outage_curve(plan, records, FarMode::comp, ris)});
        series.push_back({"far_noncomp" + suffix, far_outage_curve(plan, records, FarMode::noncomp, ris)});
    }
    std::vector<std::string> header{"p_tx_dbm"};
    for (const Series &s : series) {
        header.push_back("outage_" + s.name);
        header.push_back("outage_" + s.name + "_lo");
        header.push_back("outage_" + s.name + "_hi");
    }
    CsvWriter w(header);
    for (std::size_t k = 0; k < plan.power_sweep_dbm.size(); ++k) {
        std::vector<std::string> row{num(plan.power_sweep_dbm[k])};
        for (const Series &s : series) {
            row.push_back(num(s.curve[k].p));
            row.push_back(num(s.curve[k].lower));
            row.push_back(num(s.curve[k].upper));
        }
        w.row(row);
    }
    return {w.text(), w.data_rows(), {{"points", plan.power_sweep_dbm.size()}}};
}

inline ExperimentOutput se_ee(const ExperimentConfig &cfg, TrialPlan plan)
{
    const Scenario s = cfg.scenario();
    const auto records = collect_power_sweep(plan, s);
    const auto with_ris = efficiency_curve(plan, s, summarize_rates(plan, records, true), cfg.efficiency_scope);
    const auto without_ris = efficiency_curve(plan, s, summarize_rates(plan, records, false), cfg.efficiency_scope);
    CsvWriter w({"p_tx_dbm", "se", "ee", "se_noris", "ee_noris"});
    for (std::size_t k = 0; k < with_ris.size(); ++k)
        w.row({num(with_ris[k].p_tx_dbm), num(with_ris[k].se), num(with_ris[k].ee), num(without_ris[k].se),
               num(without_ris[k].ee)});
    return {w.text(), w.data_rows(), {{"points", with_ris.size()}, {"scope", detail::scope_name(cfg.efficiency_scope)}}};
}

inline void write_search_rows(CsvWriter &w, const SearchResult &r, bool split_columns)
{
    for (std::size_t j = 0; j < r.trace.size(); ++j) {
        const CandidateScore &c = r.trace[j];
        std::vector<std::string> row;
        if (split_columns) {
            row = {num(c.split.first), num(c.split.second)};
        } else {
            row = {num(c.gamma_far), num(1.0 - c.gamma_far)};
        }
        for (const std::string &cell :
             {num(c.sum.mean), num(c.sum.std_error), num(c.near[0].mean), num(c.near[1].mean), num(c.far.mean),
              std::string(c.feasible ? "1" : "0"), std::string(j == r.best_index ? "1" : "0")})
            row.push_back(cell);
        w.row(row);
    }
}

inline ExperimentOutput pa_sweep(const ExperimentConfig &cfg, TrialPlan plan)
{
    const SearchResult r = optimize_pa(cfg.search_space(), plan, cfg.scenario());
    CsvWriter w({"gamma_far", "gamma_near", "sum_rate_mean", "sum_rate_stderr", "rate_near_1", "rate_near_2", "rate_far",
                 "feasible", "best"});
    write_search_rows(w, r, false);
    return {w.text(), w.data_rows(),
            {{"best_gamma_far", r.best_pa.gamma_far[0]}, {"objective", r.objective}, {"feasible", r.feasible}}};
}

inline ExperimentOutput split_search(const ExperimentConfig &cfg, TrialPlan plan)
{
    const SearchResult r = optimize_split(cfg.search_space(), plan, cfg.scenario());
    CsvWriter w({"m_bs1", "m_bs2", "sum_rate_mean", "sum_rate_stderr", "rate_near_1", "rate_near_2", "rate_far",
                 "feasible", "best"});
    write_search_rows(w, r, true);
    return {w.text(), w.data_rows(),
            {{"best_split", Json::array({r.best_split.first, r.best_split.second})},
             {"objective", r.objective},
             {"feasible", r.feasible}}};
}

// Runs one of the CSV-producing experiments in memory.
inline ExperimentOutput run_experiment(const ExperimentConfig &cfg, unsigned workers)
{
    TrialPlan plan = cfg.plan;
    plan.workers = std::max(1u, workers);
    if (cfg.experiment == "sumrate-vs-elements")
        return sumrate_vs_elements(cfg, plan);
    if (cfg.experiment == "rate-vs-power")
        return rate_vs_power(cfg, plan);
    if (cfg.experiment == "outage-vs-power")
        return outage_vs_power(cfg, plan);
    if (cfg.experiment == "se-ee")
        return se_ee(cfg, plan);
    if (cfg.experiment == "pa-sweep")
        return pa_sweep(cfg, plan);
    if (cfg.experiment == "split-search")
        return split_search(cfg, plan);
    throw ConfigError("experiment", "'" + cfg.experiment + "' does not produce a CSV table");
}

inline void write_text(const std::filesystem::path &path, const std::string &text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

inline std::filesystem::path manifest_path(const std::filesystem::path &output)
{
    std::filesystem::path p = output;
    p += ".manifest.json";
    return p;
}

inline Json make_manifest(const ExperimentConfig &cfg, const std::vector<std::string> &outputs, const Json &summary,
                          std::size_t trials)
{
    return Json{
        {"manifest_version", 1},
        {"tool", "arisim"},
        {"experiment", cfg.experiment},
        {"seed", cfg.plan.master_seed},
        {"trials", trials},
        {"config_hash", config_hash(cfg)},
        {"outputs", outputs},
        {"summary", summary},
        {"versions",
         {{"arisim", kVersion},
          {"compiler", __VERSION__},
          {"cplusplus", __cplusplus},
          {"nlohmann_json",
           std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
               std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
        {"config", to_json(cfg)},
    };
}

/// Entry point of the `arisim` tool. Exit codes: 0 success, 2 invalid arguments or
/// configuration, 3 I/O failure.
inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Link-level Monte Carlo simulator for aerial-RIS assisted CoMP-NOMA downlinks", "arisim"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> records_per_user;
    std::string config_path;
    std::string out_path;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--seed", seed, "Master seed");
    app.add_option("--trials", trials, "Monte Carlo trials per sweep point (export-qps: channel draws)");
    app.add_option("--config", config_path, "JSON config document or run manifest");
    app.add_option("--out", out_path, "Output file (a manifest is written next to it)");
    app.add_option("--workers", workers, "Worker threads; results do not depend on this")->check(CLI::PositiveNumber);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"sumrate-vs-elements", "Network sum rate vs number of RIS elements"},
        {"rate-vs-power", "Average user rates vs transmit power per BS"},
        {"outage-vs-power", "Outage probabilities vs transmit power (CoMP/non-CoMP, with/without RIS)"},
        {"se-ee", "Spectral and energy efficiency vs transmit power"},
        {"pa-sweep", "Power-allocation grid search"},
        {"split-search", "Exhaustive RIS element split search"},
        {"export-qps", "Export quantized phase-shift bit datasets"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        if (name == "export-qps")
            sub->add_option("--records-per-user", records_per_user, "Records per user tag");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "arisim: " << e.what() << '\n';
        return exit_invalid;
    }

    const std::string experiment = app.get_subcommands().front()->get_name();
    try {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config_file(config_path);
        cfg.experiment = experiment;
        if (seed)
            cfg.plan.master_seed = *seed;
        if (trials)
            cfg.plan.trials = *trials;
        if (records_per_user)
            cfg.records_per_user = *records_per_user;
        if (!out_path.empty())
            cfg.output = out_path;
        if (cfg.output.empty())
            cfg.output = experiment == "export-qps" ? "qps.csv" : experiment + ".csv";
        cfg.validate();

        const std::filesystem::path output = cfg.output;
        if (experiment == "export-qps") {
            if (cfg.elements == 0)
                throw ConfigError("ris.elements", "export-qps needs at least one RIS element");
            const std::size_t draws = trials ? *trials : (cfg.records_per_user + cfg.elements - 1) / cfg.elements;
            if (output.has_parent_path())
                std::filesystem::create_directories(output.parent_path());
            const std::size_t records = export_dataset(cfg.scenario(), draws, cfg.plan.master_seed, output, config_hash(cfg));
            const Json manifest = make_manifest(cfg, {output.string(), sidecar_path(output).string()},
                                                {{"records", records}}, draws);
            write_text(manifest_path(output), manifest.dump(2) + "\n");
            out << "export-qps: wrote " << records << " records to " << output.string() << '\n';
            return exit_ok;
        }

        const ExperimentOutput result = run_experiment(cfg, workers);
        write_text(output, result.csv);
        write_text(manifest_path(output), make_manifest(cfg, {output.string()}, result.summary, cfg.plan.trials).dump(2) + "\n");
        out << experiment << ": wrote " << result.rows << " rows to " << output.string() << '\n';
        return exit_ok;
    } catch (const ConfigError &e) {
        err << "arisim: invalid configuration: " << e.what() << '\n';
        return exit_invalid;
    } catch (const DomainError &e) {
        err << "arisim: invalid configuration: " << e.what() << '\n';
        return exit_invalid;
    } catch (const IoError &e) {
        err << "arisim: " << e.what() << '\n';
        return exit_io;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "arisim: " << e.what() << '\n';
        return exit_io;
    }
}

} // namespace arisim::cli

#endif
