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

#ifndef ARISIM_CONFIG_HPP
#define ARISIM_CONFIG_HPP

#include "arisim/channel.hpp"
#include "arisim/error.hpp"
#include "arisim/feedback.hpp"
#include "arisim/metrics.hpp"
#include "arisim/montecarlo.hpp"
#include "arisim/noma_comp.hpp"
#include "arisim/optimizer.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace arisim {

using Json = nlohmann::ordered_json;

inline constexpr std::array<std::string_view, 7> kExperiments{
    "sumrate-vs-elements", "rate-vs-power", "outage-vs-power", "se-ee", "pa-sweep", "split-search", "export-qps",
};

// Everything needed to reproduce one run. Transmit powers are kept in dBm here and converted
// to watts when the scenario is built.
struct ExperimentConfig
{
    std::string experiment = "rate-vs-power";
    std::string output;

    Geometry geometry = Geometry::defaults();
    PathLossParams path_loss;
    RicianParams rician;
    LinkBudget link_budget;

    std::array<double, 2> gamma_near{0.2, 0.2};
    std::array<double, 2> gamma_far{0.8, 0.8};
    std::array<double, 2> p_tx_dbm{0.0, 0.0};

    std::size_t elements = 70;
    unsigned quant_bits = 9;
    bool distinct_profiles = false;

    FarMode far_mode = FarMode::comp;
    std::size_t noncomp_serving_bs = 1; // 1-based

    TrialPlan plan;
    SearchSpace search;
    bool underfilled_splits = false; // split search over M1 + M2 <= M instead of M1 + M2 = M

    EfficiencyScope efficiency_scope = EfficiencyScope::network;

    std::size_t records_per_user = 100000;
    FeedbackChannelParams feedback;

    PowerAllocation power_allocation() const
    {
        PowerAllocation pa;
        pa.gamma_near = gamma_near;
        pa.gamma_far = gamma_far;
        pa.p_tx_w = {dbm_to_watts(p_tx_dbm[0]), dbm_to_watts(p_tx_dbm[1])};
        return pa;
    }

    Scenario scenario() const
    {
        Scenario s;
        s.geometry = geometry;
        s.path_loss = path_loss;
        s.rician = rician;
        s.budget = link_budget;
        s.pa = power_allocation();
        s.elements = elements;
        s.quant_bits = quant_bits;
        s.mode = far_mode;
        s.noncomp_serving_cell = noncomp_serving_bs - 1;
        return s;
    }

    SearchSpace search_space() const
    {
        SearchSpace sp = search;
        if (sp.split_candidates.empty())
            sp.split_candidates = underfilled_splits ? all_splits(elements) : full_splits(elements);
        return sp;
    }

    // Field-level validation; throws ConfigError naming the offending key.
    void validate() const
    {
        const auto check = [](const char *field, auto &&fn) {
            try {
                fn();
            } catch (const DomainError &e) {
                throw ConfigError(field, e.what());
            }
        };
        bool known = false;
        for (auto e : kExperiments)
            known = known || e == experiment;
        if (!known)
            throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
        check("geometry", [&] { geometry.validate(); });
        check("path_loss", [&] { path_loss.validate(); });
        check("rician", [&] { rician.validate(); });
        check("link_budget", [&] { link_budget.validate(); });
        check("power", [&] { power_allocation().validate(); });
        check("ris.quant_bits", [&] { check_quant_bits(quant_bits); });
        check("plan", [&] { plan.validate(); });
        check("feedback", [&] { feedback.validate(); });
        if (distinct_profiles)
            throw ConfigError("ris.distinct_profiles", "only a single phase profile per element is supported");
        if (noncomp_serving_bs != 1 && noncomp_serving_bs != 2)
            throw ConfigError("noma.noncomp_serving_bs", "must be 1 or 2");
        if (plan.trials == 0)
            throw ConfigError("plan.trials", "must be at least 1");
        if (search.gamma_far_grid.empty())
            throw ConfigError("search.gamma_far_grid", "must not be empty");
        for (double g : search.gamma_far_grid)
            if (!(g > 0.5 && g < 1.0))
                throw ConfigError("search.gamma_far_grid", "values must lie in (0.5, 1)");
        for (const auto &[a, b] : search.split_candidates)
            if (a + b > elements)
                throw ConfigError("search.split_candidates", "split exceeds ris.elements");
        if (records_per_user == 0)
            throw ConfigError("feedback.records_per_user", "must be at least 1");
    }
};

namespace detail {

inline Json point_json(const Point3 &p) { return Json::array({p.x, p.y, p.z}); }

inline std::string_view far_mode_name(FarMode m) { return m == FarMode::comp ? "comp" : "noncomp"; }

inline std::string_view scope_name(EfficiencyScope s)
{
    switch (s) {
    case EfficiencyScope::network:
        return "network";
    case EfficiencyScope::near_1:
        return "near_1";
    case EfficiencyScope::near_2:
        return "near_2";
    case EfficiencyScope::far:
        break;
    }
    return "far";
}

// Reads keys of one JSON object and rejects any key that was not consumed.
class ObjectReader
{
public:
    ObjectReader(const Json &obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json *find(const std::string &key)
    {
        seen_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    template <class T>
    void get(const std::string &key, T &out)
    {
        if (const Json *v = find(key)) {
            try {
                out = v->get<T>();
            } catch (const nlohmann::json::exception &) {
                throw ConfigError(field(key), "has the wrong type");
            }
        }
    }

    void finish() const
    {
        for (const auto &item : obj_.items())
            if (!seen_.count(item.key()))
                throw ConfigError(field(item.key()), "unknown key");
    }

private:
    const Json &obj_;
    std::string path_;
    std::set<std::string> seen_;
};

inline Point3 read_point(const Json &v, const std::string &field)
{
    if (!v.is_array() || v.size() != 3)
        throw ConfigError(field, "expected [x, y, z]");
    try {
        return Point3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    } catch (const nlohmann::json::exception &) {
        throw ConfigError(field, "coordinates must be numbers");
    }
}

template <class Fn>
void with_section(ObjectReader &root, const std::string &name, Fn &&fn)
{
    if (const Json *v = root.find(name)) {
        ObjectReader r(*v, name);
        fn(r);
        r.finish();
    }
}

} // namespace detail

inline Json to_json(const ExperimentConfig &c)
{
    Json exps = Json::object();
    for (LinkClass l : kLinkClasses)
        exps[std::string(to_string(l))] = c.path_loss.exponent(l);
    Json splits = Json::array();
    for (const auto &[a, b] : c.search.split_candidates)
        splits.push_back(Json::array({a, b}));

    return Json{
        {"experiment", c.experiment},
        {"output", c.output},
        {"geometry",
         {{"bs", Json::array({detail::point_json(c.geometry.bs[0]), detail::point_json(c.geometry.bs[1])})},
          {"ris", detail::point_json(c.geometry.ris)},
          {"near_users",
           Json::array({detail::point_json(c.geometry.near_users[0]), detail::point_json(c.geometry.near_users[1])})},
          {"far_user", detail::point_json(c.geometry.far_user)}}},
        {"path_loss", {{"reference_loss_db", c.path_loss.reference_loss_db}, {"exponents", exps}}},
        {"rician",
         {{"k_ris_near_db", c.rician.k_ris_near_db},
          {"k_ris_far_db", c.rician.k_ris_far_db},
          {"k_bs_ris_db", c.rician.k_bs_ris_db},
          {"carrier_hz", c.rician.carrier_hz}}},
        {"link_budget", {{"bandwidth_hz", c.link_budget.bandwidth_hz}, {"noise_figure_db", c.link_budget.noise_figure_db}}},
        {"power", {{"gamma_near", c.gamma_near}, {"gamma_far", c.gamma_far}, {"p_tx_dbm", c.p_tx_dbm}}},
        {"ris", {{"elements", c.elements}, {"quant_bits", c.quant_bits}, {"distinct_profiles", c.distinct_profiles}}},
        {"noma", {{"far_mode", detail::far_mode_name(c.far_mode)}, {"noncomp_serving_bs", c.noncomp_serving_bs}}},
        {"plan",
         {{"trials", c.plan.trials},
          {"seed", c.plan.master_seed},
          {"power_sweep_dbm", c.plan.power_sweep_dbm},
          {"element_counts", c.plan.element_counts},
          {"threshold_far", c.plan.threshold_far},
          {"threshold_near", c.plan.threshold_near}}},
        {"search",
         {{"gamma_far_grid", c.search.gamma_far_grid},
          {"split_candidates", splits},
          {"underfilled_splits", c.underfilled_splits},
          {"min_rate_far", c.search.min_rate_far},
          {"min_rate_near", c.search.min_rate_near}}},
        {"metrics", {{"efficiency_scope", detail::scope_name(c.efficiency_scope)}}},
        {"feedback",
         {{"records_per_user", c.records_per_user},
          {"snr_db", c.feedback.snr_db},
          {"k_factor", c.feedback.k_factor},
          {"block_fading", c.feedback.block_fading}}},
    };
}

// Overlays `j` on the defaults. Unknown keys and wrong types raise ConfigError; the result is validated.
inline ExperimentConfig config_from_json(const Json &j)
{
    using detail::ObjectReader;
    ExperimentConfig c;
    ObjectReader root(j, "");
    root.get("experiment", c.experiment);
    root.get("output", c.output);

    detail::with_section(root, "geometry", [&](ObjectReader &r) {
        if (const Json *v = r.find("bs")) {
            if (!v->is_array() || v->size() != 2)
                throw ConfigError("geometry.bs", "expected two points");
            for (std::size_t i = 0; i < 2; ++i)
                c.geometry.bs[i] = detail::read_point((*v)[i], "geometry.bs");
        }
        if (const Json *v = r.find("near_users")) {
            if (!v->is_array() || v->size() != 2)
                throw ConfigError("geometry.near_users", "expected two points");
            for (std::size_t i = 0; i < 2; ++i)
                c.geometry.near_users[i] = detail::read_point((*v)[i], "geometry.near_users");
        }
        if (const Json *v = r.find("ris"))
            c.geometry.ris = detail::read_point(*v, "geometry.ris");
        if (const Json *v = r.find("far_user"))
            c.geometry.far_user = detail::read_point(*v, "geometry.far_user");
    });

    detail::with_section(root, "path_loss", [&](ObjectReader &r) {
        r.get("reference_loss_db", c.path_loss.reference_loss_db);
        if (const Json *v = r.find("exponents")) {
            ObjectReader e(*v, "path_loss.exponents");
            for (LinkClass l : kLinkClasses)
                e.get(std::string(to_string(l)), c.path_loss.exponents[static_cast<std::size_t>(l)]);
            e.finish();
        }
    });

    detail::with_section(root, "rician", [&](ObjectReader &r) {
        r.get("k_ris_near_db", c.rician.k_ris_near_db);
        r.get("k_ris_far_db", c.rician.k_ris_far_db);
        r.get("k_bs_ris_db", c.rician.k_bs_ris_db);
        r.get("carrier_hz", c.rician.carrier_hz);
    });

    detail::with_section(root, "link_budget", [&](ObjectReader &r) {
        r.get("bandwidth_hz", c.link_budget.bandwidth_hz);
        r.get("noise_figure_db", c.link_budget.noise_figure_db);
    });

    detail::with_section(root, "power", [&](ObjectReader &r) {
        r.get("gamma_near", c.gamma_near);
        r.get("gamma_far", c.gamma_far);
        r.get("p_tx_dbm", c.p_tx_dbm);
    });

    detail::with_section(root, "ris", [&](ObjectReader &r) {
        r.get("elements", c.elements);
        r.get("quant_bits", c.quant_bits);
        r.get("distinct_profiles", c.distinct_profiles);
    });

    detail::with_section(root, "noma", [&](ObjectReader &r) {
        std::string mode(detail::far_mode_name(c.far_mode));
        r.get("far_mode", mode);
        if (mode == "comp")
            c.far_mode = FarMode::comp;
        else if (mode == "noncomp")
            c.far_mode = FarMode::noncomp;
        else
            throw ConfigError("noma.far_mode", "must be 'comp' or 'noncomp'");
        r.get("noncomp_serving_bs", c.noncomp_serving_bs);
    });

    detail::with_section(root, "plan", [&](ObjectReader &r) {
        r.get("trials", c.plan.trials);
        r.get("seed", c.plan.master_seed);
        r.get("power_sweep_dbm", c.plan.power_sweep_dbm);
        r.get("element_counts", c.plan.element_counts);
        r.get("threshold_far", c.plan.threshold_far);
        r.get("threshold_near", c.plan.threshold_near);
    });

    detail::with_section(root, "search", [&](ObjectReader &r) {
        r.get("gamma_far_grid", c.search.gamma_far_grid);
        r.get("split_candidates", c.search.split_candidates);
        r.get("underfilled_splits", c.underfilled_splits);
        r.get("min_rate_far", c.search.min_rate_far);
        r.get("min_rate_near", c.search.min_rate_near);
    });

    detail::with_section(root, "metrics", [&](ObjectReader &r) {
        std::string scope(detail::scope_name(c.efficiency_scope));
        r.get("efficiency_scope", scope);
        if (scope == "network")
            c.efficiency_scope = EfficiencyScope::network;
        else if (scope == "near_1")
            c.efficiency_scope = EfficiencyScope::near_1;
        else if (scope == "near_2")
            c.efficiency_scope = EfficiencyScope::near_2;
        else if (scope == "far")
            c.efficiency_scope = EfficiencyScope::far;
        else
            throw ConfigError("metrics.efficiency_scope", "must be network, near_1, near_2 or far");
    });

    detail::with_section(root, "feedback", [&](ObjectReader &r) {
        r.get("records_per_user", c.records_per_user);
        r.get("snr_db", c.feedback.snr_db);
        r.get("k_factor", c.feedback.k_factor);
        r.get("block_fading", c.feedback.block_fading);
    });

    root.finish();
    c.validate();
    return c;
}

// FNV-1a 64 over the canonical JSON of everything that affects results (the output path excluded).
inline std::string config_hash(const ExperimentConfig &c)
{
    Json j = to_json(c);
    j.erase("output");
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Accepts a config document or a run manifest (whose "config" member is used).
inline ExperimentConfig load_config_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("manifest_version") && j.contains("config"))
        return config_from_json(j.at("config"));
    return config_from_json(j);
}

} // namespace arisim

#endif
