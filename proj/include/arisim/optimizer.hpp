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

#ifndef ARISIM_OPTIMIZER_HPP
#define ARISIM_OPTIMIZER_HPP

#include "arisim/error.hpp"
#include "arisim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <utility>
#include <vector>

namespace arisim {

// 0.51, 0.56, ..., 0.91 plus the 0.8 operating point, ascending.
inline std::vector<double> default_gamma_far_grid()
{
    std::vector<double> g;
    for (int k = 0; k <= 8; ++k)
        g.push_back(0.51 + 0.05 * k);
    g.push_back(0.8);
    std::sort(g.begin(), g.end());
    return g;
}

// Every split that uses all M elements: (0, M), (1, M-1), ..., (M, 0).
inline std::vector<std::pair<std::size_t, std::size_t>> full_splits(std::size_t elements)
{
    std::vector<std::pair<std::size_t, std::size_t>> s;
    for (std::size_t a = 0; a <= elements; ++a)
        s.emplace_back(a, elements - a);
    return s;
}

// Every split with M1 + M2 <= M.
inline std::vector<std::pair<std::size_t, std::size_t>> all_splits(std::size_t elements)
{
    std::vector<std::pair<std::size_t, std::size_t>> s;
    for (std::size_t a = 0; a <= elements; ++a)
        for (std::size_t b = 0; a + b <= elements; ++b)
            s.emplace_back(a, b);
    return s;
}

struct SearchSpace
{
    std::vector<double> gamma_far_grid = default_gamma_far_grid();
    std::vector<std::pair<std::size_t, std::size_t>> split_candidates; // empty: full_splits(scenario.elements)
    double min_rate_far = 0.0;  // bit/s/Hz
    double min_rate_near = 0.0;
};

struct CandidateScore
{
    double gamma_far = 0.0;
    std::pair<std::size_t, std::size_t> split{0, 0};
    MeanEstimate sum;
    MeanEstimate far;
    std::array<MeanEstimate, 2> near;
    bool feasible = false;
};

struct SearchResult
{
    PowerAllocation best_pa;
    std::pair<std::size_t, std::size_t> best_split{0, 0};
    double objective = 0.0; // E[R_sum] of the winner on the evaluation trials
    bool feasible = false;
    std::size_t best_index = 0; // into trace
    std::vector<CandidateScore> trace;
};

namespace detail {

// per_trial[i][j] holds the rate report of candidate j in trial i.
inline std::vector<CandidateScore> score_candidates(const std::vector<std::vector<RateReport>> &per_trial,
                                                    std::size_t candidates, const SearchSpace &space)
{
    std::vector<CandidateScore> out(candidates);
    std::vector<double> x(per_trial.size());
    const auto mean_of = [&](std::size_t j, auto get) {
        for (std::size_t i = 0; i < per_trial.size(); ++i)
            x[i] = get(per_trial[i][j]);
        return estimate_mean(x);
    };
    for (std::size_t j = 0; j < candidates; ++j) {
        CandidateScore &s = out[j];
        s.sum = mean_of(j, [](const RateReport &r) { return r.sum; });
        s.far = mean_of(j, [](const RateReport &r) { return r.rate_far; });
        for (std::size_t c = 0; c < 2; ++c)
            s.near[c] = mean_of(j, [c](const RateReport &r) { return r.rate_near[c]; });
        s.feasible = s.far.mean >= space.min_rate_far && s.near[0].mean >= space.min_rate_near &&
                     s.near[1].mean >= space.min_rate_near;
    }
    return out;
}

// Highest objective among feasible candidates (all candidates if none is feasible);
// `better_tie` decides between equal objectives.
template <class TieBreak>
std::pair<std::size_t, bool> pick_best(const std::vector<CandidateScore> &trace, TieBreak &&better_tie)
{
    const bool any_feasible = std::any_of(trace.begin(), trace.end(), [](const CandidateScore &s) { return s.feasible; });
    std::size_t best = trace.size();
    for (std::size_t j = 0; j < trace.size(); ++j) {
        if (any_feasible && !trace[j].feasible)
            continue;
        if (best == trace.size() || trace[j].sum.mean > trace[best].sum.mean ||
            (trace[j].sum.mean == trace[best].sum.mean && better_tie(trace[j], trace[best])))
            best = j;
    }
    return {best, any_feasible};
}

} // namespace detail

/// Grid search over gamma_far (gamma_near = 1 - gamma_far, same in both cells) at the
/// scenario's transmit power and element split. All candidates are scored on the same trials.
/// Ties go to the larger gamma_far. If no candidate meets the rate floors, `feasible` is false
/// and the unconstrained argmax is reported.
inline SearchResult optimize_pa(const SearchSpace &space, const TrialPlan &plan, const Scenario &s)
{
    if (space.gamma_far_grid.empty())
        throw DomainError("optimize_pa: empty gamma grid");
    plan.validate();
    s.validate();

    std::vector<PowerAllocation> candidates;
    for (double g : space.gamma_far_grid) {
        PowerAllocation pa = s.pa;
        pa.gamma_far = {g, g};
        pa.gamma_near = {1.0 - g, 1.0 - g};
        pa.validate();
        candidates.push_back(pa);
    }

    const ChannelModel model(s.geometry, s.path_loss, s.rician);
    const double noise_w = noise_power_w(s.budget);
    const auto per_trial = map_trials(plan, [&](std::size_t, RandomStream &rng) {
        const CombinedChannels h = draw_trial(model, s, rng).with_ris;
        std::vector<RateReport> out;
        out.reserve(candidates.size());
        for (const PowerAllocation &pa : candidates)
            out.push_back(rates(h, pa, noise_w, s.mode, s.noncomp_serving_cell));
        return out;
    });

    SearchResult result;
    result.trace = detail::score_candidates(per_trial, candidates.size(), space);
    for (std::size_t j = 0; j < candidates.size(); ++j)
        result.trace[j].gamma_far = space.gamma_far_grid[j];
    const auto [best, feasible] = detail::pick_best(
        result.trace, [](const CandidateScore &a, const CandidateScore &b) { return a.gamma_far > b.gamma_far; });
    result.best_index = best;
    result.best_pa = candidates[best];
    result.best_split = {s.elements - s.elements / 2, s.elements / 2};
    result.objective = result.trace[best].sum.mean;
    result.feasible = feasible;
    return result;
}

/// Exhaustive search over element splits (M_A^1, M_A^2) at the scenario's power allocation.
/// Ties go to the more balanced split.
inline SearchResult optimize_split(const SearchSpace &space, const TrialPlan &plan, const Scenario &s)
{
    plan.validate();
    s.validate();
    const auto splits = space.split_candidates.empty() ? full_splits(s.elements) : space.split_candidates;
    for (const auto &[a, b] : splits)
        if (a + b > s.elements)
            throw DomainError("optimize_split: split exceeds the element budget");

    const ChannelModel model(s.geometry, s.path_loss, s.rician);
    const double noise_w = noise_power_w(s.budget);
    const auto per_trial = map_trials(plan, [&](std::size_t, RandomStream &rng) {
        const ChannelRealization r = model.realize(s.elements, rng);
        std::vector<RateReport> out;
        out.reserve(splits.size());
        for (const auto &[a, b] : splits) {
            const RisConfig ris = configure_for_cluster(r, split_assignment(s.elements, a, b), s.quant_bits);
            out.push_back(rates(combine_channels(r, ris), s.pa, noise_w, s.mode, s.noncomp_serving_cell));
        }
        return out;
    });

    SearchResult result;
    result.trace = detail::score_candidates(per_trial, splits.size(), space);
    for (std::size_t j = 0; j < splits.size(); ++j) {
        result.trace[j].split = splits[j];
        result.trace[j].gamma_far = s.pa.gamma_far[0];
    }
    const auto imbalance = [](const CandidateScore &c) {
        return c.split.first > c.split.second ? c.split.first - c.split.second : c.split.second - c.split.first;
    };
    const auto [best, feasible] = detail::pick_best(
        result.trace, [&](const CandidateScore &a, const CandidateScore &b) { return imbalance(a) < imbalance(b); });
    result.best_index = best;
    result.best_pa = s.pa;
    result.best_split = splits[best];
    result.objective = result.trace[best].sum.mean;
    result.feasible = feasible;
    return result;
}

} // namespace arisim

#endif
