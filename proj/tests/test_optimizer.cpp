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

#include "arisim/optimizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace arisim;

namespace {

TrialPlan plan_of(std::size_t trials)
{
    TrialPlan p;
    p.trials = trials;
    p.master_seed = 9;
    return p;
}

} // namespace

TEST(Grid, DefaultGammaGrid)
{
    const auto g = default_gamma_far_grid();
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    EXPECT_NE(std::find(g.begin(), g.end(), 0.8), g.end());
    EXPECT_EQ(g.front(), 0.51);
    for (double x : g)
        EXPECT_TRUE(x > 0.5 && x < 1.0);
}

TEST(Grid, SplitGenerators)
{
    EXPECT_EQ(full_splits(0).size(), 1u);
    EXPECT_EQ(full_splits(70).size(), 71u);
    EXPECT_EQ(all_splits(3).size(), 10u);
    for (const auto &[a, b] : all_splits(6))
        EXPECT_LE(a + b, 6u);
}

TEST(PowerSearch, SingleCandidate)
{
    SearchSpace space;
    space.gamma_far_grid = {0.7};
    const SearchResult r = optimize_pa(space, plan_of(50), Scenario{});
    EXPECT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.best_pa.gamma_far[0], 0.7);
    EXPECT_NEAR(r.best_pa.gamma_near[1], 0.3, 1e-15);
    EXPECT_TRUE(r.feasible);
}

TEST(PowerSearch, WinnerIsArgmaxOfTrace)
{
    const SearchResult r = optimize_pa(SearchSpace{}, plan_of(300), Scenario{});
    ASSERT_EQ(r.trace.size(), default_gamma_far_grid().size());
    double best = -1.0;
    for (const CandidateScore &c : r.trace) {
        EXPECT_GE(r.objective, c.sum.mean);
        best = std::max(best, c.sum.mean);
    }
    EXPECT_EQ(r.objective, best);
    EXPECT_EQ(r.trace[r.best_index].gamma_far, r.best_pa.gamma_far[0]);
}

TEST(PowerSearch, ScoresMatchDirectEvaluation)
{
    TrialPlan plan = plan_of(100);
    SearchSpace space;
    space.gamma_far_grid = {0.6, 0.9};
    Scenario s;
    const SearchResult r = optimize_pa(space, plan, s);
    s.pa = PowerAllocation::symmetric(0.9, 0.0);
    plan.power_sweep_dbm = {0.0};
    const auto curve = estimate_rates(plan, s);
    EXPECT_DOUBLE_EQ(r.trace[1].sum.mean, curve[0].sum.mean);
}

TEST(PowerSearch, Deterministic)
{
    TrialPlan plan = plan_of(200);
    const SearchResult a = optimize_pa(SearchSpace{}, plan, Scenario{});
    plan.workers = 3;
    const SearchResult b = optimize_pa(SearchSpace{}, plan, Scenario{});
    EXPECT_EQ(a.best_index, b.best_index);
    EXPECT_EQ(a.objective, b.objective);
}

TEST(PowerSearch, InfeasibleFloorsReported)
{
    SearchSpace space;
    space.min_rate_far = 1e6;
    const SearchResult r = optimize_pa(space, plan_of(50), Scenario{});
    EXPECT_FALSE(r.feasible);
    for (const CandidateScore &c : r.trace)
        EXPECT_FALSE(c.feasible);
    for (const CandidateScore &c : r.trace)
        EXPECT_GE(r.objective, c.sum.mean);
}

TEST(PowerSearch, FloorsRestrictTheWinner)
{
    const TrialPlan plan = plan_of(200);
    const SearchResult free = optimize_pa(SearchSpace{}, plan, Scenario{});
    SearchSpace space;
    space.min_rate_far = free.trace.back().far.mean;
    const SearchResult r = optimize_pa(space, plan, Scenario{});
    EXPECT_TRUE(r.feasible);
    EXPECT_TRUE(r.trace[r.best_index].feasible);
    EXPECT_GE(r.trace[r.best_index].far.mean, space.min_rate_far);
}

TEST(PowerSearch, RejectsInvalidGrid)
{
    SearchSpace space;
    space.gamma_far_grid = {0.4};
    EXPECT_THROW(optimize_pa(space, plan_of(5), Scenario{}), DomainError);
    space.gamma_far_grid.clear();
    EXPECT_THROW(optimize_pa(space, plan_of(5), Scenario{}), DomainError);
}

TEST(SplitSearch, EmptySurface)
{
    Scenario s;
    s.elements = 0;
    const SearchResult r = optimize_split(SearchSpace{}, plan_of(20), s);
    ASSERT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.best_split, (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(SplitSearch, WinnerDominatesTraceAndCorners)
{
    Scenario s;
    s.elements = 10;
    const SearchResult r = optimize_split(SearchSpace{}, plan_of(300), s);
    ASSERT_EQ(r.trace.size(), 11u);
    for (const CandidateScore &c : r.trace)
        EXPECT_GE(r.objective, c.sum.mean);
    EXPECT_GE(r.objective, r.trace.front().sum.mean);
    EXPECT_GE(r.objective, r.trace.back().sum.mean);
    EXPECT_EQ(r.trace[r.best_index].split, r.best_split);
}

// Symmetric geometry: the balanced split is statistically indistinguishable from the best.
TEST(SplitSearch, BalancedSplitNearOptimal)
{
    Scenario s;
    s.elements = 10;
    const SearchResult r = optimize_split(SearchSpace{}, plan_of(1000), s);
    const CandidateScore &balanced = r.trace[5];
    ASSERT_EQ(balanced.split, (std::pair<std::size_t, std::size_t>{5, 5}));
    const CandidateScore &best = r.trace[r.best_index];
    EXPECT_LE(best.sum.mean - balanced.sum.mean, 2.0 * std::hypot(best.sum.std_error, balanced.sum.std_error));
}

TEST(SplitSearch, UnderfilledCandidatesAndBudget)
{
    Scenario s;
    s.elements = 4;
    SearchSpace space;
    space.split_candidates = all_splits(4);
    const SearchResult r = optimize_split(space, plan_of(50), s);
    EXPECT_EQ(r.trace.size(), 15u);
    space.split_candidates = {{3, 2}};
    EXPECT_THROW(optimize_split(space, plan_of(5), s), DomainError);
}

TEST(SplitSearch, TiesPreferBalance)
{
    std::vector<CandidateScore> trace(3);
    trace[0].split = {4, 0};
    trace[1].split = {2, 2};
    trace[2].split = {0, 4};
    for (auto &c : trace) {
        c.sum.mean = 1.0;
        c.feasible = true;
    }
    const auto imbalance = [](const CandidateScore &c) {
        return c.split.first > c.split.second ? c.split.first - c.split.second : c.split.second - c.split.first;
    };
    const auto [best, feasible] = detail::pick_best(trace, [&](const CandidateScore &a, const CandidateScore &b) {
        return imbalance(a) < imbalance(b);
    });
    EXPECT_EQ(best, 1u);
    EXPECT_TRUE(feasible);
}
