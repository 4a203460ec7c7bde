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

#ifndef ARISIM_MONTECARLO_HPP
#define ARISIM_MONTECARLO_HPP

#include "arisim/channel.hpp"
#include "arisim/error.hpp"
#include "arisim/metrics.hpp"
#include "arisim/noma_comp.hpp"
#include "arisim/random.hpp"
#include "arisim/ris.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace arisim {

// Physical setup shared by all experiments.
struct Scenario
{
    Geometry geometry = Geometry::defaults();
    PathLossParams path_loss;
    RicianParams rician;
    LinkBudget budget;
    PowerAllocation pa; // its transmit power is the operating point of fixed-power experiments
    std::size_t elements = 70;
    unsigned quant_bits = 9;
    FarMode mode = FarMode::comp;
    std::size_t noncomp_serving_cell = 0;

    void validate() const
    {
        geometry.validate();
        path_loss.validate();
        rician.validate();
        budget.validate();
        pa.validate();
        check_quant_bits(quant_bits);
        if (noncomp_serving_cell > 1)
            throw DomainError("scenario: non-CoMP serving cell must be 0 or 1");
    }
};

inline std::vector<double> default_power_sweep()
{
    std::vector<double> p;
    for (int dbm = -45; dbm <= 0; dbm += 5)
        p.push_back(dbm);
    return p;
}

inline std::vector<std::size_t> default_element_counts()
{
    std::vector<std::size_t> m;
    for (std::size_t k = 0; k <= 70; k += 10)
        m.push_back(k);
    return m;
}

struct TrialPlan
{
    std::size_t trials = 10000;
    std::uint64_t master_seed = 1;
    std::vector<double> power_sweep_dbm = default_power_sweep();
    std::vector<std::size_t> element_counts = default_element_counts();
    double threshold_far = 1.0;  // linear SINR, i.e. 1 bit/s/Hz
    double threshold_near = 1.0;
    unsigned workers = 1;

    void validate() const
    {
        if (trials < 1)
            throw DomainError("trial plan: at least one trial is required");
        if (power_sweep_dbm.empty())
            throw DomainError("trial plan: power sweep must not be empty");
        if (element_counts.empty())
            throw DomainError("trial plan: element counts must not be empty");
        if (!std::is_sorted(element_counts.begin(), element_counts.end()))
            throw DomainError("trial plan: element counts must be sorted");
        for (double p : power_sweep_dbm)
            if (!std::isfinite(p))
                throw DomainError("trial plan: sweep powers must be finite");
        if (std::isnan(threshold_far) || std::isnan(threshold_near) || threshold_far < 0.0 || threshold_near < 0.0)
            throw DomainError("trial plan: outage thresholds must be non-negative");
    }
};

// Evaluates fn(trial_index, stream) for every trial and returns the results in trial order.
// The stream of trial i depends only on (master seed, i), so the output does not depend on
// the number of workers.
template <class Fn>
auto map_trials(const TrialPlan &plan, Fn &&fn)
{
    using Result = std::invoke_result_t<Fn &, std::size_t, RandomStream &>;
    std::vector<Result> results(plan.trials);

    const auto run_one = [&](std::size_t i) {
        RandomStream rng(plan.master_seed, i, StreamDomain::trial);
        results[i] = fn(i, rng);
    };

    const std::size_t workers = std::clamp<std::size_t>(plan.workers, 1, std::max<std::size_t>(plan.trials, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < plan.trials; ++i)
            run_one(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < plan.trials; i = next.fetch_add(1)) {
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

struct MeanEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

// Sample mean and standard error, accumulated in index order.
inline MeanEstimate estimate_mean(std::span<const double> x)
{
    MeanEstimate e;
    e.samples = x.size();
    if (x.empty())
        return e;
    double sum = 0.0;
    for (double v : x)
        sum += v;
    e.mean = sum / static_cast<double>(x.size());
    if (x.size() > 1) {
        double ss = 0.0;
        for (double v : x)
            ss += (v - e.mean) * (v - e.mean);
        const double var = ss / static_cast<double>(x.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(x.size()));
    }
    return e;
}

struct ProportionEstimate
{
    std::size_t events = 0;
    std::size_t trials = 0;
    double p = 0.0;
    double lower = 0.0; // Wilson score interval
    double upper = 0.0;
};

inline ProportionEstimate wilson_interval(std::size_t events, std::size_t trials, double z = 1.959963984540054)
{
    if (events > trials)
        throw DomainError("wilson_interval: more events than trials");
    ProportionEstimate e{events, trials, 0.0, 0.0, 1.0};
    if (trials == 0)
        return e;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(events) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    e.p = p;
    e.lower = std::max(0.0, centre - half);
    e.upper = std::min(1.0, centre + half);
    // Guard rounding at the p = 0 and p = 1 endpoints.
    e.lower = std::min(e.lower, p);
    e.upper = std::max(e.upper, p);
    return e;
}

// UE_{c,n} is in outage if it cannot decode x_f, or decodes x_f but not its own message.
inline bool near_outage(double sinr_near_decoding_far, double sinr_near, double threshold_far, double threshold_near)
{
    return sinr_near_decoding_far < threshold_far ||
           (sinr_near_decoding_far > threshold_far && sinr_near < threshold_near);
}

inline bool far_outage(double sinr_far, double threshold_far) { return sinr_far < threshold_far; }

// Combined channels of one trial with the scenario's RIS (interleaved element split,
// far-user alignment, quantized phases) and with the RIS switched off, on the same draw.
struct TrialChannels
{
    CombinedChannels with_ris;
    CombinedChannels without_ris;
};

inline TrialChannels draw_trial(const ChannelModel &model, const Scenario &s, RandomStream &rng)
{
    const ChannelRealization r = model.realize(s.elements, rng);
    const RisConfig on = configure_for_cluster(r, interleaved_assignment(s.elements, s.elements), s.quant_bits);
    RisConfig off;
    off.phases.assign(s.elements, 0.0);
    off.assignment.assign(s.elements, kUnassigned);
    off.quant_bits = s.quant_bits;
    return TrialChannels{combine_channels(r, on), combine_channels(r, off)};
}

struct PowerSample
{
    RateReport report; // far-user fields follow Scenario::mode
    double sinr_far_comp = 0.0;
    double sinr_far_noncomp = 0.0;
};

struct TrialRecord
{
    std::vector<PowerSample> with_ris;    // one per sweep power
    std::vector<PowerSample> without_ris;
};

inline PowerSample evaluate_power(const CombinedChannels &h, const PowerAllocation &pa, double noise_w, const Scenario &s)
{
    PowerSample out;
    out.report = rates(h, pa, noise_w, s.mode, s.noncomp_serving_cell);
    out.sinr_far_comp = sinr_far_comp(h, pa, noise_w);
    out.sinr_far_noncomp = sinr_far_noncomp(h, pa, noise_w, s.noncomp_serving_cell);
    return out;
}

// Per-trial samples over the power sweep. Channels are drawn once per trial, so every power
// point and both RIS variants see common random numbers.
inline std::vector<TrialRecord> collect_power_sweep(const TrialPlan &plan, const Scenario &s)
{
    plan.validate();
    s.validate();
    const ChannelModel model(s.geometry, s.path_loss, s.rician);
    const double noise_w = noise_power_w(s.budget);
    std::vector<PowerAllocation> allocations;
    for (double p : plan.power_sweep_dbm)
        allocations.push_back(s.pa.with_power_dbm(p));

    return map_trials(plan, [&](std::size_t, RandomStream &rng) {
        const TrialChannels ch = draw_trial(model, s, rng);
        TrialRecord rec;
        rec.with_ris.reserve(allocations.size());
        rec.without_ris.reserve(allocations.size());
        for (const PowerAllocation &pa : allocations) {
            rec.with_ris.push_back(evaluate_power(ch.with_ris, pa, noise_w, s));
            rec.without_ris.push_back(evaluate_power(ch.without_ris, pa, noise_w, s));
        }
        return rec;
    });
}

struct RatePoint
{
    double p_tx_dbm = 0.0;
    std::array<MeanEstimate, 2> near;
    std::array<MeanEstimate, 2> near_decoding_far;
    MeanEstimate far;
    MeanEstimate sum;
};

inline const PowerSample &sample_at(const TrialRecord &t, std::size_t k, bool with_ris)
{
    return with_ris ? t.with_ris[k] : t.without_ris[k];
}

template <class Get>
MeanEstimate mean_over(std::span<const TrialRecord> records, Get &&get)
{
    std::vector<double> x;
    x.reserve(records.size());
    for (const TrialRecord &t : records)
        x.push_back(get(t));
    return estimate_mean(x);
}

template <class Pred>
ProportionEstimate proportion_over(std::span<const TrialRecord> records, Pred &&pred)
{
    std::size_t events = 0;
    for (const TrialRecord &t : records)
        events += pred(t) ? 1 : 0;
    return wilson_interval(events, records.size());
}

inline std::vector<RatePoint> summarize_rates(const TrialPlan &plan, std::span<const TrialRecord> records, bool with_ris = true)
{
    std::vector<RatePoint> out;
    for (std::size_t k = 0; k < plan.power_sweep_dbm.size(); ++k) {
        RatePoint pt;
        pt.p_tx_dbm = plan.power_sweep_dbm[k];
        for (std::size_t c = 0; c < 2; ++c) {
            pt.near[c] = mean_over(records, [&](const TrialRecord &t) { return sample_at(t, k, with_ris).report.rate_near[c]; });
            pt.near_decoding_far[c] = mean_over(
                records, [&](const TrialRecord &t) { return sample_at(t, k, with_ris).report.rate_near_decoding_far[c]; });
        }
        pt.far = mean_over(records, [&](const TrialRecord &t) { return sample_at(t, k, with_ris).report.rate_far; });
        pt.sum = mean_over(records, [&](const TrialRecord &t) { return sample_at(t, k, with_ris).report.sum; });
        out.push_back(pt);
    }
    return out;
}

inline std::vector<RatePoint> estimate_rates(const TrialPlan &plan, const Scenario &s)
{
    const auto records = collect_power_sweep(plan, s);
    return summarize_rates(plan, records);
}

inline std::vector<ProportionEstimate> near_outage_curve(const TrialPlan &plan, std::span<const TrialRecord> records,
                                                         std::size_t cell, bool with_ris = true)
{
    std::vector<ProportionEstimate> out;
    for (std::size_t k = 0; k < plan.power_sweep_dbm.size(); ++k)
        out.push_back(proportion_over(records, [&](const TrialRecord &t) {
            const RateReport &r = sample_at(t, k, with_ris).report;
            return near_outage(r.sinr_near_decoding_far[cell], r.sinr_near[cell], plan.threshold_far, plan.threshold_near);
        }));
    return out;
}

inline std::vector<ProportionEstimate> far_outage_curve(const TrialPlan &plan, std::span<const TrialRecord> records,
                                                        FarMode mode, bool with_ris = true)
{
    std::vector<ProportionEstimate> out;
    for (std::size_t k = 0; k < plan.power_sweep_dbm.size(); ++k)
        out.push_back(proportion_over(records, [&](const TrialRecord &t) {
            const PowerSample &p = sample_at(t, k, with_ris);
            return far_outage(mode == FarMode::comp ? p.sinr_far_comp : p.sinr_far_noncomp, plan.threshold_far);
        }));
    return out;
}

inline std::vector<ProportionEstimate> estimate_outage_near(const TrialPlan &plan, const Scenario &s, std::size_t cell)
{
    if (cell > 1)
        throw DomainError("estimate_outage_near: cell must be 0 or 1");
    const auto records = collect_power_sweep(plan, s);
    return near_outage_curve(plan, records, cell);
}

inline std::vector<ProportionEstimate> estimate_outage_far(const TrialPlan &plan, const Scenario &s, FarMode mode)
{
    const auto records = collect_power_sweep(plan, s);
    return far_outage_curve(plan, records, mode);
}

// Which rate feeds the SE/EE curves.
enum class EfficiencyScope
{
    network, // sum rate over total transmit power of both BSs
    near_1,
    near_2,
    far,
};

struct EfficiencyPoint
{
    double p_tx_dbm = 0.0;
    double se = 0.0; // bit/s/Hz
    double ee = 0.0; // bit/J
};

// Per-user scopes divide by the power allocated to that user.
inline EfficiencyPoint efficiency_at(const RatePoint &rp, const PowerAllocation &pa, double bandwidth_hz, EfficiencyScope scope)
{
    EfficiencyPoint e;
    e.p_tx_dbm = rp.p_tx_dbm;
    double power = 0.0;
    switch (scope) {
    case EfficiencyScope::network:
        e.se = rp.sum.mean;
        power = pa.p_tx_w[0] + pa.p_tx_w[1];
        break;
    case EfficiencyScope::near_1:
    case EfficiencyScope::near_2: {
        const std::size_t c = scope == EfficiencyScope::near_1 ? 0 : 1;
        e.se = rp.near[c].mean;
        power = pa.gamma_near[c] * pa.p_tx_w[c];
        break;
    }
    case EfficiencyScope::far:
        e.se = rp.far.mean;
        power = pa.gamma_far[0] * pa.p_tx_w[0] + pa.gamma_far[1] * pa.p_tx_w[1];
        break;
    }
    e.ee = energy_efficiency_from_rate(e.se, bandwidth_hz, power);
    return e;
}

inline std::vector<EfficiencyPoint> efficiency_curve(const TrialPlan &plan, const Scenario &s, std::span<const RatePoint> curve,
                                                     EfficiencyScope scope = EfficiencyScope::network)
{
    std::vector<EfficiencyPoint> out;
    for (std::size_t k = 0; k < curve.size(); ++k)
        out.push_back(efficiency_at(curve[k], s.pa.with_power_dbm(plan.power_sweep_dbm[k]), s.budget.bandwidth_hz, scope));
    return out;
}

struct ElementPoint
{
    std::size_t elements = 0;
    MeanEstimate sum;
};

// Per-trial sum rate for every element count, on one draw sized for the largest count.
inline std::vector<std::vector<double>> collect_element_sweep(const TrialPlan &plan, const Scenario &s)
{
    plan.validate();
    s.validate();
    const ChannelModel model(s.geometry, s.path_loss, s.rician);
    const double noise_w = noise_power_w(s.budget);
    const std::size_t max_m = plan.element_counts.back();

    return map_trials(plan, [&](std::size_t, RandomStream &rng) {
        const ChannelRealization r = model.realize(max_m, rng);
        std::vector<double> sums;
        sums.reserve(plan.element_counts.size());
        for (std::size_t m : plan.element_counts) {
            const RisConfig ris = configure_for_cluster(r, interleaved_assignment(max_m, m), s.quant_bits);
            sums.push_back(rates(combine_channels(r, ris), s.pa, noise_w, s.mode, s.noncomp_serving_cell).sum);
        }
        return sums;
    });
}

inline std::vector<ElementPoint> sweep_elements(const TrialPlan &plan, const Scenario &s)
{
    const auto per_trial = collect_element_sweep(plan, s);
    std::vector<ElementPoint> out;
    for (std::size_t j = 0; j < plan.element_counts.size(); ++j) {
        std::vector<double> x;
        x.reserve(per_trial.size());
        for (const auto &t : per_trial)
            x.push_back(t[j]);
        out.push_back(ElementPoint{plan.element_counts[j], estimate_mean(x)});
    }
    return out;
}

} // namespace arisim

#endif
