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

#ifndef ARISIM_NOMA_COMP_HPP
#define ARISIM_NOMA_COMP_HPP

#include "arisim/channel.hpp"
#include "arisim/error.hpp"
#include "arisim/metrics.hpp"
#include "arisim/ris.hpp"

#include <array>
#include <cmath>
#include <cstddef>

namespace arisim {

// Per-cell NOMA power split and transmit power. Powers are stored in watts; dBm only
// appears at the configuration boundary.
struct PowerAllocation
{
    std::array<double, 2> gamma_near{0.2, 0.2};
    std::array<double, 2> gamma_far{0.8, 0.8};
    std::array<double, 2> p_tx_w{1e-3, 1e-3};

    static PowerAllocation symmetric(double gamma_far, double p_tx_dbm)
    {
        PowerAllocation pa;
        pa.gamma_far = {gamma_far, gamma_far};
        pa.gamma_near = {1.0 - gamma_far, 1.0 - gamma_far};
        pa.p_tx_w = {dbm_to_watts(p_tx_dbm), dbm_to_watts(p_tx_dbm)};
        return pa;
    }

    PowerAllocation with_power_dbm(double p_tx_dbm) const
    {
        PowerAllocation pa = *this;
        pa.p_tx_w = {dbm_to_watts(p_tx_dbm), dbm_to_watts(p_tx_dbm)};
        return pa;
    }

    // NOMA ordering for a near user that decodes the far user's message first.
    void validate() const
    {
        for (std::size_t c = 0; c < 2; ++c) {
            if (!(gamma_near[c] >= 0.0 && gamma_near[c] < 0.5))
                throw DomainError("power allocation: gamma_near must lie in [0, 0.5)");
            if (!(gamma_far[c] > 0.5 && gamma_far[c] < 1.0))
                throw DomainError("power allocation: gamma_far must lie in (0.5, 1)");
            if (gamma_near[c] + gamma_far[c] > 1.0 + 1e-12)
                throw DomainError("power allocation: gamma_near + gamma_far must not exceed 1");
            if (!(p_tx_w[c] >= 0.0) || !std::isfinite(p_tx_w[c]))
                throw DomainError("power allocation: transmit power must be finite and non-negative");
        }
    }
};

// H = h + sum over the cell's elements of e^{j theta_m} h_{c,R,m} h_{R,u,m}.
struct CombinedChannels
{
    std::array<ComplexGain, 2> near{}; // H_{c,n}
    std::array<ComplexGain, 2> far{};  // H_{c,f}
    std::array<ComplexGain, 2> ici{};  // h_{c,n'}: BS c -> near user of the other cell
};

inline CombinedChannels combine_channels(const ChannelRealization &r, const RisConfig &ris)
{
    if (ris.phases.size() != r.elements() || ris.assignment.size() != r.elements())
        throw DomainError("combine_channels: RIS configuration does not match the realization's element count");

    CombinedChannels h;
    h.near = r.bs_near;
    h.far = r.bs_far;
    h.ici = r.interference;
    for (std::size_t m = 0; m < r.elements(); ++m) {
        const int c = ris.assignment[m];
        if (c == kUnassigned)
            continue;
        if (c != 0 && c != 1)
            throw DomainError("combine_channels: invalid BS index in assignment");
        const ComplexGain shift = std::polar(1.0, ris.phases[m]);
        const ComplexGain incident = shift * r.bs_to_ris[c][m];
        h.near[c] += incident * r.ris_to_near[c][m];
        h.far[c] += incident * r.ris_to_far[m];
    }
    return h;
}

// SINR at the near user of cell c while decoding the far user's message (first SIC stage).
// The foreign BS's whole transmit power is inter-cell interference.
inline double sinr_near_decoding_far(const CombinedChannels &h, const PowerAllocation &pa, double noise_w, std::size_t c)
{
    const std::size_t o = 1 - c;
    const double gain = std::norm(h.near[c]);
    const double num = pa.gamma_far[c] * pa.p_tx_w[c] * gain;
    const double den = pa.gamma_near[c] * pa.p_tx_w[c] * gain + pa.p_tx_w[o] * std::norm(h.ici[o]) + noise_w;
    return num / den;
}

// SINR at the near user of cell c for its own message, after the far user's signal is removed.
inline double sinr_near_own(const CombinedChannels &h, const PowerAllocation &pa, double noise_w, std::size_t c)
{
    const std::size_t o = 1 - c;
    return pa.gamma_near[c] * pa.p_tx_w[c] * std::norm(h.near[c]) / (pa.p_tx_w[o] * std::norm(h.ici[o]) + noise_w);
}

// Far user under non-coherent joint transmission: both BSs' far-user powers add up.
inline double sinr_far_comp(const CombinedChannels &h, const PowerAllocation &pa, double noise_w)
{
    double num = 0.0;
    double den = noise_w;
    for (std::size_t c = 0; c < 2; ++c) {
        const double rx = pa.p_tx_w[c] * std::norm(h.far[c]);
        num += pa.gamma_far[c] * rx;
        den += pa.gamma_near[c] * rx;
    }
    return num / den;
}

// Far user served by cell c alone; the other cell is pure interference.
inline double sinr_far_noncomp(const CombinedChannels &h, const PowerAllocation &pa, double noise_w, std::size_t c)
{
    const std::size_t o = 1 - c;
    const double rx = pa.p_tx_w[c] * std::norm(h.far[c]);
    return pa.gamma_far[c] * rx / (pa.gamma_near[c] * rx + pa.p_tx_w[o] * std::norm(h.far[o]) + noise_w);
}

enum class FarMode
{
    comp,
    noncomp,
};

struct RateReport
{
    std::array<double, 2> sinr_near{};
    std::array<double, 2> sinr_near_decoding_far{};
    double sinr_far = 0.0;

    std::array<double, 2> rate_near{};
    std::array<double, 2> rate_near_decoding_far{};
    double rate_far = 0.0;
    double sum = 0.0;
};

inline RateReport rates(const CombinedChannels &h, const PowerAllocation &pa, double noise_w,
                        FarMode mode = FarMode::comp, std::size_t serving_cell = 0)
{
    if (!(noise_w > 0.0))
        throw DomainError("rates: noise power must be positive");
    if (serving_cell > 1)
        throw DomainError("rates: serving cell must be 0 or 1");

    RateReport r;
    for (std::size_t c = 0; c < 2; ++c) {
        r.sinr_near[c] = sinr_near_own(h, pa, noise_w, c);
        r.sinr_near_decoding_far[c] = sinr_near_decoding_far(h, pa, noise_w, c);
        r.rate_near[c] = spectral_efficiency(r.sinr_near[c]);
        r.rate_near_decoding_far[c] = spectral_efficiency(r.sinr_near_decoding_far[c]);
    }
    r.sinr_far = mode == FarMode::comp ? sinr_far_comp(h, pa, noise_w) : sinr_far_noncomp(h, pa, noise_w, serving_cell);
    r.rate_far = spectral_efficiency(r.sinr_far);
    r.sum = r.rate_near[0] + r.rate_near[1] + r.rate_far;
    return r;
}

} // namespace arisim

#endif
