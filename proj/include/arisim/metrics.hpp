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

#ifndef ARISIM_METRICS_HPP
#define ARISIM_METRICS_HPP

#include "arisim/error.hpp"

#include <cmath>

namespace arisim {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts)
{
    if (!(watts > 0.0))
        throw DomainError("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts) + 30.0;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Thermal noise budget: sigma^2 [dBm] = -174 + 10 log10(B) + NF.
struct LinkBudget
{
    double bandwidth_hz = 2.4e9;
    double noise_figure_db = 12.0;

    void validate() const
    {
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw DomainError("link budget: bandwidth must be positive");
        if (!std::isfinite(noise_figure_db))
            throw DomainError("link budget: noise figure must be finite");
    }

    double noise_power_dbm() const
    {
        validate();
        return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    }
};

inline double noise_power_w(const LinkBudget &budget) { return dbm_to_watts(budget.noise_power_dbm()); }

// log2(1 + SINR) in bit/s/Hz.
inline double spectral_efficiency(double sinr)
{
    if (sinr < 0.0 || std::isnan(sinr))
        throw DomainError("spectral_efficiency: SINR must be non-negative");
    return std::log1p(sinr) / std::log(2.0);
}

// B * rate / P in bit/Joule, for an already computed rate in bit/s/Hz.
inline double energy_efficiency_from_rate(double rate, double bandwidth_hz, double p_tx_w)
{
    if (!(p_tx_w > 0.0))
        throw DomainError("energy_efficiency: transmit power must be positive");
    if (!(bandwidth_hz > 0.0))
        throw DomainError("energy_efficiency: bandwidth must be positive");
    return bandwidth_hz * rate / p_tx_w;
}

inline double energy_efficiency(double sinr, double bandwidth_hz, double p_tx_w)
{
    return energy_efficiency_from_rate(spectral_efficiency(sinr), bandwidth_hz, p_tx_w);
}

} // namespace arisim

#endif
