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

#ifndef ARISIM_RIS_HPP
#define ARISIM_RIS_HPP

#include "arisim/channel.hpp"
#include "arisim/error.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace arisim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any finite angle into [0, 2pi).
inline double wrap_phase(double theta)
{
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi.
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

// arg() with arg(0) = 0.
inline double phase_of(ComplexGain g) { return g == ComplexGain{} ? 0.0 : std::arg(g); }

/// Phase shift that aligns the reflected path e^{j theta} * bs_to_ris * ris_to_user with the
/// direct link, which maximises |direct + e^{j theta} * cascade| over theta.
inline double optimal_phase(ComplexGain direct, ComplexGain bs_to_ris, ComplexGain ris_to_user)
{
    return wrap_phase(phase_of(direct) - phase_of(bs_to_ris) - phase_of(ris_to_user));
}

// A phase on the uniform grid {0, 2pi/2^I, ..., (2^I - 1) 2pi/2^I}. Bits are MSB first.
struct QuantizedPhase
{
    std::uint32_t index = 0;
    std::vector<std::uint8_t> bits;
};

inline void check_quant_bits(unsigned bits)
{
    if (bits < 1 || bits > 31)
        throw DomainError("quantization width must be between 1 and 31 bits");
}

inline std::vector<std::uint8_t> index_to_bits(std::uint32_t index, unsigned bits)
{
    check_quant_bits(bits);
    std::vector<std::uint8_t> out(bits);
    for (unsigned i = 0; i < bits; ++i)
        out[i] = static_cast<std::uint8_t>((index >> (bits - 1 - i)) & 1u);
    return out;
}

inline std::uint32_t bits_to_index(std::span<const std::uint8_t> bits)
{
    check_quant_bits(static_cast<unsigned>(bits.size()));
    std::uint32_t index = 0;
    for (std::uint8_t b : bits) {
        if (b > 1)
            throw DomainError("bits_to_index: bit values must be 0 or 1");
        index = (index << 1) | b;
    }
    return index;
}

// Nearest grid level (circular), ties rounding up.
inline QuantizedPhase quantize(double theta, unsigned bits)
{
    check_quant_bits(bits);
    const double levels = std::ldexp(1.0, static_cast<int>(bits));
    const double scaled = std::round(wrap_phase(theta) * levels / kTwoPi);
    const auto index = static_cast<std::uint32_t>(std::fmod(scaled, levels));
    return QuantizedPhase{index, index_to_bits(index, bits)};
}

inline double dequantize(std::uint32_t index, unsigned bits)
{
    check_quant_bits(bits);
    if (index >= (std::uint64_t{1} << bits))
        throw DomainError("dequantize: index out of range");
    return kTwoPi * static_cast<double>(index) / std::ldexp(1.0, static_cast<int>(bits));
}

inline double dequantize(const QuantizedPhase &q, unsigned bits) { return dequantize(q.index, bits); }

// Element is switched off (reflects into no cell's combined channel).
inline constexpr int kUnassigned = -1;

struct RisConfig
{
    std::vector<double> phases; // applied phase per element, [0, 2pi)
    std::vector<int> assignment; // serving BS per element: 0, 1 or kUnassigned
    unsigned quant_bits = 9;

    std::size_t elements() const noexcept { return phases.size(); }

    std::size_t assigned_to(int bs) const
    {
        std::size_t n = 0;
        for (int a : assignment)
            n += (a == bs) ? 1 : 0;
        return n;
    }

    void validate() const
    {
        check_quant_bits(quant_bits);
        if (phases.size() != assignment.size())
            throw DomainError("ris config: phase and assignment vectors differ in length");
        for (double p : phases)
            if (!(p >= 0.0 && p < kTwoPi))
                throw DomainError("ris config: phases must lie in [0, 2pi)");
        for (int a : assignment)
            if (a != 0 && a != 1 && a != kUnassigned)
                throw DomainError("ris config: assignment must be 0, 1 or unassigned");
    }
};

// First `active` of `total` elements alternate BS 0, BS 1, ...; the rest are off.
inline std::vector<int> interleaved_assignment(std::size_t total, std::size_t active)
{
    if (active > total)
        throw DomainError("interleaved_assignment: more active elements than available");
    std::vector<int> a(total, kUnassigned);
    for (std::size_t m = 0; m < active; ++m)
        a[m] = static_cast<int>(m % 2);
    return a;
}

// Elements [0, to_bs0) serve BS 0, the next to_bs1 serve BS 1, the rest are off.
inline std::vector<int> split_assignment(std::size_t total, std::size_t to_bs0, std::size_t to_bs1)
{
    if (to_bs0 + to_bs1 > total)
        throw DomainError("split_assignment: element budget exceeded");
    std::vector<int> a(total, kUnassigned);
    for (std::size_t m = 0; m < to_bs0; ++m)
        a[m] = 0;
    for (std::size_t m = to_bs0; m < to_bs0 + to_bs1; ++m)
        a[m] = 1;
    return a;
}

// Continuous phases steering each assigned element toward the far user through its BS.
inline std::vector<double> align_to_far_user(const ChannelRealization &r, std::span<const int> assignment)
{
    if (assignment.size() != r.elements())
        throw DomainError("align_to_far_user: assignment length does not match the element count");
    std::vector<double> phases(assignment.size(), 0.0);
    for (std::size_t m = 0; m < assignment.size(); ++m) {
        const int c = assignment[m];
        if (c == kUnassigned)
            continue;
        if (c != 0 && c != 1)
            throw DomainError("align_to_far_user: invalid BS index");
        phases[m] = optimal_phase(r.bs_far[c], r.bs_to_ris[c][m], r.ris_to_far[m]);
    }
    return phases;
}

inline RisConfig configure_for_cluster(const ChannelRealization &r, std::vector<int> assignment, unsigned quant_bits)
{
    check_quant_bits(quant_bits);
    RisConfig cfg;
    cfg.phases = align_to_far_user(r, assignment);
    for (double &p : cfg.phases)
        p = dequantize(quantize(p, quant_bits), quant_bits);
    cfg.assignment = std::move(assignment);
    cfg.quant_bits = quant_bits;
    return cfg;
}

} // namespace arisim

#endif
