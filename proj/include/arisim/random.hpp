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

#ifndef ARISIM_RANDOM_HPP
#define ARISIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace arisim {

// Independent stream families derived from one master seed.
enum class StreamDomain : std::uint32_t
{
    trial = 0,
    dataset = 1,
    feedback = 2,
    test = 3,
};

// Random stream addressed by (master seed, domain, index).
//
// Each Monte Carlo trial owns the stream with index = trial index, so the draws of a
// trial do not depend on how trials are scheduled over workers.
class RandomStream
{
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t index, StreamDomain domain = StreamDomain::trial)
    {
        const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
        const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
        std::seed_seq seq{lo(master_seed), hi(master_seed), lo(index), hi(index),
                          static_cast<std::uint32_t>(domain)};
        engine_.seed(seq);
    }

    // Standard normal N(0, 1).
    double gaussian() { return normal_(engine_); }

    // Uniform on [0, 1).
    double uniform() { return uniform_(engine_); }

    std::mt19937_64 &engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace arisim

#endif
