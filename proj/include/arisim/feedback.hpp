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

#ifndef ARISIM_FEEDBACK_HPP
#define ARISIM_FEEDBACK_HPP

#include "arisim/channel.hpp"
#include "arisim/error.hpp"
#include "arisim/metrics.hpp"
#include "arisim/montecarlo.hpp"
#include "arisim/random.hpp"
#include "arisim/ris.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace arisim {

enum class UserTag : std::uint8_t
{
    near_1,
    near_2,
    far,
};

inline constexpr std::array<UserTag, 3> kUserTags{UserTag::near_1, UserTag::near_2, UserTag::far};

inline constexpr std::string_view to_string(UserTag u)
{
    switch (u) {
    case UserTag::near_1:
        return "near_1";
    case UserTag::near_2:
        return "near_2";
    case UserTag::far:
        break;
    }
    return "far";
}

inline UserTag parse_user_tag(std::string_view s)
{
    for (UserTag u : kUserTags)
        if (to_string(u) == s)
            return u;
    throw DomainError("unknown user tag '" + std::string(s) + "'");
}

// One element's quantized phase for one user, as fed back to the RIS.
struct QpsRecord
{
    UserTag user = UserTag::far;
    std::size_t element = 0;
    std::vector<std::uint8_t> bits; // MSB first, length = quantization width
};

inline constexpr std::string_view kDatasetFormat = "arisim-qps/1";

inline std::string dataset_header(unsigned quant_bits)
{
    std::string h = "user,element";
    for (unsigned i = 0; i < quant_bits; ++i)
        h += ",b" + std::to_string(i);
    return h;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path &dataset)
{
    std::filesystem::path p = dataset;
    p += ".json";
    return p;
}

// Phases a single user would request: near users align every element to their own direct
// link through their own BS; the far user gets the cluster configuration (interleaved split).
inline std::array<std::vector<double>, 3> user_phase_requests(const ChannelRealization &r)
{
    std::array<std::vector<double>, 3> out;
    for (std::size_t c = 0; c < 2; ++c) {
        out[c].resize(r.elements());
        for (std::size_t m = 0; m < r.elements(); ++m)
            out[c][m] = optimal_phase(r.bs_near[c], r.bs_to_ris[c][m], r.ris_to_near[c][m]);
    }
    out[2] = align_to_far_user(r, interleaved_assignment(r.elements(), r.elements()));
    return out;
}

/// Writes `trials` draws of quantized phase requests for every user as delimited text
/// (`user,element,b0..b{I-1}`) plus a JSON sidecar at `<path>.json`. Returns the record count.
inline std::size_t export_dataset(const Scenario &s, std::size_t trials, std::uint64_t seed,
                                  const std::filesystem::path &path, const std::string &config_hash = "")
{
    s.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open dataset file '" + path.string() + "' for writing");

    out << dataset_header(s.quant_bits) << '\n';
    const ChannelModel model(s.geometry, s.path_loss, s.rician);
    std::size_t records = 0;
    std::string line;
    for (std::size_t t = 0; t < trials; ++t) {
        RandomStream rng(seed, t, StreamDomain::dataset);
        const auto requests = user_phase_requests(model.realize(s.elements, rng));
        for (std::size_t u = 0; u < kUserTags.size(); ++u) {
            for (std::size_t m = 0; m < s.elements; ++m) {
                const QuantizedPhase q = quantize(requests[u][m], s.quant_bits);
                line.assign(to_string(kUserTags[u]));
                line += ',';
                line += std::to_string(m);
                for (std::uint8_t b : q.bits) {
                    line += ',';
                    line += static_cast<char>('0' + b);
                }
                line += '\n';
                out << line;
                ++records;
            }
        }
    }
    out.flush();
    if (!out)
        throw IoError("failed writing dataset file '" + path.string() + "'");

    const nlohmann::ordered_json sidecar = {
        {"format", kDatasetFormat},
        {"quant_bits", s.quant_bits},
        {"seed", seed},
        {"trials", trials},
        {"elements", s.elements},
        {"records", records},
        {"records_per_user", records / kUserTags.size()},
        {"config_hash", config_hash},
        {"header", dataset_header(s.quant_bits)},
    };
    std::ofstream side(sidecar_path(path), std::ios::binary | std::ios::trunc);
    if (!side)
        throw IoError("cannot open sidecar '" + sidecar_path(path).string() + "' for writing");
    side << sidecar.dump(2) << '\n';
    if (!side)
        throw IoError("failed writing sidecar '" + sidecar_path(path).string() + "'");
    return records;
}

struct QpsDataset
{
    unsigned quant_bits = 0;
    std::vector<QpsRecord> records;
};

// Parses a file written by export_dataset, validating every row against the header.
inline QpsDataset read_dataset(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open dataset file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line))
        throw IoError("dataset '" + path.string() + "' has no header");
    const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (columns < 3 || line != dataset_header(static_cast<unsigned>(columns - 1)))
        throw IoError("dataset '" + path.string() + "' has an unexpected header");

    QpsDataset ds;
    ds.quant_bits = static_cast<unsigned>(columns - 1);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        std::stringstream ss(line);
        std::string user, element, bit;
        QpsRecord rec;
        if (!std::getline(ss, user, ',') || !std::getline(ss, element, ','))
            throw IoError("dataset row " + std::to_string(row) + " is truncated");
        rec.user = parse_user_tag(user);
        rec.element = std::stoul(element);
        while (std::getline(ss, bit, ',')) {
            if (bit != "0" && bit != "1")
                throw IoError("dataset row " + std::to_string(row) + " has a non-binary bit");
            rec.bits.push_back(static_cast<std::uint8_t>(bit[0] - '0'));
        }
        if (rec.bits.size() != ds.quant_bits)
            throw IoError("dataset row " + std::to_string(row) + " has the wrong number of bits");
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

struct FeedbackChannelParams
{
    double snr_db = 10.0;
    double k_factor = 3.0; // linear
    bool block_fading = false; // one fading draw per call instead of per symbol

    void validate() const
    {
        if (!std::isfinite(snr_db))
            throw DomainError("feedback channel: SNR must be finite");
        if (!(k_factor >= 0.0) || !std::isfinite(k_factor))
            throw DomainError("feedback channel: K must be finite and non-negative");
    }

    // Normalised LoS amplitude b = sqrt(K / (K + 1)).
    double los_weight() const { return std::sqrt(k_factor / (k_factor + 1.0)); }
};

struct FeedbackTransmission
{
    double average_energy = 0.0; // max(mean |x|^2, 1e-8)
    double noise_variance = 0.0; // E_avg / SNR, split evenly over I and Q
    std::vector<ComplexGain> fading;
    std::vector<ComplexGain> noise;
    std::vector<double> envelope; // |h x + n|
};

inline FeedbackTransmission transmit_feedback(std::span<const double> x, const FeedbackChannelParams &params,
                                              RandomStream &rng)
{
    params.validate();
    FeedbackTransmission t;
    double energy = 0.0;
    for (double v : x) {
        if (!std::isfinite(v))
            throw DomainError("feedback channel: input must be finite");
        energy += v * v;
    }
    t.average_energy = std::max(x.empty() ? 0.0 : energy / static_cast<double>(x.size()), 1e-8);
    t.noise_variance = t.average_energy / db_to_linear(params.snr_db);

    const double noise_sd = std::sqrt(t.noise_variance / 2.0);
    t.fading.resize(x.size());
    t.noise.resize(x.size());
    t.envelope.resize(x.size());
    ComplexGain block{};
    if (params.block_fading)
        block = draw_rician(rng, params.k_factor, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        t.fading[i] = params.block_fading ? block : draw_rician(rng, params.k_factor, 0.0);
        const double n_re = noise_sd * rng.gaussian();
        const double n_im = noise_sd * rng.gaussian();
        t.noise[i] = ComplexGain(n_re, n_im);
        const double z_re = t.fading[i].real() * x[i] + n_re;
        const double z_im = t.fading[i].imag() * x[i] + n_im;
        t.envelope[i] = std::hypot(z_re, z_im);
    }
    return t;
}

// Received envelope |Z| for a real-valued compressed feedback vector.
inline std::vector<double> feedback_channel(std::span<const double> x, const FeedbackChannelParams &params,
                                            RandomStream &rng)
{
    return transmit_feedback(x, params, rng).envelope;
}

} // namespace arisim

#endif
