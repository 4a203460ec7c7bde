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

#include "arisim/feedback.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace arisim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / "arisim_test_feedback";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario small_scenario(std::size_t elements)
{
    Scenario s;
    s.elements = elements;
    return s;
}

} // namespace

TEST(UserTags, RoundTrip)
{
    for (UserTag u : kUserTags)
        EXPECT_EQ(parse_user_tag(to_string(u)), u);
    EXPECT_THROW(parse_user_tag("near_3"), DomainError);
}

TEST(Dataset, HeaderOnlyForZeroTrials)
{
    const fs::path p = scratch("empty.csv");
    EXPECT_EQ(export_dataset(small_scenario(4), 0, 1, p), 0u);
    EXPECT_EQ(slurp(p), dataset_header(9) + "\n");
    const auto side = nlohmann::json::parse(slurp(sidecar_path(p)));
    EXPECT_EQ(side["records"], 0);
    EXPECT_EQ(side["format"], std::string(kDatasetFormat));
}

TEST(Dataset, LayoutAndSidecar)
{
    const fs::path p = scratch("layout.csv");
    const std::size_t n = export_dataset(small_scenario(6), 5, 42, p, "abc123");
    EXPECT_EQ(n, 5u * 3u * 6u);
    EXPECT_EQ(dataset_header(3), "user,element,b0,b1,b2");

    const QpsDataset ds = read_dataset(p);
    EXPECT_EQ(ds.quant_bits, 9u);
    ASSERT_EQ(ds.records.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const QpsRecord &r = ds.records[i];
        EXPECT_EQ(r.element, i % 6);
        EXPECT_EQ(r.user, kUserTags[(i / 6) % 3]);
        ASSERT_EQ(r.bits.size(), 9u);
        EXPECT_LT(bits_to_index(r.bits), 512u);
    }

    const auto side = nlohmann::json::parse(slurp(sidecar_path(p)));
    EXPECT_EQ(side["quant_bits"], 9);
    EXPECT_EQ(side["seed"], 42);
    EXPECT_EQ(side["trials"], 5);
    EXPECT_EQ(side["elements"], 6);
    EXPECT_EQ(side["records"], n);
    EXPECT_EQ(side["records_per_user"], n / 3);
    EXPECT_EQ(side["config_hash"], "abc123");
    EXPECT_EQ(side["header"], dataset_header(9));
}

TEST(Dataset, ByteIdenticalReexport)
{
    const fs::path a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.csv");
    export_dataset(small_scenario(8), 20, 7, a);
    export_dataset(small_scenario(8), 20, 7, b);
    export_dataset(small_scenario(8), 20, 8, c);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(a), slurp(c));
}

TEST(Dataset, RowsMatchQuantizedRequests)
{
    const Scenario s = small_scenario(5);
    const fs::path p = scratch("match.csv");
    export_dataset(s, 2, 11, p);
    const QpsDataset ds = read_dataset(p);
    const ChannelModel model(s.geometry, s.path_loss, s.rician);
    std::size_t i = 0;
    for (std::size_t t = 0; t < 2; ++t) {
        RandomStream rng(11, t, StreamDomain::dataset);
        const ChannelRealization r = model.realize(5, rng);
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t m = 0; m < 5; ++m, ++i) {
                double theta = 0.0;
                if (u < 2)
                    theta = optimal_phase(r.bs_near[u], r.bs_to_ris[u][m], r.ris_to_near[u][m]);
                else
                    theta = optimal_phase(r.bs_far[m % 2], r.bs_to_ris[m % 2][m], r.ris_to_far[m]);
                EXPECT_EQ(ds.records[i].bits, quantize(theta, 9).bits);
            }
    }
}

TEST(Dataset, ReaderRejectsMalformedFiles)
{
    const fs::path p = scratch("bad.csv");
    {
        std::ofstream out(p);
        out << dataset_header(3) << "\nfar,0,1,0\n";
    }
    EXPECT_THROW(read_dataset(p), IoError);
    {
        std::ofstream out(p);
        out << dataset_header(3) << "\nfar,0,1,0,2\n";
    }
    EXPECT_THROW(read_dataset(p), IoError);
    {
        std::ofstream out(p);
        out << "x,y\n";
    }
    EXPECT_THROW(read_dataset(p), IoError);
    EXPECT_THROW(read_dataset(scratch("missing.csv")), IoError);
}

TEST(Dataset, UnwritablePathIsIoError)
{
    EXPECT_THROW(export_dataset(small_scenario(2), 1, 1, "/nonexistent-dir/x.csv"), IoError);
}

TEST(FeedbackChannel, EnergyFloor)
{
    RandomStream rng(1, 0, StreamDomain::feedback);
    const std::vector<double> zeros(16, 0.0);
    const FeedbackTransmission t = transmit_feedback(zeros, FeedbackChannelParams{}, rng);
    EXPECT_EQ(t.average_energy, 1e-8);
    EXPECT_NEAR(t.noise_variance, 1e-9, 1e-22);
}

TEST(FeedbackChannel, NoiselessLineOfSightLimit)
{
    RandomStream rng(2, 0, StreamDomain::feedback);
    FeedbackChannelParams p;
    p.snr_db = 300.0;
    p.k_factor = 1e20;
    const std::vector<double> x{0.5, -1.0, 2.0, 0.0, 3.25};
    const auto y = feedback_channel(x, p, rng);
    for (std::size_t i = 0; i < x.size(); ++i)
        EXPECT_NEAR(y[i], std::abs(x[i]), 1e-6);
}

TEST(FeedbackChannel, NoiseVarianceAtTenDb)
{
    RandomStream rng(3, 0, StreamDomain::feedback);
    const std::size_t n = 1000000;
    const std::vector<double> x(n, 1.0);
    const FeedbackTransmission t = transmit_feedback(x, FeedbackChannelParams{}, rng);
    EXPECT_NEAR(t.noise_variance, 0.1, 1e-15);
    double power = 0.0, fading = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        power += std::norm(t.noise[i]);
        fading += std::norm(t.fading[i]);
    }
    EXPECT_NEAR(power / n, 0.1, 0.005);
    EXPECT_NEAR(fading / n, 1.0, 0.01);
}

TEST(FeedbackChannel, EnvelopeIsNonNegativeAndConsistent)
{
    RandomStream rng(4, 0, StreamDomain::feedback);
    std::vector<double> x(1000);
    for (double &v : x)
        v = rng.gaussian();
    const FeedbackTransmission t = transmit_feedback(x, FeedbackChannelParams{}, rng);
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_GE(t.envelope[i], 0.0);
        EXPECT_NEAR(t.envelope[i], std::abs(t.fading[i] * x[i] + t.noise[i]), 1e-12);
    }
}

TEST(FeedbackChannel, BlockFadingSharesOneDraw)
{
    RandomStream rng(5, 0, StreamDomain::feedback);
    FeedbackChannelParams p;
    p.block_fading = true;
    const std::vector<double> x(50, 1.0);
    const FeedbackTransmission t = transmit_feedback(x, p, rng);
    for (const ComplexGain &h : t.fading)
        EXPECT_EQ(h, t.fading.front());
    p.block_fading = false;
    const FeedbackTransmission u = transmit_feedback(x, p, rng);
    EXPECT_NE(u.fading[0], u.fading[1]);
}

TEST(FeedbackChannel, RejectsBadParameters)
{
    RandomStream rng(6, 0);
    FeedbackChannelParams p;
    p.k_factor = -1.0;
    const std::vector<double> x{1.0};
    EXPECT_THROW(feedback_channel(x, p, rng), DomainError);
    p = FeedbackChannelParams{};
    const std::vector<double> bad{std::nan("")};
    EXPECT_THROW(feedback_channel(bad, p, rng), DomainError);
}
