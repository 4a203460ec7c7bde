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

#include "arisim/channel.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace arisim;

TEST(PathLoss, ReferenceDistanceIdentity)
{
    const PathLossParams p;
    for (LinkClass l : kLinkClasses)
        EXPECT_DOUBLE_EQ(path_loss_linear(1.0, l, p), 1e-3);
}

TEST(PathLoss, DistanceRatio)
{
    const PathLossParams p;
    const double ratio = path_loss_linear(150.0, LinkClass::bs_near, p) / path_loss_linear(300.0, LinkClass::bs_near, p);
    EXPECT_NEAR(ratio, 9.18958683997628, 1e-9);
}

TEST(PathLoss, ExponentTable)
{
    const PathLossParams p;
    EXPECT_EQ(p.exponent(LinkClass::bs_near), 3.2);
    EXPECT_EQ(p.exponent(LinkClass::bs_far), 4.5);
    EXPECT_EQ(p.exponent(LinkClass::bs_ris), 2.7);
    EXPECT_EQ(p.exponent(LinkClass::ris_near), 3.0);
    EXPECT_EQ(p.exponent(LinkClass::ris_far), 2.7);
    EXPECT_EQ(p.exponent(LinkClass::interfering), 4.2);
}

TEST(PathLoss, MonotoneAndDomain)
{
    const PathLossParams p;
    for (LinkClass l : kLinkClasses)
        for (double d = 0.5; d < 1000.0; d *= 1.7)
            EXPECT_GT(path_loss_linear(d, l, p), path_loss_linear(d * 1.01, l, p));
    EXPECT_THROW(path_loss_linear(0.0, LinkClass::bs_far, p), DomainError);
    EXPECT_THROW(path_loss_linear(-3.0, LinkClass::bs_far, p), DomainError);
}

TEST(Geometry, DefaultDistances)
{
    const Geometry g = Geometry::defaults();
    g.validate();
    for (std::size_t c = 0; c < 2; ++c) {
        EXPECT_NEAR(g.bs_far(c), 300.0, 1e-9);
        EXPECT_NEAR(g.bs_near(c), 150.0, 1e-9);
        EXPECT_GT(g.interfering(c), g.bs_near(c));
    }
    EXPECT_GT(g.ris.z, 10.0);
}

TEST(Geometry, RejectsCoincidentNodes)
{
    Geometry g = Geometry::defaults();
    g.near_users[0] = g.bs[0];
    EXPECT_THROW(g.validate(), DomainError);
}

TEST(Rayleigh, UnitPowerAndBalancedComponents)
{
    RandomStream rng(11, 0, StreamDomain::test);
    const int n = 1000000;
    double power = 0, re2 = 0, im2 = 0, re = 0, im = 0;
    for (int i = 0; i < n; ++i) {
        const ComplexGain w = draw_rayleigh(rng);
        power += std::norm(w);
        re += w.real();
        im += w.imag();
        re2 += w.real() * w.real();
        im2 += w.imag() * w.imag();
    }
    EXPECT_NEAR(power / n, 1.0, 0.01);
    EXPECT_NEAR(re2 / n - (re / n) * (re / n), 0.5, 0.01);
    EXPECT_NEAR(im2 / n - (im / n) * (im / n), 0.5, 0.01);
}

TEST(Rayleigh, SeedDeterminism)
{
    RandomStream a(5, 9), b(5, 9), c(5, 10);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const ComplexGain x = draw_rayleigh(a);
        EXPECT_EQ(x, draw_rayleigh(b));
        differs = differs || x != draw_rayleigh(c);
    }
    EXPECT_TRUE(differs);
}

TEST(Rician, ZeroKIsRayleighDrawForDraw)
{
    RandomStream a(3, 1), b(3, 1);
    for (int i = 0; i < 1000; ++i)
        EXPECT_EQ(draw_rician(a, 0.0, 1.234), draw_rayleigh(b));
}

TEST(Rician, LargeKIsLineOfSight)
{
    RandomStream rng(3, 2);
    for (int i = 0; i < 1000; ++i) {
        const ComplexGain h = draw_rician(rng, 1e9, 0.7);
        EXPECT_NEAR(std::abs(h), 1.0, 1e-4);
        EXPECT_NEAR(std::arg(h), 0.7, 1e-3);
    }
}

TEST(Rician, UnitPowerAtTableKFactor)
{
    RandomStream rng(3, 3);
    const double k = std::pow(10.0, 0.3);
    double power = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i)
        power += std::norm(draw_rician(rng, k, 2.0));
    EXPECT_NEAR(power / n, 1.0, 0.01);
}

TEST(Rician, RejectsNegativeK)
{
    RandomStream rng(1, 1);
    EXPECT_THROW(draw_rician(rng, -0.1, 0.0), DomainError);
}

// |h| for K = 0 against an independent Rayleigh sample.
TEST(Rician, ZeroKMatchesRayleighKolmogorovSmirnov)
{
    const std::size_t n = 100000;
    RandomStream a(21, 0), b(22, 0);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::abs(draw_rician(a, 0.0, 0.3));
        y[i] = std::abs(draw_rayleigh(b));
    }
    EXPECT_LT(oracle::ks_statistic(x, y), oracle::ks_critical_01(n, n));
}

TEST(Realization, EmptyRis)
{
    RandomStream rng(1, 0);
    const ChannelRealization r = realize_channels(Geometry::defaults(), PathLossParams{}, RicianParams{}, 0, rng);
    EXPECT_EQ(r.elements(), 0u);
    EXPECT_TRUE(r.bs_to_ris[0].empty() && r.bs_to_ris[1].empty());
    EXPECT_TRUE(r.ris_to_near[0].empty() && r.ris_to_far.empty());
    for (std::size_t c = 0; c < 2; ++c) {
        EXPECT_NE(r.bs_near[c], ComplexGain{});
        EXPECT_NE(r.bs_far[c], ComplexGain{});
        EXPECT_NE(r.interference[c], ComplexGain{});
    }
}

TEST(Realization, SmallerDrawIsPrefixOfLarger)
{
    const ChannelModel model(Geometry::defaults(), PathLossParams{}, RicianParams{});
    RandomStream a(4, 4), b(4, 4);
    const ChannelRealization small = model.realize(10, a);
    const ChannelRealization large = model.realize(70, b);
    EXPECT_EQ(small.bs_near, large.bs_near);
    EXPECT_EQ(small.bs_far, large.bs_far);
    EXPECT_EQ(small.interference, large.interference);
    for (std::size_t m = 0; m < 10; ++m) {
        EXPECT_EQ(small.ris_to_far[m], large.ris_to_far[m]);
        EXPECT_EQ(small.bs_to_ris[1][m], large.bs_to_ris[1][m]);
        EXPECT_EQ(small.ris_to_near[0][m], large.ris_to_near[0][m]);
    }
}

TEST(Realization, SecondMomentsFollowPathLoss)
{
    const Geometry g = Geometry::defaults();
    const PathLossParams pl;
    const ChannelModel model(g, pl, RicianParams{});
    const int n = 100000;
    double far = 0, ici = 0, ris_far = 0, bs_ris = 0;
    for (int i = 0; i < n; ++i) {
        RandomStream rng(77, static_cast<std::uint64_t>(i));
        const ChannelRealization r = model.realize(1, rng);
        far += std::norm(r.bs_far[0]);
        ici += std::norm(r.interference[1]);
        ris_far += std::norm(r.ris_to_far[0]);
        bs_ris += std::norm(r.bs_to_ris[0][0]);
    }
    EXPECT_NEAR(far / n / path_loss_linear(300.0, LinkClass::bs_far, pl), 1.0, 0.02);
    EXPECT_NEAR(ici / n / path_loss_linear(g.interfering(1), LinkClass::interfering, pl), 1.0, 0.02);
    EXPECT_NEAR(ris_far / n / path_loss_linear(g.ris_far(), LinkClass::ris_far, pl), 1.0, 0.02);
    EXPECT_NEAR(bs_ris / n / path_loss_linear(g.bs_ris(0), LinkClass::bs_ris, pl), 1.0, 0.02);
}

TEST(Realization, InterferenceUsesItsOwnExponent)
{
    PathLossParams pl;
    pl.exponents[static_cast<std::size_t>(LinkClass::interfering)] = 1.0;
    const ChannelModel a(Geometry::defaults(), PathLossParams{}, RicianParams{});
    const ChannelModel b(Geometry::defaults(), pl, RicianParams{});
    RandomStream ra(1, 1), rb(1, 1);
    const ChannelRealization x = a.realize(2, ra), y = b.realize(2, rb);
    const double d = Geometry::defaults().interfering(0);
    EXPECT_NEAR(std::abs(y.interference[0]) / std::abs(x.interference[0]), std::sqrt(std::pow(d, 4.2 - 1.0)), 1e-6 * std::pow(d, 1.6));
    EXPECT_EQ(x.bs_far, y.bs_far);
}
