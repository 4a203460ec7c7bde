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

#ifndef ARISIM_CHANNEL_HPP
#define ARISIM_CHANNEL_HPP

#include "arisim/error.hpp"
#include "arisim/metrics.hpp"
#include "arisim/random.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

namespace arisim {

using ComplexGain = std::complex<double>;

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Point3 &a, const Point3 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

enum class LinkClass : std::size_t
{
    bs_near = 0,
    bs_far,
    bs_ris,
    ris_near,
    ris_far,
    interfering,
};

inline constexpr std::size_t kLinkClassCount = 6;

inline constexpr std::array<LinkClass, kLinkClassCount> kLinkClasses{
    LinkClass::bs_near, LinkClass::bs_far,  LinkClass::bs_ris,
    LinkClass::ris_near, LinkClass::ris_far, LinkClass::interfering,
};

inline constexpr std::string_view to_string(LinkClass c)
{
    constexpr std::array<std::string_view, kLinkClassCount> names{
        "bs_near", "bs_far", "bs_ris", "ris_near", "ris_far", "interfering",
    };
    return names[static_cast<std::size_t>(c)];
}

// Two base stations, one aerial RIS, one near user per cell and a far user shared by both cells.
struct Geometry
{
    std::array<Point3, 2> bs;
    Point3 ris;
    std::array<Point3, 2> near_users;
    Point3 far_user;

    // BS-to-far-user distance 300 m, BS-to-near-user 150 m, RIS hovering at the common cell edge.
    static Geometry defaults()
    {
        constexpr double bs_height = 10.0;
        constexpr double ue_height = 1.5;
        constexpr double far_y = 150.0;
        const double bs_x = std::sqrt(300.0 * 300.0 - far_y * far_y - (bs_height - ue_height) * (bs_height - ue_height));

        Geometry g;
        g.bs = {Point3{bs_x, 0.0, bs_height}, Point3{-bs_x, 0.0, bs_height}};
        g.ris = Point3{0.0, 0.0, 50.0};
        g.far_user = Point3{0.0, far_y, ue_height};
        for (std::size_t c = 0; c < 2; ++c) {
            const Point3 &b = g.bs[c];
            // Near user halfway along the BS to far-user segment.
            g.near_users[c] = Point3{(b.x + g.far_user.x) / 2, (b.y + g.far_user.y) / 2, (b.z + g.far_user.z) / 2};
        }
        return g;
    }

    double bs_near(std::size_t c) const { return distance(bs[c], near_users[c]); }
    double bs_far(std::size_t c) const { return distance(bs[c], far_user); }
    double bs_ris(std::size_t c) const { return distance(bs[c], ris); }
    double ris_near(std::size_t c) const { return distance(ris, near_users[c]); }
    double ris_far() const { return distance(ris, far_user); }
    // BS c to the near user of the other cell.
    double interfering(std::size_t c) const { return distance(bs[c], near_users[1 - c]); }

    void validate() const
    {
        for (std::size_t c = 0; c < 2; ++c) {
            for (double d : {bs_near(c), bs_far(c), bs_ris(c), ris_near(c), interfering(c)})
                if (!(d > 0.0) || !std::isfinite(d))
                    throw DomainError("geometry: link distances must be strictly positive");
        }
        if (!(ris_far() > 0.0))
            throw DomainError("geometry: link distances must be strictly positive");
    }
};

// PL(d) = PL(d0) / d^alpha with d0 = 1 m.
struct PathLossParams
{
    double reference_loss_db = -30.0;
    std::array<double, kLinkClassCount> exponents{3.2, 4.5, 2.7, 3.0, 2.7, 4.2};

    double exponent(LinkClass c) const { return exponents[static_cast<std::size_t>(c)]; }

    void validate() const
    {
        if (!std::isfinite(reference_loss_db))
            throw DomainError("path loss: reference loss must be finite");
        for (double a : exponents)
            if (!(a > 0.0) || !std::isfinite(a))
                throw DomainError("path loss: exponents must be positive");
    }
};

inline double path_loss_linear(double d, LinkClass link, const PathLossParams &params)
{
    if (!(d > 0.0))
        throw DomainError("path_loss_linear: distance must be positive");
    return db_to_linear(params.reference_loss_db) / std::pow(d, params.exponent(link));
}

// K-factors in dB for the line-of-sight links touching the RIS.
struct RicianParams
{
    double k_ris_near_db = 3.0;
    double k_ris_far_db = 4.0;
    double k_bs_ris_db = 4.0;
    // Sets the wavelength of the deterministic LoS phase.
    double carrier_hz = 2.4e9;

    void validate() const
    {
        for (double k : {k_ris_near_db, k_ris_far_db, k_bs_ris_db})
            if (std::isnan(k) || k == std::numeric_limits<double>::infinity())
                throw DomainError("rician: K-factor must be a finite dB value");
        if (!(carrier_hz > 0.0))
            throw DomainError("rician: carrier frequency must be positive");
    }
};

// CN(0, 1): zero mean, unit variance, each component N(0, 1/2).
inline ComplexGain draw_rayleigh(RandomStream &rng)
{
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    return ComplexGain(re, im) * std::numbers::sqrt2 * 0.5;
}

// sqrt(K/(K+1)) e^{j los_phase} + sqrt(1/(K+1)) CN(0, 1).
inline ComplexGain draw_rician(RandomStream &rng, double k_linear, double los_phase)
{
    if (!(k_linear >= 0.0))
        throw DomainError("draw_rician: K must be non-negative");
    const ComplexGain scatter = draw_rayleigh(rng);
    if (std::isinf(k_linear))
        return std::polar(1.0, los_phase);
    const double los_weight = std::sqrt(k_linear / (k_linear + 1.0));
    const double nlos_weight = std::sqrt(1.0 / (k_linear + 1.0));
    return los_weight * std::polar(1.0, los_phase) + nlos_weight * scatter;
}

// Phase of a free-space path of the given length.
inline double los_phase(double distance_m, double carrier_hz)
{
    constexpr double speed_of_light = 299792458.0;
    const double wavelength = speed_of_light / carrier_hz;
    return -2.0 * std::numbers::pi * std::fmod(distance_m, wavelength) / wavelength;
}

// One draw of every link in the cluster. Index c is the cell (0 or 1), m the RIS element.
struct ChannelRealization
{
    std::array<ComplexGain, 2> bs_near{};      // BS c -> its own near user
    std::array<ComplexGain, 2> bs_far{};       // BS c -> far user
    std::array<ComplexGain, 2> interference{}; // BS c -> near user of the other cell
    std::array<std::vector<ComplexGain>, 2> bs_to_ris;
    std::array<std::vector<ComplexGain>, 2> ris_to_near; // RIS -> near user of cell c
    std::vector<ComplexGain> ris_to_far;

    std::size_t elements() const noexcept { return ris_to_far.size(); }
};

// Precomputed large-scale terms for a fixed topology.
class ChannelModel
{
public:
    ChannelModel(const Geometry &geometry, const PathLossParams &path_loss, const RicianParams &rician)
    {
        geometry.validate();
        path_loss.validate();
        rician.validate();

        const auto amp = [&](double d, LinkClass link) { return std::sqrt(path_loss_linear(d, link, path_loss)); };
        for (std::size_t c = 0; c < 2; ++c) {
            amp_bs_near_[c] = amp(geometry.bs_near(c), LinkClass::bs_near);
            amp_bs_far_[c] = amp(geometry.bs_far(c), LinkClass::bs_far);
            amp_interference_[c] = amp(geometry.interfering(c), LinkClass::interfering);
            amp_bs_ris_[c] = amp(geometry.bs_ris(c), LinkClass::bs_ris);
            amp_ris_near_[c] = amp(geometry.ris_near(c), LinkClass::ris_near);
            phase_bs_ris_[c] = los_phase(geometry.bs_ris(c), rician.carrier_hz);
            phase_ris_near_[c] = los_phase(geometry.ris_near(c), rician.carrier_hz);
        }
        amp_ris_far_ = amp(geometry.ris_far(), LinkClass::ris_far);
        phase_ris_far_ = los_phase(geometry.ris_far(), rician.carrier_hz);

        k_bs_ris_ = db_to_linear(rician.k_bs_ris_db);
        k_ris_near_ = db_to_linear(rician.k_ris_near_db);
        k_ris_far_ = db_to_linear(rician.k_ris_far_db);
    }

    // Direct and interfering links are drawn first, then the RIS links element by element,
    // so the realization for M elements is a prefix of the one for any M' > M on the same stream.
    ChannelRealization realize(std::size_t elements, RandomStream &rng) const
    {
        ChannelRealization r;
        for (std::size_t c = 0; c < 2; ++c)
            r.bs_near[c] = amp_bs_near_[c] * draw_rayleigh(rng);
        for (std::size_t c = 0; c < 2; ++c)
            r.bs_far[c] = amp_bs_far_[c] * draw_rayleigh(rng);
        for (std::size_t c = 0; c < 2; ++c)
            r.interference[c] = amp_interference_[c] * draw_rayleigh(rng);

        for (auto &v : r.bs_to_ris)
            v.resize(elements);
        for (auto &v : r.ris_to_near)
            v.resize(elements);
        r.ris_to_far.resize(elements);

        for (std::size_t m = 0; m < elements; ++m) {
            for (std::size_t c = 0; c < 2; ++c)
                r.bs_to_ris[c][m] = amp_bs_ris_[c] * draw_rician(rng, k_bs_ris_, phase_bs_ris_[c]);
            for (std::size_t c = 0; c < 2; ++c)
                r.ris_to_near[c][m] = amp_ris_near_[c] * draw_rician(rng, k_ris_near_, phase_ris_near_[c]);
            r.ris_to_far[m] = amp_ris_far_ * draw_rician(rng, k_ris_far_, phase_ris_far_);
        }
        return r;
    }

private:
    std::array<double, 2> amp_bs_near_{}, amp_bs_far_{}, amp_interference_{}, amp_bs_ris_{}, amp_ris_near_{};
    std::array<double, 2> phase_bs_ris_{}, phase_ris_near_{};
    double amp_ris_far_ = 0.0;
    double phase_ris_far_ = 0.0;
    double k_bs_ris_ = 0.0, k_ris_near_ = 0.0, k_ris_far_ = 0.0;
};

inline ChannelRealization realize_channels(const Geometry &geometry, const PathLossParams &path_loss,
                                           const RicianParams &rician, std::size_t elements, RandomStream &rng)
{
    return ChannelModel(geometry, path_loss, rician).realize(elements, rng);
}

} // namespace arisim

#endif
