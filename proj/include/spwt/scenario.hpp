// SPDX-License-Identifier: Apache-2.0
//
// spwt: multi-IRS secure precise wireless transmission toolkit
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

#pragma once

#include "spwt/geometry.hpp"
#include "spwt/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace spwt {

/// Full experiment parameterization. Defaults reproduce the reference
/// deployment: 4x4 Alice array, two 4x4 IRSs, two desired users and two
/// eavesdroppers on the ground.
struct ScenarioConfig {
    int alice_rows = 4;
    int alice_cols = 4;
    double alice_spacing = 0.0;  // meters; 0 means half a carrier wavelength

    std::vector<IrsPlacement> irs;
    std::vector<Position3D> desired;
    std::vector<Position3D> eavesdroppers;

    double transmit_power = 1.0;  // P_s, watts
    double alpha = 0.9;           // fraction of P_s carried by the confidential signal
    double noise_power = 0.1;     // sigma^2, watts

    double speed_of_light = kSpeedOfLight;
    double carrier = 3.0e9;       // f_c, Hz
    double bandwidth = 5.0e6;     // B, Hz
    int subcarriers = 1024;       // N_s
    double path_loss_constant = 1.0;  // c0 in rho = c0 / (r_AI + r_IB)^2

    std::uint64_t seed = 1;       // subcarrier draw and scheme initialization

    int antennas() const { return alice_rows * alice_cols; }
    int irs_elements() const { return irs.empty() ? 0 : irs.front().elements(); }
    double half_wavelength() const { return speed_of_light / (2.0 * carrier); }
    double resolved_alice_spacing() const { return alice_spacing > 0.0 ? alice_spacing : half_wavelength(); }
    double snr_db() const { return linear_to_db(transmit_power / noise_power); }
    void set_snr_db(double snr) { noise_power = transmit_power / db_to_linear(snr); }

    /// Resizes every IRS to rows x cols elements.
    void set_irs_shape(int rows, int cols)
    {
        for (auto& s : irs) {
            s.rows = rows;
            s.cols = cols;
        }
    }
};

/// c0 that gives the Alice -> first IRS -> first desired user path unit path
/// loss, so the SNR axis is the per-element receive SNR on that link.
inline double reference_path_loss_constant(const ScenarioConfig& s)
{
    if (s.irs.empty() || s.desired.empty()) {
        throw ConfigError("reference_path_loss_constant: needs an IRS and a desired user");
    }
    const double total = angles_from_alice(s.irs.front().position).range +
                         angles_from_irs(s.irs.front(), s.desired.front()).range;
    return total * total;
}

/// Reference deployment used by the default sweeps.
inline ScenarioConfig reference_scenario()
{
    ScenarioConfig s;
    const double spacing = s.half_wavelength();
    s.alice_spacing = spacing;
    s.irs = {
        IrsPlacement{{50.0, 150.0, 50.0}, 0.0, 4, 4, spacing},
        IrsPlacement{{100.0, 200.0, 30.0}, 0.0, 4, 4, spacing},
    };
    s.desired = {{100.0, 50.0, 0.0}, {200.0, 150.0, 0.0}};
    s.eavesdroppers = {{150.0, 0.0, 0.0}, {200.0, 50.0, 0.0}};
    s.path_loss_constant = reference_path_loss_constant(s);
    return s;
}

namespace detail {

inline bool finite(const Position3D& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

} // namespace detail

/// Throws ConfigError naming the first offending field.
inline void validate(const ScenarioConfig& s)
{
    auto fail = [](const std::string& field, const std::string& why) {
        throw ConfigError("invalid scenario field '" + field + "': " + why);
    };
    if (s.alice_rows < 1) fail("alice_rows", "must be >= 1");
    if (s.alice_cols < 1) fail("alice_cols", "must be >= 1");
    if (!(s.alice_spacing >= 0.0)) fail("alice_spacing", "must be positive");
    if (s.irs.empty()) fail("irs", "at least one IRS is required");
    const int m = s.irs.front().elements();
    for (std::size_t k = 0; k < s.irs.size(); ++k) {
        const auto& irs = s.irs[k];
        const std::string tag = "irs[" + std::to_string(k) + "]";
        if (irs.rows < 1 || irs.cols < 1) fail(tag + ".rows/cols", "must be >= 1");
        if (irs.elements() != m) fail(tag + ".rows/cols", "all IRSs must have the same element count");
        if (!(irs.element_spacing > 0.0)) fail(tag + ".spacing", "must be positive");
        if (!(irs.placement_angle >= 0.0 && irs.placement_angle < kTwoPi)) {
            fail(tag + ".placement_angle", "must lie in [0, 2pi)");
        }
        if (!detail::finite(irs.position)) fail(tag + ".position", "must be finite");
        if (!(irs.position.z > 0.0)) fail(tag + ".position", "IRS height must be positive");
    }
    for (std::size_t p = 0; p < s.desired.size(); ++p) {
        if (!detail::finite(s.desired[p])) fail("desired[" + std::to_string(p) + "]", "must be finite");
    }
    for (std::size_t q = 0; q < s.eavesdroppers.size(); ++q) {
        if (!detail::finite(s.eavesdroppers[q])) fail("eavesdroppers[" + std::to_string(q) + "]", "must be finite");
    }
    if (!(s.transmit_power > 0.0)) fail("transmit_power", "must be positive");
    if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) fail("alpha", "must lie in [0, 1]");
    if (!(s.noise_power > 0.0)) fail("noise_power", "must be positive");
    if (!(s.speed_of_light > 0.0)) fail("speed_of_light", "must be positive");
    if (!(s.carrier > 0.0)) fail("carrier", "must be positive");
    if (!(s.bandwidth > 0.0)) fail("bandwidth", "must be positive");
    if (s.subcarriers < 1) fail("subcarriers", "must be >= 1");
    if (!(s.bandwidth < s.carrier / 100.0)) fail("bandwidth", "total bandwidth must stay below carrier/100");
    if (!(s.path_loss_constant >= 0.0)) fail("path_loss_constant", "must be non-negative");
}

} // namespace spwt
