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

#include "spwt/channel.hpp"
#include "spwt/metrics.hpp"
#include "spwt/mslnr.hpp"
#include "spwt/scenario.hpp"
#include "spwt/types.hpp"

#include <chrono>
#include <cstdint>
#include <vector>

namespace spwt {

/// Direct Alice->user channels with the reflection paths removed.
struct DirectPathSet {
    int antennas = 0;
    double noise_power = 1.0;
    std::vector<CVector> desired;
    std::vector<CVector> eavesdroppers;
};

inline DirectPathSet build_direct_paths(const ScenarioConfig& s, const SubcarrierAllocation& alloc)
{
    validate(s);
    DirectPathSet d;
    d.antennas = s.antennas();
    d.noise_power = s.noise_power;
    for (const auto& p : s.desired) d.desired.push_back(direct_path_channel(s, alloc, p));
    for (const auto& q : s.eavesdroppers) d.eavesdroppers.push_back(direct_path_channel(s, alloc, q));
    return d;
}

inline double secrecy_rate_raw(const BeamformerState& s, const DirectPathSet& d)
{
    if (d.desired.empty()) {
        throw DegenerateError("secrecy_rate: at least one desired user is required");
    }
    std::vector<double> bob;
    std::vector<double> eve;
    for (const auto& g : d.desired) bob.push_back(sinr_from_gamma(s.v, s.w, s.alpha, g, d.noise_power));
    for (const auto& g : d.eavesdroppers) eve.push_back(sinr_from_gamma(s.v, s.w, s.alpha, g, d.noise_power));
    return secrecy_rate_from_sinr(bob, eve);
}

inline double secrecy_rate(const BeamformerState& s, const DirectPathSet& d)
{
    return std::max(0.0, secrecy_rate_raw(s, d));
}

/// Non-reflecting reference: maximum-ratio beam toward the sum of normalized
/// desired channels plus AN in their null space. theta is left empty.
inline SchemeResult run_direct_baseline(const DirectPathSet& d, double alpha, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    if (d.desired.empty()) {
        throw DegenerateError("run_direct_baseline: needs at least one desired user");
    }
    CVector v = CVector::Zero(d.antennas);
    CMatrix h(d.antennas, static_cast<Eigen::Index>(d.desired.size()));
    for (std::size_t p = 0; p < d.desired.size(); ++p) {
        const CVector& g = d.desired[p];
        if (g.norm() > 0.0) v += g.conjugate() / g.norm();
        h.col(static_cast<Eigen::Index>(p)) = g;
    }
    if (!(v.norm() > 0.0)) {
        throw DegenerateError("run_direct_baseline: desired channels cancel");
    }
    Rng rng(seed);
    const NullProjection an = an_null_projector(h, complex_gaussian(d.antennas, rng));

    SchemeResult res;
    res.scheme = "baseline-direct-path-substitute";
    res.state.v = v / v.norm();
    res.state.w = an.w;
    res.state.alpha = alpha;
    res.objective = secrecy_rate_raw(res.state, d);
    res.trace = {res.objective};
    res.converged = true;
    res.flagged = an.rank_deficient;
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace spwt
