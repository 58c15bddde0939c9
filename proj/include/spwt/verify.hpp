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

// Tiny-instance equivalence checks of every scheme against exhaustive and
// random-search references.

#include "spwt/channel.hpp"
#include "spwt/metrics.hpp"
#include "spwt/msinr.hpp"
#include "spwt/mslnr.hpp"
#include "spwt/msr.hpp"
#include "spwt/oracle.hpp"
#include "spwt/scenario.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace spwt::verify {

/// N = 2, K = 1, M = 2, P = Q = 1 on the reference geometry.
inline ScenarioConfig tiny_scenario(std::uint64_t seed, double snr_db = 10.0)
{
    ScenarioConfig s = reference_scenario();
    s.alice_rows = 1;
    s.alice_cols = 2;
    s.irs.resize(1);
    s.irs.front().rows = 1;
    s.irs.front().cols = 2;
    s.desired.resize(1);
    s.eavesdroppers.resize(1);
    s.seed = seed;
    s.set_snr_db(snr_db);
    return s;
}

struct OracleSettings {
    int phase_points = 64;        // MSINR phase grid
    int joint_phase_points = 24;  // MSLNR / MSR phase grid
    int vector_samples = 400;     // random directions per phase point
    std::uint64_t seed = 17;
};

/// max over theta of alpha ||Gamma(theta)||^2 / sigma^2; the inner max over v is
/// attained by v = conj(Gamma) / ||Gamma|| (Cauchy-Schwarz).
inline double oracle_msinr(const ChannelSet& c, double alpha, const OracleSettings& o)
{
    const UserChannel& bob = c.desired.front();
    auto f = [&](const CVector& th) { return alpha * (bob.cascade * th).squaredNorm() / c.noise_power; };
    return oracle::brute_force_phase_search(c.stacked(), f, {o.phase_points, 0, o.seed}).value;
}

inline double oracle_mslnr(const ChannelSet& c, double alpha, const OracleSettings& o)
{
    auto f = [&](const CVector& th) {
        auto g = [&](const CVector& v) { return slnr(v, th, c, alpha, c.noise_power); };
        return oracle::random_search_unit_vectors(g, c.antennas, o.vector_samples, o.seed).value;
    };
    return oracle::brute_force_phase_search(c.stacked(), f, {o.joint_phase_points, 0, o.seed}).value;
}

/// Raw secrecy rate maximized over theta and the stacked split (v', w') with
/// ||v'||^2 + ||w'||^2 = 1.
inline double oracle_msr(const ChannelSet& c, const OracleSettings& o)
{
    const Eigen::Index n = c.antennas;
    auto f = [&](const CVector& th) {
        auto g = [&](const CVector& x) {
            BeamformerState s;
            const double pv = x.head(n).squaredNorm();
            const double pw = x.tail(n).squaredNorm();
            s.v = pv > 0.0 ? CVector(x.head(n) / std::sqrt(pv)) : CVector(CVector::Unit(n, 0));
            s.w = pw > 0.0 ? CVector(x.tail(n) / std::sqrt(pw)) : CVector(CVector::Unit(n, 0));
            s.alpha = pv;
            s.theta = th;
            return secrecy_rate_raw(s, c);
        };
        return oracle::random_search_unit_vectors(g, 2 * static_cast<int>(n), o.vector_samples, o.seed).value;
    };
    return oracle::brute_force_phase_search(c.stacked(), f, {o.joint_phase_points, 0, o.seed}).value;
}

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst_ratio = 0.0;  // min over cases of scheme objective / oracle objective
    double threshold = 0.0;
    int cases = 0;
};

/// Runs `cases` seeded tiny instances. Scheme objectives: SINR (MSINR), SLNR
/// (MSLNR), raw secrecy rate (MSR).
inline std::vector<CheckResult> run_oracle_suite(int cases = 20, const OracleSettings& o = {})
{
    CheckResult msinr{"msinr vs phase-grid oracle", true, 1e300, 0.99, cases};
    CheckResult mslnr{"mslnr vs phase-grid x random-direction oracle", true, 1e300, 0.95, cases};
    CheckResult msr{"msr vs phase-grid x random-split oracle", true, 1e300, 0.95, cases};
    for (int i = 0; i < cases; ++i) {
        const std::uint64_t seed = 100 + static_cast<std::uint64_t>(i);
        const ScenarioConfig s = tiny_scenario(seed);
        const ChannelSet c = build_channels(s);

        MsinrOptions a;
        a.seed = seed;
        const SchemeResult ra = run_msinr(c, s.alpha, a);
        const double signal = s.alpha * std::norm(transpose_dot(ra.state.v, build_cascade(c.desired.front(), ra.state.theta))) /
                              c.noise_power;
        msinr.worst_ratio = std::min(msinr.worst_ratio, signal / oracle_msinr(c, s.alpha, o));

        MslnrOptions b;
        b.seed = seed;
        const SchemeResult rb = run_mslnr(c, s.alpha, b);
        mslnr.worst_ratio = std::min(mslnr.worst_ratio, rb.objective / oracle_mslnr(c, s.alpha, o));

        MsrOptions m;
        m.seed = seed;
        const SchemeResult rm = run_msr(c, s.alpha, m);
        msr.worst_ratio = std::min(msr.worst_ratio, rm.objective / oracle_msr(c, o));
    }
    for (auto* r : {&msinr, &mslnr, &msr}) r->pass = r->worst_ratio >= r->threshold;
    return {msinr, mslnr, msr};
}

} // namespace spwt::verify
