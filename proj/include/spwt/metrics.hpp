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
#include "spwt/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace spwt {

/// Transmit beamformer v, AN vector w (both unit norm), power split alpha and
/// the stacked IRS phase vector [Theta_1; ...; Theta_K].
struct BeamformerState {
    CVector v;
    CVector w;
    CVector theta;
    double alpha = 1.0;

    CVector theta_block(int k, int elements) const { return theta.segment(static_cast<Eigen::Index>(k) * elements, elements); }
};

/// Outcome of one scheme run.
struct SchemeResult {
    std::string scheme;
    BeamformerState state;
    double objective = 0.0;      // SINR (linear), secrecy rate (bits/s/Hz) or SLNR depending on scheme
    std::vector<double> trace;   // objective after each outer iteration; trace[0] is the starting point
    int iterations = 0;
    bool converged = false;
    bool flagged = false;        // non-convergence or a degraded fallback inside the run
    double wall_ms = 0.0;
};

inline double sinr_from_gamma(const CVector& v, const CVector& w, double alpha, const CVector& gamma,
                              double noise_power)
{
    const double signal = alpha * std::norm(transpose_dot(v, gamma));
    const double an = (1.0 - alpha) * std::norm(transpose_dot(w, gamma));
    return signal / (an + noise_power);
}

inline double sinr(const BeamformerState& s, const UserChannel& u, double noise_power)
{
    return sinr_from_gamma(s.v, s.w, s.alpha, build_cascade(u, s.theta), noise_power);
}

inline double sinr(const BeamformerState& s, const ChannelSet& c, const UserChannel& u)
{
    return sinr(s, u, c.noise_power);
}

/// Worst-pair secrecy rate in bits/s/Hz from precomputed SINRs, not floored.
inline double secrecy_rate_from_sinr(const std::vector<double>& desired, const std::vector<double>& eaves)
{
    double worst_bob = std::numeric_limits<double>::infinity();
    for (double s : desired) worst_bob = std::min(worst_bob, std::log2(1.0 + s));
    double best_eve = 0.0;
    for (double s : eaves) best_eve = std::max(best_eve, std::log2(1.0 + s));
    return worst_bob - best_eve;
}

/// min over (p, q) of log2(1 + SINR_Bp) - log2(1 + SINR_Eq), not floored.
inline double secrecy_rate_raw(const BeamformerState& s, const ChannelSet& c)
{
    if (c.desired.empty()) {
        throw DegenerateError("secrecy_rate: at least one desired user is required");
    }
    std::vector<double> bob;
    std::vector<double> eve;
    for (const auto& u : c.desired) bob.push_back(sinr(s, c, u));
    for (const auto& u : c.eavesdroppers) eve.push_back(sinr(s, c, u));
    return secrecy_rate_from_sinr(bob, eve);
}

/// Reported secrecy rate: negative values are floored at zero.
inline double secrecy_rate(const BeamformerState& s, const ChannelSet& c)
{
    return std::max(0.0, secrecy_rate_raw(s, c));
}

/// Signal-to-leakage-plus-noise ratio, stacked-channel form:
/// alpha * sum_p |v^T Gamma_p|^2 / (alpha * sum_q |v^T Gamma_q|^2 + sigma^2).
inline double slnr(const CVector& v, const CVector& theta, const ChannelSet& c, double alpha, double noise_power)
{
    double signal = 0.0;
    for (const auto& u : c.desired) signal += std::norm(transpose_dot(v, build_cascade(u, theta)));
    double leak = 0.0;
    for (const auto& u : c.eavesdroppers) leak += std::norm(transpose_dot(v, build_cascade(u, theta)));
    return alpha * signal / (alpha * leak + noise_power);
}

/// Composite-row form of the SLNR: the rows already include sqrt(alpha).
inline double slnr_composite(const std::vector<Eigen::RowVectorXcd>& desired_rows,
                             const std::vector<Eigen::RowVectorXcd>& eaves_rows, const CVector& theta,
                             double noise_power)
{
    double signal = 0.0;
    for (const auto& o : desired_rows) signal += std::norm((o * theta).value());
    double leak = 0.0;
    for (const auto& o : eaves_rows) leak += std::norm((o * theta).value());
    return signal / (leak + noise_power);
}

inline double achievable_rate(double sinr_value) { return std::log2(1.0 + sinr_value); }

} // namespace spwt
