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
#include "spwt/scenario.hpp"
#include "spwt/types.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace spwt {

/// Random subcarrier selection: transmit element n radiates on
/// f_n = f_c + index[n] * spacing. Elements are ordered row-major by (n_r, n_c).
struct SubcarrierAllocation {
    double carrier = 0.0;
    double spacing = 0.0;
    int count = 1;
    std::vector<int> index;

    int size() const { return static_cast<int>(index.size()); }
    double frequency(int n) const { return carrier + index[static_cast<std::size_t>(n)] * spacing; }
};

/// Uniform i.i.d. subcarrier indices in {0, ..., subcarriers-1}, drawn with
/// replacement from the given seed.
inline SubcarrierAllocation allocate_subcarriers(int antennas, int subcarriers, std::uint64_t seed,
                                                 double carrier, double bandwidth)
{
    if (antennas < 1 || subcarriers < 1) {
        throw ConfigError("allocate_subcarriers: antenna and subcarrier counts must be >= 1");
    }
    if (!(bandwidth < carrier / 100.0)) {
        throw ConfigError("allocate_subcarriers: bandwidth must stay below carrier/100");
    }
    SubcarrierAllocation alloc;
    alloc.carrier = carrier;
    alloc.count = subcarriers;
    alloc.spacing = bandwidth / subcarriers;
    alloc.index.resize(static_cast<std::size_t>(antennas));
    Rng rng(seed);
    std::uniform_int_distribution<int> pick(0, subcarriers - 1);
    for (auto& i : alloc.index) {
        i = pick(rng);
    }
    return alloc;
}

inline SubcarrierAllocation allocate_subcarriers(const ScenarioConfig& s)
{
    return allocate_subcarriers(s.antennas(), s.subcarriers, s.seed, s.carrier, s.bandwidth);
}

/// Normalized transmit steering vector toward `target`, relative to the
/// reference element radiating at f_c.
inline CVector alice_steering(const SubcarrierAllocation& alloc, const AngleSet& target, int rows, int cols,
                              double spacing, double speed_of_light)
{
    const int n_total = rows * cols;
    if (alloc.size() != n_total) {
        throw ConfigError("alice_steering: allocation size does not match the array");
    }
    const ConeAngles cone = cone_angles_alice(target);
    const double cb = std::cos(cone.beta);
    const double cg = std::cos(cone.gamma);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_total));
    CVector h(n_total);
    for (int nr = 0; nr < rows; ++nr) {
        for (int nc = 0; nc < cols; ++nc) {
            const int n = nr * cols + nc;
            const double f = alloc.frequency(n);
            const double path = nr * spacing * cb - nc * spacing * cg;
            const double psi = kTwoPi * ((f - alloc.carrier) * target.range + f * path) / speed_of_light;
            h(n) = std::polar(scale, psi);
        }
    }
    return h;
}

/// M x N reflection steering matrix; column n is the IRS steering vector at
/// f_n. `incident` holds the Alice->IRS angles, `departure` the IRS->user angles.
inline CMatrix irs_steering_matrix(const IrsPlacement& irs, const AngleSet& incident, const AngleSet& departure,
                                   const SubcarrierAllocation& alloc, double speed_of_light)
{
    const ConeAngles cone = cone_angles_irs(departure, irs.placement_angle);
    const double cb = std::cos(cone.beta);
    const double cg = std::cos(cone.gamma);
    const double d = irs.element_spacing;
    const double incident_col = std::cos(incident.pitch) * std::cos(incident.azimuth - irs.placement_angle);
    const double incident_row = std::sin(incident.pitch);
    CMatrix h(irs.elements(), alloc.size());
    for (int n = 0; n < alloc.size(); ++n) {
        const double k = kTwoPi * alloc.frequency(n) / speed_of_light;
        for (int mr = 0; mr < irs.rows; ++mr) {
            for (int mc = 0; mc < irs.cols; ++mc) {
                const double delta_r = mc * d * incident_col - mr * d * incident_row;
                const double path = departure.range + delta_r - mr * d * cb + mc * d * cg;
                h(mr * irs.cols + mc, n) = std::polar(1.0, k * path);
            }
        }
    }
    return h;
}

inline double path_loss(double r_alice_irs, double r_irs_user, double c0)
{
    const double total = r_alice_irs + r_irs_user;
    return c0 / (total * total);
}

/// Everything one receiver location sees through the K reflection paths.
struct UserChannel {
    Position3D position;
    std::vector<double> path_loss;   // rho_k
    std::vector<CMatrix> irs_matrix; // H_k, M x N
    CMatrix cascade;                 // N x KM, block k = Upsilon_k * Omega_k * H_k^H
    bool degenerate = false;         // some IRS sits directly above the user
};

struct ChannelSet {
    int antennas = 0;
    int irs_count = 0;
    int elements = 0;
    double transmit_power = 1.0;
    double noise_power = 1.0;
    SubcarrierAllocation alloc;
    std::vector<CVector> alice_to_irs;  // h_{A_k}
    std::vector<UserChannel> desired;
    std::vector<UserChannel> eavesdroppers;

    int stacked() const { return irs_count * elements; }
};

/// Alice's steering vectors toward every IRS.
inline std::vector<CVector> alice_to_irs_steering(const ScenarioConfig& s, const SubcarrierAllocation& alloc)
{
    std::vector<CVector> out;
    out.reserve(s.irs.size());
    for (const auto& irs : s.irs) {
        out.push_back(alice_steering(alloc, angles_from_alice(irs.position), s.alice_rows, s.alice_cols,
                                     s.resolved_alice_spacing(), s.speed_of_light));
    }
    return out;
}

inline UserChannel build_user_channel(const ScenarioConfig& s, const SubcarrierAllocation& alloc,
                                      const std::vector<CVector>& alice_to_irs, const Position3D& position)
{
    const int n = s.antennas();
    const int m = s.irs_elements();
    const int k_count = static_cast<int>(s.irs.size());
    UserChannel u;
    u.position = position;
    u.cascade.resize(n, static_cast<Eigen::Index>(k_count) * m);
    for (int k = 0; k < k_count; ++k) {
        const auto& irs = s.irs[static_cast<std::size_t>(k)];
        const AngleSet incident = angles_from_alice(irs.position);
        const AngleSet departure = angles_from_irs(irs, position);
        u.degenerate = u.degenerate || departure.degenerate;
        const double rho = path_loss(incident.range, departure.range, s.path_loss_constant);
        CMatrix h = irs_steering_matrix(irs, incident, departure, alloc, s.speed_of_light);
        const double upsilon = rho * std::sqrt(s.transmit_power);
        // Upsilon * diag(conj(h_A)) * H^H
        u.cascade.middleCols(static_cast<Eigen::Index>(k) * m, m) =
            upsilon * alice_to_irs[static_cast<std::size_t>(k)].conjugate().asDiagonal() * h.adjoint();
        u.path_loss.push_back(rho);
        u.irs_matrix.push_back(std::move(h));
    }
    return u;
}

inline ChannelSet build_channels(const ScenarioConfig& s, const SubcarrierAllocation& alloc)
{
    validate(s);
    ChannelSet c;
    c.antennas = s.antennas();
    c.irs_count = static_cast<int>(s.irs.size());
    c.elements = s.irs_elements();
    c.transmit_power = s.transmit_power;
    c.noise_power = s.noise_power;
    c.alloc = alloc;
    c.alice_to_irs = alice_to_irs_steering(s, alloc);
    for (const auto& p : s.desired) {
        c.desired.push_back(build_user_channel(s, alloc, c.alice_to_irs, p));
    }
    for (const auto& q : s.eavesdroppers) {
        c.eavesdroppers.push_back(build_user_channel(s, alloc, c.alice_to_irs, q));
    }
    return c;
}

inline ChannelSet build_channels(const ScenarioConfig& s) { return build_channels(s, allocate_subcarriers(s)); }

/// Gamma_u = sum_k Upsilon_k Omega_k H_k^H Theta_k for the stacked phase vector.
inline CVector build_cascade(const UserChannel& u, const CVector& theta)
{
    if (theta.size() != u.cascade.cols()) {
        throw DegenerateError("build_cascade: phase vector length does not match K*M");
    }
    return u.cascade * theta;
}

/// Per-user composite rows for the stacked phase vector: signal_row * Theta is
/// the confidential-signal amplitude, an_row * Theta the AN amplitude.
struct CompositeRows {
    Eigen::RowVectorXcd signal;
    Eigen::RowVectorXcd an;
};

/// `v_scaled` and `w_scaled` already carry their power share.
inline CompositeRows composite_rows(const UserChannel& u, const CVector& v_scaled, const CVector& w_scaled)
{
    return {v_scaled.transpose() * u.cascade, w_scaled.transpose() * u.cascade};
}

inline CompositeRows composite_rows(const UserChannel& u, const CVector& v, const CVector& w, double alpha)
{
    return composite_rows(u, std::sqrt(alpha) * v, std::sqrt(1.0 - alpha) * w);
}

/// Direct (non-reflected) channel used by the direct-path baseline:
/// v^T gamma = rho_d sqrt(P_s) h_A^H v with rho_d = c0 / r^2.
inline CVector direct_path_channel(const ScenarioConfig& s, const SubcarrierAllocation& alloc,
                                   const Position3D& position)
{
    const AngleSet a = angles_from_alice(position);
    const CVector h = alice_steering(alloc, a, s.alice_rows, s.alice_cols, s.resolved_alice_spacing(),
                                     s.speed_of_light);
    const double rho = s.path_loss_constant / (a.range * a.range);
    return rho * std::sqrt(s.transmit_power) * h.conjugate();
}

} // namespace spwt
