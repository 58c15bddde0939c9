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
#include "spwt/types.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>

namespace spwt {

/// Maximum-ratio transmit beamformer conj(Gamma) / ||Gamma||.
inline CVector optimal_v(const CVector& gamma)
{
    const double nrm = gamma.norm();
    if (nrm == 0.0) {
        throw DegenerateError("optimal_v: cascaded channel is zero");
    }
    return gamma.conjugate() / nrm;
}

/// Orthogonal projector onto the complement of conj(Gamma); w = P z satisfies w^T Gamma = 0.
inline CMatrix null_space_projector(const CVector& gamma)
{
    const double nrm2 = gamma.squaredNorm();
    if (nrm2 == 0.0) {
        throw DegenerateError("null_space_projector: cascaded channel is zero");
    }
    const CVector g = gamma.conjugate();
    return CMatrix::Identity(gamma.size(), gamma.size()) - g * g.adjoint() / nrm2;
}

/// Unit-norm artificial-noise vector in the null space of Gamma, steered by the
/// random draw z ~ CN(0, I).
inline CVector optimal_w(const CVector& gamma, const CVector& z)
{
    if (gamma.size() < 2) {
        throw DegenerateError("optimal_w: a single antenna has no null space");
    }
    if (z.size() != gamma.size()) {
        throw DegenerateError("optimal_w: random draw has the wrong length");
    }
    const CVector w = null_space_projector(gamma) * z;
    const double nrm = w.norm();
    if (nrm <= 1e-12 * z.norm()) {
        throw DegenerateError("optimal_w: random draw is parallel to the channel");
    }
    return w / nrm;
}

/// Per-IRS closed-form phase alignment: phi_{k,m} = phi0 - arg([v^T B_k]_m),
/// which makes every term of sum_k v^T B_k Theta_k co-phased.
inline CVector phase_update(const CVector& v, const UserChannel& u, int irs_count, int elements,
                            double reference_phase = 0.0)
{
    CVector theta(static_cast<Eigen::Index>(irs_count) * elements);
    const Eigen::RowVectorXcd row = v.transpose() * u.cascade;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        const double gamma = std::abs(row(i)) > 0.0 ? std::arg(row(i)) : 0.0;
        theta(i) = std::polar(1.0, reference_phase - gamma);
    }
    return theta;
}

struct MsinrOptions {
    double tolerance = 1e-6;   // relative SINR change
    int max_iterations = 100;
    std::uint64_t seed = 1;
    double reference_phase = 0.0;
    std::optional<CVector> initial_theta;
};

/// Alternating closed-form optimization of v and Theta for one desired user.
/// trace[i] is the AN-free SINR after i iterations.
inline SchemeResult run_msinr(const ChannelSet& c, double alpha, const MsinrOptions& opt = {}, int user = 0)
{
    const auto start = std::chrono::steady_clock::now();
    if (user < 0 || user >= static_cast<int>(c.desired.size())) {
        throw DegenerateError("run_msinr: desired user index out of range");
    }
    const UserChannel& bob = c.desired[static_cast<std::size_t>(user)];
    Rng rng(opt.seed);

    SchemeResult res;
    res.scheme = "msinr";
    CVector theta = opt.initial_theta ? *opt.initial_theta : random_phases(c.stacked(), rng);
    if (theta.size() != c.stacked()) {
        throw DegenerateError("run_msinr: initial phase vector has the wrong length");
    }
    auto signal_sinr = [&](const CVector& v, const CVector& th) {
        return alpha * std::norm(transpose_dot(v, build_cascade(bob, th))) / c.noise_power;
    };

    CVector v = optimal_v(build_cascade(bob, theta));
    double prev = signal_sinr(v, theta);
    res.trace.push_back(prev);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        theta = phase_update(v, bob, c.irs_count, c.elements, opt.reference_phase);
        v = optimal_v(build_cascade(bob, theta));
        const double cur = signal_sinr(v, theta);
        res.trace.push_back(cur);
        res.iterations = it;
        const bool done = cur == prev || std::abs(cur - prev) <= opt.tolerance * std::abs(cur);
        prev = cur;
        if (done) {
            res.converged = true;
            break;
        }
    }
    res.flagged = !res.converged;

    res.state.v = v;
    res.state.theta = theta;
    res.state.alpha = alpha;
    res.state.w = optimal_w(build_cascade(bob, theta), complex_gaussian(c.antennas, rng));
    res.objective = sinr(res.state, bob, c.noise_power);
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace spwt
