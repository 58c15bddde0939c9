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
#include "spwt/convex_core.hpp"
#include "spwt/metrics.hpp"
#include "spwt/msinr.hpp"
#include "spwt/types.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace spwt {

struct MsrOptions {
    double tolerance = 1e-4;        // outer loop, absolute SR change in bits/s/Hz
    int max_iterations = 30;
    double stage_tolerance = 1e-4;  // SCA re-linearization loop inside each stage
    int max_stage_iterations = 10;
    int randomization_count = 200;
    bool random_init = false;       // false: warm start from the MSINR closed form toward desired user 0
    std::uint64_t seed = 1;
    convex::SolverOptions solver;
};

/// Secrecy rate in bits/s/Hz for power-scaled v' and w' (||v'||^2 + ||w'||^2 = 1).
inline double scaled_secrecy_rate(const std::vector<CVector>& desired_gamma, const std::vector<CVector>& eaves_gamma,
                                  const CVector& v_scaled, const CVector& w_scaled, double noise_power)
{
    auto s = [&](const CVector& g) {
        return std::norm(transpose_dot(v_scaled, g)) / (std::norm(transpose_dot(w_scaled, g)) + noise_power);
    };
    std::vector<double> bob;
    std::vector<double> eve;
    for (const auto& g : desired_gamma) bob.push_back(s(g));
    for (const auto& g : eaves_gamma) eve.push_back(s(g));
    return secrecy_rate_from_sinr(bob, eve);
}

inline double scaled_secrecy_rate(const ChannelSet& c, const CVector& v_scaled, const CVector& w_scaled,
                                  const CVector& theta)
{
    std::vector<CVector> bob;
    std::vector<CVector> eve;
    for (const auto& u : c.desired) bob.push_back(build_cascade(u, theta));
    for (const auto& u : c.eavesdroppers) eve.push_back(build_cascade(u, theta));
    return scaled_secrecy_rate(bob, eve, v_scaled, w_scaled, c.noise_power);
}

/// Lifted beamformer subproblem for fixed cascaded channels. Block 0 is
/// R_v = v' v'^H, block 1 is R_w = w' w'^H, so |v'^T Gamma|^2 = a^H R_v a with a = conj(Gamma).
inline convex::MaxMinProblem beamformer_problem(const std::vector<CVector>& desired_gamma,
                                                const std::vector<CVector>& eaves_gamma, double noise_power)
{
    convex::MaxMinProblem p;
    p.dimension = desired_gamma.empty() ? 0 : static_cast<int>(desired_gamma.front().size());
    p.blocks = 2;
    p.feasible = convex::Feasible::TraceBudget;
    p.budget = 1.0;
    for (const auto& g : desired_gamma) {
        const CVector a = g.conjugate();
        convex::LogTerm t;
        t.gain.add(0, a);
        t.gain.add(1, a);
        t.gain.offset = noise_power;
        t.linearized.add(1, a);
        t.linearized.offset = noise_power;
        p.first.push_back(std::move(t));
    }
    for (const auto& g : eaves_gamma) {
        const CVector a = g.conjugate();
        convex::LogTerm t;
        t.gain.add(1, a);
        t.gain.offset = noise_power;
        t.linearized.add(0, a);
        t.linearized.add(1, a);
        t.linearized.offset = noise_power;
        p.second.push_back(std::move(t));
    }
    return p;
}

/// Lifted phase subproblem for fixed v', w'. The single block is R_Theta = Theta Theta^H.
inline convex::MaxMinProblem theta_problem(const ChannelSet& c, const CVector& v_scaled, const CVector& w_scaled)
{
    convex::MaxMinProblem p;
    p.dimension = c.stacked();
    p.blocks = 1;
    p.feasible = convex::Feasible::UnitDiagonal;
    for (const auto& u : c.desired) {
        const CompositeRows rows = composite_rows(u, v_scaled, w_scaled);
        convex::LogTerm t;
        t.gain.add(0, rows.signal.adjoint());
        t.gain.add(0, rows.an.adjoint());
        t.gain.offset = c.noise_power;
        t.linearized.add(0, rows.an.adjoint());
        t.linearized.offset = c.noise_power;
        p.first.push_back(std::move(t));
    }
    for (const auto& u : c.eavesdroppers) {
        const CompositeRows rows = composite_rows(u, v_scaled, w_scaled);
        convex::LogTerm t;
        t.gain.add(0, rows.an.adjoint());
        t.gain.offset = c.noise_power;
        t.linearized.add(0, rows.signal.adjoint());
        t.linearized.add(0, rows.an.adjoint());
        t.linearized.offset = c.noise_power;
        p.second.push_back(std::move(t));
    }
    return p;
}

struct BeamformerStageResult {
    CVector v_scaled;
    CVector w_scaled;
    double secrecy_rate = 0.0;  // bits/s/Hz, raw
    int iterations = 0;
    bool flagged = false;
};

/// SCA over the lifted (v', w') problem with Theta fixed; every re-linearization
/// is followed by Gaussian randomization. The incumbent is always a candidate,
/// so the secrecy rate never decreases.
inline BeamformerStageResult beamformer_stage(const ChannelSet& c, const CVector& theta, const CVector& v_init,
                                              const CVector& w_init, const MsrOptions& opt, Rng& rng)
{
    std::vector<CVector> bob;
    std::vector<CVector> eve;
    for (const auto& u : c.desired) bob.push_back(build_cascade(u, theta));
    for (const auto& u : c.eavesdroppers) eve.push_back(build_cascade(u, theta));
    const Eigen::Index n = c.antennas;

    BeamformerStageResult res{v_init, w_init, scaled_secrecy_rate(bob, eve, v_init, w_init, c.noise_power), 0, false};
    convex::MaxMinProblem problem = beamformer_problem(bob, eve, c.noise_power);
    auto split_rate = [&](const CVector& x) {
        return scaled_secrecy_rate(bob, eve, x.head(n), x.tail(n), c.noise_power);
    };
    auto normalize = [](const CVector& x) -> CVector {
        const double nrm = x.norm();
        return nrm > 0.0 ? CVector(x / nrm) : x;
    };

    for (int it = 1; it <= opt.max_stage_iterations; ++it) {
        const std::vector<CMatrix> start{res.v_scaled * res.v_scaled.adjoint(), res.w_scaled * res.w_scaled.adjoint()};
        convex::apply_anchors(problem, convex::taylor_anchor(problem, start));
        const convex::SolveResult sol = convex::solve_maxmin_subproblem(problem, start, opt.solver);
        res.flagged = res.flagged || sol.stalled;

        CMatrix lifted = CMatrix::Zero(2 * n, 2 * n);
        lifted.topLeftCorner(n, n) = sol.blocks[0];
        lifted.bottomRightCorner(n, n) = sol.blocks[1];

        std::vector<CVector> extra;
        CVector incumbent(2 * n);
        incumbent << res.v_scaled, res.w_scaled;
        extra.push_back(incumbent);
        CVector principal(2 * n);
        for (int b = 0; b < 2; ++b) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(sol.blocks[static_cast<std::size_t>(b)]);
            const double lam = std::max(0.0, es.eigenvalues()(n - 1));
            principal.segment(b * n, n) = std::sqrt(lam) * es.eigenvectors().col(n - 1);
        }
        extra.push_back(principal);

        const auto pick = convex::gaussian_randomization(lifted, split_rate, opt.randomization_count, rng, normalize, extra);
        const double gain = pick.objective - res.secrecy_rate;
        res.iterations = it;
        if (pick.objective > res.secrecy_rate) {
            res.v_scaled = pick.best.head(n);
            res.w_scaled = pick.best.tail(n);
            res.secrecy_rate = pick.objective;
        }
        if (gain < opt.stage_tolerance) break;
    }
    return res;
}

struct ThetaStageResult {
    CVector theta;
    double secrecy_rate = 0.0;
    int iterations = 0;
    bool flagged = false;
};

/// SCA over the lifted phase problem with v', w' fixed; randomized candidates
/// are projected entry-wise onto the unit circle.
inline ThetaStageResult theta_stage(const ChannelSet& c, const CVector& v_scaled, const CVector& w_scaled,
                                    const CVector& theta_init, const MsrOptions& opt, Rng& rng)
{
    ThetaStageResult res{theta_init, scaled_secrecy_rate(c, v_scaled, w_scaled, theta_init), 0, false};
    convex::MaxMinProblem problem = theta_problem(c, v_scaled, w_scaled);
    auto rate = [&](const CVector& th) { return scaled_secrecy_rate(c, v_scaled, w_scaled, th); };
    auto project = [](const CVector& x) -> CVector { return unit_modulus(x); };

    for (int it = 1; it <= opt.max_stage_iterations; ++it) {
        const std::vector<CMatrix> start{res.theta * res.theta.adjoint()};
        convex::apply_anchors(problem, convex::taylor_anchor(problem, start));
        convex::SolverOptions sopt = opt.solver;
        sopt.seed = opt.solver.seed + static_cast<std::uint64_t>(it);
        const convex::SolveResult sol = convex::solve_maxmin_subproblem(problem, start, sopt);
        res.flagged = res.flagged || sol.stalled;

        const auto pick = convex::gaussian_randomization(sol.blocks[0], rate, opt.randomization_count, rng, project,
                                                         std::vector<CVector>{res.theta});
        const double gain = pick.objective - res.secrecy_rate;
        res.iterations = it;
        if (pick.objective > res.secrecy_rate) {
            res.theta = pick.best;
            res.secrecy_rate = pick.objective;
        }
        if (gain < opt.stage_tolerance) break;
    }
    return res;
}

/// Alternates the beamformer and phase stages until the secrecy rate settles.
/// trace[i] is the raw secrecy rate (bits/s/Hz) after i outer iterations.
inline SchemeResult run_msr(const ChannelSet& c, double alpha, const MsrOptions& opt = {})
{
    const auto start = std::chrono::steady_clock::now();
    if (c.desired.empty() || c.eavesdroppers.empty()) {
        throw DegenerateError("run_msr: needs at least one desired user and one eavesdropper");
    }
    Rng rng(opt.seed);
    const Eigen::Index n = c.antennas;

    CVector theta = random_phases(c.stacked(), rng);
    CVector v_scaled;
    CVector w_scaled;
    if (opt.random_init) {
        const CVector x = random_unit_vector(2 * n, rng);
        v_scaled = x.head(n);
        w_scaled = x.tail(n);
    } else {
        const CVector g = build_cascade(c.desired.front(), theta);
        v_scaled = std::sqrt(alpha) * optimal_v(g);
        w_scaled = n > 1 ? CVector(std::sqrt(1.0 - alpha) * optimal_w(g, complex_gaussian(n, rng))) : CVector::Zero(n);
    }

    SchemeResult res;
    res.scheme = "msr";
    double prev = scaled_secrecy_rate(c, v_scaled, w_scaled, theta);
    res.trace.push_back(prev);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        const BeamformerStageResult bf = beamformer_stage(c, theta, v_scaled, w_scaled, opt, rng);
        v_scaled = bf.v_scaled;
        w_scaled = bf.w_scaled;
        const ThetaStageResult ts = theta_stage(c, v_scaled, w_scaled, theta, opt, rng);
        theta = ts.theta;
        const double cur = ts.secrecy_rate;
        res.trace.push_back(cur);
        res.iterations = it;
        const bool done = std::abs(cur - prev) < opt.tolerance;
        prev = cur;
        if (done) {
            res.converged = true;
            break;
        }
    }
    res.flagged = !res.converged;

    const double pv = v_scaled.squaredNorm();
    const double pw = w_scaled.squaredNorm();
    res.state.theta = theta;
    res.state.alpha = pv / (pv + pw);
    res.state.v = pv > 0.0 ? CVector(v_scaled / std::sqrt(pv)) : optimal_v(build_cascade(c.desired.front(), theta));
    res.state.w = pw > 0.0 ? CVector(w_scaled / std::sqrt(pw)) : random_unit_vector(n, rng);
    res.objective = secrecy_rate_raw(res.state, c);
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace spwt
