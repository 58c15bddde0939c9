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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

namespace spwt {

/// Columns are the cascaded channels Gamma_u of the given users.
inline CMatrix stacked_channels(const std::vector<UserChannel>& users, const CVector& theta, Eigen::Index antennas)
{
    CMatrix h(antennas, static_cast<Eigen::Index>(users.size()));
    for (std::size_t i = 0; i < users.size(); ++i) {
        h.col(static_cast<Eigen::Index>(i)) = build_cascade(users[i], theta);
    }
    return h;
}

struct EigenBeamformer {
    CVector v;
    double slnr = 0.0;  // equals the largest generalized eigenvalue
};

/// SLNR-optimal beamformer for fixed phases and given stacked channels:
/// principal generalized eigenvector of (H_B H_B^H, H_E H_E^H + sigma^2/alpha I),
/// conjugated because the channel enters as v^T Gamma.
inline EigenBeamformer optimal_v_eigen(const CMatrix& h_desired, const CMatrix& h_eaves, double alpha,
                                       double noise_power)
{
    if (!(alpha > 0.0)) {
        throw DegenerateError("optimal_v_eigen: alpha must be positive");
    }
    const Eigen::Index n = h_desired.rows();
    const CMatrix a = h_desired * h_desired.adjoint();
    CMatrix b = (noise_power / alpha) * CMatrix::Identity(n, n);
    if (h_eaves.cols() > 0) b += h_eaves * h_eaves.adjoint();
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(a, b);
    if (ges.info() != Eigen::Success) {
        throw SolverError("optimal_v_eigen: generalized eigensolver failed");
    }
    const CVector x = ges.eigenvectors().col(n - 1);
    return {x.conjugate() / x.norm(), ges.eigenvalues()(n - 1)};
}

inline EigenBeamformer optimal_v_eigen(const CVector& theta, const ChannelSet& c, double alpha, double noise_power)
{
    return optimal_v_eigen(stacked_channels(c.desired, theta, c.antennas),
                           stacked_channels(c.eavesdroppers, theta, c.antennas), alpha, noise_power);
}

/// Closed-form pieces of the SLNR as a function of one phase phi:
///   SLNR(phi) = (xb + 2 rb cos phi - 2 ib sin phi) / (xe + 2 re cos phi - 2 ie sin phi).
struct CoordinateUpdateTerms {
    double xb = 0.0;
    double xe = 0.0;
    double rb = 0.0;
    double ib = 0.0;
    double re = 0.0;
    double ie = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;
    double phi_y = 0.0;

    double slnr_at(double phi) const
    {
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        return (xb + 2.0 * rb * c - 2.0 * ib * s) / (xe + 2.0 * re * c - 2.0 * ie * s);
    }

    /// d SLNR / d phi.
    double derivative_at(double phi) const
    {
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const double den = xe + 2.0 * re * c - 2.0 * ie * s;
        return (2.0 * y1 * s + 2.0 * y2 * c + 4.0 * rb * ie - 4.0 * re * ib) / (den * den);
    }
};

/// Coordinate-wise SLNR ascent over the stacked phase vector. Keeps the running
/// sums O_u Theta so that one update costs O(P + Q).
class SlnrCoordinateSweep {
public:
    SlnrCoordinateSweep(std::vector<Eigen::RowVectorXcd> desired_rows, std::vector<Eigen::RowVectorXcd> eaves_rows,
                        CVector theta, double noise_power)
        : desired_(std::move(desired_rows)), eaves_(std::move(eaves_rows)), theta_(std::move(theta)),
          noise_(noise_power)
    {
        refresh();
    }

    const CVector& theta() const { return theta_; }

    void refresh()
    {
        sums_desired_.clear();
        sums_eaves_.clear();
        for (const auto& o : desired_) sums_desired_.push_back((o * theta_).value());
        for (const auto& o : eaves_) sums_eaves_.push_back((o * theta_).value());
    }

    double slnr() const
    {
        double s = 0.0;
        for (const auto& x : sums_desired_) s += std::norm(x);
        double l = 0.0;
        for (const auto& x : sums_eaves_) l += std::norm(x);
        return s / (l + noise_);
    }

    CoordinateUpdateTerms terms(Eigen::Index i) const
    {
        CoordinateUpdateTerms t;
        const cplx th = theta_(i);
        for (std::size_t p = 0; p < desired_.size(); ++p) {
            const cplx a = desired_[p](i);
            const cplx b = sums_desired_[p] - a * th;
            const cplx ab = a * std::conj(b);
            t.xb += std::norm(a) + std::norm(b);
            t.rb += ab.real();
            t.ib += ab.imag();
        }
        for (std::size_t q = 0; q < eaves_.size(); ++q) {
            const cplx a = eaves_[q](i);
            const cplx b = sums_eaves_[q] - a * th;
            const cplx ab = a * std::conj(b);
            t.xe += std::norm(a) + std::norm(b);
            t.re += ab.real();
            t.ie += ab.imag();
        }
        t.xe += noise_;
        t.y1 = t.xb * t.re - t.xe * t.rb;
        t.y2 = t.xb * t.ie - t.xe * t.ib;
        t.phi_y = std::atan2(t.y2, t.y1);
        return t;
    }

    /// Moves phase i to the better of the two stationary points (or keeps it).
    /// Returns true when the phase changed.
    bool update(Eigen::Index i)
    {
        const CoordinateUpdateTerms t = terms(i);
        const double rho = std::hypot(t.y1, t.y2);
        if (!(rho > 1e-300) || rho <= 1e-15 * t.xb * t.xe) return false;
        const double current = std::arg(theta_(i));
        const double s = std::clamp(2.0 * (t.re * t.ib - t.rb * t.ie) / rho, -1.0, 1.0);
        const double root = std::asin(s);
        double best_phi = current;
        double best = t.slnr_at(current);
        for (double phi : {root - t.phi_y, kPi - root - t.phi_y}) {
            const double val = t.slnr_at(phi);
            if (val > best) {
                best = val;
                best_phi = phi;
            }
        }
        if (best_phi == current) return false;
        set_phase(i, best_phi);
        return true;
    }

    void set_phase(Eigen::Index i, double phi)
    {
        const cplx next = std::polar(1.0, phi);
        const cplx delta = next - theta_(i);
        for (std::size_t p = 0; p < desired_.size(); ++p) sums_desired_[p] += desired_[p](i) * delta;
        for (std::size_t q = 0; q < eaves_.size(); ++q) sums_eaves_[q] += eaves_[q](i) * delta;
        theta_(i) = next;
    }

    /// One pass over all coordinates in `order` (natural order when empty).
    double sweep(const std::vector<Eigen::Index>& order = {})
    {
        refresh();
        if (order.empty()) {
            for (Eigen::Index i = 0; i < theta_.size(); ++i) update(i);
        } else {
            for (Eigen::Index i : order) update(i);
        }
        return slnr();
    }

private:
    std::vector<Eigen::RowVectorXcd> desired_;
    std::vector<Eigen::RowVectorXcd> eaves_;
    CVector theta_;
    double noise_;
    std::vector<cplx> sums_desired_;
    std::vector<cplx> sums_eaves_;
};

/// SLNR composite rows sqrt(alpha) v^T B_u for every user of a group.
inline std::vector<Eigen::RowVectorXcd> slnr_rows(const std::vector<UserChannel>& users, const CVector& v, double alpha)
{
    std::vector<Eigen::RowVectorXcd> rows;
    for (const auto& u : users) rows.push_back(std::sqrt(alpha) * v.transpose() * u.cascade);
    return rows;
}

/// Single-coordinate update of phase index (k, m) with all other phases fixed.
inline double phi_coordinate_update(int k, int m, const CVector& theta, const ChannelSet& c, const CVector& v,
                                    double alpha)
{
    SlnrCoordinateSweep sweep(slnr_rows(c.desired, v, alpha), slnr_rows(c.eavesdroppers, v, alpha), theta,
                              c.noise_power);
    const Eigen::Index i = static_cast<Eigen::Index>(k) * c.elements + m;
    sweep.update(i);
    return std::arg(sweep.theta()(i));
}

struct NullProjection {
    CVector w;
    bool rank_deficient = false;
};

/// Unit AN vector with w^T H = 0 for every column of H, steered by z ~ CN(0, I).
inline NullProjection an_null_projector(const CMatrix& h, const CVector& z, double rank_tolerance = 1e-10)
{
    const Eigen::Index n = h.rows();
    if (h.cols() > n) {
        throw DegenerateError("an_null_projector: more desired users than antennas");
    }
    NullProjection out;
    CMatrix proj = CMatrix::Identity(n, n);
    if (h.cols() > 0) {
        Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU);
        const RVector& sv = svd.singularValues();
        const double top = sv.size() > 0 ? sv(0) : 0.0;
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > rank_tolerance * top) ++rank;
        }
        out.rank_deficient = rank < h.cols();
        const CMatrix u = svd.matrixU().leftCols(rank);
        proj -= u * u.adjoint();
    }
    const CVector w = proj.conjugate() * z;
    const double nrm = w.norm();
    if (nrm <= 1e-12 * z.norm()) {
        throw DegenerateError("an_null_projector: random draw has no component in the null space");
    }
    out.w = w / nrm;
    return out;
}

struct MslnrOptions {
    double tolerance = 1e-6;   // relative SLNR change, both loops
    int max_iterations = 50;   // outer (beamformer) iterations
    int max_sweeps = 100;      // coordinate sweeps per outer iteration
    std::uint64_t seed = 1;
    std::vector<Eigen::Index> sweep_order;  // empty: row-major, IRS by IRS
};

/// Alternates coordinate-wise phase sweeps with the eigen-solve for v; the AN
/// vector is projected onto the null space of all desired users at the end.
/// trace[i] is the SLNR after i outer iterations.
inline SchemeResult run_mslnr(const ChannelSet& c, double alpha, const MslnrOptions& opt = {})
{
    const auto start = std::chrono::steady_clock::now();
    if (c.desired.empty()) {
        throw DegenerateError("run_mslnr: needs at least one desired user");
    }
    if (!(alpha > 0.0)) {
        throw DegenerateError("run_mslnr: alpha must be positive");
    }
    Rng rng(opt.seed);
    CVector v = random_unit_vector(c.antennas, rng);
    CVector theta = random_phases(c.stacked(), rng);

    SchemeResult res;
    res.scheme = "mslnr";
    double prev = slnr(v, theta, c, alpha, c.noise_power);
    res.trace.push_back(prev);
    auto settled = [&](double cur, double old) {
        return cur == old || std::abs(cur - old) <= opt.tolerance * std::abs(cur);
    };
    for (int it = 1; it <= opt.max_iterations; ++it) {
        SlnrCoordinateSweep sweep(slnr_rows(c.desired, v, alpha), slnr_rows(c.eavesdroppers, v, alpha), theta,
                                  c.noise_power);
        double inner = sweep.slnr();
        for (int s = 0; s < opt.max_sweeps; ++s) {
            const double next = sweep.sweep(opt.sweep_order);
            const bool done = settled(next, inner);
            inner = next;
            if (done) break;
        }
        theta = sweep.theta();
        const EigenBeamformer eb = optimal_v_eigen(theta, c, alpha, c.noise_power);
        v = eb.v;
        const double cur = slnr(v, theta, c, alpha, c.noise_power);
        res.trace.push_back(cur);
        res.iterations = it;
        const bool done = settled(cur, prev);
        prev = cur;
        if (done) {
            res.converged = true;
            break;
        }
    }

    const NullProjection an = an_null_projector(stacked_channels(c.desired, theta, c.antennas),
                                                complex_gaussian(c.antennas, rng));
    res.flagged = !res.converged || an.rank_deficient;
    res.state.v = v;
    res.state.w = an.w;
    res.state.theta = theta;
    res.state.alpha = alpha;
    res.objective = prev;
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace spwt
