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

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace spwt;
using spwt::test::rel_diff;
using spwt::test::small_scenario;

namespace {

SlnrCoordinateSweep make_sweep(const ChannelSet& c, const CVector& v, const CVector& theta, double alpha)
{
    return SlnrCoordinateSweep(slnr_rows(c.desired, v, alpha), slnr_rows(c.eavesdroppers, v, alpha), theta,
                               c.noise_power);
}

double slnr_at_phase(SlnrCoordinateSweep sweep, Eigen::Index i, double phi)
{
    sweep.set_phase(i, phi);
    return sweep.slnr();
}

} // namespace

TEST(OptimalVEigen, LeakageFree)
{
    Rng rng(1);
    const CVector h = complex_gaussian(4, rng);
    const EigenBeamformer eb = optimal_v_eigen(CMatrix(h), CMatrix(4, 0), 0.8, 0.3);
    EXPECT_NEAR(std::abs(eb.v.dot(h.conjugate())) / h.norm(), 1.0, 1e-12);
    EXPECT_LE(rel_diff(eb.slnr, 0.8 * h.squaredNorm() / 0.3), 1e-12);
}

TEST(OptimalVEigen, EigenvalueAndRandomSearch)
{
    const ChannelSet c = build_channels(small_scenario(2));
    Rng rng(2);
    const CVector theta = random_phases(c.stacked(), rng);
    const EigenBeamformer eb = optimal_v_eigen(theta, c, 0.9, c.noise_power);
    const double at_v = slnr(eb.v, theta, c, 0.9, c.noise_power);
    EXPECT_LE(rel_diff(at_v, eb.slnr), 1e-10);
    for (int i = 0; i < 10000; ++i) {
        EXPECT_GE(at_v * (1.0 + 1e-12), slnr(random_unit_vector(c.antennas, rng), theta, c, 0.9, c.noise_power));
    }
}

TEST(OptimalVEigen, RejectsZeroAlpha)
{
    EXPECT_THROW(optimal_v_eigen(CMatrix::Ones(2, 1), CMatrix(2, 0), 0.0, 1.0), DegenerateError);
}

TEST(CoordinateUpdate, UncoupledTermIsDegenerate)
{
    Eigen::RowVectorXcd d = Eigen::RowVectorXcd::Zero(3);
    Eigen::RowVectorXcd e = Eigen::RowVectorXcd::Zero(3);
    d(1) = cplx(0.3, 0.4);
    e(1) = cplx(-0.2, 0.1);
    CVector theta = CVector::Constant(3, std::polar(1.0, 0.7));
    SlnrCoordinateSweep sweep({d}, {e}, theta, 0.1);
    EXPECT_FALSE(sweep.update(1));
    EXPECT_EQ(sweep.theta()(1), theta(1));
}

TEST(CoordinateUpdate, StationaryAfterUpdate)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelSet c = build_channels(verify::tiny_scenario(seed, 0.0));
        Rng rng(seed);
        const CVector v = random_unit_vector(c.antennas, rng);
        SlnrCoordinateSweep sweep = make_sweep(c, v, random_phases(c.stacked(), rng), 0.9);
        for (Eigen::Index i = 0; i < c.stacked(); ++i) {
            sweep.update(i);
            const double phi = std::arg(sweep.theta()(i));
            const double d = oracle::finite_diff([&](double p) { return slnr_at_phase(sweep, i, p); }, phi, 1e-5);
            EXPECT_LT(std::abs(d), 1e-6);
        }
    }
}

TEST(CoordinateUpdate, OneDimensionalGrid)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelSet c = build_channels(verify::tiny_scenario(seed, 0.0));
        Rng rng(seed);
        const CVector v = random_unit_vector(c.antennas, rng);
        SlnrCoordinateSweep sweep = make_sweep(c, v, random_phases(c.stacked(), rng), 0.9);
        const Eigen::Index i = static_cast<Eigen::Index>(seed % 2);
        double grid = 0.0;
        for (int j = 0; j < 10000; ++j) grid = std::max(grid, slnr_at_phase(sweep, i, kTwoPi * j / 10000.0));
        sweep.update(i);
        EXPECT_GE(sweep.slnr() * (1.0 + 1e-12), grid);
    }
}

TEST(CoordinateUpdate, AnalyticDerivative)
{
    const ChannelSet c = build_channels(small_scenario(5));
    Rng rng(5);
    const CVector v = random_unit_vector(c.antennas, rng);
    const SlnrCoordinateSweep sweep = make_sweep(c, v, random_phases(c.stacked(), rng), 0.9);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (Eigen::Index i = 0; i < c.stacked(); ++i) {
        const CoordinateUpdateTerms t = sweep.terms(i);
        const double phi = u(rng);
        EXPECT_LE(rel_diff(t.slnr_at(phi), slnr_at_phase(sweep, i, phi)), 1e-10);
        const double fd = oracle::finite_diff([&](double p) { return slnr_at_phase(sweep, i, p); }, phi, 1e-5);
        EXPECT_LE(rel_diff(t.derivative_at(phi), fd), 1e-5);
    }
}

TEST(CoordinateUpdate, ChannelSetWrapper)
{
    const ChannelSet c = build_channels(small_scenario(6));
    Rng rng(6);
    const CVector v = random_unit_vector(c.antennas, rng);
    CVector theta = random_phases(c.stacked(), rng);
    const double before = slnr(v, theta, c, 0.9, c.noise_power);
    theta(5) = std::polar(1.0, phi_coordinate_update(1, 1, theta, c, v, 0.9));
    EXPECT_GE(slnr(v, theta, c, 0.9, c.noise_power), before * (1.0 - 1e-12));
}

TEST(NullProjector, SingleColumnMatchesMsinr)
{
    Rng rng(7);
    const CVector g = complex_gaussian(4, rng);
    const CVector z = complex_gaussian(4, rng);
    const NullProjection p = an_null_projector(CMatrix(g), z);
    EXPECT_LT((p.w - optimal_w(g, z)).norm(), 1e-12);
    EXPECT_FALSE(p.rank_deficient);
}

TEST(NullProjector, ResidualAndIdempotence)
{
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        CMatrix h(16, 2);
        h.col(0) = complex_gaussian(16, rng);
        h.col(1) = complex_gaussian(16, rng);
        const NullProjection p = an_null_projector(h, complex_gaussian(16, rng));
        EXPECT_LE((p.w.transpose() * h).norm(), 1e-9 * h.norm());
        const NullProjection again = an_null_projector(h, p.w);
        EXPECT_LE((again.w - p.w).norm(), 1e-10);
    }
}

TEST(NullProjector, RankDeficientFlag)
{
    Rng rng(9);
    const CVector g = complex_gaussian(4, rng);
    CMatrix h(4, 2);
    h.col(0) = g;
    h.col(1) = 2.0 * g;
    EXPECT_TRUE(an_null_projector(h, complex_gaussian(4, rng)).rank_deficient);
    EXPECT_THROW(an_null_projector(CMatrix::Ones(2, 3), complex_gaussian(2, rng)), DegenerateError);
}

TEST(RunMslnr, MonotoneAndNulled)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ScenarioConfig s = reference_scenario();
        s.seed = seed;
        s.set_snr_db(0.0);
        const ChannelSet c = build_channels(s);
        MslnrOptions o;
        o.seed = seed;
        const SchemeResult r = run_mslnr(c, 0.9, o);
        for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i], r.trace[i - 1] * (1.0 - 1e-12));
        for (const auto& u : c.desired) {
            EXPECT_LE(std::norm(transpose_dot(r.state.w, build_cascade(u, r.state.theta))), 1e-18);
        }
        EXPECT_LE((r.state.theta.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-12);
        EXPECT_NEAR(r.objective, slnr(r.state.v, r.state.theta, c, 0.9, c.noise_power), 1e-9 * r.objective);
    }
}

TEST(RunMslnr, AlphaOrderingAtTenDb)
{
    double prev = -1.0;
    for (double alpha : {0.1, 0.5, 0.9}) {
        double mean = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            ScenarioConfig s = reference_scenario();
            s.seed = seed;
            s.set_snr_db(10.0);
            const ChannelSet c = build_channels(s);
            MslnrOptions o;
            o.seed = seed;
            SchemeResult r = run_mslnr(c, alpha, o);
            mean += secrecy_rate(r.state, c) / 5.0;
        }
        EXPECT_GT(mean, prev);
        prev = mean;
    }
}

TEST(RunMslnr, TinyOracle)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelSet c = build_channels(verify::tiny_scenario(seed));
        MslnrOptions o;
        o.seed = seed;
        const SchemeResult r = run_mslnr(c, 0.9, o);
        EXPECT_GE(r.objective, 0.99 * verify::oracle_mslnr(c, 0.9, {}));
    }
}

TEST(RunMslnr, SweepOrderIsHonoured)
{
    const ChannelSet c = build_channels(small_scenario(3));
    MslnrOptions a;
    MslnrOptions b;
    for (Eigen::Index i = c.stacked() - 1; i >= 0; --i) b.sweep_order.push_back(i);
    const SchemeResult ra = run_mslnr(c, 0.9, a);
    const SchemeResult rb = run_mslnr(c, 0.9, b);
    EXPECT_GT(ra.objective, 0.0);
    EXPECT_GT(rb.objective, 0.0);
    EXPECT_NE(ra.trace, rb.trace);
}
