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
using namespace spwt::convex;

namespace {

CMatrix random_hermitian(Eigen::Index n, Rng& rng)
{
    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a.col(j) = complex_gaussian(n, rng);
    return 0.5 * (a + a.adjoint());
}

CMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng)
{
    CMatrix f(n, rank);
    for (Eigen::Index j = 0; j < rank; ++j) f.col(j) = complex_gaussian(n, rng);
    return f * f.adjoint();
}

double min_eigenvalue(const CMatrix& m)
{
    return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

} // namespace

TEST(PsdProject, FixedPoint)
{
    Rng rng(1);
    const CMatrix p = random_psd(5, 3, rng);
    const PsdProjection out = psd_project(p);
    EXPECT_LT((out.value - p).norm(), 1e-10 * p.norm());
    EXPECT_FALSE(out.symmetrized);
}

TEST(PsdProject, ClipsNegative)
{
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    EXPECT_LT((psd_project(d).value - expected).norm(), 1e-15);
}

TEST(PsdProject, NearestAmongPerturbations)
{
    Rng rng(2);
    const CMatrix h = random_hermitian(4, rng);
    const CMatrix p = psd_project(h).value;
    EXPECT_GE(min_eigenvalue(p), -1e-12);
    const double dist = (h - p).norm();
    std::uniform_real_distribution<double> scale(1e-4, 1e-1);
    for (int i = 0; i < 1000; ++i) {
        const CMatrix q = p + scale(rng) * random_psd(4, 1 + i % 4, rng);
        EXPECT_LE(dist, (h - q).norm() + 1e-12);
    }
}

TEST(PsdProject, FlagsNonHermitian)
{
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = 1.0;
    EXPECT_TRUE(psd_project(a).symmetrized);
}

TEST(Simplex, ProjectionProperties)
{
    Rng rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        RVector x(6);
        for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = g(rng);
        const RVector p = project_simplex(x, 2.0);
        EXPECT_NEAR(p.sum(), 2.0, 1e-12);
        EXPECT_GE(p.minCoeff(), 0.0);
        // Any other simplex point is no closer.
        RVector q = project_simplex(p + 0.05 * RVector::Random(6), 2.0);
        EXPECT_LE((x - p).norm(), (x - q).norm() + 1e-12);
    }
}

TEST(TraceBudget, Invariants)
{
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const std::vector<CMatrix> blocks{random_hermitian(4, rng), random_hermitian(4, rng)};
        const std::vector<CMatrix> out = project_trace_budget(blocks, 1.0);
        double trace = 0.0;
        for (const auto& b : out) {
            EXPECT_GE(min_eigenvalue(b), -1e-9);
            trace += b.trace().real();
        }
        EXPECT_LE(std::abs(trace - 1.0), 1e-8);
    }
}

TEST(TaylorAnchor, ZeroAn)
{
    Rng rng(5);
    const std::vector<CVector> bob{complex_gaussian(3, rng)};
    const std::vector<CVector> eve{complex_gaussian(3, rng)};
    const double noise = 0.3;
    const MaxMinProblem p = beamformer_problem(bob, eve, noise);
    const CVector v = random_unit_vector(3, rng);
    const ScaState s = taylor_anchor(p, {v * v.adjoint(), CMatrix::Zero(3, 3)});
    EXPECT_NEAR(s.first.front(), std::log(noise), 1e-15);
}

TEST(TaylorAnchor, TangentAndUnderestimator)
{
    EXPECT_NEAR(taylor_underestimate(0.7, 0.7), std::exp(0.7), 1e-15);
    Rng rng(6);
    std::uniform_real_distribution<double> anchor(-20.0, 5.0);
    std::uniform_real_distribution<double> x(-30.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = anchor(rng);
        const double t = x(rng);
        EXPECT_LE(taylor_underestimate(t, a), std::exp(t) * (1.0 + 1e-12));
    }
}

TEST(TaylorAnchor, SurrogateBelowObjective)
{
    // The surrogate, anchored anywhere, never exceeds the true log-ratio.
    Rng rng(7);
    const std::vector<CVector> bob{complex_gaussian(3, rng), complex_gaussian(3, rng)};
    const std::vector<CVector> eve{complex_gaussian(3, rng)};
    const double noise = 0.5;
    MaxMinProblem p = beamformer_problem(bob, eve, noise);
    for (int i = 0; i < 1000; ++i) {
        const CVector x = random_unit_vector(6, rng);
        const std::vector<CMatrix> anchor_pt{x.head(3) * x.head(3).adjoint(), x.tail(3) * x.tail(3).adjoint()};
        apply_anchors(p, taylor_anchor(p, anchor_pt));
        const CVector y = random_unit_vector(6, rng);
        const std::vector<CMatrix> at{y.head(3) * y.head(3).adjoint(), y.tail(3) * y.tail(3).adjoint()};
        const double exact = std::log(2.0) * scaled_secrecy_rate(bob, eve, y.head(3), y.tail(3), noise);
        EXPECT_LE(evaluate(p, at), exact + 1e-12);
        if (i % 100 == 0) {
            const double tight = std::log(2.0) * scaled_secrecy_rate(bob, eve, x.head(3), x.tail(3), noise);
            EXPECT_NEAR(evaluate(p, anchor_pt), tight, 1e-12);
        }
    }
}

TEST(Solver, SingleUserMatchesClosedForm)
{
    Rng rng(8);
    const CVector gamma = complex_gaussian(4, rng);
    const double noise = 0.5;
    MaxMinProblem p = beamformer_problem({gamma}, {}, noise);
    const CVector v = random_unit_vector(4, rng);
    const std::vector<CMatrix> start{0.5 * v * v.adjoint(), 0.5 * CMatrix::Identity(4, 4) / 4.0};
    apply_anchors(p, taylor_anchor(p, {CMatrix::Zero(4, 4), CMatrix::Zero(4, 4)}));
    const SolveResult r = solve_maxmin_subproblem(p, start);
    const double closed = std::log(1.0 + gamma.squaredNorm() / noise);
    EXPECT_NEAR(r.objective, closed, 1e-3 * closed);
    EXPECT_LT(r.blocks[1].trace().real(), 1e-2);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.blocks[0]);
    const CVector top = es.eigenvectors().col(3);
    EXPECT_GT(std::abs(top.dot(gamma.conjugate())) / gamma.norm(), 0.999);
}

TEST(Solver, SymmetricChannelsGiveZero)
{
    Rng rng(9);
    const CVector gamma = complex_gaussian(3, rng);
    MaxMinProblem p = beamformer_problem({gamma}, {gamma}, 0.2);
    const CVector x = random_unit_vector(6, rng);
    const std::vector<CMatrix> start{x.head(3) * x.head(3).adjoint(), x.tail(3) * x.tail(3).adjoint()};
    apply_anchors(p, taylor_anchor(p, start));
    const SolveResult r = solve_maxmin_subproblem(p, start);
    EXPECT_NEAR(r.objective, 0.0, 1e-9);
}

TEST(Solver, EigenvalueClosedForm)
{
    Rng rng(10);
    const CMatrix w = random_psd(2, 2, rng);
    const double noise = 0.1;
    MaxMinProblem p;
    p.dimension = 2;
    LogTerm t;
    t.gain.add_matrix(0, w);
    t.gain.offset = noise;
    t.linearized.offset = 1.0;
    t.anchor = 0.0;
    p.first.push_back(t);
    const SolveResult r = solve_maxmin_subproblem(p, {0.5 * CMatrix::Identity(2, 2)});
    const double lam = Eigen::SelfAdjointEigenSolver<CMatrix>(w).eigenvalues()(1);
    EXPECT_NEAR(r.objective, std::log(lam + noise), 1e-4);
    EXPECT_LE(std::abs(r.blocks[0].trace().real() - 1.0), 1e-8);
}

TEST(Solver, UnitDiagonalFeasible)
{
    Rng rng(11);
    MaxMinProblem p;
    p.dimension = 4;
    p.feasible = Feasible::UnitDiagonal;
    LogTerm t;
    t.gain.add(0, complex_gaussian(4, rng));
    t.gain.offset = 0.1;
    t.linearized.offset = 1.0;
    p.first.push_back(t);
    const CVector th = random_phases(4, rng);
    const SolveResult r = solve_maxmin_subproblem(p, {th * th.adjoint()});
    EXPECT_LE((r.blocks[0].diagonal().array() - 1.0).abs().maxCoeff(), 1e-12);
    EXPECT_GE(min_eigenvalue(r.blocks[0]), -1e-9);
    EXPECT_GE(r.objective, evaluate(p, {th * th.adjoint()}));
}

TEST(Solver, RejectsMalformed)
{
    MaxMinProblem p;
    EXPECT_THROW(solve_maxmin_subproblem(p, {}), SolverError);
    p.dimension = 2;
    EXPECT_THROW(solve_maxmin_subproblem(p, {CMatrix::Identity(2, 2)}), SolverError);
    LogTerm t;
    t.gain.offset = 1.0;
    t.linearized.offset = 1.0;
    p.first.push_back(t);
    EXPECT_THROW(solve_maxmin_subproblem(p, {CMatrix::Identity(3, 3)}), SolverError);
    p.budget = 0.0;
    EXPECT_THROW(solve_maxmin_subproblem(p, {CMatrix::Identity(2, 2)}), SolverError);
    p.feasible = Feasible::UnitDiagonal;
    p.blocks = 2;
    EXPECT_THROW(solve_maxmin_subproblem(p, {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}), SolverError);
}

TEST(Randomization, RankOne)
{
    Rng rng(12);
    const CVector u = random_unit_vector(4, rng);
    const CVector c = complex_gaussian(4, rng);
    auto f = [&](const CVector& x) { return std::norm(c.dot(x)); };
    for (int count : {1, 50}) {
        const RandomizationResult r = gaussian_randomization(u * u.adjoint(), f, count, rng);
        EXPECT_NEAR(std::abs(u.dot(r.best)), 1.0, 1e-10);
    }
}

TEST(Randomization, CountOneIsPrincipal)
{
    Rng rng(13);
    const CMatrix r = random_psd(4, 3, rng);
    int calls = 0;
    auto f = [&](const CVector&) {
        ++calls;
        return 1.0;
    };
    const RandomizationResult out = gaussian_randomization(r, f, 1, rng);
    EXPECT_EQ(calls, 1);
    EXPECT_EQ(out.index, 0);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    EXPECT_NEAR(std::abs(es.eigenvectors().col(3).dot(out.best)), 1.0, 1e-12);
}

TEST(Randomization, RankTwoAgainstSpanSweep)
{
    Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix basis(5, 2);
        basis.col(0) = complex_gaussian(5, rng);
        basis.col(1) = complex_gaussian(5, rng);
        const Eigen::HouseholderQR<CMatrix> qr(basis);
        const CMatrix u = qr.householderQ() * CMatrix::Identity(5, 2);
        const CMatrix r = u * Eigen::Vector2cd(1.0, 0.6).asDiagonal() * u.adjoint();
        const CVector c = complex_gaussian(5, rng);
        auto f = [&](const CVector& x) { return std::norm(c.dot(x)) / x.squaredNorm(); };

        double sweep = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double tau = 0.5 * kPi * i / 200.0;
            for (int j = 0; j < 200; ++j) {
                const CVector x = std::cos(tau) * u.col(0) + std::sin(tau) * std::polar(1.0, kTwoPi * j / 200.0) * u.col(1);
                sweep = std::max(sweep, f(x));
            }
        }
        const RandomizationResult out = gaussian_randomization(r, f, 500, rng);
        EXPECT_GE(out.objective, 0.95 * sweep);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
        EXPECT_GE(out.objective, f(es.eigenvectors().col(4)));
    }
}

TEST(Randomization, RejectsBadInput)
{
    Rng rng(15);
    auto f = [](const CVector&) { return 0.0; };
    EXPECT_THROW(gaussian_randomization(CMatrix::Identity(2, 2), f, 0, rng), SolverError);
    EXPECT_THROW(gaussian_randomization(CMatrix::Zero(2, 2), f, 3, rng), SolverError);
}
