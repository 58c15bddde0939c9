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

TEST(AnglesFromAlice, FirstIrs)
{
    const AngleSet a = angles_from_alice({50.0, 150.0, 50.0});
    EXPECT_NEAR(a.azimuth, 1.2490, 1e-4);
    EXPECT_NEAR(a.pitch, 0.3063, 1e-4);
    EXPECT_NEAR(a.pitch, std::atan(50.0 / std::sqrt(50.0 * 50.0 + 150.0 * 150.0)), 1e-15);
    EXPECT_NEAR(a.range, 165.831, 1e-3);
    EXPECT_FALSE(a.degenerate);
}

TEST(AnglesFromAlice, OnAxisGroundPoint)
{
    const AngleSet a = angles_from_alice({100.0, 0.0, 0.0});
    EXPECT_DOUBLE_EQ(a.azimuth, 0.0);
    EXPECT_DOUBLE_EQ(a.pitch, 0.0);
    EXPECT_DOUBLE_EQ(a.range, 100.0);

    const AngleSet b = angles_from_alice({0.0, 100.0, 0.0});
    EXPECT_DOUBLE_EQ(b.azimuth, kPi / 2.0);
    EXPECT_DOUBLE_EQ(b.pitch, 0.0);
}

TEST(AnglesFromAlice, SecondQuadrantUsesAtan2)
{
    const AngleSet a = angles_from_alice({-10.0, 10.0, 0.0});
    EXPECT_NEAR(a.azimuth, 3.0 * kPi / 4.0, 1e-15);
}

TEST(AnglesFromAlice, Origin)
{
    EXPECT_THROW(angles_from_alice({0.0, 0.0, 0.0}), DegenerateError);
}

TEST(AnglesFromAlice, RoundTrip)
{
    Rng rng(3);
    std::uniform_real_distribution<double> u(-300.0, 300.0);
    std::uniform_real_distribution<double> h(0.0, 80.0);
    for (int i = 0; i < 1000; ++i) {
        const Position3D p{u(rng), u(rng), h(rng)};
        const AngleSet a = angles_from_alice(p);
        EXPECT_NEAR(a.range * std::cos(a.pitch) * std::cos(a.azimuth), p.x, 1e-9);
        EXPECT_NEAR(a.range * std::cos(a.pitch) * std::sin(a.azimuth), p.y, 1e-9);
        EXPECT_NEAR(a.range * std::sin(a.pitch), p.z, 1e-9);
        EXPECT_NEAR(a.range, std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z), 1e-9);
    }
}

TEST(AnglesFromIrs, FirstIrsToFirstBob)
{
    const IrsPlacement irs{{50.0, 150.0, 50.0}, 0.0, 4, 4, 0.05};
    const AngleSet a = angles_from_irs(irs, {100.0, 50.0, 0.0});
    EXPECT_NEAR(a.azimuth, 1.1071, 1e-4);
    EXPECT_NEAR(a.pitch, 0.4205, 1e-4);
    EXPECT_NEAR(a.range, 122.474, 1e-3);
    EXPECT_NEAR(a.range, std::sqrt(50.0 * 50.0 + 100.0 * 100.0 + 50.0 * 50.0), 1e-12);
}

TEST(AnglesFromIrs, GroundLevelLimit)
{
    const IrsPlacement irs{{0.0, 0.0, 1e-9}, 0.0, 1, 1, 0.05};
    EXPECT_NEAR(angles_from_irs(irs, {10.0, 0.0, 0.0}).pitch, 0.0, 1e-9);
}

TEST(AnglesFromIrs, MirrorNegatesAzimuth)
{
    const IrsPlacement irs{{50.0, 150.0, 50.0}, 0.0, 4, 4, 0.05};
    const AngleSet a = angles_from_irs(irs, {80.0, 150.0 - 40.0, 0.0});
    const AngleSet b = angles_from_irs(irs, {80.0, 150.0 + 40.0, 0.0});
    EXPECT_NEAR(a.azimuth, -b.azimuth, 1e-15);
    EXPECT_NEAR(a.pitch, b.pitch, 1e-15);
}

TEST(AnglesFromIrs, UserBeneathIsFlagged)
{
    const IrsPlacement irs{{50.0, 150.0, 50.0}, 0.0, 4, 4, 0.05};
    const AngleSet a = angles_from_irs(irs, {50.0, 150.0, 0.0});
    EXPECT_TRUE(a.degenerate);
    EXPECT_DOUBLE_EQ(a.pitch, kPi / 2.0);
    EXPECT_DOUBLE_EQ(a.range, 50.0);
}

TEST(ConeAngles, Endfire)
{
    AngleSet a;
    a.azimuth = kPi / 2.0;
    a.pitch = 0.0;
    const ConeAngles c = cone_angles_alice(a);
    EXPECT_NEAR(c.beta, 0.0, 1e-7);
    EXPECT_NEAR(c.gamma, kPi / 2.0, 1e-12);
}

TEST(ConeAngles, Zenith)
{
    for (double az : {0.0, 0.7, 2.0, -1.3}) {
        AngleSet a;
        a.azimuth = az;
        a.pitch = kPi / 2.0;
        const ConeAngles c = cone_angles_alice(a);
        EXPECT_NEAR(c.beta, kPi / 2.0, 1e-12);
        EXPECT_NEAR(c.gamma, kPi / 2.0, 1e-12);
    }
}

TEST(ConeAngles, Identity)
{
    const AngleSet a = angles_from_alice({50.0, 150.0, 50.0});
    const ConeAngles c = cone_angles_alice(a);
    const double lhs = std::pow(std::cos(c.beta), 2) + std::pow(std::cos(c.gamma), 2);
    EXPECT_NEAR(lhs, std::pow(std::cos(a.pitch), 2), 1e-12);

    const IrsPlacement irs{{50.0, 150.0, 50.0}, 0.0, 4, 4, 0.05};
    const AngleSet b = angles_from_irs(irs, {100.0, 50.0, 0.0});
    const ConeAngles d = cone_angles_irs(b, 0.0);
    EXPECT_NEAR(std::pow(std::cos(d.beta), 2) + std::pow(std::cos(d.gamma), 2), std::pow(std::cos(b.pitch), 2),
                1e-12);
}

TEST(ConeAngles, IdentityRandom)
{
    Rng rng(11);
    std::uniform_real_distribution<double> az(-kPi, kPi);
    std::uniform_real_distribution<double> el(0.0, kPi / 2.0);
    for (int i = 0; i < 1000; ++i) {
        AngleSet a;
        a.azimuth = az(rng);
        a.pitch = el(rng);
        const ConeAngles c = cone_angles_alice(a);
        const double lhs = std::pow(std::cos(c.beta), 2) + std::pow(std::cos(c.gamma), 2);
        EXPECT_LE(lhs, 1.0 + 1e-12);
        EXPECT_NEAR(lhs, std::pow(std::cos(a.pitch), 2), 1e-12);
    }
}

TEST(ConeAngles, PlacementAngle)
{
    const IrsPlacement irs{{50.0, 150.0, 50.0}, 0.0, 4, 4, 0.05};
    const AngleSet a = angles_from_irs(irs, {130.0, 40.0, 0.0});
    const ConeAngles zero = cone_angles_irs(a, 0.0);
    const ConeAngles plain = cone_angles_alice(a);
    EXPECT_DOUBLE_EQ(zero.beta, plain.beta);
    EXPECT_DOUBLE_EQ(zero.gamma, plain.gamma);
    const ConeAngles full = cone_angles_irs(a, kTwoPi);
    EXPECT_NEAR(full.beta, zero.beta, 1e-12);
    EXPECT_NEAR(full.gamma, zero.gamma, 1e-12);
}
