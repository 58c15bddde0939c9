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

#include "spwt/types.hpp"

#include <algorithm>
#include <cmath>

namespace spwt {

/// Cartesian position in meters. Alice's reference antenna sits at the origin,
/// her array rows along x and columns along y.
struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Position3D&, const Position3D&) = default;
};

inline double norm(const Position3D& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

struct IrsPlacement {
    Position3D position;            // z is the mounting height g
    double placement_angle = 0.0;   // theta_IX, radians in [0, 2pi)
    int rows = 4;
    int cols = 4;
    double element_spacing = 0.05;  // meters

    int elements() const { return rows * cols; }
};

/// Azimuth / pitch / range of a point as seen from a reference point.
struct AngleSet {
    double azimuth = 0.0;  // (-pi, pi]
    double pitch = 0.0;    // [0, pi/2]
    double range = 0.0;    // meters, > 0
    bool degenerate = false;  // point directly beneath the reference, pitch forced to pi/2
};

/// beta: angle to the array's column axis, gamma: angle to the row axis.
struct ConeAngles {
    double beta = 0.0;
    double gamma = 0.0;
};

/// Angles of a point seen from Alice's reference antenna.
inline AngleSet angles_from_alice(const Position3D& p)
{
    const double horizontal = std::hypot(p.x, p.y);
    const double range = norm(p);
    if (range == 0.0) {
        throw DegenerateError("angles_from_alice: position coincides with Alice's reference antenna");
    }
    AngleSet a;
    a.range = range;
    if (horizontal == 0.0) {
        a.azimuth = 0.0;
        a.pitch = std::copysign(kPi / 2.0, p.z);
        a.degenerate = true;
        return a;
    }
    a.azimuth = std::atan2(p.y, p.x);
    a.pitch = std::atan(p.z / horizontal);
    return a;
}

/// Angles of a ground point seen from an IRS. The azimuth keeps the IRS-frame
/// convention atan2(y_I - y_p, x_p - x_I).
inline AngleSet angles_from_irs(const IrsPlacement& irs, const Position3D& p)
{
    const double dx = p.x - irs.position.x;
    const double dy = irs.position.y - p.y;
    const double height = irs.position.z - p.z;
    const double horizontal = std::hypot(dx, dy);
    AngleSet a;
    a.range = std::sqrt(dx * dx + dy * dy + height * height);
    if (a.range == 0.0) {
        throw DegenerateError("angles_from_irs: position coincides with the IRS reference element");
    }
    if (horizontal == 0.0) {
        a.azimuth = 0.0;
        a.pitch = kPi / 2.0;
        a.degenerate = true;
        return a;
    }
    a.azimuth = std::atan2(dy, dx);
    a.pitch = std::atan(height / horizontal);
    return a;
}

inline ConeAngles cone_angles_alice(const AngleSet& a)
{
    const double cp = std::cos(a.pitch);
    return {std::acos(std::clamp(cp * std::sin(a.azimuth), -1.0, 1.0)),
            std::acos(std::clamp(cp * std::cos(a.azimuth), -1.0, 1.0))};
}

/// Cone angles relative to an IRS rotated by its placement angle.
inline ConeAngles cone_angles_irs(const AngleSet& a, double placement_angle)
{
    AngleSet rotated = a;
    rotated.azimuth = a.azimuth + placement_angle;
    return cone_angles_alice(rotated);
}

} // namespace spwt
