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

// Reference searches used to validate the optimizers. Nothing in this header
// may depend on the scheme implementations.

#include "spwt/types.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace spwt::oracle {

struct GridSpec {
    int phase_points = 16;     // grid points per 2pi on every phase
    int samples = 1000;        // random unit vectors per search
    std::uint64_t seed = 1;
};

inline constexpr int kMaxExhaustivePhases = 6;

struct PhaseSearchResult {
    CVector theta;
    double value = -std::numeric_limits<double>::infinity();
};

/// Exhaustive search over the phase grid {2 pi j / points}^n. Ties keep the
/// first grid point in lexicographic order.
inline PhaseSearchResult brute_force_phase_search(int n, const std::function<double(const CVector&)>& objective,
                                                  const GridSpec& grid)
{
    if (n < 1) {
        throw DegenerateError("brute_force_phase_search: need at least one phase");
    }
    if (n > kMaxExhaustivePhases) {
        throw DegenerateError("brute_force_phase_search: too many phases for exhaustive mode");
    }
    if (grid.phase_points < 8) {
        throw DegenerateError("brute_force_phase_search: grid resolution must be >= 8");
    }
    std::vector<cplx> table(static_cast<std::size_t>(grid.phase_points));
    for (int j = 0; j < grid.phase_points; ++j) {
        table[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * j / grid.phase_points);
    }
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    CVector theta = CVector::Constant(n, table[0]);
    PhaseSearchResult best;
    while (true) {
        const double val = objective(theta);
        if (val > best.value) {
            best.value = val;
            best.theta = theta;
        }
        int pos = n - 1;
        while (pos >= 0) {
            auto& i = idx[static_cast<std::size_t>(pos)];
            if (++i < grid.phase_points) {
                theta(pos) = table[static_cast<std::size_t>(i)];
                break;
            }
            i = 0;
            theta(pos) = table[0];
            --pos;
        }
        if (pos < 0) break;
    }
    return best;
}

struct VectorSearchResult {
    CVector v;
    double value = -std::numeric_limits<double>::infinity();
};

/// Best of `count` i.i.d. complex-Gaussian directions on the unit sphere.
inline VectorSearchResult random_search_unit_vectors(const std::function<double(const CVector&)>& objective, int n,
                                                     int count, std::uint64_t seed)
{
    if (count < 1) {
        throw DegenerateError("random_search_unit_vectors: count must be >= 1");
    }
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorSearchResult best;
    CVector z(n);
    for (int s = 0; s < count; ++s) {
        for (int i = 0; i < n; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(i) = cplx(re, im);
        }
        const double nrm = z.norm();
        if (nrm == 0.0) continue;
        const CVector u = z / nrm;
        const double val = objective(u);
        if (val > best.value) {
            best.value = val;
            best.v = u;
        }
    }
    return best;
}

/// Central difference (f(x + h e_i) - f(x - h e_i)) / 2h.
inline double finite_diff(const std::function<double(const RVector&)>& f, const RVector& point, int coordinate,
                          double step)
{
    if (!(step > 0.0)) {
        throw DegenerateError("finite_diff: step must be positive");
    }
    RVector plus = point;
    RVector minus = point;
    plus(coordinate) += step;
    minus(coordinate) -= step;
    return (f(plus) - f(minus)) / (2.0 * step);
}

inline double finite_diff(const std::function<double(double)>& f, double x, double step)
{
    if (!(step > 0.0)) {
        throw DegenerateError("finite_diff: step must be positive");
    }
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

} // namespace spwt::oracle
