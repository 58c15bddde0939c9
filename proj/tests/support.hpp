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

#include "spwt/spwt.hpp"

#include <cstdint>

namespace spwt::test {

/// Reduced reference deployment: 2x2 Alice, two 2x2 IRSs, two users of each kind.
inline ScenarioConfig small_scenario(std::uint64_t seed, double snr_db = 0.0)
{
    ScenarioConfig s = reference_scenario();
    s.alice_rows = 2;
    s.alice_cols = 2;
    s.set_irs_shape(2, 2);
    s.seed = seed;
    s.set_snr_db(snr_db);
    return s;
}

inline double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace spwt::test
