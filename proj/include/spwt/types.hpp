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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace spwt {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;

// Error hierarchy. Every failure the library reports derives from Error so the
// CLI can map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

using Rng = std::mt19937_64;

/// i.i.d. CN(0, I) vector.
inline CVector complex_gaussian(Eigen::Index n, Rng& rng)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    CVector z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z(i) = cplx(re, im);
    }
    return z;
}

/// Uniformly distributed point on the complex unit sphere in C^n.
inline CVector random_unit_vector(Eigen::Index n, Rng& rng)
{
    CVector z = complex_gaussian(n, rng);
    double nrm = z.norm();
    while (nrm == 0.0) {
        z = complex_gaussian(n, rng);
        nrm = z.norm();
    }
    return z / nrm;
}

/// Vector of unit-modulus entries with phases drawn uniformly from [0, 2pi).
inline CVector random_phases(Eigen::Index n, Rng& rng)
{
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    CVector theta(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        theta(i) = std::polar(1.0, uni(rng));
    }
    return theta;
}

/// Entry-wise projection onto the unit circle; zero entries map to 1.
inline CVector unit_modulus(const CVector& x)
{
    CVector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x(i));
        out(i) = a > 0.0 ? x(i) / a : cplx(1.0, 0.0);
    }
    return out;
}

/// Unconjugated inner product a^T b.
inline cplx transpose_dot(const CVector& a, const CVector& b) { return a.cwiseProduct(b).sum(); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace spwt
