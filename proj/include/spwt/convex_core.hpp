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
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

// Machinery for the secrecy-rate subproblems: lifted (SDR) matrix variables,
// first-order Taylor anchors for the exponential auxiliaries, a dense
// first-order max-min solver over PSD blocks, and Gaussian randomization.
namespace spwt::convex {

struct PsdProjection {
    CMatrix value;
    bool symmetrized = false;  // the input was not Hermitian and was symmetrized first
};

/// Nearest PSD matrix in Frobenius norm (eigenvalue clipping at zero).
inline PsdProjection psd_project(const CMatrix& h)
{
    PsdProjection out;
    const double scale = std::max(1.0, h.norm());
    out.symmetrized = (h - h.adjoint()).norm() > 1e-12 * scale;
    const CMatrix herm = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    const RVector lam = es.eigenvalues().cwiseMax(0.0);
    out.value = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    return out;
}

/// Euclidean projection onto {x >= 0, sum x = total}.
inline RVector project_simplex(const RVector& x, double total = 1.0)
{
    RVector sorted = x;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (Eigen::Index i = 0; i < sorted.size(); ++i) {
        cumulative += sorted(i);
        const double candidate = (cumulative - total) / static_cast<double>(i + 1);
        if (sorted(i) - candidate > 0.0) {
            tau = candidate;
        }
    }
    return (x.array() - tau).cwiseMax(0.0);
}

/// Projection of a tuple of Hermitian blocks onto {R_b PSD, sum_b Tr R_b = budget}.
/// The eigenvalues of all blocks are projected jointly onto the simplex.
inline std::vector<CMatrix> project_trace_budget(const std::vector<CMatrix>& blocks, double budget)
{
    std::vector<Eigen::SelfAdjointEigenSolver<CMatrix>> solvers;
    Eigen::Index total = 0;
    for (const auto& b : blocks) {
        solvers.emplace_back(CMatrix(0.5 * (b + b.adjoint())));
        total += b.rows();
    }
    RVector lam(total);
    Eigen::Index off = 0;
    for (const auto& es : solvers) {
        lam.segment(off, es.eigenvalues().size()) = es.eigenvalues();
        off += es.eigenvalues().size();
    }
    const RVector projected = project_simplex(lam, budget);
    std::vector<CMatrix> out;
    off = 0;
    for (const auto& es : solvers) {
        const Eigen::Index n = es.eigenvalues().size();
        out.push_back(es.eigenvectors() * projected.segment(off, n).asDiagonal() * es.eigenvectors().adjoint());
        off += n;
    }
    return out;
}

/// weight * a^H R_block a
struct QuadTerm {
    int block = 0;
    CVector a;
    double weight = 1.0;
};

/// Affine function of the lifted variables: offset + sum of quadratic terms.
struct TraceForm {
    std::vector<QuadTerm> terms;
    double offset = 0.0;

    void add(int block, const CVector& a, double weight = 1.0) { terms.push_back({block, a, weight}); }

    /// Adds Tr(W R_block) for a PSD weight by splitting W into rank-one terms.
    void add_matrix(int block, const CMatrix& w)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(0.5 * (w + w.adjoint())));
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const double lam = es.eigenvalues()(i);
            if (lam > 0.0) {
                add(block, es.eigenvectors().col(i), lam);
            }
        }
    }

    double evaluate(const std::vector<CMatrix>& blocks) const
    {
        double s = offset;
        for (const auto& t : terms) {
            s += t.weight * t.a.dot(blocks[static_cast<std::size_t>(t.block)] * t.a).real();
        }
        return s;
    }
};

/// One member of a max-min group:
///   ln(gain) - (anchor - 1 + linearized * exp(-anchor)).
/// The bracket is the tightest value the auxiliary exponential may take under
/// its tangent (first-order Taylor) restriction at `anchor`.
struct LogTerm {
    TraceForm gain;
    TraceForm linearized;
    double anchor = 0.0;
};

enum class Feasible {
    TraceBudget,   // every block PSD, sum of traces = budget
    UnitDiagonal,  // single PSD block with unit diagonal
};

/// maximize  min_i first[i] + min_j second[j]  over the feasible set.
/// An empty `second` group contributes nothing.
struct MaxMinProblem {
    int dimension = 0;
    int blocks = 1;
    Feasible feasible = Feasible::TraceBudget;
    double budget = 1.0;
    std::vector<LogTerm> first;
    std::vector<LogTerm> second;
};

/// Taylor anchor points of every member, one group at a time.
struct ScaState {
    std::vector<double> first;
    std::vector<double> second;
};

/// anchor = ln(linearized form at the given point); the form's offset carries sigma^2.
inline ScaState taylor_anchor(const MaxMinProblem& p, const std::vector<CMatrix>& blocks)
{
    auto anchors = [&](const std::vector<LogTerm>& group) {
        std::vector<double> out;
        for (const auto& m : group) {
            const double v = m.linearized.evaluate(blocks);
            if (!(v > 0.0)) {
                throw SolverError("taylor_anchor: linearized expression is not positive");
            }
            out.push_back(std::log(v));
        }
        return out;
    };
    return {anchors(p.first), anchors(p.second)};
}

inline void apply_anchors(MaxMinProblem& p, const ScaState& s)
{
    for (std::size_t i = 0; i < p.first.size(); ++i) p.first[i].anchor = s.first[i];
    for (std::size_t j = 0; j < p.second.size(); ++j) p.second[j].anchor = s.second[j];
}

/// Tangent under-estimator of exp at `anchor`: e^anchor (x - anchor + 1) <= e^x.
inline double taylor_underestimate(double x, double anchor) { return std::exp(anchor) * (x - anchor + 1.0); }

namespace detail {

// Evaluates the problem given a callable returning a^H R_block a for a term.
template <class Quad>
double form_value(const TraceForm& f, Quad&& quad)
{
    double s = f.offset;
    for (const auto& t : f.terms) s += t.weight * quad(t);
    return s;
}

struct MemberEval {
    double value;
    double gain;
};

template <class Quad>
MemberEval member_value(const LogTerm& m, Quad&& quad)
{
    const double g = form_value(m.gain, quad);
    const double l = form_value(m.linearized, quad);
    if (!(g > 0.0)) return {-std::numeric_limits<double>::infinity(), g};
    return {std::log(g) - (m.anchor - 1.0 + l * std::exp(-m.anchor)), g};
}

// Soft minimum -1/t log sum exp(-t x); weights receive the gradient of the
// soft minimum with respect to each x. temperature <= 0 means the exact minimum.
inline double soft_min(const std::vector<double>& x, double temperature, std::vector<double>& weights)
{
    weights.assign(x.size(), 0.0);
    if (x.empty()) return 0.0;
    const auto it = std::min_element(x.begin(), x.end());
    const double lo = *it;
    if (temperature <= 0.0 || !std::isfinite(lo)) {
        weights[static_cast<std::size_t>(it - x.begin())] = 1.0;
        return lo;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        weights[i] = std::exp(-temperature * (x[i] - lo));
        sum += weights[i];
    }
    for (auto& w : weights) w /= sum;
    return lo - std::log(sum) / temperature;
}

// Smoothed objective; `visit(term, coefficient)` is called for every quadratic
// term with d(objective)/d(a^H R a) when `want_gradient` is set.
template <class Quad, class Visit>
double objective(const MaxMinProblem& p, double temperature, Quad&& quad, bool want_gradient, Visit&& visit)
{
    double total = 0.0;
    std::vector<double> weights;
    for (const auto* group : {&p.first, &p.second}) {
        if (group->empty()) continue;
        std::vector<double> values;
        std::vector<double> gains;
        for (const auto& m : *group) {
            const MemberEval e = member_value(m, quad);
            values.push_back(e.value);
            gains.push_back(e.gain);
        }
        total += soft_min(values, temperature, weights);
        if (!want_gradient) continue;
        for (std::size_t i = 0; i < group->size(); ++i) {
            if (weights[i] == 0.0) continue;
            const LogTerm& m = (*group)[i];
            const double cg = weights[i] / gains[i];
            const double cl = -weights[i] * std::exp(-m.anchor);
            for (const auto& t : m.gain.terms) visit(t, cg * t.weight);
            for (const auto& t : m.linearized.terms) visit(t, cl * t.weight);
        }
    }
    return total;
}

inline double inner(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i].conjugate()).sum().real();
    return s;
}

inline double squared_norm(const std::vector<CMatrix>& a)
{
    double s = 0.0;
    for (const auto& m : a) s += m.squaredNorm();
    return s;
}

inline void normalize_rows(CMatrix& v)
{
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        const double n = v.row(i).norm();
        if (n > 0.0) {
            v.row(i) /= n;
        } else {
            v.row(i).setZero();
            v(i, 0) = 1.0;
        }
    }
}

} // namespace detail

/// Exact (non-smoothed) objective at a point of the lifted variables.
inline double evaluate(const MaxMinProblem& p, const std::vector<CMatrix>& blocks)
{
    auto quad = [&](const QuadTerm& t) { return t.a.dot(blocks[static_cast<std::size_t>(t.block)] * t.a).real(); };
    return detail::objective(p, 0.0, quad, false, [](const QuadTerm&, double) {});
}

struct SolverOptions {
    std::vector<double> temperatures{10.0, 100.0, 1000.0};
    double gradient_tolerance = 1e-4;
    int max_steps = 500;
    double factor_perturbation = 1e-3;  // unit-diagonal mode: escape from rank-one starts
    std::uint64_t seed = 7;
};

struct SolveResult {
    std::vector<CMatrix> blocks;
    double objective = 0.0;
    int steps = 0;
    bool stalled = false;  // step budget exhausted before the gradient test passed
};

namespace detail {

inline SolveResult solve_trace_budget(const MaxMinProblem& p, const std::vector<CMatrix>& start,
                                      const SolverOptions& opt)
{
    std::vector<CMatrix> x = project_trace_budget(start, p.budget);
    SolveResult best{x, evaluate(p, x), 0, false};

    const int per_stage = std::max(1, opt.max_steps / static_cast<int>(std::max<std::size_t>(1, opt.temperatures.size())));
    double step = 0.0;
    bool converged_last = false;
    int total_steps = 0;
    for (double temperature : opt.temperatures) {
        converged_last = false;
        std::vector<CMatrix> grad(x.size());
        auto smoothed = [&](const std::vector<CMatrix>& at, bool want_grad) {
            auto quad = [&](const QuadTerm& t) { return t.a.dot(at[static_cast<std::size_t>(t.block)] * t.a).real(); };
            if (want_grad) {
                for (auto& g : grad) g = CMatrix::Zero(p.dimension, p.dimension);
            }
            return objective(p, temperature, quad, want_grad, [&](const QuadTerm& t, double c) {
                grad[static_cast<std::size_t>(t.block)].noalias() += c * t.a * t.a.adjoint();
            });
        };
        for (int s = 0; s < per_stage; ++s) {
            const double f = smoothed(x, true);
            const double gnorm = std::sqrt(squared_norm(grad));
            if (gnorm == 0.0) {
                converged_last = true;
                break;
            }
            if (step <= 0.0) step = 1.0 / gnorm;
            std::vector<CMatrix> y;
            std::vector<CMatrix> d(x.size());
            double dnorm2 = 0.0;
            for (int bt = 0; bt < 60; ++bt) {
                std::vector<CMatrix> trial(x.size());
                for (std::size_t b = 0; b < x.size(); ++b) trial[b] = x[b] + step * grad[b];
                y = project_trace_budget(trial, p.budget);
                for (std::size_t b = 0; b < x.size(); ++b) d[b] = y[b] - x[b];
                dnorm2 = squared_norm(d);
                const double fy = smoothed(y, false);
                if (fy >= f + inner(grad, d) - dnorm2 / (2.0 * step) - 1e-14 * std::abs(f)) break;
                step *= 0.5;
            }
            x = std::move(y);
            ++total_steps;
            const double mapping = std::sqrt(dnorm2) / step;
            step *= 2.0;
            if (mapping < opt.gradient_tolerance) {
                converged_last = true;
                break;
            }
        }
        const double exact = evaluate(p, x);
        if (exact > best.objective) {
            best.blocks = x;
            best.objective = exact;
        }
    }
    best.steps = total_steps;
    best.stalled = !converged_last;
    return best;
}

// R = V V^H with unit-norm rows; Riemannian ascent on the product of spheres.
inline SolveResult solve_unit_diagonal(const MaxMinProblem& p, const std::vector<CMatrix>& start,
                                       const SolverOptions& opt)
{
    const Eigen::Index n = p.dimension;
    SolveResult best{start, evaluate(p, start), 0, false};

    Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(0.5 * (start[0] + start[0].adjoint())));
    CMatrix v = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    Rng rng(opt.seed);
    for (Eigen::Index j = 0; j < n; ++j) v.col(j) += opt.factor_perturbation * complex_gaussian(n, rng);
    normalize_rows(v);

    const int per_stage = std::max(1, opt.max_steps / static_cast<int>(std::max<std::size_t>(1, opt.temperatures.size())));
    double step = 0.0;
    bool converged_last = false;
    int total_steps = 0;
    CMatrix egrad(n, n);
    for (double temperature : opt.temperatures) {
        converged_last = false;
        auto smoothed = [&](const CMatrix& at, bool want_grad) {
            auto quad = [&](const QuadTerm& t) { return (at.adjoint() * t.a).squaredNorm(); };
            if (want_grad) egrad.setZero();
            return objective(p, temperature, quad, want_grad, [&](const QuadTerm& t, double c) {
                egrad.noalias() += (2.0 * c) * t.a * (t.a.adjoint() * at);
            });
        };
        for (int s = 0; s < per_stage; ++s) {
            const double f = smoothed(v, true);
            CMatrix rgrad = egrad;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double radial = v.row(i).dot(egrad.row(i)).real();
                rgrad.row(i) -= radial * v.row(i);
            }
            const double gnorm2 = rgrad.squaredNorm();
            if (std::sqrt(gnorm2) < opt.gradient_tolerance) {
                converged_last = true;
                break;
            }
            if (step <= 0.0) step = 1.0 / std::sqrt(gnorm2);
            CMatrix y;
            for (int bt = 0; bt < 60; ++bt) {
                y = v + step * rgrad;
                normalize_rows(y);
                if (smoothed(y, false) >= f + 1e-4 * step * gnorm2) break;
                step *= 0.5;
            }
            v = std::move(y);
            ++total_steps;
            step *= 2.0;
        }
        const std::vector<CMatrix> r{v * v.adjoint()};
        const double exact = evaluate(p, r);
        if (exact > best.objective) {
            best.blocks = r;
            best.objective = exact;
        }
    }
    best.steps = total_steps;
    best.stalled = !converged_last;
    return best;
}

} // namespace detail

/// Maximizes the max-min surrogate from a feasible start by annealed
/// log-sum-exp smoothing. Returns the best point seen (never worse than the
/// start) and its exact objective.
inline SolveResult solve_maxmin_subproblem(const MaxMinProblem& p, const std::vector<CMatrix>& start,
                                           const SolverOptions& opt = {})
{
    if (p.dimension < 1 || p.blocks < 1 || static_cast<int>(start.size()) != p.blocks) {
        throw SolverError("solve_maxmin_subproblem: malformed problem or start point");
    }
    for (const auto& b : start) {
        if (b.rows() != p.dimension || b.cols() != p.dimension) {
            throw SolverError("solve_maxmin_subproblem: start block has the wrong size");
        }
    }
    if (p.first.empty()) {
        throw SolverError("solve_maxmin_subproblem: the first group must be nonempty");
    }
    if (p.feasible == Feasible::TraceBudget) {
        if (!(p.budget > 0.0)) {
            throw SolverError("solve_maxmin_subproblem: infeasible, trace budget must be positive");
        }
        return detail::solve_trace_budget(p, start, opt);
    }
    if (p.blocks != 1) {
        throw SolverError("solve_maxmin_subproblem: unit-diagonal problems take a single block");
    }
    return detail::solve_unit_diagonal(p, start, opt);
}

struct RandomizationResult {
    CVector best;
    double objective = -std::numeric_limits<double>::infinity();
    int index = -1;  // 0: principal eigenvector, then extra candidates, then samples
};

/// Rank-one extraction from a lifted solution. Candidate 0 is the principal
/// eigenvector of R, followed by any caller-supplied candidates and then
/// count-1 draws U Sigma^{1/2} xi with xi ~ CN(0, I). Every candidate passes
/// through `project` before `evaluate`; the best one is returned.
template <class Evaluate, class Project>
RandomizationResult gaussian_randomization(const CMatrix& r, Evaluate&& evaluate_candidate, int count, Rng& rng,
                                           Project&& project, const std::vector<CVector>& extra = {})
{
    if (count < 1) {
        throw SolverError("gaussian_randomization: candidate count must be >= 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(0.5 * (r + r.adjoint())));
    const RVector lam = es.eigenvalues().cwiseMax(0.0);
    if (!(lam.maxCoeff() > 0.0)) {
        throw SolverError("gaussian_randomization: matrix has no positive eigenvalue");
    }
    const CMatrix factor = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();

    RandomizationResult out;
    int index = 0;
    auto consider = [&](const CVector& raw) {
        CVector cand = project(raw);
        const double val = evaluate_candidate(cand);
        if (val > out.objective) {
            out.objective = val;
            out.best = std::move(cand);
            out.index = index;
        }
        ++index;
    };
    Eigen::Index top = 0;
    lam.maxCoeff(&top);
    consider(es.eigenvectors().col(top));
    for (const auto& e : extra) consider(e);
    for (int i = 1; i < count; ++i) consider(factor * complex_gaussian(r.rows(), rng));
    return out;
}

/// Randomization returning unit-norm candidates.
template <class Evaluate>
RandomizationResult gaussian_randomization(const CMatrix& r, Evaluate&& evaluate_candidate, int count, Rng& rng)
{
    return gaussian_randomization(r, std::forward<Evaluate>(evaluate_candidate), count, rng,
                                  [](const CVector& x) -> CVector {
                                      const double n = x.norm();
                                      return n > 0.0 ? CVector(x / n) : x;
                                  });
}

} // namespace spwt::convex
