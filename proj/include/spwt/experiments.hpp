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

#include "spwt/baseline.hpp"
#include "spwt/channel.hpp"
#include "spwt/io.hpp"
#include "spwt/metrics.hpp"
#include "spwt/msinr.hpp"
#include "spwt/mslnr.hpp"
#include "spwt/msr.hpp"
#include "spwt/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace spwt {

enum class SweepKind { SinrSurface, Convergence, SrVsSnr, SrVsAlpha, SrVsNt, SrVsMi };
enum class Scheme { Msinr, Msr, Mslnr, Baseline };

inline std::string to_string(SweepKind k)
{
    switch (k) {
    case SweepKind::SinrSurface: return "sinr_surface";
    case SweepKind::Convergence: return "convergence";
    case SweepKind::SrVsSnr: return "sr_vs_snr";
    case SweepKind::SrVsAlpha: return "sr_vs_alpha";
    case SweepKind::SrVsNt: return "sr_vs_nt";
    case SweepKind::SrVsMi: return "sr_vs_mi";
    }
    return "unknown";
}

inline std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::Msinr: return "msinr";
    case Scheme::Msr: return "msr";
    case Scheme::Mslnr: return "mslnr";
    case Scheme::Baseline: return "baseline-direct-path-substitute";
    }
    return "unknown";
}

inline SweepKind parse_sweep_kind(const std::string& name)
{
    for (SweepKind k : {SweepKind::SinrSurface, SweepKind::Convergence, SweepKind::SrVsSnr, SweepKind::SrVsAlpha,
                        SweepKind::SrVsNt, SweepKind::SrVsMi}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown sweep kind '" + name + "'");
}

inline Scheme parse_scheme(const std::string& name)
{
    if (name == "msinr") return Scheme::Msinr;
    if (name == "msr") return Scheme::Msr;
    if (name == "mslnr") return Scheme::Mslnr;
    if (name == "baseline" || name == to_string(Scheme::Baseline)) return Scheme::Baseline;
    throw ConfigError("unknown scheme '" + name + "'");
}

inline std::vector<double> linspace(double lo, double hi, int count)
{
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return out;
}

struct SweepSpec {
    SweepKind kind = SweepKind::SrVsSnr;
    std::vector<double> values;  // swept axis: SNR (dB), alpha, N_T or M_I; unused by the surface
    std::vector<double> snrs;    // one curve per entry; empty keeps the scenario's own noise power
    std::vector<double> grid_x;  // sinr_surface only
    std::vector<double> grid_y;
    int trials = 10;
    std::vector<Scheme> schemes;
    std::uint64_t seed = 1;
    std::uint64_t stride = 1000;
    int threads = 0;             // 0: one per hardware thread
    MsinrOptions msinr;
    MsrOptions msr;
    MslnrOptions mslnr;
};

/// Desk-scale defaults for each sweep kind.
inline SweepSpec default_sweep(SweepKind kind)
{
    SweepSpec s;
    s.kind = kind;
    switch (kind) {
    case SweepKind::SinrSurface:
        s.grid_x = linspace(0.0, 200.0, 41);
        s.grid_y = linspace(0.0, 200.0, 41);
        s.snrs = {10.0};
        s.trials = 1;
        s.schemes = {Scheme::Msinr};
        break;
    case SweepKind::Convergence:
        s.snrs = {10.0};
        s.schemes = {Scheme::Msinr};
        break;
    case SweepKind::SrVsSnr:
        s.values = linspace(-10.0, 10.0, 21);
        s.schemes = {Scheme::Msr, Scheme::Mslnr, Scheme::Baseline};
        break;
    case SweepKind::SrVsAlpha:
        s.values = linspace(0.1, 0.9, 9);
        s.snrs = {-10.0, 0.0, 10.0};
        s.schemes = {Scheme::Mslnr};
        break;
    case SweepKind::SrVsNt:
    case SweepKind::SrVsMi:
        s.values = {2.0, 3.0, 4.0, 5.0};
        s.snrs = {0.0};
        s.schemes = {Scheme::Msr, Scheme::Mslnr};
        break;
    }
    return s;
}

inline void validate(const SweepSpec& s)
{
    if (s.trials < 1) throw ConfigError("sweep: trials must be >= 1");
    if (s.schemes.empty()) throw ConfigError("sweep: at least one scheme is required");
    if (s.kind == SweepKind::SinrSurface) {
        if (s.grid_x.empty() || s.grid_y.empty()) throw ConfigError("sweep: surface grid must be nonempty");
        for (Scheme sc : s.schemes) {
            if (sc != Scheme::Msinr) throw ConfigError("sweep: sinr_surface supports only the msinr scheme");
        }
    } else if (s.kind == SweepKind::Convergence) {
        for (Scheme sc : s.schemes) {
            if (sc == Scheme::Baseline) throw ConfigError("sweep: convergence has no baseline trace");
        }
    } else if (s.values.empty()) {
        throw ConfigError("sweep: axis values must be nonempty");
    }
    for (double v : s.values) {
        if (!std::isfinite(v)) throw ConfigError("sweep: axis values must be finite");
        if (s.kind == SweepKind::SrVsAlpha && !(v >= 0.0 && v <= 1.0)) throw ConfigError("sweep: alpha outside [0, 1]");
        if ((s.kind == SweepKind::SrVsNt || s.kind == SweepKind::SrVsMi) && (v < 1.0 || v != std::floor(v))) {
            throw ConfigError("sweep: array sizes must be positive integers");
        }
    }
}

/// A (curve, axis value) pair. Curves come from `snrs`.
struct SweepPoint {
    std::size_t index = 0;
    std::optional<double> snr;
    double value = 0.0;
    std::string label;   // sweep column
    std::string param;   // param column
};

inline std::vector<SweepPoint> sweep_points(const SweepSpec& spec)
{
    std::vector<std::optional<double>> curves;
    if (spec.snrs.empty()) {
        curves.push_back(std::nullopt);
    } else {
        for (double s : spec.snrs) curves.emplace_back(s);
    }
    const std::string name = to_string(spec.kind);
    std::vector<SweepPoint> out;
    auto label_for = [&](const std::optional<double>& snr) {
        if (spec.kind == SweepKind::SrVsAlpha && snr && curves.size() > 1) return name + "[snr=" + format_number(*snr) + "]";
        return name;
    };
    if (spec.kind == SweepKind::SinrSurface || spec.kind == SweepKind::Convergence) {
        out.push_back({0, curves.front(), 0.0, name, ""});
        return out;
    }
    for (const auto& snr : curves) {
        for (double v : spec.values) {
            out.push_back({out.size(), snr, v, label_for(snr), format_number(v)});
        }
    }
    return out;
}

inline std::uint64_t trial_seed(const SweepSpec& spec, std::size_t point, int trial)
{
    return spec.seed + static_cast<std::uint64_t>(point) * spec.stride + static_cast<std::uint64_t>(trial);
}

/// Scenario of one (point, trial): the swept parameter applied to `base` and
/// the subcarrier draw seeded by the trial seed.
inline ScenarioConfig point_scenario(const SweepSpec& spec, const ScenarioConfig& base, const SweepPoint& point,
                                     int trial)
{
    ScenarioConfig s = base;
    s.seed = trial_seed(spec, point.index, trial);
    if (point.snr) s.set_snr_db(*point.snr);
    switch (spec.kind) {
    case SweepKind::SrVsSnr: s.set_snr_db(point.value); break;
    case SweepKind::SrVsAlpha: s.alpha = point.value; break;
    case SweepKind::SrVsNt:
        s.alice_rows = static_cast<int>(point.value);
        s.alice_cols = static_cast<int>(point.value);
        break;
    case SweepKind::SrVsMi: s.set_irs_shape(static_cast<int>(point.value), static_cast<int>(point.value)); break;
    case SweepKind::SinrSurface:
    case SweepKind::Convergence:
        if (!s.desired.empty()) s.desired.resize(1);
        break;
    }
    validate(s);
    return s;
}

/// Row plus what is needed to re-derive its value.
struct ResultRecord {
    ResultRow row;
    std::size_t point = 0;
    std::shared_ptr<const BeamformerState> state;  // final state; null for failed runs and trace rows
    bool flagged = false;
    bool failed = false;
};

struct ResultTable {
    std::vector<ResultRecord> records;
    std::optional<Surface> surface;
    int failures = 0;
    int solver_failures = 0;

    std::vector<ResultRow> rows() const
    {
        std::vector<ResultRow> out;
        out.reserve(records.size());
        for (const auto& r : records) out.push_back(r.row);
        return out;
    }
};

namespace detail {

struct SchemeRun {
    SchemeResult result;
    double secrecy = 0.0;
    bool failed = false;
    bool solver_failure = false;
};

inline SchemeRun run_scheme(Scheme scheme, const SweepSpec& spec, const ScenarioConfig& s, std::uint64_t seed)
{
    SchemeRun out;
    try {
        const SubcarrierAllocation alloc = allocate_subcarriers(s);
        if (scheme == Scheme::Baseline) {
            const DirectPathSet d = build_direct_paths(s, alloc);
            out.result = run_direct_baseline(d, s.alpha, seed);
            out.secrecy = secrecy_rate(out.result.state, d);
            return out;
        }
        const ChannelSet c = build_channels(s, alloc);
        switch (scheme) {
        case Scheme::Msinr: {
            MsinrOptions o = spec.msinr;
            o.seed = seed;
            out.result = run_msinr(c, s.alpha, o);
            break;
        }
        case Scheme::Msr: {
            MsrOptions o = spec.msr;
            o.seed = seed;
            out.result = run_msr(c, s.alpha, o);
            break;
        }
        case Scheme::Mslnr: {
            MslnrOptions o = spec.mslnr;
            o.seed = seed;
            out.result = run_mslnr(c, s.alpha, o);
            break;
        }
        case Scheme::Baseline: break;
        }
        out.secrecy = c.eavesdroppers.empty() && c.desired.empty() ? 0.0 : secrecy_rate(out.result.state, c);
    } catch (const SolverError&) {
        out.failed = true;
        out.solver_failure = true;
    } catch (const Error&) {
        out.failed = true;
    }
    return out;
}

template <class Task>
void parallel_for(std::size_t count, int threads, Task&& task)
{
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline ResultRecord failed_record(const std::string& sweep, const std::string& param, Scheme scheme, int trial,
                                  const std::string& metric, std::size_t point)
{
    ResultRecord r;
    r.row = {sweep, param, to_string(scheme), trial, metric, std::numeric_limits<double>::quiet_NaN(), -1, 0.0};
    r.point = point;
    r.failed = true;
    r.flagged = true;
    return r;
}

inline ResultTable run_surface(const SweepSpec& spec, const ScenarioConfig& base)
{
    const SweepPoint point = sweep_points(spec).front();
    const ScenarioConfig s = point_scenario(spec, base, point, 0);
    const std::uint64_t seed = trial_seed(spec, 0, 0);
    ResultTable table;
    const SchemeRun run = run_scheme(Scheme::Msinr, spec, s, seed);
    if (run.failed) {
        table.records.push_back(failed_record(point.label, "", Scheme::Msinr, 0, "sinr", 0));
        table.failures = 1;
        table.solver_failures = run.solver_failure ? 1 : 0;
        return table;
    }
    const SubcarrierAllocation alloc = allocate_subcarriers(s);
    const std::vector<CVector> to_irs = alice_to_irs_steering(s, alloc);
    const auto state = std::make_shared<const BeamformerState>(run.result.state);

    Surface surface;
    surface.xs = spec.grid_x;
    surface.ys = spec.grid_y;
    surface.title = "SINR over the ground plane";
    surface.values.assign(spec.grid_x.size() * spec.grid_y.size(), 0.0);
    parallel_for(surface.values.size(), spec.threads, [&](std::size_t i) {
        const std::size_t ix = i % spec.grid_x.size();
        const std::size_t iy = i / spec.grid_x.size();
        const UserChannel u = build_user_channel(s, alloc, to_irs, {spec.grid_x[ix], spec.grid_y[iy], 0.0});
        surface.values[i] = sinr(*state, u, s.noise_power);
    });
    for (std::size_t i = 0; i < surface.values.size(); ++i) {
        const std::size_t ix = i % spec.grid_x.size();
        const std::size_t iy = i / spec.grid_x.size();
        ResultRecord r;
        r.row = {point.label, format_number(spec.grid_x[ix]) + ":" + format_number(spec.grid_y[iy]),
                 to_string(Scheme::Msinr), 0, "sinr", surface.values[i], run.result.iterations, run.result.wall_ms};
        r.state = state;
        r.flagged = run.result.flagged;
        table.records.push_back(std::move(r));
    }
    table.surface = std::move(surface);
    return table;
}

} // namespace detail

/// Runs every (point, scheme, trial) of the sweep. Rows are ordered by point,
/// then scheme, then trial, independent of the thread count.
inline ResultTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base)
{
    validate(spec);
    validate(base);
    if (spec.kind == SweepKind::SinrSurface) return detail::run_surface(spec, base);

    const std::vector<SweepPoint> points = sweep_points(spec);
    const std::size_t n_schemes = spec.schemes.size();
    const std::size_t n_trials = static_cast<std::size_t>(spec.trials);
    const std::size_t total = points.size() * n_schemes * n_trials;
    std::vector<detail::SchemeRun> runs(total);
    std::vector<std::uint8_t> bad_scenario(total, 0);
    detail::parallel_for(total, spec.threads, [&](std::size_t i) {
        const std::size_t t = i % n_trials;
        const std::size_t sc = (i / n_trials) % n_schemes;
        const std::size_t p = i / (n_trials * n_schemes);
        try {
            const ScenarioConfig s = point_scenario(spec, base, points[p], static_cast<int>(t));
            runs[i] = detail::run_scheme(spec.schemes[sc], spec, s, trial_seed(spec, p, static_cast<int>(t)));
        } catch (const Error&) {
            runs[i].failed = true;
        }
    });

    ResultTable table;
    const bool trace_rows = spec.kind == SweepKind::Convergence;
    const std::string metric = trace_rows ? "sinr" : "secrecy_rate";
    for (std::size_t i = 0; i < total; ++i) {
        const int t = static_cast<int>(i % n_trials);
        const Scheme scheme = spec.schemes[(i / n_trials) % n_schemes];
        const SweepPoint& point = points[i / (n_trials * n_schemes)];
        const detail::SchemeRun& run = runs[i];
        if (run.failed) {
            table.records.push_back(detail::failed_record(point.label, point.param, scheme, t, metric, point.index));
            ++table.failures;
            if (run.solver_failure) ++table.solver_failures;
            continue;
        }
        auto state = std::make_shared<const BeamformerState>(run.result.state);
        if (trace_rows) {
            for (std::size_t k = 0; k < run.result.trace.size(); ++k) {
                ResultRecord r;
                r.row = {point.label, std::to_string(k), to_string(scheme), t, scheme == Scheme::Msinr ? "sinr" : "objective",
                         run.result.trace[k], run.result.iterations, run.result.wall_ms};
                r.point = point.index;
                r.flagged = run.result.flagged;
                table.records.push_back(std::move(r));
            }
            continue;
        }
        ResultRecord r;
        r.row = {point.label, point.param, to_string(scheme), t, metric, run.secrecy, run.result.iterations,
                 run.result.wall_ms};
        r.point = point.index;
        r.state = std::move(state);
        r.flagged = run.result.flagged;
        table.records.push_back(std::move(r));
    }
    return table;
}

} // namespace spwt
