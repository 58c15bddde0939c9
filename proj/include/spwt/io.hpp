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

#include "spwt/scenario.hpp"
#include "spwt/types.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace spwt {

namespace detail {

inline Position3D position_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError("invalid scenario field '" + field + "': expected [x, y, z]");
    }
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError("invalid scenario field '" + field + "': coordinates must be numbers");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json position_to_json(const Position3D& p) { return nlohmann::json::array({p.x, p.y, p.z}); }

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <class T>
void read_number(const nlohmann::json& j, const char* key, T& out)
{
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError(std::string("invalid scenario field '") + key + "': expected an integer");
    } else {
        if (!v.is_number()) throw ConfigError(std::string("invalid scenario field '") + key + "': expected a number");
    }
    out = v.get<T>();
}

inline std::vector<Position3D> positions_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array()) throw ConfigError("invalid scenario field '" + field + "': expected a list of [x, y, z]");
    std::vector<Position3D> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(position_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

} // namespace detail

/// Scenario from parsed JSON. Missing keys keep the reference defaults;
/// unknown keys are rejected.
inline ScenarioConfig scenario_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
    detail::reject_unknown(j,
                           {"alice_rows", "alice_cols", "alice_spacing", "irs", "desired", "eavesdroppers",
                            "transmit_power", "alpha", "noise_power", "snr_db", "speed_of_light", "carrier",
                            "bandwidth", "subcarriers", "path_loss_constant", "seed"},
                           "scenario");
    ScenarioConfig s = reference_scenario();
    detail::read_number(j, "alice_rows", s.alice_rows);
    detail::read_number(j, "alice_cols", s.alice_cols);
    detail::read_number(j, "alice_spacing", s.alice_spacing);
    detail::read_number(j, "transmit_power", s.transmit_power);
    detail::read_number(j, "alpha", s.alpha);
    detail::read_number(j, "noise_power", s.noise_power);
    detail::read_number(j, "speed_of_light", s.speed_of_light);
    detail::read_number(j, "carrier", s.carrier);
    detail::read_number(j, "bandwidth", s.bandwidth);
    detail::read_number(j, "subcarriers", s.subcarriers);
    detail::read_number(j, "path_loss_constant", s.path_loss_constant);
    detail::read_number(j, "seed", s.seed);
    if (j.contains("snr_db")) {
        if (j.contains("noise_power")) throw ConfigError("invalid scenario field 'snr_db': conflicts with noise_power");
        double snr = 0.0;
        detail::read_number(j, "snr_db", snr);
        if (!(s.transmit_power > 0.0)) throw ConfigError("invalid scenario field 'transmit_power': must be positive");
        s.set_snr_db(snr);
    }
    if (j.contains("irs")) {
        const auto& list = j.at("irs");
        if (!list.is_array()) throw ConfigError("invalid scenario field 'irs': expected a list");
        std::vector<IrsPlacement> irs;
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string tag = "irs[" + std::to_string(k) + "]";
            const auto& e = list[k];
            if (!e.is_object()) throw ConfigError("invalid scenario field '" + tag + "': expected an object");
            detail::reject_unknown(e, {"position", "placement_angle", "rows", "cols", "spacing"}, tag);
            if (!e.contains("position")) throw ConfigError("invalid scenario field '" + tag + ".position': missing");
            IrsPlacement p;
            p.element_spacing = s.half_wavelength();
            p.position = detail::position_from_json(e.at("position"), tag + ".position");
            detail::read_number(e, "placement_angle", p.placement_angle);
            detail::read_number(e, "rows", p.rows);
            detail::read_number(e, "cols", p.cols);
            detail::read_number(e, "spacing", p.element_spacing);
            irs.push_back(p);
        }
        s.irs = std::move(irs);
    }
    if (j.contains("desired")) s.desired = detail::positions_from_json(j.at("desired"), "desired");
    if (j.contains("eavesdroppers")) s.eavesdroppers = detail::positions_from_json(j.at("eavesdroppers"), "eavesdroppers");
    validate(s);
    return s;
}

inline nlohmann::json scenario_to_json(const ScenarioConfig& s)
{
    nlohmann::json j;
    j["alice_rows"] = s.alice_rows;
    j["alice_cols"] = s.alice_cols;
    j["alice_spacing"] = s.resolved_alice_spacing();
    j["irs"] = nlohmann::json::array();
    for (const auto& p : s.irs) {
        j["irs"].push_back({{"position", detail::position_to_json(p.position)},
                            {"placement_angle", p.placement_angle},
                            {"rows", p.rows},
                            {"cols", p.cols},
                            {"spacing", p.element_spacing}});
    }
    j["desired"] = nlohmann::json::array();
    for (const auto& p : s.desired) j["desired"].push_back(detail::position_to_json(p));
    j["eavesdroppers"] = nlohmann::json::array();
    for (const auto& p : s.eavesdroppers) j["eavesdroppers"].push_back(detail::position_to_json(p));
    j["transmit_power"] = s.transmit_power;
    j["alpha"] = s.alpha;
    j["noise_power"] = s.noise_power;
    j["speed_of_light"] = s.speed_of_light;
    j["carrier"] = s.carrier;
    j["bandwidth"] = s.bandwidth;
    j["subcarriers"] = s.subcarriers;
    j["path_loss_constant"] = s.path_loss_constant;
    j["seed"] = s.seed;
    return j;
}

inline ScenarioConfig load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("scenario config '" + path + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

/// One emitted measurement.
struct ResultRow {
    std::string sweep;
    std::string param;
    std::string scheme;
    int trial = 0;
    std::string metric;
    double value = 0.0;
    int iterations = 0;
    double wall_ms = 0.0;
};

inline constexpr const char* kCsvHeader = "sweep,param,scheme,trial,metric,value,iters,ms";

/// Shortest text that reads back to the same double.
inline std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

/// CSV text; the ms column stays empty unless `timing` is set so that repeated
/// runs are byte-identical.
inline std::string to_csv(const std::vector<ResultRow>& rows, bool timing = false)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.sweep << ',' << r.param << ',' << r.scheme << ',' << r.trial << ',' << r.metric << ','
            << format_number(r.value) << ',' << r.iterations << ',';
        if (timing) {
            std::array<char, 32> buf{};
            std::snprintf(buf.data(), buf.size(), "%.3f", r.wall_ms);
            out << buf.data();
        }
        out << '\n';
    }
    return out.str();
}

inline void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

inline void emit_csv(const std::vector<ResultRow>& rows, const std::string& path, bool timing = false)
{
    if (rows.empty()) throw Error("emit_csv: result table is empty");
    write_text(path, to_csv(rows, timing));
}

/// Values on a rectangular grid, row-major with y as the slow index.
struct Surface {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;
    std::string x_label = "x (m)";
    std::string y_label = "y (m)";
    std::string title;

    double at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
};

namespace detail {

inline std::string fixed(double x, int digits)
{
    std::array<char, 48> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, x);
    return buf.data();
}

inline std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

// Linear ramp through dark blue, teal, yellow.
inline std::string color(double t)
{
    static constexpr std::array<std::array<double, 3>, 3> stops{{{68, 1, 84}, {33, 145, 140}, {253, 231, 37}}};
    t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
    const double pos = t * 2.0;
    const int i = std::min(1, static_cast<int>(pos));
    const double f = pos - i;
    std::array<char, 8> buf{};
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) {
        c[static_cast<std::size_t>(k)] = static_cast<int>(std::lround(
            stops[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * (1.0 - f) +
            stops[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(k)] * f));
    }
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf.data();
}

} // namespace detail

/// Heatmap with a linear color scale, axis labels and a color bar.
inline std::string heatmap_svg(const Surface& s)
{
    const std::size_t nx = s.xs.size();
    const std::size_t ny = s.ys.size();
    if (nx == 0 || ny == 0 || s.values.size() != nx * ny) {
        throw Error("heatmap: surface is empty or inconsistent");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : s.values) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    const double span = hi > lo ? hi - lo : 1.0;

    const int cell = std::max(4, 400 / static_cast<int>(std::max(nx, ny)));
    const int left = 70;
    const int top = 40;
    const int w = cell * static_cast<int>(nx);
    const int h = cell * static_cast<int>(ny);
    const int bar_x = left + w + 20;
    const int width = bar_x + 90;
    const int height = top + h + 60;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (!s.title.empty()) {
        o << "<text x=\"" << left + w / 2 << "\" y=\"20\" text-anchor=\"middle\">" << detail::escape_xml(s.title)
          << "</text>\n";
    }
    for (std::size_t iy = 0; iy < ny; ++iy) {
        // larger y drawn higher
        const int y = top + static_cast<int>(ny - 1 - iy) * cell;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const int x = left + static_cast<int>(ix) * cell;
            o << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
              << "\" fill=\"" << detail::color((s.at(ix, iy) - lo) / span) << "\"/>\n";
        }
    }
    auto tick = [](double v) {
        std::array<char, 32> buf{};
        std::snprintf(buf.data(), buf.size(), "%.4g", v);
        return std::string(buf.data());
    };
    o << "<text x=\"" << left << "\" y=\"" << top + h + 16 << "\" text-anchor=\"middle\">" << tick(s.xs.front())
      << "</text>\n";
    o << "<text x=\"" << left + w << "\" y=\"" << top + h + 16 << "\" text-anchor=\"middle\">" << tick(s.xs.back())
      << "</text>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << top + h << "\" text-anchor=\"end\">" << tick(s.ys.front())
      << "</text>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << tick(s.ys.back())
      << "</text>\n";
    o << "<text x=\"" << left + w / 2 << "\" y=\"" << top + h + 40 << "\" text-anchor=\"middle\">"
      << detail::escape_xml(s.x_label) << "</text>\n";
    o << "<text x=\"20\" y=\"" << top + h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << top + h / 2
      << ")\">" << detail::escape_xml(s.y_label) << "</text>\n";

    const int steps = 32;
    for (int i = 0; i < steps; ++i) {
        const int y = top + h - (i + 1) * h / steps;
        const int next = top + h - i * h / steps;
        o << "<rect x=\"" << bar_x << "\" y=\"" << y << "\" width=\"16\" height=\"" << next - y << "\" fill=\""
          << detail::color((i + 0.5) / steps) << "\"/>\n";
    }
    o << "<text x=\"" << bar_x + 22 << "\" y=\"" << top + h << "\">" << detail::escape_xml(tick(lo)) << "</text>\n";
    o << "<text x=\"" << bar_x + 22 << "\" y=\"" << top + 10 << "\">" << detail::escape_xml(tick(hi)) << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

inline void emit_heatmap_svg(const Surface& s, const std::string& path) { write_text(path, heatmap_svg(s)); }

} // namespace spwt
