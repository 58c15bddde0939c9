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

#include "spwt/spwt.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::vector<spwt::Scheme> parse_schemes(const std::string& list)
{
    std::vector<spwt::Scheme> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(spwt::parse_scheme(item));
    }
    if (out.empty()) throw spwt::ConfigError("--schemes: empty scheme list");
    return out;
}

struct RunArgs {
    std::string config;
    std::string sweep;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string schemes;
    int threads = 0;
    bool timing = false;
};

int run(const RunArgs& a)
{
    const spwt::ScenarioConfig scenario = spwt::load_scenario(a.config);
    spwt::SweepSpec spec = spwt::default_sweep(spwt::parse_sweep_kind(a.sweep));
    if (a.seed) spec.seed = *a.seed;
    if (a.trials) spec.trials = *a.trials;
    if (!a.schemes.empty()) spec.schemes = parse_schemes(a.schemes);
    spec.threads = a.threads;
    spwt::validate(spec);

    std::error_code ec;
    std::filesystem::create_directories(a.out, ec);
    if (ec) throw spwt::ConfigError("cannot create output directory '" + a.out + "': " + ec.message());
    const std::filesystem::path dir(a.out);
    spwt::write_text((dir / "scenario.json").string(), spwt::scenario_to_json(scenario).dump(2) + "\n");

    const spwt::ResultTable table = spwt::run_sweep(spec, scenario);
    const std::string stem = spwt::to_string(spec.kind);
    spwt::emit_csv(table.rows(), (dir / (stem + ".csv")).string(), a.timing);
    if (table.surface) spwt::emit_heatmap_svg(*table.surface, (dir / (stem + ".svg")).string());

    std::cout << "wrote " << table.records.size() << " rows to " << (dir / (stem + ".csv")).string() << "\n";
    if (table.failures > 0) {
        std::cerr << table.failures << " scheme run(s) failed and were recorded as nan rows\n";
    }
    return table.solver_failures > 0 ? kExitSolver : kExitOk;
}

int verify()
{
    bool ok = true;
    for (const auto& r : spwt::verify::run_oracle_suite()) {
        std::printf("[%s] %s: worst ratio %.4f (threshold %.2f, %d cases)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.worst_ratio, r.threshold, r.cases);
        ok = ok && r.pass;
    }
    return ok ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spwt: multi-IRS secure precise wireless transmission experiments"};
    app.require_subcommand(1);

    RunArgs args;
    auto* run_cmd = app.add_subcommand("run", "Run a parameter sweep and write CSV (and SVG for surfaces)");
    run_cmd->add_option("--config", args.config, "Scenario JSON file")->required();
    run_cmd->add_option("--sweep", args.sweep,
                        "sinr_surface | convergence | sr_vs_snr | sr_vs_alpha | sr_vs_nt | sr_vs_mi")
        ->required();
    run_cmd->add_option("--out", args.out, "Output directory")->required();
    run_cmd->add_option("--seed", args.seed, "Seed base");
    run_cmd->add_option("--trials", args.trials, "Trials per sweep point");
    run_cmd->add_option("--schemes", args.schemes, "Comma-separated subset of msinr,msr,mslnr,baseline");
    run_cmd->add_option("--threads", args.threads, "Worker threads (0 = all cores)");
    run_cmd->add_flag("--timing", args.timing, "Fill the ms column with wall time (output no longer byte-stable)");

    auto* verify_cmd = app.add_subcommand("verify", "Run the tiny-instance oracle suite");

    bool print_defaults = false;
    auto* scenario_cmd = app.add_subcommand("scenario", "Scenario utilities");
    scenario_cmd->add_flag("--print-defaults", print_defaults, "Print the reference scenario as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return run(args);
        if (verify_cmd->parsed()) return verify();
        if (scenario_cmd->parsed()) {
            if (!print_defaults) {
                std::cerr << "scenario: nothing to do (try --print-defaults)\n";
                return kExitConfig;
            }
            std::cout << spwt::scenario_to_json(spwt::reference_scenario()).dump(2) << "\n";
            return kExitOk;
        }
    } catch (const spwt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const spwt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
