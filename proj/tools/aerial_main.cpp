// SPDX-License-Identifier: Apache-2.0
//
// aerial: analysis and simulation of multi-layer aerial networks
// Copyright (C) 2026 The aerial authors
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

// Command-line front end. Every subcommand reads one scenario file and writes
// a comma-separated table; nothing is printed until the whole table exists.
//
// Exit codes: 0 success, 1 other failure, 2 parse error, 3 invalid scenario
// or plan, 4 more than 10% of sweep points failed, 5 simulation disagrees.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "aerial/design.hpp"
#include "aerial/montecarlo.hpp"
#include "aerial/report.hpp"
#include "aerial/scenario.hpp"
#include "aerial/sweep.hpp"

using namespace aerial;

namespace
{

enum Exit
{
    exit_ok = 0,
    exit_failure = 1,
    exit_parse = 2,
    exit_invalid = 3,
    exit_sweep_failures = 4,
    exit_tolerance = 5
};

struct Options
{
    std::string scenario;
    std::string plan;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    double tol = 0.03;
    int rx = 0;
    int tx = 0;
    std::string objective = "stp";
    double ceiling = std::numeric_limits<double>::quiet_NaN();
    std::vector<int> tx_layers;
    std::vector<double> totals;
    int points = 21;
    int layer = 0;
};

void emit(const Options & o, const std::string & text)
{
    if (o.out.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file)
        throw Error("cannot write " + o.out);
    file << text;
}

std::string render(const ResultTable & table)
{
    std::ostringstream s;
    write_table(s, table);
    return s.str();
}

Scenario load(const Options & o)
{
    Scenario s;
    try
    {
        s = load_scenario(o.scenario);
    }
    catch (const ParseError & e)
    {
        throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(' ') + 1) +
                             " (in " + o.scenario + ")",
                         e.line(), e.column());
    }
    if (o.seed)
        s.simulation.seed = *o.seed;
    if (o.trials)
        s.simulation.trials = *o.trials;
    return s;
}

int cmd_evaluate(const Options & o)
{
    const Scenario s = load(o);
    const ValidatedConfig v = validate(s.network);
    const PerformanceReport r = network_aggregate(v, s.rule, s.settings);
    emit(o, render(performance_table(s, v, r)));
    return exit_ok;
}

int cmd_sweep(const Options & o)
{
    const Scenario s = load(o);
    validate(s.network);
    SweepPlan plan = load_plan(o.plan);
    if (o.seed)
        plan.simulation.seed = *o.seed;
    if (o.trials)
        plan.simulation.trials = *o.trials;
    const SweepResult r = run_sweep(s, plan);
    emit(o, render(r.table));
    if (r.failed * 10 > r.points)
    {
        std::cerr << r.failed << " of " << r.points << " sweep points failed\n";
        return exit_sweep_failures;
    }
    return exit_ok;
}

int cmd_bound(const Options & o)
{
    const Scenario s = load(o);
    const ValidatedConfig v = validate(s.network);
    const DensityBound b = density_upper_bound(v, s.rule, o.rx, o.tx, parse_objective(o.objective));
    emit(o, render(bound_table(s, b)));
    return exit_ok;
}

int cmd_optimize(const Options & o)
{
    const Scenario s = load(o);
    const ValidatedConfig v = validate(s.network);
    const Objective objective = parse_objective(o.objective);
    const DensityBound b = density_upper_bound(v, s.rule, o.rx, o.tx, objective);
    double ceiling = o.ceiling;
    if (std::isnan(ceiling))
        ceiling = std::isfinite(b.value()) ? b.value() : 1e-3;
    const DensityOptimum opt = optimize_density(v, s.rule, o.rx, o.tx, objective,
                                                default_density_grid(ceiling), ceiling, s.settings);
    emit(o, render(optimum_table(s, opt, b)));
    return exit_ok;
}

int cmd_split(const Options & o)
{
    const Scenario s = load(o);
    const ValidatedConfig v = validate(s.network);
    if (o.tx_layers.size() != 2)
        throw ValidationError({"split needs exactly two --tx-layers"});
    if (o.points < 2)
        throw ValidationError({"split needs at least two points"});
    const Objective objective = parse_objective(o.objective);
    const Eigen::VectorXd splits = Eigen::VectorXd::LinSpaced(o.points, 0.0, 1.0);
    std::vector<SplitSweepResult> results;
    for (double total : o.totals)
        results.push_back(two_layer_split(v, s.rule, o.tx_layers[0], o.tx_layers[1], total, splits,
                                          objective, s.settings));
    emit(o, render(split_table(s, results, objective)));
    return exit_ok;
}

int cmd_validate(const Options & o)
{
    const Scenario s = load(o);
    const ValidationRun r = validate_against_simulation(s, s.simulation, o.tol);
    emit(o, render(r.table));
    if (!r.passed)
    {
        std::cerr << "simulation disagrees with the analysis beyond tolerance " << o.tol << '\n';
        return exit_tolerance;
    }
    return exit_ok;
}

int cmd_dump(const Options & o)
{
    const Scenario s = load(o);
    const ValidatedConfig v = validate(s.network);
    SimSpec spec = s.simulation;
    spec.typical_node_layer = o.layer;
    const MonteCarloRun run = run_trials(v, s.rule, spec);
    std::ostringstream text;
    for (const auto & [key, value] : standard_metadata(s, spec.seed))
        text << "# " << key << ": " << value << '\n';
    text << "# window_radius_m: " << format_number(run.window_radius) << '\n';
    text << "# discard_fraction: " << format_number(run.discard_fraction()) << '\n';
    write_outcomes(text, run);
    emit(o, text.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Analysis and simulation of multi-layer aerial networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));
    Options o;

    auto common = [&](CLI::App * sub) {
        sub->add_option("--scenario", o.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output file (default: standard output)");
        sub->add_option("--seed", o.seed, "RNG seed, overrides the scenario");
    };
    auto pair = [&](CLI::App * sub) {
        sub->add_option("--layer", o.rx, "Layer whose objective is studied")->required();
        sub->add_option("--tx", o.tx, "Transmitter layer whose density varies")->required();
        sub->add_option("--objective", o.objective, "stp or ase")
            ->check(CLI::IsMember({"stp", "ase"}));
    };

    auto * evaluate = app.add_subcommand("evaluate", "Per-layer and network STP and ASE");
    common(evaluate);

    auto * sweep = app.add_subcommand("sweep", "Evaluate over a parameter grid");
    common(sweep);
    sweep->add_option("--plan", o.plan, "Sweep plan file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--trials", o.trials, "Trials per point when the plan simulates");

    auto * bound = app.add_subcommand("bound", "Upper bound on the optimal transmitter density");
    common(bound);
    pair(bound);

    auto * optimize = app.add_subcommand("optimize", "Grid search for the optimal transmitter density");
    common(optimize);
    pair(optimize);
    optimize->add_option("--ceiling", o.ceiling, "Largest density searched (default: the bound)");

    auto * split = app.add_subcommand("split", "Share a total transmitter density between two layers");
    common(split);
    split->add_option("--tx-layers", o.tx_layers, "The two transmitter layers")->required()->expected(2);
    split->add_option("--total", o.totals, "Total densities [1/m^2]")->required();
    split->add_option("--points", o.points, "Split fractions in [0, 1]");
    split->add_option("--objective", o.objective, "stp or ase")->check(CLI::IsMember({"stp", "ase"}));

    auto * check = app.add_subcommand("validate", "Compare the analysis with simulation");
    common(check);
    check->add_option("--trials", o.trials, "Trials per selector layer");
    check->add_option("--tol", o.tol, "Largest accepted difference");

    auto * dump = app.add_subcommand("montecarlo-dump", "Raw simulation outcomes");
    common(dump);
    dump->add_option("--trials", o.trials, "Number of trials");
    dump->add_option("--typical-layer", o.layer, "Layer of the typical node");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e)
    {
        return app.exit(e);
    }

    try
    {
        if (evaluate->parsed())
            return cmd_evaluate(o);
        if (sweep->parsed())
            return cmd_sweep(o);
        if (bound->parsed())
            return cmd_bound(o);
        if (optimize->parsed())
            return cmd_optimize(o);
        if (split->parsed())
            return cmd_split(o);
        if (check->parsed())
            return cmd_validate(o);
        if (dump->parsed())
            return cmd_dump(o);
    }
    catch (const ParseError & e)
    {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    }
    catch (const ValidationError & e)
    {
        std::cerr << "invalid input:\n";
        for (const auto & p : e.problems())
            std::cerr << "  " << p << '\n';
        return exit_invalid;
    }
    catch (const NoCandidate & e)
    {
        std::cerr << "no association target: " << e.what() << '\n';
        return exit_invalid;
    }
    catch (const std::exception & e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}
