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

#include "aerial/sweep.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "aerial/parallel.hpp"

namespace aerial
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

using toml::Table;
using toml::Value;

GridSpec read_grid(const Table & t)
{
    t.expect_keys({"min", "max", "points", "spacing"});
    GridSpec g;
    g.min = t.at("min").number();
    g.max = t.at("max").number();
    const Value & points = t.at("points");
    const long long n = points.integer();
    if (n < 0 || n > 1000000)
        throw ParseError("points out of range", points.line, points.column);
    g.points = static_cast<int>(n);
    if (const Value * s = t.find("spacing"))
    {
        if (s->string() == "log")
            g.log_spacing = true;
        else if (s->string() != "lin")
            throw ParseError("spacing must be lin or log", s->line, s->column);
    }
    return g;
}

struct Point
{
    std::vector<double> inputs;
    int group = 0;  // split_ratio: index of the total
};

std::string layer_tag(int k) { return "L" + std::to_string(k); }

// Weighted combination of independent per-layer estimates.
void accumulate(Estimate & total, double weight, const Estimate & e)
{
    total.mean += weight * e.mean;
    total.standard_error = std::hypot(total.standard_error, weight * e.standard_error);
    total.samples += e.samples;
}

}  // namespace

std::string_view to_string(SweepVariable v)
{
    switch (v)
    {
        case SweepVariable::altitude: return "altitude";
        case SweepVariable::density_single: return "density_single";
        case SweepVariable::density_grid_2d: return "density_grid_2d";
        case SweepVariable::split_ratio: return "split_ratio";
        case SweepVariable::beta: return "beta";
    }
    return "";
}

Eigen::VectorXd GridSpec::values() const
{
    if (points < 2)
        throw DomainError("a grid needs at least two points");
    if (log_spacing)
    {
        if (!(min > 0.0) || !(max > 0.0))
            throw DomainError("log grid needs positive bounds");
        Eigen::VectorXd out(points);
        for (int i = 0; i < points; ++i)
            out[i] = min * std::pow(max / min, static_cast<double>(i) / (points - 1));
        out[points - 1] = max;
        return out;
    }
    Eigen::VectorXd out = Eigen::VectorXd::LinSpaced(points, min, max);
    out[points - 1] = max;
    return out;
}

std::vector<std::string> SweepPlan::problems() const
{
    std::vector<std::string> out;
    auto check_grid = [&](const GridSpec & g, const char * name) {
        if (g.points < 2)
            out.push_back(std::string(name) + ": grid points below 2");
        if (!std::isfinite(g.min) || !std::isfinite(g.max))
            out.push_back(std::string(name) + ": grid bounds must be finite");
        if (g.log_spacing && !(g.min > 0.0 && g.max > 0.0))
            out.push_back(std::string(name) + ": log grid needs positive bounds");
    };
    check_grid(grid, "grid");
    std::size_t needed = 0;
    switch (variable)
    {
        case SweepVariable::altitude:
            if (layers.empty())
                out.push_back("altitude sweep needs at least one layer");
            break;
        case SweepVariable::density_single: needed = 1; break;
        case SweepVariable::density_grid_2d:
            needed = 2;
            check_grid(grid2, "grid2");
            break;
        case SweepVariable::split_ratio:
            needed = 2;
            if (totals.empty())
                out.push_back("split sweep needs at least one total density");
            for (double t : totals)
                if (!(t > 0.0) || !std::isfinite(t))
                    out.push_back("split totals must be positive");
            if (grid.min < 0.0 || grid.max > 1.0)
                out.push_back("split fractions must lie in [0, 1]");
            break;
        case SweepVariable::beta:
            if (!(grid.min > 0.0))
                out.push_back("beta grid must be positive");
            break;
    }
    if (needed && layers.size() != needed)
        out.push_back(std::string(to_string(variable)) + " sweep needs exactly " +
                      std::to_string(needed) + " layer(s)");
    if (needed == 2 && layers.size() == 2 && layers[0] == layers[1])
        out.push_back("the two swept layers must differ");
    if (montecarlo && simulation.trials < 1)
        out.push_back("montecarlo validation needs a positive trial count");
    return out;
}

SweepPlan parse_plan(std::string_view text)
{
    const toml::Document doc = toml::parse(text);
    doc.expect_tables({"grid", "grid2", "split", "validation"});
    doc.root.expect_keys({"schema_version", "variable", "objective", "layers"});
    const Value & version = doc.root.at("schema_version");
    if (version.integer() != plan_schema_version)
        throw ParseError("unsupported schema_version " + std::to_string(version.integer()),
                         version.line, version.column);

    SweepPlan plan;
    const Value & variable = doc.root.at("variable");
    bool known = false;
    for (auto v : {SweepVariable::altitude, SweepVariable::density_single,
                   SweepVariable::density_grid_2d, SweepVariable::split_ratio, SweepVariable::beta})
        if (variable.string() == to_string(v))
        {
            plan.variable = v;
            known = true;
        }
    if (!known)
        throw ParseError("unknown sweep variable '" + variable.string() + "'", variable.line,
                         variable.column);

    if (const Value * o = doc.root.find("objective"))
    {
        if (o->string() == "stp")
            plan.objective = SweepObjective::stp;
        else if (o->string() == "ase")
            plan.objective = SweepObjective::ase;
        else if (o->string() == "both")
            plan.objective = SweepObjective::both;
        else
            throw ParseError("objective must be stp, ase or both", o->line, o->column);
    }
    if (const Value * l = doc.root.find("layers"))
        for (const auto & v : l->array())
        {
            const long long k = v.integer();
            if (k < 0 || k > 1000)
                throw ParseError("layer index out of range", v.line, v.column);
            plan.layers.push_back(static_cast<int>(k));
        }

    const Table * grid = doc.table("grid");
    if (!grid)
        throw ParseError("missing table [grid]", 1, 1);
    plan.grid = read_grid(*grid);
    if (const Table * g2 = doc.table("grid2"))
        plan.grid2 = read_grid(*g2);
    if (const Table * split = doc.table("split"))
    {
        split->expect_keys({"totals"});
        for (const auto & v : split->at("totals").array())
            plan.totals.push_back(v.number());
    }
    if (const Table * val = doc.table("validation"))
    {
        val->expect_keys({"mode", "trials", "seed", "window_radius"});
        const Value & mode = val->at("mode");
        if (mode.string() == "montecarlo")
            plan.montecarlo = true;
        else if (mode.string() != "none")
            throw ParseError("validation mode must be none or montecarlo", mode.line, mode.column);
        if (const Value * v = val->find("trials"))
            plan.simulation.trials = v->integer();
        if (const Value * v = val->find("seed"))
        {
            if (v->integer() < 0)
                throw ParseError("seed must be non-negative", v->line, v->column);
            plan.simulation.seed = static_cast<std::uint64_t>(v->integer());
        }
        if (const Value * v = val->find("window_radius"))
            plan.simulation.window_radius = v->number();
    }
    return plan;
}

SweepPlan load_plan(const std::string & path) { return parse_plan(read_file(path)); }

NetworkEstimate simulate_network(const ValidatedConfig & config, const AssociationRule & rule,
                                 const SimSpec & spec)
{
    const Eigen::VectorXd weights = selector_densities(config, rule);
    const double total = weights.sum();
    const Eigen::MatrixXd rates = rate_matrix(config);
    NetworkEstimate out;
    std::int64_t attempted = 0;
    std::int64_t discarded = 0;
    for (int k = 0; k < config.layer_count(); ++k)
    {
        if (weights[k] == 0.0)
            continue;
        SimSpec s = spec;
        s.typical_node_layer = k;
        const MonteCarloRun run = run_trials(config, rule, s);
        attempted += run.attempted;
        discarded += run.discarded;
        accumulate(out.stp, weights[k] / total, empirical_stp(run));

        std::vector<double> rate(run.outcomes.size());
        for (std::size_t n = 0; n < rate.size(); ++n)
        {
            const auto & o = run.outcomes[n];
            const int rx = rule.orientation == Orientation::receiver ? k : o.layer;
            const int tx = rule.orientation == Orientation::receiver ? o.layer : k;
            rate[n] = o.success ? rates(rx, tx) : 0.0;
        }
        Estimate r;
        r.samples = static_cast<std::int64_t>(rate.size());
        if (!rate.empty())
        {
            r.mean = Eigen::Map<Eigen::VectorXd>(rate.data(), r.samples).mean();
            if (rate.size() > 1)
            {
                const double var = (Eigen::Map<Eigen::VectorXd>(rate.data(), r.samples).array() - r.mean)
                                       .square()
                                       .sum() /
                                   (r.samples - 1);
                r.standard_error = std::sqrt(var / r.samples);
            }
        }
        accumulate(out.ase, weights[k], r);
    }
    out.discard_fraction =
        attempted ? static_cast<double>(discarded) / static_cast<double>(attempted) : 0.0;
    return out;
}

SweepResult run_sweep(const Scenario & scenario, const SweepPlan & plan)
{
    std::vector<std::string> problems = plan.problems();
    const int layer_count = static_cast<int>(scenario.network.layers.size());
    for (int k : plan.layers)
        if (k >= layer_count)
            problems.push_back("plan layer " + std::to_string(k) + " not in the scenario");
    if (!problems.empty())
        throw ValidationError(problems);

    // points and input columns
    std::vector<Point> points;
    std::vector<std::string> columns;
    const Eigen::VectorXd g = plan.grid.values();
    switch (plan.variable)
    {
        case SweepVariable::altitude:
            columns = {"altitude_m"};
            break;
        case SweepVariable::density_single:
            columns = {"density_tx_" + layer_tag(plan.layers[0]) + "_per_m2"};
            break;
        case SweepVariable::density_grid_2d:
            columns = {"density_tx_" + layer_tag(plan.layers[0]) + "_per_m2",
                       "density_tx_" + layer_tag(plan.layers[1]) + "_per_m2"};
            break;
        case SweepVariable::split_ratio:
            columns = {"total_density_per_m2", "split"};
            break;
        case SweepVariable::beta:
            columns = {"beta"};
            break;
    }
    if (plan.variable == SweepVariable::density_grid_2d)
    {
        const Eigen::VectorXd g2 = plan.grid2.values();
        for (Eigen::Index a = 0; a < g.size(); ++a)
            for (Eigen::Index b = 0; b < g2.size(); ++b)
                points.push_back({{g[a], g2[b]}, 0});
    }
    else if (plan.variable == SweepVariable::split_ratio)
    {
        for (std::size_t t = 0; t < plan.totals.size(); ++t)
            for (Eigen::Index a = 0; a < g.size(); ++a)
                points.push_back({{plan.totals[t], g[a]}, static_cast<int>(t)});
    }
    else
        for (Eigen::Index a = 0; a < g.size(); ++a)
            points.push_back({{g[a]}, 0});

    const bool want_stp = plan.objective != SweepObjective::ase;
    const bool want_ase = plan.objective != SweepObjective::stp;
    const bool split = plan.variable == SweepVariable::split_ratio;
    if (want_stp)
    {
        columns.push_back("stp");
        for (int k = 0; k < layer_count; ++k)
            columns.push_back("stp_" + layer_tag(k));
    }
    if (want_ase)
        columns.push_back("ase_bps_hz_m2");
    if (split && want_stp)
        columns.push_back("normalized_stp");
    if (split && want_ase)
        columns.push_back("normalized_ase");
    if (plan.montecarlo)
    {
        if (want_stp)
        {
            columns.push_back("mc_stp");
            columns.push_back("mc_stp_se");
        }
        if (want_ase)
        {
            columns.push_back("mc_ase_bps_hz_m2");
            columns.push_back("mc_ase_se_bps_hz_m2");
        }
        columns.push_back("mc_discard_fraction");
    }
    columns.push_back("status");
    columns.push_back("argmax");

    struct Outcome
    {
        std::optional<PerformanceReport> report;
        std::optional<NetworkEstimate> simulated;
        std::string status = "ok";
    };
    std::vector<Outcome> outcomes(points.size());
    parallel_for(static_cast<int>(points.size()), [&](int n) {
        const auto & p = points[static_cast<std::size_t>(n)];
        NetworkConfig c = scenario.network;
        switch (plan.variable)
        {
            case SweepVariable::altitude:
                for (int k : plan.layers)
                    c.layers[static_cast<std::size_t>(k)].altitude = p.inputs[0];
                break;
            case SweepVariable::density_single:
                c.layers[static_cast<std::size_t>(plan.layers[0])].density_tx = p.inputs[0];
                break;
            case SweepVariable::density_grid_2d:
                c.layers[static_cast<std::size_t>(plan.layers[0])].density_tx = p.inputs[0];
                c.layers[static_cast<std::size_t>(plan.layers[1])].density_tx = p.inputs[1];
                break;
            case SweepVariable::split_ratio:
                c.layers[static_cast<std::size_t>(plan.layers[0])].density_tx = p.inputs[1] * p.inputs[0];
                c.layers[static_cast<std::size_t>(plan.layers[1])].density_tx =
                    (1.0 - p.inputs[1]) * p.inputs[0];
                break;
            case SweepVariable::beta:
                c.set_uniform_target(p.inputs[0]);
                break;
        }
        auto & out = outcomes[static_cast<std::size_t>(n)];
        try
        {
            const ValidatedConfig v = validate(c);
            out.report = network_aggregate(v, scenario.rule, scenario.settings);
            if (plan.montecarlo)
                out.simulated = simulate_network(v, scenario.rule, plan.simulation);
        }
        catch (const Error & e)
        {
            out.status = std::string("failed: ") + e.what();
        }
    });

    // argmax of the primary objective, per split group
    const bool primary_stp = want_stp;
    auto primary = [&](const Outcome & o) {
        if (!o.report)
            return nan;
        return primary_stp ? o.report->network_stp : o.report->network_ase;
    };
    std::vector<int> best(plan.totals.size() + 1, -1);
    std::vector<double> lo(best.size(), std::numeric_limits<double>::infinity());
    std::vector<double> hi(best.size(), -std::numeric_limits<double>::infinity());
    std::vector<double> lo_ase = lo;
    std::vector<double> hi_ase = hi;
    for (std::size_t n = 0; n < points.size(); ++n)
    {
        const int grp = points[n].group;
        const double v = primary(outcomes[n]);
        if (std::isnan(v))
            continue;
        if (best[grp] < 0 || v > primary(outcomes[static_cast<std::size_t>(best[grp])]))
            best[grp] = static_cast<int>(n);
        const auto & r = *outcomes[n].report;
        lo[grp] = std::min(lo[grp], r.network_stp);
        hi[grp] = std::max(hi[grp], r.network_stp);
        lo_ase[grp] = std::min(lo_ase[grp], r.network_ase);
        hi_ase[grp] = std::max(hi_ase[grp], r.network_ase);
    }
    auto normalize = [](double v, double l, double h) {
        if (std::isnan(v))
            return nan;
        return h > l ? (v - l) / (h - l) : 1.0;
    };

    SweepResult result;
    result.points = static_cast<int>(points.size());
    result.table.metadata = standard_metadata(scenario, plan.simulation.seed);
    result.table.metadata.emplace_back("variable", std::string(to_string(plan.variable)));
    std::string listed;
    for (int k : plan.layers)
        listed += (listed.empty() ? "" : " ") + std::to_string(k);
    result.table.metadata.emplace_back("layers", listed);
    if (plan.montecarlo)
        result.table.metadata.emplace_back("trials", std::to_string(plan.simulation.trials));
    result.table.columns = columns;

    for (std::size_t n = 0; n < points.size(); ++n)
    {
        const auto & o = outcomes[n];
        const int grp = points[n].group;
        if (!o.report)
            ++result.failed;
        std::vector<std::string> row;
        for (double x : points[n].inputs)
            row.push_back(format_number(x));
        const double stp = o.report ? o.report->network_stp : nan;
        const double ase = o.report ? o.report->network_ase : nan;
        if (want_stp)
        {
            row.push_back(format_number(stp));
            for (int k = 0; k < layer_count; ++k)
                row.push_back(format_number(o.report ? o.report->per_layer_stp[k] : nan));
        }
        if (want_ase)
            row.push_back(format_number(ase));
        if (split && want_stp)
            row.push_back(format_number(normalize(stp, lo[grp], hi[grp])));
        if (split && want_ase)
            row.push_back(format_number(normalize(ase, lo_ase[grp], hi_ase[grp])));
        if (plan.montecarlo)
        {
            const auto & s = o.simulated;
            if (want_stp)
            {
                row.push_back(format_number(s ? s->stp.mean : nan));
                row.push_back(format_number(s ? s->stp.standard_error : nan));
            }
            if (want_ase)
            {
                row.push_back(format_number(s ? s->ase.mean : nan));
                row.push_back(format_number(s ? s->ase.standard_error : nan));
            }
            row.push_back(format_number(s ? s->discard_fraction : nan));
        }
        row.push_back(o.status);
        row.push_back(best[grp] == static_cast<int>(n) ? "1" : "0");
        result.table.add_row(std::move(row));
    }
    return result;
}

ValidationRun validate_against_simulation(const Scenario & scenario, const SimSpec & spec,
                                          double tolerance)
{
    if (!(tolerance > 0.0))
        throw DomainError("tolerance must be positive");
    const ValidatedConfig config = validate(scenario.network);
    const AssociationRule & rule = scenario.rule;
    const Eigen::VectorXd weights = selector_densities(config, rule);
    for (int k = 0; k < config.layer_count(); ++k)
        if (weights[k] > 0.0 && !AssociationModel(config, rule, k).has_candidates())
            throw NoCandidate("layer " + std::to_string(k) + " has no association target under rule " +
                              rule.code());

    const PerformanceReport report = network_aggregate(config, rule, scenario.settings);

    ValidationRun out;
    out.table.metadata = standard_metadata(scenario, spec.seed);
    out.table.metadata.emplace_back("trials", std::to_string(spec.trials));
    out.table.metadata.emplace_back("tolerance", format_number(tolerance));
    out.table.columns = {"quantity",   "layer",          "partner",         "class",
                         "analytic",   "empirical",      "standard_error",  "difference",
                         "tolerance",  "discard_fraction", "pass",          "note"};

    auto add = [&](const std::string & quantity, const std::string & layer, const std::string & partner,
                   const std::string & channel, double analytic, const Estimate & e, double discard) {
        const double diff = e.mean - analytic;
        std::string note;
        bool pass = std::abs(diff) <= tolerance;
        if (e.standard_error > tolerance)
        {
            pass = false;
            note = "standard error exceeds tolerance";
        }
        else if (!pass)
            note = "difference exceeds tolerance";
        out.passed = out.passed && pass;
        out.table.add_row({quantity, layer, partner, channel, format_number(analytic),
                           format_number(e.mean), format_number(e.standard_error),
                           format_number(diff), format_number(tolerance), format_number(discard),
                           pass ? "1" : "0", note});
    };

    Estimate network;
    for (const auto & lp : report.layers)
    {
        SimSpec s = spec;
        s.typical_node_layer = lp.layer;
        const MonteCarloRun run = run_trials(config, rule, s);
        const Estimate stp = empirical_stp(run);
        accumulate(network, lp.weight / weights.sum(), stp);
        add("stp", std::to_string(lp.layer), "", "", lp.stp, stp, run.discard_fraction());

        const Eigen::MatrixX2d freq = empirical_association(run, config.layer_count());
        const double n = static_cast<double>(run.outcomes.size());
        for (const auto & part : lp.parts)
        {
            Estimate e;
            e.mean = freq(part.partner, index_of(part.channel));
            e.standard_error = n > 0 ? std::sqrt(e.mean * (1.0 - e.mean) / n) : 0.0;
            e.samples = static_cast<std::int64_t>(n);
            add("association", std::to_string(lp.layer), std::to_string(part.partner),
                std::string(to_string(part.channel)), part.association, e, run.discard_fraction());
        }
    }
    add("stp", "network", "", "", report.network_stp, network, nan);
    return out;
}

}  // namespace aerial
