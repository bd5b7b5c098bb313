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

#include "aerial/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#ifndef AERIAL_VERSION
#define AERIAL_VERSION "0.0.0"
#endif

namespace aerial
{

std::string_view version() { return AERIAL_VERSION; }

void ResultTable::add_row(std::vector<std::string> row)
{
    if (row.size() != columns.size())
        throw DomainError("row has " + std::to_string(row.size()) + " cells, table has " +
                          std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    return std::string(buffer, end);
}

namespace
{

std::string quote(const std::string & cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos)
        return cell;
    std::string out = "\"";
    for (char c : cell)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

void write_table(std::ostream & out, const ResultTable & table)
{
    for (const auto & [key, value] : table.metadata)
        out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << quote(table.columns[i]);
    out << '\n';
    for (const auto & row : table.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << quote(row[i]);
        out << '\n';
    }
}

std::string hash_text(std::uint64_t h)
{
    char buffer[19];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

std::vector<std::pair<std::string, std::string>> standard_metadata(const Scenario & scenario,
                                                                   std::uint64_t seed)
{
    return {{"tool", "aerial " + std::string(version())},
            {"scenario", scenario.name},
            {"rule", scenario.rule.code()},
            {"settings_hash", hash_text(fnv1a(canonical_text(scenario)))},
            {"seed", std::to_string(seed)}};
}

ResultTable performance_table(const Scenario & scenario, const ValidatedConfig & config,
                              const PerformanceReport & report)
{
    ResultTable t;
    t.metadata = standard_metadata(scenario, scenario.simulation.seed);
    t.columns = {"layer", "name", "altitude_m", "selector_density_per_m2", "stp", "ase_bps_hz_m2"};
    const Eigen::VectorXd weights = selector_densities(config, report.rule);
    for (int k = 0; k < config.layer_count(); ++k)
        t.add_row({std::to_string(k), config.layer(k).name, format_number(config.layer(k).altitude),
                   format_number(weights[k]), format_number(report.per_layer_stp[k]),
                   format_number(report.per_layer_ase[k])});
    t.add_row({"network", "", "", format_number(weights.sum()), format_number(report.network_stp),
               format_number(report.network_ase)});
    return t;
}

ResultTable bound_table(const Scenario & scenario, const DensityBound & bound)
{
    ResultTable t;
    t.metadata = standard_metadata(scenario, scenario.simulation.seed);
    t.columns = {"rx_layer", "tx_layer", "objective", "bound_per_m2", "epsilon_m2", "reason"};
    t.add_row({std::to_string(bound.rx_layer), std::to_string(bound.tx_layer),
               std::string(to_string(bound.objective)), format_number(bound.value()),
               format_number(bound.epsilon), bound.reason});
    return t;
}

ResultTable optimum_table(const Scenario & scenario, const DensityOptimum & optimum,
                          const DensityBound & bound)
{
    ResultTable t;
    t.metadata = standard_metadata(scenario, scenario.simulation.seed);
    t.metadata.emplace_back("bound_per_m2", format_number(bound.value()));
    t.metadata.emplace_back("bound_reason", bound.reason);
    t.metadata.emplace_back("ceiling_per_m2", format_number(optimum.ceiling));
    const std::string name = std::string(to_string(bound.objective)) +
                             (bound.objective == Objective::ase ? "_bps_hz_m2" : "");
    t.columns = {"density_tx_per_m2", name, "argmax"};
    for (Eigen::Index n = 0; n < optimum.grid.size(); ++n)
        t.add_row({format_number(optimum.grid[n]), format_number(optimum.values[n]),
                   optimum.grid[n] == optimum.density ? "1" : "0"});
    return t;
}

ResultTable split_table(const Scenario & scenario, const std::vector<SplitSweepResult> & results,
                        Objective objective)
{
    ResultTable t;
    t.metadata = standard_metadata(scenario, scenario.simulation.seed);
    const std::string name =
        std::string(to_string(objective)) + (objective == Objective::ase ? "_bps_hz_m2" : "");
    t.columns = {"total_density_per_m2", "split", name, "normalized", "argmax"};
    for (const auto & r : results)
        for (Eigen::Index n = 0; n < r.split.size(); ++n)
            t.add_row({format_number(r.total_density), format_number(r.split[n]),
                       format_number(r.values[n]), format_number(r.normalized[n]),
                       n == r.argmax ? "1" : "0"});
    return t;
}

}  // namespace aerial
