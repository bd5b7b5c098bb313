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

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aerial/design.hpp"
#include "aerial/scenario.hpp"

// Comma-separated tables with a '#'-prefixed metadata block. Numeric column
// names carry their unit after the last underscore-separated word
// (_m, _per_m2, _bps_hz_m2, _m2) or are dimensionless.

namespace aerial
{

std::string_view version();

struct ResultTable
{
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

/// Shortest text that reads back to the same double; "nan", "inf", "-inf".
std::string format_number(double x);

void write_table(std::ostream & out, const ResultTable & table);

/// tool, version, scenario name, settings hash and seed.
std::vector<std::pair<std::string, std::string>> standard_metadata(const Scenario & scenario,
                                                                   std::uint64_t seed);

std::string hash_text(std::uint64_t h);

/// One row per layer plus a final "network" row.
ResultTable performance_table(const Scenario & scenario, const ValidatedConfig & config,
                              const PerformanceReport & report);

ResultTable bound_table(const Scenario & scenario, const DensityBound & bound);

ResultTable optimum_table(const Scenario & scenario, const DensityOptimum & optimum,
                          const DensityBound & bound);

ResultTable split_table(const Scenario & scenario, const std::vector<SplitSweepResult> & results,
                        Objective objective);

}  // namespace aerial
