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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "aerial/report.hpp"

// Parameter sweeps over a scenario and side-by-side checks against the
// simulator.

namespace aerial
{

inline constexpr int plan_schema_version = 1;

enum class SweepVariable
{
    altitude,         ///< altitude of every listed layer
    density_single,   ///< transmitter density of one layer
    density_grid_2d,  ///< transmitter densities of two layers, full product
    split_ratio,      ///< share of a total transmitter density between two layers
    beta              ///< one target SINR for every pair
};

std::string_view to_string(SweepVariable v);

enum class SweepObjective
{
    stp,
    ase,
    both
};

struct GridSpec
{
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log_spacing = false;

    Eigen::VectorXd values() const;
};

struct SweepPlan
{
    SweepVariable variable = SweepVariable::altitude;
    SweepObjective objective = SweepObjective::stp;
    std::vector<int> layers;
    GridSpec grid;
    GridSpec grid2;              ///< second axis of density_grid_2d
    std::vector<double> totals;  ///< split_ratio only [1/m^2]
    bool montecarlo = false;
    SimSpec simulation;

    /// Problems that do not depend on the scenario.
    std::vector<std::string> problems() const;
};

/// ParseError on syntax, schema or type errors.
SweepPlan parse_plan(std::string_view text);
SweepPlan load_plan(const std::string & path);

struct SweepResult
{
    ResultTable table;
    int points = 0;
    int failed = 0;
};

/// Rows in grid order (first axis outermost). Points whose evaluation throws
/// are kept with NaN values and the error in the status column. Throws
/// ValidationError when the plan does not fit the scenario.
SweepResult run_sweep(const Scenario & scenario, const SweepPlan & plan);

/// Network STP and ASE estimated by simulating every active selector layer.
struct NetworkEstimate
{
    Estimate stp;
    Estimate ase;
    double discard_fraction = 0.0;
};

NetworkEstimate simulate_network(const ValidatedConfig & config, const AssociationRule & rule,
                                 const SimSpec & spec);

struct ValidationRun
{
    ResultTable table;
    bool passed = true;
};

/// Analytic layer STP, association probabilities and network STP next to
/// their simulated counterparts. A comparison passes when the difference and
/// the standard error are both within `tolerance`.
ValidationRun validate_against_simulation(const Scenario & scenario, const SimSpec & spec,
                                          double tolerance);

}  // namespace aerial
