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

#include <Eigen/Core>

#include "aerial/performance.hpp"

// Transmitter density design: upper bounds on the optimal density, bounded
// grid search and two-layer density splits.

namespace aerial
{

enum class Objective
{
    stp,
    ase
};

std::string_view to_string(Objective o);
Objective parse_objective(std::string_view text);

/// int_{h}^inf x (1 - rho^L/(1 + beta h^aL x^-aL) - rho^N/(1 + beta h^aL x^-aN)) dx
/// for receiver layer i and transmitter layer j [m^2].
double epsilon(const ValidatedConfig & config, int i, int j);

struct DensityBound
{
    int rx_layer = 0;
    int tx_layer = 0;
    Objective objective = Objective::stp;
    double bound_stp = 0.0;  ///< [1/m^2], may be +inf
    double bound_ase = 0.0;  ///< [1/m^2], may be +inf
    /// epsilon of the pair the bound is built from; NaN when no integral is involved.
    double epsilon = 0.0;
    std::string reason;

    double value() const { return objective == Objective::stp ? bound_stp : bound_ase; }
};

/// Upper bound on the density of transmitter layer j that maximizes layer k's objective.
DensityBound density_upper_bound(const ValidatedConfig & config, const AssociationRule & rule, int k,
                                 int j, Objective objective);

/// Log-spaced grid with `per_decade` points per decade from lo to hi (both included).
Eigen::VectorXd log_grid(double lo, double hi, int per_decade);

/// 25 points per decade over [1e-8, min(ceiling, 1e-3)].
Eigen::VectorXd default_density_grid(double ceiling);

/// Objective of layer k alone.
double layer_objective(const ValidatedConfig & config, const AssociationRule & rule, int k,
                       Objective objective, const EvaluationSettings & settings = {});

struct DensityOptimum
{
    double density = 0.0;
    double value = 0.0;
    double ceiling = 0.0;
    Eigen::VectorXd grid;    ///< densities actually evaluated
    Eigen::VectorXd values;  ///< objective at each of them
};

/// Exhaustive search of layer k's objective over transmitter densities of layer j.
/// Grid points above `ceiling` are skipped; a NaN ceiling means the bound (or
/// 1e-3 when the bound is infinite). A zero ceiling marks a monotone
/// decreasing objective and returns the smallest grid point.
DensityOptimum optimize_density(const ValidatedConfig & config, const AssociationRule & rule, int k,
                                int j, Objective objective, const Eigen::VectorXd & grid,
                                double ceiling, const EvaluationSettings & settings = {});

struct SplitSweepResult
{
    double total_density = 0.0;
    Eigen::VectorXd split;       ///< fraction of the total placed in layer j
    Eigen::VectorXd values;      ///< network objective
    Eigen::VectorXd normalized;  ///< min-max transform of values
    int argmax = 0;

    double best_split() const { return split[argmax]; }
};

/// Network objective with layer j holding rho * total and layer k (1 - rho) * total.
SplitSweepResult two_layer_split(const ValidatedConfig & config, const AssociationRule & rule, int j,
                                 int k, double total, const Eigen::VectorXd & splits,
                                 Objective objective, const EvaluationSettings & settings = {});

}  // namespace aerial
