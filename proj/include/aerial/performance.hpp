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

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "aerial/geometry.hpp"
#include "aerial/interference.hpp"

// Success probabilities and area spectral efficiency.
//
// A layer's STP averages the conditional success probability of its typical
// selector over every (partner layer, class) it may associate with; its ASE
// weighs the same sum by rate and by the density of the selecting nodes.

namespace aerial
{

struct EvaluationSettings
{
    /// Integral over the main-link distance.
    numerics::QuadratureSpec outer = default_outer();
    /// Interference integrals.
    numerics::QuadratureSpec inner = LaplaceEvaluator::default_spec();
    numerics::SeriesSpec series;
    bool use_closed_form = false;
    /// Initial finite-difference spacing, relative to the evaluation point.
    double derivative_step = 0.1;

    static numerics::QuadratureSpec default_outer();
};

/// log2(1 + beta) per (receiver layer, transmitter layer) [bps/Hz].
Eigen::MatrixXd rate_matrix(const ValidatedConfig & config);

/// Laplace argument l = m beta y^alpha / P of the event.
double sinr_scale(const LinkEvent & event, const ValidatedConfig & config);

struct StpEstimate
{
    double value = 0.0;
    double error = 0.0;
    bool clamped = false;
};

StpEstimate conditional_stp_detailed(const ValidatedConfig & config, const LinkEvent & event,
                                     const EvaluationSettings & settings = {});

double conditional_stp(const ValidatedConfig & config, const LinkEvent & event,
                       const EvaluationSettings & settings = {});

/// Number of STP values clamped back into [0, 1] since start-up.
std::uint64_t stp_clamp_count();

struct PartnerContribution
{
    int partner = 0;
    ChannelClass channel = ChannelClass::los;
    double association = 0.0;
    /// Joint probability of associating with this partner class and succeeding.
    double success = 0.0;
    double rate = 0.0;  ///< [bps/Hz]
};

struct LayerPerformance
{
    int layer = 0;
    double weight = 0.0;  ///< density of the selecting nodes [1/m^2]
    double stp = 0.0;
    double ase = 0.0;  ///< [bps/Hz/m^2]
    std::vector<PartnerContribution> parts;
};

LayerPerformance evaluate_layer(const ValidatedConfig & config, const AssociationRule & rule, int k,
                                const EvaluationSettings & settings = {});

double layer_stp(const ValidatedConfig & config, const AssociationRule & rule, int k,
                 const EvaluationSettings & settings = {});

double layer_ase(const ValidatedConfig & config, const AssociationRule & rule, int k,
                 const EvaluationSettings & settings = {});

struct PerformanceReport
{
    AssociationRule rule;
    /// Per layer; NaN for layers without selecting nodes.
    Eigen::VectorXd per_layer_stp;
    Eigen::VectorXd per_layer_ase;
    double network_stp = 0.0;
    double network_ase = 0.0;
    EvaluationSettings settings;
    std::vector<LayerPerformance> layers;
};

PerformanceReport network_aggregate(const ValidatedConfig & config, const AssociationRule & rule,
                                    const EvaluationSettings & settings = {});

}  // namespace aerial
