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
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "aerial/geometry.hpp"

// Direct simulation of the network model: the typical node sits at the origin
// at its layer's altitude, every other process is drawn on a disk around it,
// LoS marks are independent per link.

namespace aerial
{

struct SimSpec
{
    /// [m]; 0 selects default_window_radius.
    double window_radius = 0.0;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    int typical_node_layer = 0;
    /// Adds the mean interference of transmitters beyond the window to every
    /// trial. Far LoS links decay slowly enough that a truncated window alone
    /// biases the SINR upwards.
    bool far_field_tail = true;

    void check() const;
};

struct TrialOutcome
{
    std::int64_t trial = 0;
    int layer = 0;  ///< associated partner layer
    ChannelClass channel = ChannelClass::los;
    double distance = 0.0;  ///< [m]
    double sinr = 0.0;
    bool success = false;
};

struct MonteCarloRun
{
    std::vector<TrialOutcome> outcomes;
    std::int64_t attempted = 0;
    std::int64_t discarded = 0;
    double window_radius = 0.0;

    double discard_fraction() const;
};

/// Sample mean with its standard error.
struct Estimate
{
    double mean = 0.0;
    double standard_error = 0.0;
    std::int64_t samples = 0;
};

/// Independent generator for one trial of a seeded run.
RandomStream trial_stream(std::uint64_t seed, std::int64_t trial);

/// Homogeneous PPP on the disk of `radius` around the origin, one column per point.
Eigen::Matrix2Xd sample_ppp_disk(double density, double radius, RandomStream & rng);

/// Ten times the largest 99.9th percentile of the nearest-candidate link distance
/// seen from `typical_layer`.
double default_window_radius(const ValidatedConfig & config, const AssociationRule & rule,
                             int typical_layer);

/// Mean interference [W] at a receiver of layer `rx_layer` from all transmitters
/// farther than `radius` horizontally.
double far_field_interference(const ValidatedConfig & config, int rx_layer, double radius);

/// Throws NoCandidate when more than 0.1% of the trials find nobody to associate with.
MonteCarloRun run_trials(const ValidatedConfig & config, const AssociationRule & rule,
                         const SimSpec & spec);

/// Fraction of successful trials among the kept ones.
Estimate empirical_stp(const MonteCarloRun & run);

/// Frequency of each (partner layer, class); rows are layers.
Eigen::MatrixX2d empirical_association(const MonteCarloRun & run, int layers);

/// E[exp(-s (I + noise))] for the receiver of `event`, interferers restricted to
/// the exclusion region of the event.
Estimate empirical_laplace(const ValidatedConfig & config, const LinkEvent & event, double s,
                           const SimSpec & spec);

/// P[SINR > beta] given the event, with a fresh main-link fading draw per trial.
Estimate empirical_conditional_stp(const ValidatedConfig & config, const LinkEvent & event,
                                   const SimSpec & spec);

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)> & cdf);

/// Same with the CDF already evaluated at the sorted sample.
double ks_statistic_sorted(const std::vector<double> & sorted, const Eigen::VectorXd & cdf_values);

/// trial,layer,class,distance_m,sinr,success
void write_outcomes(std::ostream & out, const MonteCarloRun & run);

}  // namespace aerial
