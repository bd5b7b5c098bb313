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

#include "aerial/channel.hpp"

namespace aerial
{

/// One layer of the network: nodes at a common altitude split into receivers
/// and transmitters, each an independent homogeneous PPP.
struct LayerSpec
{
    std::string name;
    double altitude = 0.0;    ///< [m]
    double density_rx = 0.0;  ///< [nodes/m^2]
    double density_tx = 0.0;  ///< [nodes/m^2]
    double power = 1.0;       ///< [W]
    double bias = 1.0;

    double density() const { return density_rx + density_tx; }
};

enum class Orientation
{
    receiver,    ///< receivers pick a transmitter
    transmitter  ///< transmitters pick a receiver
};

enum class Criterion
{
    nearest,
    strongest
};

struct AssociationRule
{
    Orientation orientation = Orientation::receiver;
    Criterion criterion = Criterion::strongest;

    /// Two-letter code: "rn", "rs", "tn" or "ts".
    std::string code() const;
    static AssociationRule parse(std::string_view code);

    bool operator==(const AssociationRule &) const = default;
};

struct NetworkConfig
{
    std::vector<LayerSpec> layers;
    Environment environment;
    LosModel los_model = LosModel::approximate;
    PathlossParams pathloss;
    FadingParams fading;
    double noise_power = 0.0;  ///< [W]
    /// Target SINR per (receiver layer, transmitter layer).
    Eigen::MatrixXd target_sinr;

    /// Fills target_sinr with one value for every pair.
    void set_uniform_target(double beta);
};

/// Every violated invariant of a configuration, one message each.
std::vector<std::string> validation_problems(const NetworkConfig & config);

/// Immutable, checked configuration with per-pair LoS laws precomputed.
class ValidatedConfig
{
  public:
    const NetworkConfig & config() const { return config_; }
    int layer_count() const { return static_cast<int>(config_.layers.size()); }
    const LayerSpec & layer(int k) const { return config_.layers.at(static_cast<std::size_t>(k)); }

    double altitude_gap(int i, int j) const;
    /// LoS law of a link between a node in layer i and a node in layer j.
    const LosProfile & los(int i, int j) const;
    double target(int rx, int tx) const { return config_.target_sinr(rx, tx); }
    double alpha(ChannelClass c) const { return config_.pathloss.alpha(c); }
    int nakagami(ChannelClass c) const { return config_.fading.m(c); }

    /// Copy with one layer's transmitter density replaced, validated again.
    ValidatedConfig with_tx_density(int k, double density) const;

  private:
    friend ValidatedConfig validate(const NetworkConfig & config);
    explicit ValidatedConfig(NetworkConfig config);

    NetworkConfig config_;
    std::vector<LosProfile> profiles_;
};

/// Checks every invariant; throws ValidationError listing all of them.
ValidatedConfig validate(const NetworkConfig & config);

/// Density of the selection-target process per layer: lambda_Tx for receiver
/// orientation, lambda_Rx for transmitter orientation.
Eigen::VectorXd orientation_set(const ValidatedConfig & config, const AssociationRule & rule);

/// Density of the nodes that do the selecting (the typical nodes).
Eigen::VectorXd selector_densities(const ValidatedConfig & config, const AssociationRule & rule);

}  // namespace aerial
