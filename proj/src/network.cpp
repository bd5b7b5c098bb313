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

#include "aerial/network.hpp"

#include <cmath>

namespace aerial
{

std::string AssociationRule::code() const
{
    std::string out;
    out += orientation == Orientation::receiver ? 'r' : 't';
    out += criterion == Criterion::nearest ? 'n' : 's';
    return out;
}

AssociationRule AssociationRule::parse(std::string_view code)
{
    if (code.size() != 2 || (code[0] != 'r' && code[0] != 't') || (code[1] != 'n' && code[1] != 's'))
        throw DomainError("association rule must be one of rn, rs, tn, ts");
    return {code[0] == 'r' ? Orientation::receiver : Orientation::transmitter,
            code[1] == 'n' ? Criterion::nearest : Criterion::strongest};
}

void NetworkConfig::set_uniform_target(double beta)
{
    const auto k = static_cast<Eigen::Index>(layers.size());
    target_sinr = Eigen::MatrixXd::Constant(k, k, beta);
}

std::vector<std::string> validation_problems(const NetworkConfig & config)
{
    std::vector<std::string> out;
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };

    if (config.layers.empty())
        out.emplace_back("no layers");

    bool any_tx = false;
    bool any_rx = false;
    for (std::size_t k = 0; k < config.layers.size(); ++k)
    {
        const auto & l = config.layers[k];
        const std::string where = "layer " + std::to_string(k) + ": ";
        if (!finite_nonneg(l.altitude))
            out.push_back(where + "altitude must be finite and non-negative");
        if (!finite_nonneg(l.density_rx))
            out.push_back(where + "density_rx must be finite and non-negative");
        if (!finite_nonneg(l.density_tx))
            out.push_back(where + "density_tx must be finite and non-negative");
        if (!(std::isfinite(l.power) && l.power > 0.0))
            out.push_back(where + "power must be positive");
        if (!(std::isfinite(l.bias) && l.bias > 0.0))
            out.push_back(where + "bias must be positive");
        any_tx = any_tx || l.density_tx > 0.0;
        any_rx = any_rx || l.density_rx > 0.0;
    }
    if (!config.layers.empty() && !any_tx)
        out.emplace_back("no layer with positive transmitter density");
    if (!config.layers.empty() && !any_rx)
        out.emplace_back("no layer with positive receiver density");

    const auto & env = config.environment;
    if (!(env.mu >= 0.0 && env.mu <= 1.0))
        out.emplace_back("environment: mu outside [0, 1]");
    if (!finite_nonneg(env.nu))
        out.emplace_back("environment: nu must be non-negative");
    if (!(std::isfinite(env.xi) && env.xi > 0.0))
        out.emplace_back("environment: xi must be positive");
    if (!std::isfinite(env.iota) || !std::isfinite(env.kappa))
        out.emplace_back("environment: iota and kappa must be finite");

    const auto & pl = config.pathloss;
    if (!(pl.alpha_los >= 2.0))
        out.emplace_back("pathloss: alpha_los below 2");
    if (!(pl.alpha_nlos >= pl.alpha_los))
        out.emplace_back("pathloss: alpha_nlos below alpha_los");
    if (!std::isfinite(pl.alpha_nlos))
        out.emplace_back("pathloss: alpha_nlos must be finite");

    if (config.fading.m_los < 1)
        out.emplace_back("fading: m_los below 1");
    if (config.fading.m_nlos != 1)
        out.emplace_back("fading: m_nlos must be 1");

    if (!finite_nonneg(config.noise_power))
        out.emplace_back("noise_power must be finite and non-negative");

    const auto k = static_cast<Eigen::Index>(config.layers.size());
    if (config.target_sinr.rows() != k || config.target_sinr.cols() != k)
    {
        out.push_back("targets: beta matrix must be " + std::to_string(k) + "x" + std::to_string(k));
    }
    else
    {
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
            {
                const double b = config.target_sinr(i, j);
                if (!(std::isfinite(b) && b > 0.0))
                    out.push_back("targets: beta(" + std::to_string(i) + "," + std::to_string(j) +
                                  ") must be positive");
            }
    }

    // the air-to-air base can leave [0, 1] for unphysical parameter sets
    if (out.empty())
    {
        for (std::size_t i = 0; i < config.layers.size(); ++i)
            for (std::size_t j = i; j < config.layers.size(); ++j)
            {
                try
                {
                    LosProfile(env, config.los_model, config.layers[i].altitude, config.layers[j].altitude);
                }
                catch (const Error & e)
                {
                    out.push_back("layers " + std::to_string(i) + "," + std::to_string(j) + ": " + e.what());
                }
            }
    }
    return out;
}

ValidatedConfig::ValidatedConfig(NetworkConfig config) : config_(std::move(config))
{
    const int k = layer_count();
    profiles_.resize(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            profiles_[static_cast<std::size_t>(i * k + j)] =
                LosProfile(config_.environment, config_.los_model, layer(i).altitude, layer(j).altitude);
}

double ValidatedConfig::altitude_gap(int i, int j) const
{
    return std::abs(layer(i).altitude - layer(j).altitude);
}

const LosProfile & ValidatedConfig::los(int i, int j) const
{
    return profiles_.at(static_cast<std::size_t>(i * layer_count() + j));
}

ValidatedConfig ValidatedConfig::with_tx_density(int k, double density) const
{
    NetworkConfig copy = config_;
    copy.layers.at(static_cast<std::size_t>(k)).density_tx = density;
    return validate(copy);
}

ValidatedConfig validate(const NetworkConfig & config)
{
    auto problems = validation_problems(config);
    if (!problems.empty())
        throw ValidationError(std::move(problems));
    return ValidatedConfig(config);
}

Eigen::VectorXd orientation_set(const ValidatedConfig & config, const AssociationRule & rule)
{
    Eigen::VectorXd out(config.layer_count());
    for (int k = 0; k < config.layer_count(); ++k)
        out[k] = rule.orientation == Orientation::receiver ? config.layer(k).density_tx
                                                           : config.layer(k).density_rx;
    return out;
}

Eigen::VectorXd selector_densities(const ValidatedConfig & config, const AssociationRule & rule)
{
    Eigen::VectorXd out(config.layer_count());
    for (int k = 0; k < config.layer_count(); ++k)
        out[k] = rule.orientation == Orientation::receiver ? config.layer(k).density_rx
                                                           : config.layer(k).density_tx;
    return out;
}

}  // namespace aerial
