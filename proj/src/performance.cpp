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

#include "aerial/performance.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "aerial/parallel.hpp"

namespace aerial
{

namespace
{

std::atomic<std::uint64_t> clamp_events{0};

constexpr double clamp_slack = 1e-6;

}  // namespace

numerics::QuadratureSpec EvaluationSettings::default_outer()
{
    numerics::QuadratureSpec spec;
    spec.rel_tol = 1e-7;
    spec.abs_tol = 1e-12;
    spec.tail_cutoff = 1e-12;
    return spec;
}

std::uint64_t stp_clamp_count() { return clamp_events.load(); }

Eigen::MatrixXd rate_matrix(const ValidatedConfig & config)
{
    return (1.0 + config.config().target_sinr.array()).log() / std::log(2.0);
}

double sinr_scale(const LinkEvent & event, const ValidatedConfig & config)
{
    const double beta = config.target(event.rx_layer, event.tx_layer);
    if (!(beta > 0.0))
        throw DomainError("target SINR must be positive");
    if (!(event.distance >= config.altitude_gap(event.rx_layer, event.tx_layer) * (1.0 - 1e-12)))
        throw DomainError("link distance below the altitude gap");
    const double m = config.nakagami(event.channel);
    return m * beta * std::pow(event.distance, config.alpha(event.channel)) /
           config.layer(event.tx_layer).power;
}

StpEstimate conditional_stp_detailed(const ValidatedConfig & config, const LinkEvent & event,
                                     const EvaluationSettings & settings)
{
    const double s = sinr_scale(event, config);
    const int m = config.nakagami(event.channel);
    const LaplaceEvaluator evaluator(config, event, settings.inner);

    StpEstimate out;
    if (m == 1)
    {
        out.value = evaluator.total(s, settings.use_closed_form, settings.series);
    }
    else
    {
        // fixed rules make L smooth in s, so differences see no quadrature noise
        const FrozenLaplace frozen = evaluator.freeze(s);
        const numerics::RealFunction f = [&frozen](double t) { return frozen(t); };
        numerics::CompensatedSum sum;
        double error = 0.0;
        double coefficient = 1.0;  // (-s)^n / n!
        for (int n = 0; n < m; ++n)
        {
            const double step = std::min(settings.derivative_step, 1.0 / (n + 1)) * s;
            const auto d = numerics::nth_derivative_estimate(f, s, n, step);
            sum.add(coefficient * d.value);
            error += std::abs(coefficient) * d.error;
            coefficient *= -s / (n + 1);
        }
        out.value = sum.value();
        out.error = error;
        if (error > 1e-3 * std::max(std::abs(out.value), 1e-5))
            throw DerivativeUnstable("derivative estimates disagree: error " + std::to_string(error) +
                                     " on STP " + std::to_string(out.value));
    }

    if (out.value < 0.0 || out.value > 1.0)
    {
        const double excess = out.value < 0.0 ? -out.value : out.value - 1.0;
        if (excess > clamp_slack)
            throw DomainError("conditional STP " + std::to_string(out.value) + " outside [0, 1]");
        out.value = std::clamp(out.value, 0.0, 1.0);
        out.clamped = true;
        ++clamp_events;
    }
    return out;
}

double conditional_stp(const ValidatedConfig & config, const LinkEvent & event,
                       const EvaluationSettings & settings)
{
    return conditional_stp_detailed(config, event, settings).value;
}

LayerPerformance evaluate_layer(const ValidatedConfig & config, const AssociationRule & rule, int k,
                                const EvaluationSettings & settings)
{
    const AssociationModel model(config, rule, k);
    if (!model.has_candidates())
        throw DomainError("layer " + std::to_string(k) + " has no association target under rule " +
                          rule.code());

    LayerPerformance out;
    out.layer = k;
    out.weight = selector_densities(config, rule)[k];
    const Eigen::MatrixXd rates = rate_matrix(config);
    auto outer = settings.outer;
    outer.length_scale = model.length_scale();

    numerics::CompensatedSum stp;
    numerics::CompensatedSum rate_sum;
    for (int j = 0; j < config.layer_count(); ++j)
        for (ChannelClass c : channel_classes)
        {
            const auto & law = model.law(j, c);
            if (law.empty())
                continue;
            PartnerContribution part;
            part.partner = j;
            part.channel = c;
            part.association = model.association_probability(j, c);
            const LinkEvent base = make_event(rule, k, j, c, 0.0);
            part.rate = rates(base.rx_layer, base.tx_layer);
            auto integrand = [&](double r) {
                const double joint = model.joint_density_horizontal(j, c, r);
                if (joint == 0.0)
                    return 0.0;
                LinkEvent e = base;
                e.distance = law.profile().link_distance(r);
                return joint * conditional_stp(config, e, settings);
            };
            part.success = integrate_horizontal(integrand, law.profile().piece_length(), outer);
            stp.add(part.success);
            rate_sum.add(part.rate * part.success);
            out.parts.push_back(part);
        }

    out.stp = stp.value();
    if (out.stp < 0.0 || out.stp > 1.0)
    {
        const double excess = out.stp < 0.0 ? -out.stp : out.stp - 1.0;
        if (excess > clamp_slack)
            throw DomainError("layer STP " + std::to_string(out.stp) + " outside [0, 1]");
        out.stp = std::clamp(out.stp, 0.0, 1.0);
        ++clamp_events;
    }
    out.ase = out.weight * rate_sum.value();
    return out;
}

double layer_stp(const ValidatedConfig & config, const AssociationRule & rule, int k,
                 const EvaluationSettings & settings)
{
    return evaluate_layer(config, rule, k, settings).stp;
}

double layer_ase(const ValidatedConfig & config, const AssociationRule & rule, int k,
                 const EvaluationSettings & settings)
{
    if (selector_densities(config, rule)[k] == 0.0)
        return 0.0;
    return evaluate_layer(config, rule, k, settings).ase;
}

PerformanceReport network_aggregate(const ValidatedConfig & config, const AssociationRule & rule,
                                    const EvaluationSettings & settings)
{
    const Eigen::VectorXd weights = selector_densities(config, rule);
    std::vector<int> active;
    for (int k = 0; k < config.layer_count(); ++k)
        if (weights[k] > 0.0)
            active.push_back(k);
    std::vector<LayerPerformance> results(active.size());
    parallel_for(static_cast<int>(active.size()), [&](int n) {
        results[static_cast<std::size_t>(n)] =
            evaluate_layer(config, rule, active[static_cast<std::size_t>(n)], settings);
    });

    PerformanceReport out;
    out.rule = rule;
    out.settings = settings;
    out.per_layer_stp = Eigen::VectorXd::Constant(config.layer_count(),
                                                  std::numeric_limits<double>::quiet_NaN());
    out.per_layer_ase = Eigen::VectorXd::Zero(config.layer_count());
    numerics::CompensatedSum stp;
    numerics::CompensatedSum ase;
    for (const auto & r : results)
    {
        out.per_layer_stp[r.layer] = r.stp;
        out.per_layer_ase[r.layer] = r.ase;
        stp.add(r.weight * r.stp);
        ase.add(r.ase);
    }
    out.network_stp = stp.value() / weights.sum();
    out.network_ase = ase.value();
    out.layers = std::move(results);
    return out;
}

}  // namespace aerial
