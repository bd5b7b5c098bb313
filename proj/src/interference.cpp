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

#include "aerial/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace aerial
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

// 1 - (1 + z)^-m without cancellation for small z
double saturation(double z, int m)
{
    return -std::expm1(-m * std::log1p(z));
}

double tx_density(const ValidatedConfig & config, int k) { return config.layer(k).density_tx; }

}  // namespace

numerics::QuadratureSpec LaplaceEvaluator::default_spec()
{
    numerics::QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-12;
    spec.max_subdivisions = 2000;
    return spec;
}

LaplaceEvaluator::LaplaceEvaluator(const ValidatedConfig & config, const LinkEvent & event,
                                   const numerics::QuadratureSpec & spec)
    : config_(&config), event_(event), spec_(spec)
{
    const int layers = config.layer_count();
    if (event.rx_layer < 0 || event.rx_layer >= layers || event.tx_layer < 0 ||
        event.tx_layer >= layers)
        throw DomainError("link event refers to a missing layer");
    const double gap = config.altitude_gap(event.rx_layer, event.tx_layer);
    if (!(event.distance >= gap * (1.0 - 1e-12)) || !std::isfinite(event.distance))
        throw DomainError("link distance below the altitude gap");
    spec_.length_scale = std::max(event.distance, 1.0);

    const auto & specs = config.config().layers;
    const double bias_j = specs[static_cast<std::size_t>(event.tx_layer)].bias;
    exclusion_.resize(static_cast<std::size_t>(2 * layers));
    for (int k = 0; k < layers; ++k)
        for (ChannelClass c_o : channel_classes)
        {
            double chi = 0.0;
            if (event.rule.orientation == Orientation::receiver)
                chi = candidate_radius(event.rule.criterion, config.config().pathloss, event.channel,
                                       c_o, event.distance, bias_j,
                                       specs[static_cast<std::size_t>(k)].bias);
            exclusion_[static_cast<std::size_t>(2 * k + index_of(c_o))] =
                std::max(chi, config.altitude_gap(event.rx_layer, k));
        }
}

double LaplaceEvaluator::exclusion_radius(int k, ChannelClass c_o) const
{
    return exclusion_.at(static_cast<std::size_t>(2 * k + index_of(c_o)));
}

double LaplaceEvaluator::lower_horizontal(int k, ChannelClass c_o) const
{
    return config_->los(event_.rx_layer, k).horizontal(exclusion_radius(k, c_o));
}

numerics::RealFunction LaplaceEvaluator::integrand(int k, ChannelClass c_o, double s) const
{
    const auto & profile = config_->los(event_.rx_layer, k);
    const double gap = profile.altitude_gap();
    const double alpha = config_->alpha(c_o);
    const int m = config_->nakagami(c_o);
    const double scale = s * config_->layer(k).power / m;
    return [&profile, gap, alpha, m, scale, c_o](double r) {
        const double rho = profile.probability_at(c_o, r);
        if (rho == 0.0)
            return 0.0;
        const double x = std::hypot(r, gap);
        return r * rho * saturation(scale * std::pow(x, -alpha), m);
    };
}

double LaplaceEvaluator::exponent(int k, ChannelClass c_o, double s) const
{
    if (!(s >= 0.0) || !std::isfinite(s))
        throw DomainError("Laplace argument must be finite and non-negative");
    if (s == 0.0 || tx_density(*config_, k) == 0.0)
        return 0.0;
    const auto & profile = config_->los(event_.rx_layer, k);
    return integrate_horizontal_from(integrand(k, c_o, s), lower_horizontal(k, c_o),
                                     profile.piece_length(), spec_);
}

double LaplaceEvaluator::layer(int k, ChannelClass c_o, double s) const
{
    const double j = exponent(k, c_o, s);
    return j == 0.0 ? 1.0 : std::exp(-two_pi * tx_density(*config_, k) * j);
}

double LaplaceEvaluator::total(double s, bool closed_form, const numerics::SeriesSpec & series) const
{
    if (!(s >= 0.0) || !std::isfinite(s))
        throw DomainError("Laplace argument must be finite and non-negative");
    double out = std::exp(-s * config_->config().noise_power);
    const bool use_series =
        closed_form && closed_form_applicable(*config_, event_.rule, event_, s).applicable;
    for (int k = 0; k < config_->layer_count(); ++k)
    {
        if (tx_density(*config_, k) == 0.0)
            continue;
        for (ChannelClass c_o : channel_classes)
        {
            if (use_series && k == event_.rx_layer)
                out *= laplace_same_layer_closed(*this, c_o, s, series);
            else
                out *= layer(k, c_o, s);
        }
    }
    return out;
}

FrozenLaplace LaplaceEvaluator::freeze(double s0) const
{
    if (!(s0 > 0.0) || !std::isfinite(s0))
        throw DomainError("frozen Laplace transform needs a positive reference point");
    FrozenLaplace out;
    out.noise = config_->config().noise_power;
    for (int k = 0; k < config_->layer_count(); ++k)
    {
        const double density = tx_density(*config_, k);
        if (density == 0.0)
            continue;
        const auto & profile = config_->los(event_.rx_layer, k);
        for (ChannelClass c_o : channel_classes)
        {
            const auto nodes = horizontal_rule(integrand(k, c_o, s0), lower_horizontal(k, c_o),
                                               profile.piece_length(), spec_);
            FrozenLaplace::Factor f;
            f.density = density;
            f.m = config_->nakagami(c_o);
            const double alpha = config_->alpha(c_o);
            const double power = config_->layer(k).power;
            for (std::size_t i = 0; i < nodes.points.size(); ++i)
            {
                const double r = nodes.points[i];
                const double rho = profile.probability_at(c_o, r);
                if (rho == 0.0)
                    continue;
                f.weight.push_back(nodes.weights[i] * r * rho);
                f.gain.push_back(power * std::pow(std::hypot(r, profile.altitude_gap()), -alpha) / f.m);
            }
            out.factors.push_back(std::move(f));
        }
    }
    return out;
}

double FrozenLaplace::operator()(double s) const
{
    if (!(s >= 0.0))
        throw DomainError("Laplace argument must be non-negative");
    double out = std::exp(-s * noise);
    for (const auto & f : factors)
    {
        numerics::CompensatedSum j;
        for (std::size_t i = 0; i < f.weight.size(); ++i)
            j.add(f.weight[i] * saturation(s * f.gain[i], f.m));
        out *= std::exp(-two_pi * f.density * j.value());
    }
    return out;
}

double laplace_layer(const LaplaceEvaluator & evaluator, int k, ChannelClass c_o, double s)
{
    return evaluator.layer(k, c_o, s);
}

// ---------------------------------------------------------------------------
// Same-layer series

ClosedFormParams closed_form_params(const ValidatedConfig & config, int layer,
                                    const numerics::SeriesSpec & series)
{
    const auto & env = config.config().environment;
    const double h = config.layer(layer).altitude;
    const double base = -std::expm1(-h * h / (2.0 * env.xi * env.xi));
    ClosedFormParams out;
    out.series = series;
    out.eta = base > 0.0 ? -std::sqrt(env.mu * env.nu) * std::log(base)
                         : std::numeric_limits<double>::infinity();
    return out;
}

Applicability closed_form_applicable(const ValidatedConfig & config, const AssociationRule & rule,
                                     const LinkEvent & event, double s)
{
    auto no = [](std::string reason) { return Applicability{false, std::move(reason)}; };
    if (rule.orientation == Orientation::transmitter)
        return no("transmitter-oriented exclusion is zero");
    if (rule.criterion != Criterion::strongest)
        return no("association criterion is not strongest");
    if (config.target(event.rx_layer, event.tx_layer) >= 1.0)
        return no("target SINR ≥ 1");
    if (config.nakagami(ChannelClass::los) != 1 || config.nakagami(ChannelClass::nlos) != 1)
        return no("Nakagami parameter is not 1");
    for (int k = 0; k < config.layer_count(); ++k)
        if (config.layer(k).bias != config.layer(k).power)
            return no("bias differs from transmit power");
    if (config.config().los_model != LosModel::approximate)
        return no("LoS model is not the approximate one");
    const int i = event.rx_layer;
    if (config.layer(i).density_tx == 0.0)
        return no("no transmitters in the receiver's layer");
    if (!(s >= 0.0))
        return no("negative Laplace argument");

    const LaplaceEvaluator evaluator(config, event);
    for (ChannelClass c_o : channel_classes)
    {
        const double chi = evaluator.exclusion_radius(i, c_o);
        if (!(chi > 0.0))
            return no("zero exclusion radius");
        const double z = s * config.layer(i).power * std::pow(chi, -config.alpha(c_o));
        if (!(z < 1.0))
            return no("series argument not below 1");
    }
    return {true, ""};
}

namespace
{

struct SeriesSetup
{
    double density;
    double chi;
    double z;
    double y;  // eta * chi
    double alpha;
    bool los;
};

SeriesSetup series_setup(const LaplaceEvaluator & evaluator, ChannelClass c_o, double s)
{
    const auto & config = evaluator.config();
    const auto & event = evaluator.event();
    const int i = event.rx_layer;
    if (config.nakagami(ChannelClass::los) != 1 || config.nakagami(ChannelClass::nlos) != 1)
        throw DomainError("same-layer series needs m_los = m_nlos = 1");
    if (config.config().los_model != LosModel::approximate)
        throw DomainError("same-layer series needs the approximate LoS model");
    SeriesSetup out;
    out.density = config.layer(i).density_tx;
    out.chi = evaluator.exclusion_radius(i, c_o);
    out.alpha = config.alpha(c_o);
    out.los = c_o == ChannelClass::los;
    if (!(out.chi > 0.0))
        throw DomainError("same-layer series needs a positive exclusion radius");
    out.z = s * config.layer(i).power * std::pow(out.chi, -out.alpha);
    if (!(out.z < 1.0))
        throw DomainError("same-layer series diverges: s P chi^-alpha = " + std::to_string(out.z));
    out.y = closed_form_params(config, i).eta * out.chi;
    return out;
}

// (-1)^n z^n times the n-th tail integral divided by chi^2
double series_term(const SeriesSetup & st, int n)
{
    const double a = 2.0 - n * st.alpha;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const double zn = std::pow(st.z, n);
    double tail;
    if (std::isinf(st.y))
        tail = st.los ? 0.0 : 1.0 / (n * st.alpha - 2.0);
    else if (st.y == 0.0)
        tail = st.los ? 1.0 / (n * st.alpha - 2.0) : 0.0;
    else
    {
        const double g = std::exp(-st.y) * numerics::scaled_upper_incomplete_gamma(a, st.y);
        tail = st.los ? g : 1.0 / (n * st.alpha - 2.0) - g;
    }
    return sign * zn * tail;
}

double series_factor(const SeriesSetup & st, double sum)
{
    return std::exp(two_pi * st.density * st.chi * st.chi * sum);
}

}  // namespace

double laplace_same_layer_partial(const LaplaceEvaluator & evaluator, ChannelClass c_o, double s,
                                  int terms)
{
    if (terms < 1)
        throw DomainError("series needs at least one term");
    if (s == 0.0 || evaluator.config().layer(evaluator.event().rx_layer).density_tx == 0.0)
        return 1.0;
    const auto st = series_setup(evaluator, c_o, s);
    numerics::CompensatedSum sum;
    for (int n = 1; n <= terms; ++n)
        sum.add(series_term(st, n));
    return series_factor(st, sum.value());
}

double laplace_same_layer_closed(const LaplaceEvaluator & evaluator, ChannelClass c_o, double s,
                                 const numerics::SeriesSpec & series)
{
    series.check();
    if (!(s >= 0.0))
        throw DomainError("Laplace argument must be non-negative");
    if (s == 0.0 || evaluator.config().layer(evaluator.event().rx_layer).density_tx == 0.0)
        return 1.0;
    const auto st = series_setup(evaluator, c_o, s);
    numerics::CompensatedSum sum;
    for (int n = 1; n <= series.max_terms; ++n)
    {
        const double term = series_term(st, n);
        sum.add(term);
        if (std::abs(term) < series.convergence_tol * std::abs(sum.value()) || term == 0.0)
            return series_factor(st, sum.value());
    }
    throw SeriesNonConvergent("same-layer series not converged after " +
                              std::to_string(series.max_terms) + " terms (z = " +
                              std::to_string(st.z) + ")");
}

double laplace_total(const LaplaceEvaluator & evaluator, double s, bool closed_form)
{
    return evaluator.total(s, closed_form);
}

}  // namespace aerial
