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

#include "aerial/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace aerial
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double saturation = 745.0;  // exp(-745) is the last subnormal
constexpr double max_radius = 1e8;
constexpr double base_step = 1.0;

}  // namespace

LinkEvent make_event(const AssociationRule & rule, int selector, int candidate, ChannelClass c,
                     double distance)
{
    LinkEvent e;
    e.rule = rule;
    e.channel = c;
    e.distance = distance;
    if (rule.orientation == Orientation::receiver)
    {
        e.rx_layer = selector;
        e.tx_layer = candidate;
    }
    else
    {
        e.rx_layer = candidate;
        e.tx_layer = selector;
    }
    return e;
}

// ---------------------------------------------------------------------------

NearestDistanceLaw::NearestDistanceLaw(const LosProfile & profile, double density, ChannelClass c)
    : profile_(profile), density_(density), channel_(c)
{
    if (!(density >= 0.0) || !std::isfinite(density))
        throw DomainError("density must be finite and non-negative");

    never_ = true;
    for (double r : {0.0, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6})
        if (class_probability(r) > 0.0)
            never_ = false;
    if (empty())
        return;

    const double piece = profile_.piece_length();
    edges_.push_back(0.0);
    cumulative_.push_back(0.0);
    double r = 0.0;
    double total = 0.0;
    while (true)
    {
        double next = r + std::max(base_step, 0.05 * r);
        if (piece > 0.0)
            next = std::min(next, (std::floor(r / piece + 1e-9) + 1.0) * piece);
        const double inc = partial(r, next);
        total += inc;
        r = next;
        edges_.push_back(r);
        cumulative_.push_back(total);
        if (total > saturation)
        {
            saturated_ = true;
            break;
        }
        if (total > 0.0 && inc <= 1e-17 * total && r > 1e3)
            break;
        if (r > max_radius)
            break;
    }
}

double NearestDistanceLaw::partial(double lo, double hi) const
{
    if (hi <= lo)
        return 0.0;
    const auto & rule = numerics::gauss_legendre(10);
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
    {
        const double t = center + half * rule.nodes[i];
        acc += rule.weights[i] * t * class_probability(t);
    }
    return two_pi * density_ * acc * half;
}

double NearestDistanceLaw::intensity_horizontal(double r) const
{
    if (empty() || r <= 0.0)
        return 0.0;
    if (r >= edges_.back())
        return saturated_ ? std::numeric_limits<double>::infinity() : cumulative_.back();
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
    const auto k = static_cast<std::size_t>(std::distance(edges_.begin(), it) - 1);
    return cumulative_[k] + partial(edges_[k], r);
}

double NearestDistanceLaw::ccdf_horizontal(double r) const
{
    return std::exp(-intensity_horizontal(r));
}

double NearestDistanceLaw::pdf_horizontal(double r) const
{
    if (empty() || r < 0.0)
        return 0.0;
    const double rho = class_probability(r);
    if (rho == 0.0)
        return 0.0;
    return two_pi * density_ * r * rho * ccdf_horizontal(r);
}

double NearestDistanceLaw::cumulative_intensity(double v) const
{
    if (v <= altitude_gap())
        return 0.0;
    return intensity_horizontal(profile_.horizontal(v));
}

double NearestDistanceLaw::ccdf(double v) const { return std::exp(-cumulative_intensity(v)); }

double NearestDistanceLaw::pdf(double v) const
{
    if (empty() || v < altitude_gap())
        return 0.0;
    const double r = profile_.horizontal(v);
    const double rho = class_probability(r);
    if (rho == 0.0)
        return 0.0;
    // r dr = v dv
    return two_pi * density_ * v * rho * ccdf_horizontal(r);
}

double NearestDistanceLaw::defect() const
{
    if (empty())
        return 1.0;
    return saturated_ ? 0.0 : std::exp(-cumulative_.back());
}

NearestDistanceLaw nearest_distance_law(const ValidatedConfig & config, const AssociationRule & rule,
                                        int i, int k, ChannelClass c_o)
{
    const Eigen::VectorXd density = orientation_set(config, rule);
    return NearestDistanceLaw(config.los(i, k), density[k], c_o);
}

// ---------------------------------------------------------------------------

namespace
{

void append(numerics::WeightedNodes & to, numerics::WeightedNodes from)
{
    to.points.insert(to.points.end(), from.points.begin(), from.points.end());
    to.weights.insert(to.weights.end(), from.weights.begin(), from.weights.end());
}

double horizontal_impl(const numerics::RealFunction & f, double lower, double piece_length,
                       const numerics::QuadratureSpec & spec, numerics::WeightedNodes * nodes)
{
    auto tail = spec;
    numerics::CompensatedSum total;
    double lo = lower;
    if (piece_length > 0.0 && std::isfinite(piece_length))
    {
        int quiet = 0;
        for (int n = 0; n < 200000; ++n)
        {
            const double hi = (std::floor(lo / piece_length + 1e-9) + 1.0) * piece_length;
            const auto r = numerics::integrate_detailed(f, lo, hi, spec);
            if (nodes)
                append(*nodes, numerics::finite_nodes(r.partition));
            total.add(r.value);
            lo = hi;
            const double t = std::abs(total.value());
            if (t > 0.0 && std::abs(r.value) <= spec.rel_tol * t)
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 3 || (t == 0.0 && n > 10000))
                break;
        }
        tail.length_scale = std::max(spec.length_scale, piece_length);
    }
    const auto r = numerics::integrate_semi_infinite_detailed(f, lo, tail);
    if (nodes)
        append(*nodes, numerics::semi_infinite_nodes(lo, tail.length_scale, r.partition));
    total.add(r.value);
    return total.value();
}

}  // namespace

double integrate_horizontal(const numerics::RealFunction & f, double piece_length,
                            const numerics::QuadratureSpec & spec)
{
    return horizontal_impl(f, 0.0, piece_length, spec, nullptr);
}

double integrate_horizontal_from(const numerics::RealFunction & f, double lower,
                                 double piece_length, const numerics::QuadratureSpec & spec)
{
    return horizontal_impl(f, lower, piece_length, spec, nullptr);
}

numerics::WeightedNodes horizontal_rule(const numerics::RealFunction & f, double lower,
                                        double piece_length, const numerics::QuadratureSpec & spec)
{
    numerics::WeightedNodes nodes;
    horizontal_impl(f, lower, piece_length, spec, &nodes);
    return nodes;
}

double integrate_horizontal(const numerics::RealFunction & f, double upper, double piece_length,
                            const numerics::QuadratureSpec & spec)
{
    if (!(upper > 0.0))
        return 0.0;
    if (!(piece_length > 0.0) || !std::isfinite(piece_length))
        return numerics::integrate(f, 0.0, upper, spec);
    numerics::CompensatedSum total;
    double lo = 0.0;
    while (lo < upper)
    {
        const double hi = std::min(upper, (std::floor(lo / piece_length + 1e-9) + 1.0) * piece_length);
        total.add(numerics::integrate(f, lo, hi, spec));
        lo = hi;
    }
    return total.value();
}

double candidate_radius(Criterion criterion, const PathlossParams & pathloss, ChannelClass c,
                        ChannelClass c_o, double y, double bias_j, double bias_k)
{
    if (!(y >= 0.0) || !(bias_j > 0.0) || !(bias_k > 0.0))
        throw DomainError("candidate_radius needs y >= 0 and positive biases");
    if (criterion == Criterion::nearest)
        return y * bias_k / bias_j;
    return std::pow(std::pow(y, pathloss.alpha(c)) * bias_k / bias_j, 1.0 / pathloss.alpha(c_o));
}

// ---------------------------------------------------------------------------

numerics::QuadratureSpec AssociationModel::default_spec()
{
    numerics::QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-14;
    spec.tail_cutoff = 1e-16;
    return spec;
}

AssociationModel::AssociationModel(const ValidatedConfig & config, const AssociationRule & rule,
                                   int selector, const numerics::QuadratureSpec & spec)
    : config_(&config), rule_(rule), selector_(selector), spec_(spec)
{
    if (selector < 0 || selector >= config.layer_count())
        throw DomainError("selector layer out of range");
    const Eigen::VectorXd density = orientation_set(config, rule);
    laws_.reserve(static_cast<std::size_t>(2 * config.layer_count()));
    for (int k = 0; k < config.layer_count(); ++k)
        for (ChannelClass c : channel_classes)
            laws_.emplace_back(config.los(selector, k), density[k], c);
    const double total = density.sum();
    length_scale_ = total > 0.0 ? 0.5 / std::sqrt(total) : 1.0;
    spec_.length_scale = length_scale_;
}

bool AssociationModel::has_candidates() const
{
    return std::any_of(laws_.begin(), laws_.end(), [](const auto & l) { return !l.empty(); });
}

const NearestDistanceLaw & AssociationModel::law(int k, ChannelClass c) const
{
    return laws_.at(static_cast<std::size_t>(2 * k + index_of(c)));
}

double AssociationModel::joint_density_horizontal(int j, ChannelClass c, double r) const
{
    const auto & main = law(j, c);
    double out = main.pdf_horizontal(r);
    if (out == 0.0)
        return 0.0;
    const double y = main.profile().link_distance(r);
    const auto & layers = config_->config().layers;
    for (int k = 0; k < config_->layer_count(); ++k)
        for (ChannelClass c_o : channel_classes)
        {
            if (k == j && c_o == c)
                continue;
            const auto & other = law(k, c_o);
            if (other.empty())
                continue;
            const double radius =
                candidate_radius(rule_.criterion, config_->config().pathloss, c, c_o, y,
                                 layers[static_cast<std::size_t>(j)].bias,
                                 layers[static_cast<std::size_t>(k)].bias);
            out *= other.ccdf(radius);
            if (out == 0.0)
                return 0.0;
        }
    return out;
}

double AssociationModel::joint_density(int j, ChannelClass c, double y) const
{
    const auto & main = law(j, c);
    if (y < main.altitude_gap())
        return 0.0;
    const double r = main.profile().horizontal(y);
    if (r == 0.0)
        return 0.0;
    // f_V(y) = f_R(r) y / r
    return joint_density_horizontal(j, c, r) * y / r;
}

double AssociationModel::association_probability(int j, ChannelClass c) const
{
    const auto & main = law(j, c);
    if (main.empty())
        return 0.0;
    return std::clamp(integrate_horizontal([&](double r) { return joint_density_horizontal(j, c, r); },
                                           main.profile().piece_length(), spec_),
                      0.0, 1.0);
}

AssociationReport AssociationModel::report() const
{
    AssociationReport out;
    out.selector_layer = selector_;
    out.rule = rule_;
    out.probability = Eigen::MatrixX2d::Zero(config_->layer_count(), 2);
    for (int k = 0; k < config_->layer_count(); ++k)
        for (ChannelClass c : channel_classes)
            out.probability(k, index_of(c)) = association_probability(k, c);
    return out;
}

AssociationReport association_probabilities(const ValidatedConfig & config,
                                            const AssociationRule & rule, int i)
{
    return AssociationModel(config, rule, i).report();
}

// ---------------------------------------------------------------------------

MainLinkLaw::MainLinkLaw(const AssociationModel & model, int j, ChannelClass c)
    : model_(&model), layer_(j), channel_(c)
{
    probability_ = model.association_probability(j, c);
    gap_ = model.law(j, c).altitude_gap();
    if (!(probability_ > 0.0))
        throw DomainError("association probability of layer " + std::to_string(j) + " " +
                          std::string(to_string(c)) + " is zero");
}

double MainLinkLaw::pdf(double y) const
{
    return model_->joint_density(layer_, channel_, y) / probability_;
}

double MainLinkLaw::cdf(double y) const
{
    if (y <= gap_)
        return 0.0;
    const auto & law = model_->law(layer_, channel_);
    const double tail = integrate_horizontal_from(
        [&](double r) { return model_->joint_density_horizontal(layer_, channel_, r); },
        law.profile().horizontal(y), law.profile().piece_length(), model_->spec());
    return std::clamp(1.0 - tail / probability_, 0.0, 1.0);
}

Eigen::VectorXd MainLinkLaw::cdf(const Eigen::VectorXd & points) const
{
    std::vector<Eigen::Index> order(static_cast<std::size_t>(points.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] < points[b]; });

    const auto & law = model_->law(layer_, channel_);
    const auto & profile = law.profile();
    const auto & spec = model_->spec();
    auto f = [&](double r) { return model_->joint_density_horizontal(layer_, channel_, r); };

    Eigen::VectorXd out(points.size());
    numerics::CompensatedSum mass;
    double r_prev = 0.0;
    for (auto idx : order)
    {
        const double r = points[idx] <= gap_ ? 0.0 : profile.horizontal(points[idx]);
        if (r > r_prev)
        {
            // split at piece boundaries so jumps never fall inside a panel
            double lo = r_prev;
            const double piece = profile.piece_length();
            while (lo < r)
            {
                const double hi =
                    piece > 0.0 ? std::min(r, (std::floor(lo / piece + 1e-9) + 1.0) * piece) : r;
                mass.add(numerics::integrate(f, lo, hi, spec));
                lo = hi;
            }
            r_prev = r;
        }
        out[idx] = points[idx] <= gap_ ? 0.0 : std::clamp(mass.value() / probability_, 0.0, 1.0);
    }
    return out;
}

MainLinkLaw main_link_pdf(const AssociationModel & model, int j, ChannelClass c)
{
    return MainLinkLaw(model, j, c);
}

}  // namespace aerial
