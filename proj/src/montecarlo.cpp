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

#include "aerial/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "aerial/interference.hpp"
#include "aerial/parallel.hpp"

namespace aerial
{

namespace
{

constexpr double max_discard_fraction = 1e-3;
constexpr std::int64_t chunk = 256;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform(RandomStream & rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

struct Node
{
    double x;
    double y;
    int layer;
    ChannelClass channel;
    double distance;
};

// Marks every point of one layer's process as seen from a node at
// (cx, cy) in layer `from`.
void mark_layer(const ValidatedConfig & config, int from, int layer, const Eigen::Matrix2Xd & points,
                double cx, double cy, RandomStream & rng, std::vector<Node> & out)
{
    const auto & profile = config.los(from, layer);
    for (Eigen::Index n = 0; n < points.cols(); ++n)
    {
        const double px = points(0, n) + cx;
        const double py = points(1, n) + cy;
        const double r = std::hypot(px, py);
        const bool los = uniform(rng) < profile.los_at(r);
        out.push_back({px, py, layer, los ? ChannelClass::los : ChannelClass::nlos,
                       profile.link_distance(r)});
    }
}

double metric(const ValidatedConfig & config, const AssociationRule & rule, const Node & n)
{
    const double bias = config.layer(n.layer).bias;
    if (rule.criterion == Criterion::nearest)
        return bias / n.distance;
    return bias * std::pow(n.distance, -config.alpha(n.channel));
}

double received(const ValidatedConfig & config, const Node & n, RandomStream & rng)
{
    const double gain = sample_fading(n.channel, config.config().fading, rng);
    return config.layer(n.layer).power * gain * std::pow(n.distance, -config.alpha(n.channel));
}

std::optional<TrialOutcome> one_trial(const ValidatedConfig & config, const AssociationRule & rule,
                                      int typical, double radius, const Eigen::VectorXd & tail,
                                      RandomStream & rng)
{
    const bool receiver = rule.orientation == Orientation::receiver;
    std::vector<Node> candidates;
    for (int k = 0; k < config.layer_count(); ++k)
    {
        const double density = receiver ? config.layer(k).density_tx : config.layer(k).density_rx;
        if (density > 0.0)
            mark_layer(config, typical, k, sample_ppp_disk(density, radius, rng), 0.0, 0.0, rng,
                       candidates);
    }
    if (candidates.empty())
        return std::nullopt;
    std::size_t best = 0;
    double best_metric = metric(config, rule, candidates[0]);
    for (std::size_t n = 1; n < candidates.size(); ++n)
    {
        const double m = metric(config, rule, candidates[n]);
        if (m > best_metric)
        {
            best_metric = m;
            best = n;
        }
    }
    const Node partner = candidates[best];

    TrialOutcome out;
    out.layer = partner.layer;
    out.channel = partner.channel;
    out.distance = partner.distance;

    double interference = 0.0;
    double signal = 0.0;
    int rx_layer;
    int tx_layer;
    if (receiver)
    {
        rx_layer = typical;
        tx_layer = partner.layer;
        for (std::size_t n = 0; n < candidates.size(); ++n)
        {
            const double p = received(config, candidates[n], rng);
            if (n == best)
                signal = p;
            else
                interference += p;
        }
    }
    else
    {
        rx_layer = partner.layer;
        tx_layer = typical;
        Node self = partner;
        self.layer = typical;
        signal = received(config, self, rng);
        std::vector<Node> interferers;
        for (int k = 0; k < config.layer_count(); ++k)
        {
            const double density = config.layer(k).density_tx;
            if (density > 0.0)
                mark_layer(config, rx_layer, k, sample_ppp_disk(density, radius, rng), 0.0, 0.0, rng,
                           interferers);
        }
        for (const auto & n : interferers)
            interference += received(config, n, rng);
    }
    const double noise = config.config().noise_power + tail[rx_layer];
    out.sinr = signal / (interference + noise);
    out.success = out.sinr > config.target(rx_layer, tx_layer);
    return out;
}

Estimate summarize(const std::vector<double> & values)
{
    Estimate e;
    e.samples = static_cast<std::int64_t>(values.size());
    if (values.empty())
        return e;
    numerics::CompensatedSum sum;
    for (double v : values)
        sum.add(v);
    e.mean = sum.value() / values.size();
    if (values.size() > 1)
    {
        numerics::CompensatedSum sq;
        for (double v : values)
            sq.add((v - e.mean) * (v - e.mean));
        e.standard_error = std::sqrt(sq.value() / (values.size() - 1) / values.size());
    }
    return e;
}

// Per-trial interference (and optionally the main-link power) around the
// receiver of a fixed event.
template <class F>
Estimate event_trials(const ValidatedConfig & config, const LinkEvent & event, const SimSpec & spec,
                      F && score)
{
    spec.check();
    const LaplaceEvaluator evaluator(config, event);
    double radius = spec.window_radius;
    if (radius == 0.0)
    {
        radius = default_window_radius(config, event.rule, event.selector_layer());
        for (int k = 0; k < config.layer_count(); ++k)
            for (ChannelClass c : channel_classes)
                radius = std::max(radius, 10.0 * evaluator.exclusion_radius(k, c));
    }
    double floor = config.config().noise_power;
    if (spec.far_field_tail)
        floor += far_field_interference(config, event.rx_layer, radius);
    std::vector<double> values(static_cast<std::size_t>(spec.trials));
    const std::int64_t chunks = (spec.trials + chunk - 1) / chunk;
    parallel_for(static_cast<int>(chunks), [&](int c) {
        std::vector<Node> nodes;
        for (std::int64_t t = c * chunk; t < std::min(spec.trials, (c + 1) * chunk); ++t)
        {
            RandomStream rng = trial_stream(spec.seed, t);
            nodes.clear();
            for (int k = 0; k < config.layer_count(); ++k)
            {
                const double density = config.layer(k).density_tx;
                if (density > 0.0)
                    mark_layer(config, event.rx_layer, k, sample_ppp_disk(density, radius, rng), 0.0,
                               0.0, rng, nodes);
            }
            double interference = 0.0;
            for (const auto & n : nodes)
            {
                if (n.distance < evaluator.exclusion_radius(n.layer, n.channel))
                    continue;
                interference += received(config, n, rng);
            }
            values[static_cast<std::size_t>(t)] =
                score(interference + floor, rng);
        }
    });
    return summarize(values);
}

}  // namespace

void SimSpec::check() const
{
    if (!(window_radius >= 0.0) || !std::isfinite(window_radius))
        throw DomainError("window_radius must be positive (or 0 for the default)");
    if (trials < 1)
        throw DomainError("trials must be at least 1");
}

double MonteCarloRun::discard_fraction() const
{
    return attempted > 0 ? static_cast<double>(discarded) / static_cast<double>(attempted) : 0.0;
}

RandomStream trial_stream(std::uint64_t seed, std::int64_t trial)
{
    const std::uint64_t a = splitmix64(seed);
    return RandomStream(splitmix64(a ^ splitmix64(static_cast<std::uint64_t>(trial))));
}

Eigen::Matrix2Xd sample_ppp_disk(double density, double radius, RandomStream & rng)
{
    if (!(density >= 0.0) || !(radius > 0.0))
        throw DomainError("PPP needs density >= 0 and radius > 0");
    if (density == 0.0)
        return Eigen::Matrix2Xd(2, 0);
    const double mean = density * std::numbers::pi * radius * radius;
    const auto count = std::poisson_distribution<long long>(mean)(rng);
    Eigen::Matrix2Xd points(2, count);
    for (long long n = 0; n < count; ++n)
    {
        const double r = radius * std::sqrt(uniform(rng));
        const double theta = 2.0 * std::numbers::pi * uniform(rng);
        points(0, n) = r * std::cos(theta);
        points(1, n) = r * std::sin(theta);
    }
    return points;
}

double default_window_radius(const ValidatedConfig & config, const AssociationRule & rule,
                             int typical_layer)
{
    const Eigen::VectorXd density = orientation_set(config, rule);
    double longest = 0.0;
    for (int k = 0; k < config.layer_count(); ++k)
    {
        if (density[k] == 0.0)
            continue;
        // every node of the layer counts whatever its class, so Lambda = pi lambda r^2
        const double r = std::sqrt(std::log(1000.0) / (std::numbers::pi * density[k]));
        longest = std::max(longest, std::hypot(r, config.altitude_gap(typical_layer, k)));
    }
    return longest > 0.0 ? 10.0 * longest : 1000.0;
}

double far_field_interference(const ValidatedConfig & config, int rx_layer, double radius)
{
    if (!(radius > 0.0))
        throw DomainError("window radius must be positive");
    numerics::QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-30;
    spec.tail_cutoff = 0.0;
    spec.length_scale = radius;
    const double a_los = config.alpha(ChannelClass::los);
    const double a_nlos = config.alpha(ChannelClass::nlos);
    numerics::CompensatedSum total;
    for (int k = 0; k < config.layer_count(); ++k)
    {
        const double density = config.layer(k).density_tx;
        if (density == 0.0)
            continue;
        const auto & profile = config.los(rx_layer, k);
        auto f = [&](double r) {
            const double x = profile.link_distance(r);
            const double los = profile.los_at(r);
            return r * (los * std::pow(x, -a_los) + (1.0 - los) * std::pow(x, -a_nlos));
        };
        total.add(2.0 * std::numbers::pi * density * config.layer(k).power *
                  integrate_horizontal_from(f, radius, profile.piece_length(), spec));
    }
    return total.value();
}

MonteCarloRun run_trials(const ValidatedConfig & config, const AssociationRule & rule,
                         const SimSpec & spec)
{
    spec.check();
    if (spec.typical_node_layer < 0 || spec.typical_node_layer >= config.layer_count())
        throw DomainError("typical node layer out of range");
    const double radius = spec.window_radius > 0.0
                              ? spec.window_radius
                              : default_window_radius(config, rule, spec.typical_node_layer);

    Eigen::VectorXd tail = Eigen::VectorXd::Zero(config.layer_count());
    if (spec.far_field_tail)
        for (int i = 0; i < config.layer_count(); ++i)
            tail[i] = far_field_interference(config, i, radius);

    std::vector<std::optional<TrialOutcome>> slots(static_cast<std::size_t>(spec.trials));
    const std::int64_t chunks = (spec.trials + chunk - 1) / chunk;
    parallel_for(static_cast<int>(chunks), [&](int c) {
        for (std::int64_t t = c * chunk; t < std::min(spec.trials, (c + 1) * chunk); ++t)
        {
            RandomStream rng = trial_stream(spec.seed, t);
            auto o = one_trial(config, rule, spec.typical_node_layer, radius, tail, rng);
            if (o)
                o->trial = t;
            slots[static_cast<std::size_t>(t)] = o;
        }
    });

    MonteCarloRun run;
    run.window_radius = radius;
    run.attempted = spec.trials;
    for (auto & s : slots)
    {
        if (s)
            run.outcomes.push_back(*s);
        else
            ++run.discarded;
    }
    if (run.discard_fraction() > max_discard_fraction)
        throw NoCandidate(std::to_string(run.discarded) + " of " + std::to_string(run.attempted) +
                          " trials found no association target in the window");
    return run;
}

Estimate empirical_stp(const MonteCarloRun & run)
{
    std::vector<double> v;
    v.reserve(run.outcomes.size());
    for (const auto & o : run.outcomes)
        v.push_back(o.success ? 1.0 : 0.0);
    return summarize(v);
}

Eigen::MatrixX2d empirical_association(const MonteCarloRun & run, int layers)
{
    Eigen::MatrixX2d out = Eigen::MatrixX2d::Zero(layers, 2);
    for (const auto & o : run.outcomes)
        out(o.layer, index_of(o.channel)) += 1.0;
    if (!run.outcomes.empty())
        out /= static_cast<double>(run.outcomes.size());
    return out;
}

Estimate empirical_laplace(const ValidatedConfig & config, const LinkEvent & event, double s,
                           const SimSpec & spec)
{
    if (!(s >= 0.0))
        throw DomainError("Laplace argument must be non-negative");
    return event_trials(config, event, spec,
                        [s](double total, RandomStream &) { return std::exp(-s * total); });
}

Estimate empirical_conditional_stp(const ValidatedConfig & config, const LinkEvent & event,
                                   const SimSpec & spec)
{
    const double beta = config.target(event.rx_layer, event.tx_layer);
    const double path = config.layer(event.tx_layer).power *
                        std::pow(event.distance, -config.alpha(event.channel));
    return event_trials(config, event, spec, [&](double total, RandomStream & rng) {
        const double gain = sample_fading(event.channel, config.config().fading, rng);
        return gain * path > beta * total ? 1.0 : 0.0;
    });
}

double ks_statistic_sorted(const std::vector<double> & sorted, const Eigen::VectorXd & cdf_values)
{
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        const double f = cdf_values[static_cast<Eigen::Index>(i)];
        d = std::max({d, f - i / n, (i + 1) / n - f});
    }
    return d;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)> & cdf)
{
    if (sample.empty())
        throw DomainError("KS statistic of an empty sample");
    std::sort(sample.begin(), sample.end());
    Eigen::VectorXd f(static_cast<Eigen::Index>(sample.size()));
    for (std::size_t i = 0; i < sample.size(); ++i)
        f[static_cast<Eigen::Index>(i)] = cdf(sample[i]);
    return ks_statistic_sorted(sample, f);
}

void write_outcomes(std::ostream & out, const MonteCarloRun & run)
{
    out << "trial,layer,class,distance_m,sinr,success\n";
    out.precision(12);
    for (const auto & o : run.outcomes)
        out << o.trial << ',' << o.layer << ',' << to_string(o.channel) << ',' << o.distance << ','
            << o.sinr << ',' << (o.success ? 1 : 0) << '\n';
}

}  // namespace aerial
