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

#include "aerial/design.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "aerial/parallel.hpp"

namespace aerial
{

namespace
{

constexpr double infinity = std::numeric_limits<double>::infinity();
constexpr double density_cap = 1e-3;

}  // namespace

std::string_view to_string(Objective o) { return o == Objective::stp ? "stp" : "ase"; }

Objective parse_objective(std::string_view text)
{
    if (text == "stp")
        return Objective::stp;
    if (text == "ase")
        return Objective::ase;
    throw DomainError("objective must be stp or ase");
}

double epsilon(const ValidatedConfig & config, int i, int j)
{
    const double h = config.altitude_gap(i, j);
    if (h == 0.0)
        throw DegenerateGeometry("epsilon of layers " + std::to_string(i) + " and " +
                                 std::to_string(j) + " at equal altitude vanishes");
    const double beta = config.target(i, j);
    const double a_los = config.alpha(ChannelClass::los);
    const double a_nlos = config.alpha(ChannelClass::nlos);
    const double scale = beta * std::pow(h, a_los);
    const auto & profile = config.los(i, j);

    // 1 - rho^L/(1+a) - rho^N/(1+b) rewritten with rho^L + rho^N = 1
    auto f = [&](double r) {
        const double x = std::hypot(r, h);
        const double los = profile.los_at(r);
        const double a = scale * std::pow(x, -a_los);
        const double b = scale * std::pow(x, -a_nlos);
        return r * (los * a / (1.0 + a) + (1.0 - los) * b / (1.0 + b));
    };
    numerics::QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-10;
    spec.tail_cutoff = 0.0;
    spec.max_subdivisions = 4000;
    spec.length_scale = h;
    return integrate_horizontal(f, profile.piece_length(), spec);
}

DensityBound density_upper_bound(const ValidatedConfig & config, const AssociationRule & rule, int k,
                                 int j, Objective objective)
{
    if (config.nakagami(ChannelClass::los) != 1 || config.nakagami(ChannelClass::nlos) != 1)
        throw PreconditionViolated("density bound holds for m_los = m_nlos = 1 only");
    if (k < 0 || k >= config.layer_count() || j < 0 || j >= config.layer_count())
        throw DomainError("layer index out of range");

    DensityBound out;
    out.rx_layer = k;
    out.tx_layer = j;
    out.objective = objective;
    out.epsilon = std::numeric_limits<double>::quiet_NaN();

    // 1/(2 pi eps) for receiver layer i and transmitter layer t
    auto reciprocal = [&](int i, int t, std::string & reason) {
        if (config.altitude_gap(i, t) == 0.0)
        {
            reason = "degenerate geometry: zero altitude gap";
            return infinity;
        }
        const double eps = epsilon(config, i, t);
        out.epsilon = eps;
        const double b = 1.0 / (2.0 * std::numbers::pi * eps);
        if (!(eps > 0.0) || !std::isfinite(b))
        {
            reason = "epsilon zero";
            return infinity;
        }
        return b;
    };

    if (rule.orientation == Orientation::receiver)
    {
        out.bound_stp = reciprocal(k, j, out.reason);
        out.bound_ase = out.bound_stp;
        return out;
    }

    out.bound_stp = 0.0;
    if (k != j)
    {
        out.bound_ase = 0.0;
        out.reason = "monotone decreasing";
        return out;
    }
    out.bound_ase = 0.0;
    std::string reason;
    bool any = false;
    for (int i = 0; i < config.layer_count(); ++i)
    {
        if (config.layer(i).density_rx == 0.0)
            continue;
        any = true;
        std::string r;
        const double b = reciprocal(i, k, r);
        if (b > out.bound_ase)
        {
            out.bound_ase = b;
            reason = r;
        }
    }
    if (!any)
        reason = "no receiver layer";
    out.reason = objective == Objective::stp ? "monotone decreasing" : reason;
    return out;
}

Eigen::VectorXd log_grid(double lo, double hi, int per_decade)
{
    if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1)
        throw DomainError("log grid needs 0 < lo <= hi and at least one point per decade");
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade - 1e-9)) + 1);
    if (hi == lo)
        return Eigen::VectorXd::Constant(1, lo);
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    out[n - 1] = hi;
    return out;
}

Eigen::VectorXd default_density_grid(double ceiling)
{
    double hi = std::min(ceiling, density_cap);
    if (!(hi > 1e-8))
        hi = 1e-8;
    return log_grid(1e-8, hi, 25);
}

double layer_objective(const ValidatedConfig & config, const AssociationRule & rule, int k,
                       Objective objective, const EvaluationSettings & settings)
{
    return objective == Objective::stp ? layer_stp(config, rule, k, settings)
                                       : layer_ase(config, rule, k, settings);
}

DensityOptimum optimize_density(const ValidatedConfig & config, const AssociationRule & rule, int k,
                                int j, Objective objective, const Eigen::VectorXd & grid,
                                double ceiling, const EvaluationSettings & settings)
{
    if (grid.size() == 0)
        throw DomainError("density grid is empty");
    if (std::isnan(ceiling))
    {
        const double bound = density_upper_bound(config, rule, k, j, objective).value();
        ceiling = std::isfinite(bound) ? bound : density_cap;
    }

    std::vector<double> points;
    for (Eigen::Index n = 0; n < grid.size(); ++n)
        if (grid[n] <= ceiling)
            points.push_back(grid[n]);
    if (points.empty())
        points.push_back(grid.minCoeff());
    std::sort(points.begin(), points.end());

    std::vector<double> values(points.size());
    parallel_for(static_cast<int>(points.size()), [&](int n) {
        const auto v = config.with_tx_density(j, points[static_cast<std::size_t>(n)]);
        values[static_cast<std::size_t>(n)] = layer_objective(v, rule, k, objective, settings);
    });

    DensityOptimum out;
    out.ceiling = ceiling;
    out.grid = Eigen::Map<const Eigen::VectorXd>(points.data(), static_cast<Eigen::Index>(points.size()));
    out.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    std::size_t best = 0;
    for (std::size_t n = 1; n < values.size(); ++n)
        if (values[n] > values[best])  // strict: ties stay with the smaller density
            best = n;
    out.density = points[best];
    out.value = values[best];
    return out;
}

SplitSweepResult two_layer_split(const ValidatedConfig & config, const AssociationRule & rule, int j,
                                 int k, double total, const Eigen::VectorXd & splits,
                                 Objective objective, const EvaluationSettings & settings)
{
    if (j == k || j < 0 || k < 0 || j >= config.layer_count() || k >= config.layer_count())
        throw DomainError("split needs two distinct transmitter layers");
    if (!(total > 0.0) || !std::isfinite(total))
        throw DomainError("total density must be positive");
    if (splits.size() == 0)
        throw DomainError("split grid is empty");
    for (Eigen::Index n = 0; n < splits.size(); ++n)
        if (!(splits[n] >= 0.0 && splits[n] <= 1.0))
            throw DomainError("split fractions must lie in [0, 1]");

    SplitSweepResult out;
    out.total_density = total;
    out.split = splits;
    out.values.resize(splits.size());
    parallel_for(static_cast<int>(splits.size()), [&](int n) {
        NetworkConfig c = config.config();
        c.layers[static_cast<std::size_t>(j)].density_tx = splits[n] * total;
        c.layers[static_cast<std::size_t>(k)].density_tx = (1.0 - splits[n]) * total;
        const auto v = validate(c);
        const auto report = network_aggregate(v, rule, settings);
        out.values[n] = objective == Objective::stp ? report.network_stp : report.network_ase;
    });

    const double lo = out.values.minCoeff();
    const double hi = out.values.maxCoeff();
    if (hi > lo)
        out.normalized = (out.values.array() - lo) / (hi - lo);
    else
        out.normalized = Eigen::VectorXd::Ones(splits.size());
    out.argmax = 0;
    for (Eigen::Index n = 1; n < splits.size(); ++n)
        if (out.values[n] > out.values[out.argmax])
            out.argmax = static_cast<int>(n);
    return out;
}

}  // namespace aerial
