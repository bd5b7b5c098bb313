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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "aerial/design.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace aerial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

/// epsilon in link distance, straight from its definition, with the sigmoid LoS law.
double epsilon_oracle(double h, double beta)
{
    const Environment env;
    const double scale = beta * std::pow(h, 2.5);
    auto f = [&](double x) {
        const double los = oracle::los_a2g(env, h, x);
        const double a = scale * std::pow(x, -2.5);
        const double b = scale * std::pow(x, -3.5);
        // 1 - los/(1+a) - (1-los)/(1+b), without the cancellation
        return x * (los * a / (1.0 + a) + (1.0 - los) * b / (1.0 + b));
    };
    return oracle::simpson(f, h, 100.0 * h, 400000) + oracle::simpson_log(f, 100.0 * h, 1e30, 400000);
}

}  // namespace

TEST_CASE("epsilon matches its definition")
{
    for (double h : {50.0, 100.0, 250.0, 400.0})
        for (double beta : {0.3, 0.7, 2.0})
        {
            auto c = fixture::single_layer(h);
            c.set_uniform_target(beta);
            CHECK_THAT(epsilon(validate(c), 0, 1), WithinRel(epsilon_oracle(h, beta), 1e-6));
        }
    CHECK_THROWS_AS(epsilon(validate(fixture::equal_altitude()), 0, 0), DegenerateGeometry);
}

TEST_CASE("epsilon grows with the altitude gap")
{
    double previous = 0.0;
    for (int n = 0; n < 10; ++n)
    {
        const double h = 50.0 + 50.0 * n;
        const double eps = epsilon(validate(fixture::single_layer(h)), 0, 1);
        CHECK(eps > previous);
        previous = eps;
    }
}

TEST_CASE("receiver-oriented bounds")
{
    const ValidatedConfig v = validate(fixture::single_layer());
    for (const auto & rule : {fixture::rs, fixture::rn})
        for (Objective o : {Objective::stp, Objective::ase})
        {
            const DensityBound b = density_upper_bound(v, rule, 0, 1, o);
            const double expected = 1.0 / (2.0 * oracle::pi * epsilon(v, 0, 1));
            CHECK(b.value() == expected);
            CHECK(b.bound_stp == b.bound_ase);
            CHECK(b.epsilon == epsilon(v, 0, 1));
            CHECK(b.reason.empty());
        }

    // the bound ignores every other layer's density
    const ValidatedConfig two = validate(fixture::two_layer(5e-7, 5e-7));
    const ValidatedConfig other = two.with_tx_density(2, 3e-5);
    CHECK(density_upper_bound(two, fixture::rs, 0, 1, Objective::stp).bound_stp ==
          density_upper_bound(other, fixture::rs, 0, 1, Objective::stp).bound_stp);

    // decreasing in altitude
    double previous = std::numeric_limits<double>::infinity();
    for (double h : {100.0, 200.0, 300.0, 400.0})
    {
        const double b = density_upper_bound(validate(fixture::single_layer(h)), fixture::rs, 0, 1, Objective::stp).value();
        CHECK(b < previous);
        CHECK(b >= 0.0);
        previous = b;
    }
}

TEST_CASE("transmitter-oriented bounds")
{
    const ValidatedConfig v = validate(fixture::config({{0.0, 1e-5, 0.0}, {100.0, 1e-6, 1e-6}, {200.0, 0.0, 1e-6}}));
    const DensityBound stp = density_upper_bound(v, fixture::ts, 1, 2, Objective::stp);
    CHECK(stp.value() == 0.0);
    CHECK(stp.reason == "monotone decreasing");
    CHECK(density_upper_bound(v, fixture::ts, 1, 1, Objective::stp).value() == 0.0);

    const DensityBound other = density_upper_bound(v, fixture::ts, 1, 2, Objective::ase);
    CHECK(other.value() == 0.0);
    CHECK(other.reason == "monotone decreasing");

    // own layer: the largest bound over receiving layers; layer 1 receives at zero gap
    const DensityBound own = density_upper_bound(v, fixture::ts, 2, 2, Objective::ase);
    const double from_ground = 1.0 / (2.0 * oracle::pi * epsilon(v, 0, 2));
    const double from_layer1 = 1.0 / (2.0 * oracle::pi * epsilon(v, 1, 2));
    CHECK(own.value() == std::max(from_ground, from_layer1));
    const DensityBound same = density_upper_bound(v, fixture::ts, 1, 1, Objective::ase);
    CHECK(std::isinf(same.value()));
    CHECK(same.reason == "degenerate geometry: zero altitude gap");
}

TEST_CASE("degenerate bounds")
{
    auto tiny = fixture::single_layer();
    tiny.set_uniform_target(std::numeric_limits<double>::denorm_min());
    const DensityBound b = density_upper_bound(validate(tiny), fixture::rs, 0, 1, Objective::stp);
    CHECK(std::isinf(b.value()));
    CHECK(b.reason == "epsilon zero");

    const DensityBound flat = density_upper_bound(validate(fixture::equal_altitude()), fixture::rs, 0, 0, Objective::stp);
    CHECK(std::isinf(flat.value()));
    CHECK(flat.reason == "degenerate geometry: zero altitude gap");

    CHECK_THROWS_AS(density_upper_bound(validate(fixture::single_layer(100.0, 1e-5, 3)), fixture::rs, 0, 1, Objective::stp),
                    PreconditionViolated);
    CHECK_THROWS_AS(density_upper_bound(validate(fixture::single_layer()), fixture::rs, 0, 5, Objective::stp), DomainError);
}

TEST_CASE("density grids")
{
    const Eigen::VectorXd g = log_grid(1e-8, 1e-3, 25);
    CHECK(g.size() == 126);
    CHECK(g[0] == 1e-8);
    CHECK(g[g.size() - 1] == 1e-3);
    CHECK_THAT(g[25], WithinRel(1e-7, 1e-12));
    for (Eigen::Index n = 1; n < g.size(); ++n)
        CHECK(g[n] > g[n - 1]);
    CHECK(default_density_grid(1.0)[default_density_grid(1.0).size() - 1] == 1e-3);
    CHECK(default_density_grid(5e-5).maxCoeff() == 5e-5);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), DomainError);
    CHECK(parse_objective("ase") == Objective::ase);
    CHECK(to_string(Objective::stp) == "stp");
    CHECK_THROWS_AS(parse_objective("rate"), DomainError);
}

TEST_CASE("grid search stays below the ceiling and finds the grid maximum")
{
    const ValidatedConfig v = validate(fixture::single_layer());
    const Eigen::VectorXd grid = log_grid(1e-7, 1e-4, 8);
    const DensityOptimum opt = optimize_density(v, fixture::rs, 0, 1, Objective::ase, grid, 3e-5);
    CHECK(opt.density <= 3e-5);
    CHECK(opt.grid.maxCoeff() <= 3e-5);
    CHECK(opt.value == opt.values.maxCoeff());
    for (Eigen::Index n = 0; n < opt.grid.size(); ++n)
        CHECK(opt.values[n] == layer_objective(v.with_tx_density(1, opt.grid[n]), fixture::rs, 0, Objective::ase));

    // a NaN ceiling means the bound
    const DensityOptimum bounded = optimize_density(v, fixture::rs, 0, 1, Objective::stp, grid,
                                                    std::numeric_limits<double>::quiet_NaN());
    CHECK(bounded.ceiling == density_upper_bound(v, fixture::rs, 0, 1, Objective::stp).value());
    CHECK_THROWS_AS(optimize_density(v, fixture::rs, 0, 1, Objective::stp, Eigen::VectorXd(), 1.0), DomainError);
}

TEST_CASE("transmitter-oriented STP search returns the smallest density")
{
    const ValidatedConfig v = validate(fixture::config({{0.0, 1e-5, 0.0}, {100.0, 0.0, 1e-5}}));
    const Eigen::VectorXd grid = log_grid(1e-7, 1e-5, 4);
    const DensityOptimum zero = optimize_density(v, fixture::ts, 1, 1, Objective::stp, grid,
                                                 std::numeric_limits<double>::quiet_NaN());
    CHECK(zero.ceiling == 0.0);
    CHECK(zero.density == 1e-7);
    // without the ceiling the decreasing objective still peaks at the smallest density
    const DensityOptimum open = optimize_density(v, fixture::ts, 1, 1, Objective::stp, grid, 1.0);
    CHECK(open.density == 1e-7);
}

TEST_CASE("optimal density and its bound fall with altitude")
{
    double previous = std::numeric_limits<double>::infinity();
    for (double h : {100.0, 200.0, 400.0})
    {
        const ValidatedConfig v = validate(fixture::single_layer(h));
        const double bound = density_upper_bound(v, fixture::rs, 0, 1, Objective::ase).value();
        const DensityOptimum opt = optimize_density(v, fixture::rs, 0, 1, Objective::ase,
                                                    default_density_grid(1e-3), 1e-3);
        INFO("h " << h << " optimum " << opt.density << " bound " << bound);
        CHECK(opt.density <= bound);
        CHECK(opt.density <= previous);
        previous = opt.density;
    }
}

TEST_CASE("two-layer split")
{
    // identical layers at both ends
    const ValidatedConfig twins = validate(fixture::config({{0.0, 1e-5, 0.0}, {100.0, 0.0, 1e-6}, {100.0, 0.0, 1e-6}}));
    Eigen::VectorXd ends(2);
    ends << 0.0, 1.0;
    const SplitSweepResult t = two_layer_split(twins, fixture::rs, 1, 2, 2e-6, ends, Objective::stp);
    CHECK_THAT(t.values[0], WithinRel(t.values[1], 1e-12));

    const ValidatedConfig v = validate(fixture::two_layer());
    const Eigen::VectorXd splits = Eigen::VectorXd::LinSpaced(6, 0.0, 1.0);
    for (Objective o : {Objective::stp, Objective::ase})
    {
        const SplitSweepResult r = two_layer_split(v, fixture::rs, 1, 2, 2e-6, splits, o);
        CHECK(r.normalized.minCoeff() == 0.0);
        CHECK(r.normalized.maxCoeff() == 1.0);
        CHECK(r.values[r.argmax] == r.values.maxCoeff());
        CHECK(r.best_split() == splits[r.argmax]);
        CHECK(r.total_density == 2e-6);

        // the end points are single-layer networks
        for (int end : {0, 1})
        {
            NetworkConfig c = v.config();
            c.layers[1].density_tx = end * 2e-6;
            c.layers[2].density_tx = (1 - end) * 2e-6;
            const PerformanceReport single = network_aggregate(validate(c), fixture::rs);
            const double expected = o == Objective::stp ? single.network_stp : single.network_ase;
            CHECK_THAT(r.values[end == 0 ? 0 : splits.size() - 1], WithinRel(expected, 1e-12));
        }
    }
    CHECK_THROWS_AS(two_layer_split(v, fixture::rs, 1, 1, 1e-6, splits, Objective::stp), DomainError);
    CHECK_THROWS_AS(two_layer_split(v, fixture::rs, 1, 2, 0.0, splits, Objective::stp), DomainError);
    Eigen::VectorXd bad(1);
    bad << 1.5;
    CHECK_THROWS_AS(two_layer_split(v, fixture::rs, 1, 2, 1e-6, bad, Objective::stp), DomainError);
}

TEST_CASE("ASE weights follow the selecting nodes")
{
    const ValidatedConfig v = validate(fixture::config({{0.0, 1e-5, 2e-6}, {100.0, 3e-6, 4e-6}}));
    CHECK(evaluate_layer(v, fixture::rs, 1).weight == 3e-6);
    CHECK(evaluate_layer(v, fixture::ts, 1).weight == 4e-6);
    const LayerPerformance t = evaluate_layer(v, fixture::ts, 0);
    double sum = 0.0;
    for (const auto & p : t.parts)
        sum += p.rate * p.success;
    CHECK_THAT(t.ase, WithinRel(2e-6 * sum, 1e-14));
}
