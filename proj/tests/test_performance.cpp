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
#include <vector>

#include "aerial/montecarlo.hpp"
#include "aerial/performance.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace aerial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr ChannelClass classes[] = {ChannelClass::los, ChannelClass::nlos};

}  // namespace

TEST_CASE("Rayleigh conditional STP is the Laplace transform at the SINR scale")
{
    auto c = fixture::mixed();
    c.noise_power = 1e-12;
    const ValidatedConfig v = validate(c);
    for (ChannelClass cls : classes)
        for (double y : {120.0, 300.0})
        {
            const LinkEvent e = make_event(fixture::rs, 0, 1, cls, y);
            const double s = 0.7 * std::pow(y, v.alpha(cls));
            CHECK(sinr_scale(e, v) == s);
            CHECK(conditional_stp(v, e) == LaplaceEvaluator(v, e, EvaluationSettings{}.inner).total(s));
            // the higher-order path reduces to its first term
            const FrozenLaplace frozen = LaplaceEvaluator(v, e, EvaluationSettings{}.inner).freeze(s);
            CHECK_THAT(frozen(s), WithinRel(conditional_stp(v, e), 1e-12));
        }
    CHECK_THROWS_AS(sinr_scale(make_event(fixture::rs, 0, 1, ChannelClass::los, 50.0), v), DomainError);
}

TEST_CASE("higher-order fading: derivative sum is stable under step halving")
{
    for (int m : {2, 3, 5})
    {
        const ValidatedConfig v = validate(fixture::single_layer(150.0, 1e-5, m));
        for (double y : {160.0, 250.0, 500.0})
        {
            const LinkEvent e = make_event(fixture::rn, 0, 1, ChannelClass::los, y);
            EvaluationSettings coarse;
            EvaluationSettings fine;
            fine.derivative_step = 0.05;
            const StpEstimate a = conditional_stp_detailed(v, e, coarse);
            const StpEstimate b = conditional_stp_detailed(v, e, fine);
            INFO("m " << m << " y " << y);
            CHECK_THAT(a.value, WithinAbs(b.value, 1e-4));
            CHECK(a.value >= 0.0);
            CHECK(a.value <= 1.0);
            CHECK(a.error <= 1e-3 * std::max(a.value, 1e-5));
        }
    }
}

TEST_CASE("higher-order fading: conditional STP agrees with simulation")
{
    const ValidatedConfig v = validate(fixture::single_layer(200.0, 1e-5, 3));
    SimSpec spec;
    spec.trials = 5000;
    spec.seed = 4;
    for (double y : {220.0, 400.0})
    {
        const LinkEvent e = make_event(fixture::rn, 0, 1, ChannelClass::los, y);
        const Estimate mc = empirical_conditional_stp(v, e, spec);
        INFO("y " << y << " mc " << mc.mean);
        CHECK_THAT(conditional_stp(v, e), WithinAbs(mc.mean, 0.02));
    }
}

TEST_CASE("conditional STP grows with the Nakagami parameter at short range")
{
    // a less variable LoS channel helps a strong link
    double previous = 0.0;
    for (int m : {1, 2, 3})
    {
        const ValidatedConfig v = validate(fixture::single_layer(100.0, 1e-5, m));
        const double p = conditional_stp(v, make_event(fixture::rn, 0, 1, ChannelClass::los, 110.0));
        CHECK(p >= previous);
        previous = p;
    }
}

TEST_CASE("layer STP is the outer integral of the conditional STP")
{
    const ValidatedConfig v = validate(fixture::single_layer(200.0));
    const AssociationModel model(v, fixture::rs, 0);
    double expected = 0.0;
    for (ChannelClass cls : classes)
    {
        const auto & law = model.law(1, cls);
        auto f = [&](double r) {
            const double joint = model.joint_density_horizontal(1, cls, r);
            if (joint == 0.0)
                return 0.0;
            return joint * conditional_stp(v, make_event(fixture::rs, 0, 1, cls, law.profile().link_distance(r)));
        };
        expected += oracle::simpson_tail(f, 0.0, model.length_scale(), 4000);
    }
    const LayerPerformance p = evaluate_layer(v, fixture::rs, 0);
    CHECK_THAT(p.stp, WithinAbs(expected, 1e-6));
    CHECK(p.weight == 1e-5);
    CHECK_THAT(p.ase, WithinRel(1e-5 * std::log2(1.7) * p.stp, 1e-12));
    double association = 0.0;
    for (const auto & part : p.parts)
    {
        association += part.association;
        CHECK(part.success <= part.association + 1e-12);
    }
    CHECK_THAT(association, WithinAbs(1.0, 1e-6));
}

TEST_CASE("STP decreases with the target SINR")
{
    for (const auto & rule : {fixture::rn, fixture::rs, fixture::ts})
    {
        double previous = 1.0;
        for (double beta : {0.1, 0.7, 2.0})
        {
            auto c = fixture::mixed();
            c.set_uniform_target(beta);
            const double p = layer_stp(validate(c), rule, 0);
            CHECK(p <= previous);
            previous = p;
        }
    }
}

TEST_CASE("transmitter-oriented STP decreases with every transmitter density")
{
    const ValidatedConfig v = validate(fixture::config({{0.0, 1e-5, 1e-6}, {100.0, 2e-6, 2e-6}, {250.0, 0.0, 1e-6}}));
    for (const auto & rule : {fixture::ts, fixture::tn})
        for (int k : {0, 1})
            for (int j = 0; j < v.layer_count(); ++j)
            {
                double previous = 1.0;
                for (double f : {0.5, 1.0, 2.0})
                {
                    const double density = f * v.layer(j).density_tx;
                    const ValidatedConfig w = v.with_tx_density(j, density);
                    const double p = layer_stp(w, rule, k);
                    INFO("rule " << rule.code() << " k " << k << " j " << j << " density " << density);
                    CHECK(p <= previous + 1e-9);
                    previous = p;
                }
            }
}

TEST_CASE("network aggregates")
{
    for (const auto & rule : {fixture::rs, fixture::rn, fixture::ts})
    {
        const ValidatedConfig v = validate(fixture::mixed());
        const PerformanceReport r = network_aggregate(v, rule);
        double ase = 0.0;
        for (int k = 0; k < v.layer_count(); ++k)
        {
            CHECK(r.per_layer_stp[k] >= 0.0);
            CHECK(r.per_layer_stp[k] <= 1.0);
            CHECK(r.per_layer_ase[k] >= 0.0);
            ase += r.per_layer_ase[k];
        }
        CHECK_THAT(r.network_ase, WithinRel(ase, 1e-15));
        const Eigen::VectorXd w = selector_densities(v, rule);
        const double stp = (w.array() * r.per_layer_stp.array()).sum() / w.sum();
        CHECK_THAT(r.network_stp, WithinRel(stp, 1e-14));
    }

    // one active layer
    const ValidatedConfig single = validate(fixture::single_layer());
    const PerformanceReport one = network_aggregate(single, fixture::rs);
    CHECK(one.network_stp == one.per_layer_stp[0]);
    CHECK(one.network_ase == one.per_layer_ase[0]);
    CHECK(std::isnan(one.per_layer_stp[1]));
    CHECK(one.per_layer_ase[1] == 0.0);
    CHECK(one.network_stp == layer_stp(single, fixture::rs, 0));

    // two identical selector layers at equal weight
    const ValidatedConfig mirror =
        validate(fixture::config({{0.0, 1e-5, 0.0}, {0.0, 1e-5, 0.0}, {150.0, 0.0, 1e-5}}));
    const PerformanceReport m = network_aggregate(mirror, fixture::rs);
    CHECK(m.per_layer_stp[0] == m.per_layer_stp[1]);
    CHECK_THAT(m.network_stp, WithinRel(m.per_layer_stp[0], 1e-6));
}

TEST_CASE("rates and ASE weights")
{
    auto c = fixture::two_layer();
    c.target_sinr(0, 1) = 1.0;
    c.target_sinr(0, 2) = 3.0;
    const ValidatedConfig v = validate(c);
    const Eigen::MatrixXd r = rate_matrix(v);
    CHECK_THAT(r(0, 1), WithinRel(1.0, 1e-15));
    CHECK_THAT(r(0, 2), WithinRel(2.0, 1e-15));
    CHECK((r.array() > 0.0).all());

    const LayerPerformance p = evaluate_layer(v, fixture::rs, 0);
    double expected = 0.0;
    for (const auto & part : p.parts)
        expected += part.rate * part.success;
    CHECK_THAT(p.ase, WithinRel(1e-5 * expected, 1e-14));
    CHECK(layer_ase(v, fixture::rs, 1) == 0.0);
    CHECK(evaluate_layer(v, fixture::rs, 1).weight == 0.0);
}

TEST_CASE("closed form and quadrature give the same layer STP")
{
    const ValidatedConfig v = validate(fixture::equal_altitude());
    EvaluationSettings series;
    series.use_closed_form = true;
    series.series.max_terms = 200;
    series.series.convergence_tol = 1e-14;
    CHECK_THAT(layer_stp(v, fixture::rs, 0, series), WithinRel(layer_stp(v, fixture::rs, 0), 1e-6));
}
