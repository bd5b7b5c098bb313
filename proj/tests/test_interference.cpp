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

#include "aerial/interference.hpp"
#include "aerial/montecarlo.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace aerial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr ChannelClass classes[] = {ChannelClass::los, ChannelClass::nlos};

LinkEvent event(const AssociationRule & rule, int rx, int tx, ChannelClass c, double y)
{
    LinkEvent e;
    e.rule = rule;
    e.rx_layer = rx;
    e.tx_layer = tx;
    e.channel = c;
    e.distance = y;
    return e;
}

/// One interference factor straight from its definition, interferers beyond
/// horizontal distance r0.
double factor_oracle(const ValidatedConfig & v, int rx, int k, ChannelClass c, double s, double r0)
{
    const auto & p = v.los(rx, k);
    const double h = p.altitude_gap();
    const double alpha = v.alpha(c);
    const int m = v.nakagami(c);
    const double power = v.layer(k).power;
    auto f = [&](double r) {
        const double z = s * power * std::pow(std::hypot(r, h), -alpha) / m;
        if (!std::isfinite(z))
            return r * p.probability_at(c, r);
        // 1 - (1 + z)^-m with the binomial expansion of (1 + z)^m - 1 on top
        double rise = 0.0;
        double binomial = 1.0;
        for (int i = 1; i <= m; ++i)
        {
            binomial *= static_cast<double>(m - i + 1) / i;
            rise += binomial * std::pow(z, i);
        }
        return r * p.probability_at(c, r) * rise / std::pow(1.0 + z, m);
    };
    double j = 0.0;
    const double piece = p.piece_length();
    if (piece > 0.0)
    {
        // integrate piece by piece, nodes kept off the jumps
        const double end = 200.0 * std::max(piece, 100.0);
        double lo = r0;
        while (lo < end)
        {
            const double hi = (std::floor(lo / piece + 1e-9) + 1.0) * piece;
            j += oracle::simpson(f, lo + 1e-9 * piece, hi - 1e-9 * piece, 2000);
            lo = hi;
        }
        j += oracle::simpson_log(f, end, 1e30, 400000);
    }
    else
    {
        const double mid = std::max(r0, 1.0) * 1e3;
        j = oracle::simpson(f, r0, mid, 400000) + oracle::simpson_log(f, mid, 1e30, 400000);
    }
    return std::exp(-2.0 * oracle::pi * v.layer(k).density_tx * j);
}

}  // namespace

TEST_CASE("interference factors match direct integration")
{
    auto exact = fixture::single_layer(120.0);
    exact.los_model = LosModel::exact;
    const std::vector<NetworkConfig> configs = {fixture::single_layer(), fixture::single_layer(300.0, 1e-5, 3),
                                                exact, fixture::mixed()};
    for (const auto & c : configs)
    {
        const ValidatedConfig v = validate(c);
        const int tx = v.layer_count() - 1;
        const double gap = v.altitude_gap(0, tx);
        for (const auto & rule : {fixture::rs, fixture::rn, fixture::ts})
            for (double y : {gap + 10.0, gap * 1.5 + 50.0})
                for (double s : {1e3, 1e5, 0.7 * std::pow(y, 2.5)})
                {
                    const LaplaceEvaluator e(v, event(rule, 0, tx, ChannelClass::los, y));
                    for (int k = 0; k < v.layer_count(); ++k)
                        for (ChannelClass cls : classes)
                        {
                            if (v.layer(k).density_tx == 0.0)
                            {
                                CHECK(e.layer(k, cls, s) == 1.0);
                                continue;
                            }
                            const double r0 = v.los(0, k).horizontal(e.exclusion_radius(k, cls));
                            INFO("rule " << rule.code() << " y " << y << " s " << s << " k " << k);
                            CHECK_THAT(e.layer(k, cls, s), WithinRel(factor_oracle(v, 0, k, cls, s, r0), 1e-6));
                        }
                }
    }
}

TEST_CASE("exclusion radii follow the association rule")
{
    const ValidatedConfig v = validate(fixture::equal_altitude());
    const double y = 300.0;
    const LaplaceEvaluator rs(v, event(fixture::rs, 0, 0, ChannelClass::los, y));
    CHECK_THAT(rs.exclusion_radius(0, ChannelClass::los), WithinRel(y, 1e-14));
    CHECK_THAT(rs.exclusion_radius(0, ChannelClass::nlos), WithinRel(std::pow(y, 2.5 / 3.5), 1e-14));
    const LaplaceEvaluator rn(v, event(fixture::rn, 0, 0, ChannelClass::nlos, y));
    CHECK(rn.exclusion_radius(0, ChannelClass::los) == y);
    const LaplaceEvaluator ts(v, event(fixture::ts, 0, 0, ChannelClass::los, y));
    CHECK(ts.exclusion_radius(0, ChannelClass::los) == 0.0);

    // a ground receiver never sees interferers closer than the altitude gap
    const ValidatedConfig g = validate(fixture::single_layer(200.0));
    const LaplaceEvaluator tg(g, event(fixture::ts, 0, 1, ChannelClass::los, 250.0));
    CHECK(tg.exclusion_radius(1, ChannelClass::nlos) == 200.0);
    CHECK_THROWS_AS(LaplaceEvaluator(g, event(fixture::rs, 0, 1, ChannelClass::los, 150.0)), DomainError);
}

TEST_CASE("trivial transforms")
{
    auto c = fixture::single_layer();
    c.noise_power = 1e-9;
    const ValidatedConfig v = validate(c);
    const LaplaceEvaluator e(v, event(fixture::rs, 0, 1, ChannelClass::los, 150.0));
    CHECK(e.total(0.0) == 1.0);
    // the ground layer holds no transmitters: its factor is exactly one
    for (ChannelClass cls : classes)
        CHECK(e.layer(0, cls, 1e6) == 1.0);
    for (double s : {1e3, 1e5, 1e7})
    {
        const double product = std::exp(-s * 1e-9) * e.layer(1, ChannelClass::los, s) * e.layer(1, ChannelClass::nlos, s);
        CHECK_THAT(e.total(s), WithinRel(product, 1e-15));
        CHECK(laplace_total(e, s) == e.total(s));
        CHECK(laplace_layer(e, 1, ChannelClass::los, s) == e.layer(1, ChannelClass::los, s));
    }
    CHECK_THROWS_AS(e.total(-1.0), DomainError);
}

TEST_CASE("transforms are in (0, 1] and decrease in s and density")
{
    for (const auto & c : {fixture::single_layer(), fixture::two_layer(), fixture::mixed()})
    {
        const ValidatedConfig v = validate(c);
        const int tx = v.layer_count() - 1;
        const double y = v.altitude_gap(0, tx) + 40.0;
        for (const auto & rule : {fixture::rs, fixture::tn})
        {
            const LaplaceEvaluator e(v, event(rule, 0, tx, ChannelClass::los, y));
            for (int k = 0; k < v.layer_count(); ++k)
                for (ChannelClass cls : classes)
                {
                    double previous = 1.0;
                    for (int n = 0; n < 50; ++n)
                    {
                        const double s = std::pow(10.0, 1.0 + 9.0 * n / 49.0);
                        const double l = e.layer(k, cls, s);
                        CHECK(l > 0.0);
                        CHECK(l <= previous);
                        previous = l;
                    }
                }
            // more transmitters in the top layer never help
            double previous = 1.0;
            for (double density : {1e-7, 1e-6, 1e-5, 1e-4})
            {
                const ValidatedConfig w = v.with_tx_density(tx, density);
                const LaplaceEvaluator ew(w, event(rule, 0, tx, ChannelClass::los, y));
                const double l = ew.total(0.7 * std::pow(y, 2.5));
                CHECK(l <= previous);
                previous = l;
            }
        }
    }
}

TEST_CASE("receiver-oriented exclusion only removes interference")
{
    for (const auto & c : {fixture::single_layer(), fixture::equal_altitude(), fixture::mixed()})
    {
        const ValidatedConfig v = validate(c);
        const int tx = v.layer_count() - 1;
        const double y = v.altitude_gap(0, tx) + 60.0;
        for (ChannelClass cls : classes)
            for (double s : {1e4, 1e6, 1e8})
            {
                const double r = LaplaceEvaluator(v, event(fixture::rs, 0, tx, cls, y)).total(s);
                const double t = LaplaceEvaluator(v, event(fixture::ts, 0, tx, cls, y)).total(s);
                CHECK(r >= t);
            }
    }
}

TEST_CASE("same-layer series applicability")
{
    const ValidatedConfig v = validate(fixture::equal_altitude());
    const double y = 200.0;
    const double s = 0.7 * std::pow(y, 2.5);
    const auto rs = event(fixture::rs, 0, 0, ChannelClass::los, y);
    CHECK(closed_form_applicable(v, fixture::rs, rs, s).applicable);

    auto reason = [&](const NetworkConfig & c, const AssociationRule & rule, double s_) {
        return closed_form_applicable(validate(c), rule, event(rule, 0, 0, ChannelClass::los, y), s_).reason;
    };
    const auto base = fixture::equal_altitude();
    CHECK(reason(base, fixture::ts, s) == "transmitter-oriented exclusion is zero");
    CHECK(reason(base, fixture::rn, s) == "association criterion is not strongest");
    CHECK(reason(base, fixture::rs, 2.0 * std::pow(y, 2.5)) == "series argument not below 1");
    auto m3 = base;
    m3.fading.m_los = 3;
    CHECK(reason(m3, fixture::rs, s) == "Nakagami parameter is not 1");
    auto biased = base;
    biased.layers[0].bias = 2.0;
    CHECK(reason(biased, fixture::rs, s) == "bias differs from transmit power");
    auto exact = base;
    exact.los_model = LosModel::exact;
    CHECK(reason(exact, fixture::rs, s) == "LoS model is not the approximate one");
    auto strict = base;
    strict.set_uniform_target(1.5);
    CHECK(reason(strict, fixture::rs, s).starts_with("target SINR"));

    const LaplaceEvaluator e(v, rs);
    CHECK_THROWS_AS(laplace_same_layer_closed(e, ChannelClass::los, 2.0 * std::pow(y, 2.5)), DomainError);
}

TEST_CASE("same-layer series agrees with quadrature")
{
    numerics::SeriesSpec series;
    series.max_terms = 200;
    series.convergence_tol = 1e-14;
    for (double h : {0.0, 50.0, 100.0, 300.0})
    {
        const ValidatedConfig v = validate(fixture::equal_altitude(h));
        for (ChannelClass cls : classes)
            for (double y : {30.0, 120.0, 400.0})
                for (double z : {0.05, 0.3, 0.7})
                {
                    const double s = z * std::pow(y, v.alpha(cls));
                    const LaplaceEvaluator e(v, event(fixture::rs, 0, 0, cls, y));
                    if (!closed_form_applicable(v, fixture::rs, e.event(), s))
                        continue;
                    INFO("h " << h << " y " << y << " z " << z);
                    for (ChannelClass c_o : classes)
                        CHECK_THAT(laplace_same_layer_closed(e, c_o, s, series),
                                   WithinRel(e.layer(0, c_o, s), 1e-6));
                    CHECK_THAT(e.total(s, true, series), WithinRel(e.total(s), 1e-6));
                }
    }
}

TEST_CASE("truncated series converges to the full one")
{
    const ValidatedConfig v = validate(fixture::equal_altitude());
    const LaplaceEvaluator e(v, event(fixture::rs, 0, 0, ChannelClass::los, 200.0));
    const double s = 0.1 * std::pow(200.0, 2.5);
    const double full = e.layer(0, ChannelClass::los, s);
    double previous_error = 1.0;
    for (int n : {2, 5, 10, 20})
    {
        const double error = std::abs(laplace_same_layer_partial(e, ChannelClass::los, s, n) - full);
        CHECK(error <= previous_error);
        previous_error = error;
    }
    CHECK(previous_error <= 1e-10);
    CHECK_THROWS_AS(laplace_same_layer_partial(e, ChannelClass::los, s, 0), DomainError);
}

TEST_CASE("series parameters")
{
    const ValidatedConfig v = validate(fixture::mixed());
    CHECK(std::isinf(closed_form_params(v, 0).eta));
    const Environment env;
    const double eta = -std::sqrt(env.mu * env.nu) * std::log(1.0 - std::exp(-100.0 * 100.0 / (2.0 * env.xi * env.xi)));
    CHECK_THAT(closed_form_params(v, 1).eta, WithinRel(eta, 1e-12));
    CHECK(closed_form_params(v, 1).eta > 0.0);
}

TEST_CASE("frozen transform matches the adaptive one near its reference point")
{
    const ValidatedConfig v = validate(fixture::mixed());
    const LaplaceEvaluator e(v, event(fixture::rs, 0, 1, ChannelClass::los, 180.0));
    const double s0 = 0.7 * std::pow(180.0, 2.5);
    const FrozenLaplace frozen = e.freeze(s0);
    for (double f : {0.8, 1.0, 1.25})
        CHECK_THAT(frozen(f * s0), WithinRel(e.total(f * s0), 1e-8));
    CHECK_THROWS_AS(e.freeze(0.0), DomainError);
}

TEST_CASE("transforms agree with simulation")
{
    struct Point
    {
        NetworkConfig config;
        AssociationRule rule;
        int rx;
        int tx;
        ChannelClass channel;
        double y;
    };
    const std::vector<Point> points = {
        {fixture::single_layer(), fixture::rn, 0, 1, ChannelClass::los, 160.0},
        {fixture::single_layer(300.0, 1e-5, 3), fixture::rs, 0, 1, ChannelClass::los, 350.0},
        {fixture::equal_altitude(), fixture::rs, 0, 0, ChannelClass::los, 150.0},
        {fixture::two_layer(), fixture::rs, 0, 2, ChannelClass::nlos, 400.0},
        {fixture::mixed(), fixture::ts, 0, 1, ChannelClass::los, 200.0},
    };
    SimSpec spec;
    spec.trials = 4000;
    spec.seed = 99;
    for (const auto & p : points)
    {
        const ValidatedConfig v = validate(p.config);
        const LinkEvent e = event(p.rule, p.rx, p.tx, p.channel, p.y);
        const double s = v.nakagami(p.channel) * v.target(p.rx, p.tx) * std::pow(p.y, v.alpha(p.channel));
        const double analytic = LaplaceEvaluator(v, e).total(s);
        const Estimate mc = empirical_laplace(v, e, s, spec);
        INFO("rule " << p.rule.code() << " analytic " << analytic << " mc " << mc.mean << " se " << mc.standard_error);
        CHECK(std::abs(analytic - mc.mean) <= 3.0 * mc.standard_error);
    }
}
