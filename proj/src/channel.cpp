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

#include "aerial/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aerial/numerics.hpp"

namespace aerial
{

std::string_view to_string(LosModel m)
{
    switch (m)
    {
        case LosModel::approximate: return "approximate";
        case LosModel::exact: return "exact";
        case LosModel::always_los: return "always_los";
    }
    return "unknown";
}

void Environment::check() const
{
    if (!(mu >= 0.0 && mu <= 1.0))
        throw DomainError("environment mu must lie in [0, 1]");
    if (!(nu >= 0.0))
        throw DomainError("environment nu must be non-negative");
    if (!(xi > 0.0))
        throw DomainError("environment xi must be positive");
    if (!std::isfinite(iota) || !std::isfinite(kappa))
        throw DomainError("environment sigmoid parameters must be finite");
}

namespace
{

void check_link(double h_rx, double h_tx, double x)
{
    if (!(h_rx >= 0.0) || !(h_tx >= 0.0))
        throw DomainError("altitudes must be non-negative");
    const double gap = std::abs(h_rx - h_tx);
    if (!(x >= gap * (1.0 - 1e-12) - 1e-12))
        throw DomainError("link distance " + std::to_string(x) + " below altitude gap " +
                          std::to_string(gap));
}

double horizontal_of(double gap, double x)
{
    return std::sqrt(std::max(0.0, x * x - gap * gap));
}

double a2a_base(const Environment & env, double h_rx, double h_tx)
{
    const double gap = std::abs(h_rx - h_tx);
    if (gap == 0.0)
        return 1.0 - std::exp(-h_rx * h_rx / (2.0 * env.xi * env.xi));
    const double raw = 1.0 - std::sqrt(2.0 * std::numbers::pi) * env.xi / gap *
                                 std::abs(numerics::gaussian_q(h_rx / env.xi) -
                                          numerics::gaussian_q(h_tx / env.xi));
    if (raw < -0.01 || raw > 1.01)
        throw DomainError("air-to-air LoS base " + std::to_string(raw) + " is outside [0, 1]");
    return std::clamp(raw, 0.0, 1.0);
}

}  // namespace

LosProfile::LosProfile(const Environment & env, LosModel model, double h_rx, double h_tx)
{
    env.check();
    if (!(h_rx >= 0.0) || !(h_tx >= 0.0))
        throw DomainError("altitudes must be non-negative");
    gap_ = std::abs(h_rx - h_tx);
    high_ = std::max(h_rx, h_tx);
    xi_ = env.xi;
    const double rate = std::sqrt(env.mu * env.nu);
    piece_ = rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();

    if (model == LosModel::always_los)
    {
        kind_ = Kind::always;
        return;
    }
    if (high_ == 0.0)
    {
        kind_ = Kind::never;
        return;
    }
    if (model == LosModel::exact)
    {
        kind_ = Kind::exact;
        return;
    }
    if (h_rx == 0.0 || h_tx == 0.0)
    {
        kind_ = Kind::a2g;
        iota_ = env.iota;
        kappa_ = env.kappa;
        return;
    }
    kind_ = Kind::a2a_exponential;
    const double base = a2a_base(env, h_rx, h_tx);
    log_base_rate_ = base > 0.0 ? std::log(base) * rate : -std::numeric_limits<double>::infinity();
}

double LosProfile::exact_product(double r) const
{
    const double m = std::floor(r / piece_ - 1.0);
    if (m < 0.0)
        return 1.0;
    const double two_xi2 = 2.0 * xi_ * xi_;
    if (gap_ == 0.0)
        return std::pow(1.0 - std::exp(-high_ * high_ / two_xi2), m + 1.0);
    // smallest factors sit at the top of the range; multiply those first
    double product = 1.0;
    for (double n = m; n >= 0.0; n -= 1.0)
    {
        const double level = high_ - (n + 0.5) * gap_ / (m + 1.0);
        product *= 1.0 - std::exp(-level * level / two_xi2);
        if (product < 1e-300)
            return 0.0;
    }
    return product;
}

double LosProfile::los_at(double r) const
{
    switch (kind_)
    {
        case Kind::never: return 0.0;
        case Kind::always: return 1.0;
        case Kind::a2g:
        {
            const double degrees = std::atan2(gap_, r) * (180.0 / std::numbers::pi);
            return 1.0 / (1.0 + iota_ * std::exp(-kappa_ * (degrees - iota_)));
        }
        case Kind::a2a_exponential:
            if (r == 0.0)
                return 1.0;
            return std::exp(log_base_rate_ * r);
        case Kind::exact: return exact_product(r);
    }
    return 0.0;
}

double LosProfile::los(double x) const
{
    if (!(x >= gap_ * (1.0 - 1e-12) - 1e-12))
        throw DomainError("link distance below altitude gap");
    return los_at(horizontal(x));
}

double LosProfile::horizontal(double x) const { return horizontal_of(gap_, x); }

double LosProfile::link_distance(double r) const { return std::hypot(r, gap_); }

double LosProfile::far_field_los() const
{
    switch (kind_)
    {
        case Kind::never: return 0.0;
        case Kind::always: return 1.0;
        case Kind::a2g: return 1.0 / (1.0 + iota_ * std::exp(kappa_ * iota_));
        case Kind::a2a_exponential: return log_base_rate_ == 0.0 ? 1.0 : 0.0;
        case Kind::exact: return 0.0;
    }
    return 0.0;
}

double los_probability_exact(const Environment & env, double h_rx, double h_tx, double x)
{
    check_link(h_rx, h_tx, x);
    return LosProfile(env, LosModel::exact, h_rx, h_tx).los(x);
}

double los_probability_a2g(const Environment & env, double h_rx, double h_tx, double x)
{
    check_link(h_rx, h_tx, x);
    if ((h_rx == 0.0) == (h_tx == 0.0))
        throw DomainError("air-to-ground model needs exactly one endpoint on the ground");
    return LosProfile(env, LosModel::approximate, h_rx, h_tx).los(x);
}

double los_probability_a2a(const Environment & env, double h_rx, double h_tx, double x)
{
    check_link(h_rx, h_tx, x);
    if (!(h_rx > 0.0 && h_tx > 0.0))
        throw DomainError("air-to-air model needs both endpoints airborne");
    return LosProfile(env, LosModel::approximate, h_rx, h_tx).los(x);
}

double los_probability(const Environment & env, ChannelClass c, double h_rx, double h_tx, double x,
                       LosModel model)
{
    check_link(h_rx, h_tx, x);
    const double p = LosProfile(env, model, h_rx, h_tx).los(x);
    return c == ChannelClass::los ? p : 1.0 - p;
}

double sample_fading(ChannelClass c, const FadingParams & fading, RandomStream & rng)
{
    const int m = fading.m(c);
    std::gamma_distribution<double> gain(static_cast<double>(m), 1.0 / m);
    return gain(rng);
}

}  // namespace aerial
