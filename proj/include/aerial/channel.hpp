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

#pragma once

#include <array>
#include <random>
#include <string_view>

#include "aerial/errors.hpp"

// LoS/NLoS probability models, pathloss exponents and Nakagami-m fading for
// ground-to-ground, air-to-ground and air-to-air links.
//
// Every probability is a function of the link distance x (3-D) between a
// receiver at altitude h_rx and a transmitter at altitude h_tx; the horizontal
// separation is r = sqrt(x^2 - h^2) with h = |h_rx - h_tx|.

namespace aerial
{

enum class ChannelClass
{
    los,
    nlos
};

inline constexpr std::array<ChannelClass, 2> channel_classes = {ChannelClass::los, ChannelClass::nlos};

constexpr std::string_view to_string(ChannelClass c)
{
    return c == ChannelClass::los ? "LoS" : "NLoS";
}

constexpr int index_of(ChannelClass c) { return c == ChannelClass::los ? 0 : 1; }

/// Which LoS model a link uses.
enum class LosModel
{
    /// Sigmoid for air-to-ground, exponential for air-to-air, 0 on the ground.
    approximate,
    /// Building-blockage product everywhere.
    exact,
    /// Every link is LoS.
    always_los
};

std::string_view to_string(LosModel m);

/// Urban building statistics and the fitted sigmoid of the air-to-ground model.
struct Environment
{
    double mu = 0.5;      ///< built-up area fraction
    double nu = 3e-4;     ///< buildings per m^2
    double xi = 20.0;     ///< mean building height [m]
    double iota = 12.0910;
    double kappa = 0.1139;

    void check() const;
};

struct PathlossParams
{
    double alpha_los = 2.5;
    double alpha_nlos = 3.5;

    double alpha(ChannelClass c) const { return c == ChannelClass::los ? alpha_los : alpha_nlos; }
};

struct FadingParams
{
    int m_los = 1;
    int m_nlos = 1;

    int m(ChannelClass c) const { return c == ChannelClass::los ? m_los : m_nlos; }
};

/// Building-blockage product (any pair of altitudes).
double los_probability_exact(const Environment & env, double h_rx, double h_tx, double x);

/// Sigmoid in the elevation angle, measured in degrees. Exactly one endpoint on the ground.
double los_probability_a2g(const Environment & env, double h_rx, double h_tx, double x);

/// Exponential approximation; both endpoints airborne.
double los_probability_a2a(const Environment & env, double h_rx, double h_tx, double x);

/// Dispatches on geometry and model; returns rho^L or 1 - rho^L.
double los_probability(const Environment & env, ChannelClass c, double h_rx, double h_tx, double x,
                       LosModel model = LosModel::approximate);

/// Precomputed LoS law of one (h_rx, h_tx) pair, evaluated on horizontal distance.
///
/// The geometry and integration code works in r rather than x: every model is
/// smooth in r at r = 0 while the sigmoid has a square-root kink in x at x = h.
class LosProfile
{
  public:
    LosProfile() = default;
    LosProfile(const Environment & env, LosModel model, double h_rx, double h_tx);

    double altitude_gap() const { return gap_; }

    /// rho^L at horizontal distance r >= 0.
    double los_at(double r) const;

    double probability_at(ChannelClass c, double r) const
    {
        const double p = los_at(r);
        return c == ChannelClass::los ? p : 1.0 - p;
    }

    /// rho^L at link distance x >= altitude gap.
    double los(double x) const;

    /// Horizontal distance for a link distance; 0 inside the altitude gap.
    double horizontal(double x) const;

    /// Link distance for a horizontal distance.
    double link_distance(double r) const;

    /// Length of the constant pieces when the law is piecewise constant in r, else 0.
    double piece_length() const { return kind_ == Kind::exact ? piece_ : 0.0; }

    /// Limit of rho^L as r -> infinity.
    double far_field_los() const;

  private:
    enum class Kind
    {
        never,
        always,
        a2g,
        a2a_exponential,
        exact
    };

    double exact_product(double r) const;

    Kind kind_ = Kind::never;
    double gap_ = 0.0;
    double high_ = 0.0;
    double iota_ = 0.0;
    double kappa_ = 0.0;
    double log_base_rate_ = 0.0;  // log(base) * sqrt(mu nu)
    double piece_ = 0.0;          // 1 / sqrt(mu nu)
    double xi_ = 0.0;
};

using RandomStream = std::mt19937_64;

/// Nakagami-m power gain: Gamma(shape m, scale 1/m), unit mean.
double sample_fading(ChannelClass c, const FadingParams & fading, RandomStream & rng);

}  // namespace aerial
