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

#include <string>
#include <vector>

#include "aerial/geometry.hpp"
#include "aerial/numerics.hpp"

// Laplace transform of the aggregate interference seen by the receiver of a
// link event. Each (transmitter layer, class) pair contributes an independent
// factor; interferers closer than the exclusion radius are ruled out by the
// association event under receiver orientation.

namespace aerial
{

/// Same-layer series parameters; eta is the decay rate of the equal-altitude
/// LoS law, infinite for a ground layer (no LoS at all).
struct ClosedFormParams
{
    double eta = 0.0;  ///< [1/m]
    numerics::SeriesSpec series;
};

struct Applicability
{
    bool applicable = false;
    std::string reason;

    explicit operator bool() const { return applicable; }
};

class FrozenLaplace;

class LaplaceEvaluator
{
  public:
    LaplaceEvaluator(const ValidatedConfig & config, const LinkEvent & event,
                     const numerics::QuadratureSpec & spec = default_spec());

    static numerics::QuadratureSpec default_spec();

    const ValidatedConfig & config() const { return *config_; }
    const LinkEvent & event() const { return event_; }

    /// Effective lower limit max(chi, h_ik) of the interferer link distance [m].
    double exclusion_radius(int k, ChannelClass c_o) const;

    /// One factor by adaptive quadrature.
    double layer(int k, ChannelClass c_o, double s) const;

    /// Exponent integral of one factor, so that layer() = exp(-2 pi lambda J).
    double exponent(int k, ChannelClass c_o, double s) const;

    /// Noise term times every factor. When `closed_form` is set, same-layer
    /// factors use the series wherever it applies.
    double total(double s, bool closed_form = false, const numerics::SeriesSpec & series = {}) const;

    /// Evaluator with every quadrature rule fixed at the one chosen for s0.
    FrozenLaplace freeze(double s0) const;

  private:
    numerics::RealFunction integrand(int k, ChannelClass c_o, double s) const;
    double lower_horizontal(int k, ChannelClass c_o) const;

    const ValidatedConfig * config_;
    LinkEvent event_;
    numerics::QuadratureSpec spec_;
    std::vector<double> exclusion_;  // index 2*k + class
};

/// Laplace transform on frozen rules: a smooth function of s near the point
/// it was built for, suitable for finite differences.
class FrozenLaplace
{
  public:
    double operator()(double s) const;

  private:
    friend class LaplaceEvaluator;

    struct Factor
    {
        double density;
        int m;
        std::vector<double> weight;  // quadrature weight * r * rho(r)
        std::vector<double> gain;    // P x^-alpha / m
    };

    double noise = 0.0;
    std::vector<Factor> factors;
};

double laplace_layer(const LaplaceEvaluator & evaluator, int k, ChannelClass c_o, double s);

ClosedFormParams closed_form_params(const ValidatedConfig & config, int layer,
                                    const numerics::SeriesSpec & series = {});

Applicability closed_form_applicable(const ValidatedConfig & config, const AssociationRule & rule,
                                     const LinkEvent & event, double s);

/// Same-layer factor from the incomplete-gamma series, with early stopping.
double laplace_same_layer_closed(const LaplaceEvaluator & evaluator, ChannelClass c_o, double s,
                                 const numerics::SeriesSpec & series = {});

/// Same-layer factor from exactly `terms` series terms, without convergence checks.
double laplace_same_layer_partial(const LaplaceEvaluator & evaluator, ChannelClass c_o, double s,
                                  int terms);

double laplace_total(const LaplaceEvaluator & evaluator, double s, bool closed_form = false);

}  // namespace aerial
