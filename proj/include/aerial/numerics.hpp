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

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "aerial/errors.hpp"

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature on finite and
// semi-infinite intervals, incomplete gamma, Gaussian tail and finite
// difference derivatives. Everything here is pure and reentrant.

namespace aerial::numerics
{

using RealFunction = std::function<double(double)>;

struct QuadratureSpec
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 1000;
    /// Mapped-integrand magnitude below which an interval is not refined further.
    double tail_cutoff = 1e-14;
    /// Characteristic length c of the map t = L + c (u / (1 - u)).
    double length_scale = 1.0;

    void check() const;
};

struct SeriesSpec
{
    int max_terms = 10;
    double convergence_tol = 1e-10;

    void check() const;
};

/// Interval of the integration variable (mapped coordinate for semi-infinite).
struct Panel
{
    double lo;
    double hi;
};

using Partition = std::vector<Panel>;

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    /// Final subdivision; reusable through integrate_on_partition.
    Partition partition;
};

/// Nodes and weights of an n-point rule on [-1, 1].
struct GaussRule
{
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Legendre rule via the Golub-Welsch eigenproblem; cached per n.
const GaussRule & gauss_legendre(int n);

QuadratureResult integrate_detailed(const RealFunction & f, double a, double b,
                                    const QuadratureSpec & spec = {});

double integrate(const RealFunction & f, double a, double b, const QuadratureSpec & spec = {});

/// Integral of f over [lower, inf).
///
/// The tail is mapped onto [0, 1) by t = L + c u/(1-u) with u = 1 - (1-w)^2, so
/// the adaptive refinement runs on w in [0, 1). The second substitution removes
/// the (1-u)^(-1/2) endpoint singularity produced by t^(-3/2) tails.
QuadratureResult integrate_semi_infinite_detailed(const RealFunction & f, double lower,
                                                  const QuadratureSpec & spec = {});

double integrate_semi_infinite(const RealFunction & f, double lower,
                               const QuadratureSpec & spec = {});

/// Re-evaluates a semi-infinite integral on a frozen partition (Kronrod nodes only).
/// The result is a smooth function of any parameter captured by f.
double integrate_on_partition(const RealFunction & f, double lower, double length_scale,
                              const Partition & partition);

/// Points and weights of the frozen rule, so sum w_i f(t_i) equals
/// integrate_on_partition(f, ...).
struct WeightedNodes
{
    std::vector<double> points;
    std::vector<double> weights;
};

WeightedNodes semi_infinite_nodes(double lower, double length_scale, const Partition & partition);

/// Kronrod nodes of a finite partition (untransformed coordinate).
WeightedNodes finite_nodes(const Partition & partition);

/// Map used by the semi-infinite routines: w in [0,1) -> t in [lower, inf).
double semi_infinite_point(double lower, double length_scale, double w);

/// Gamma(a, y) = int_y^inf t^(a-1) e^(-t) dt for real a (any sign when y > 0).
double upper_incomplete_gamma(double a, double y);

/// e^y y^(-a) Gamma(a, y) for y > 0; stays of order one where Gamma(a, y) itself
/// under- or overflows (large negative a, small y).
double scaled_upper_incomplete_gamma(double a, double y);

/// Standard normal upper tail probability.
double gaussian_q(double x);

struct DerivativeEstimate
{
    double value = 0.0;
    double error = 0.0;
};

/// n-th derivative by central differences with Richardson extrapolation.
/// `step` is the initial spacing; it is halved three times.
DerivativeEstimate nth_derivative_estimate(const RealFunction & f, double s, int n, double step);

double nth_derivative(const RealFunction & f, double s, int n, double step);

/// Kahan-Babuska compensated sum.
class CompensatedSum
{
  public:
    void add(double x);
    double value() const { return sum_ + correction_; }

  private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

}  // namespace aerial::numerics
