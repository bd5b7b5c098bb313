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

#include "aerial/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace aerial::numerics
{

void QuadratureSpec::check() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1)
        throw DomainError("max_subdivisions must be at least 1");
    if (!(length_scale > 0.0))
        throw DomainError("length_scale must be positive");
}

void SeriesSpec::check() const
{
    if (max_terms < 1)
        throw DomainError("max_terms must be at least 1");
}

void CompensatedSum::add(double x)
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        correction_ += (sum_ - t) + x;
    else
        correction_ += (x - t) + sum_;
    sum_ = t;
}

namespace
{

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980610540, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for kronrod_nodes[1], [3], ..., [9].
constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment
{
    double lo;
    double hi;
    double value;
    double error;
};

double checked(double v, double x)
{
    if (!std::isfinite(v))
        throw DomainError("integrand is not finite at " + std::to_string(x));
    return v;
}

Segment gauss_kronrod(const RealFunction & g, double lo, double hi, double tail_cutoff,
                      int & evaluations)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = checked(g(center), center);
    double kronrod = fc * kronrod_weights[10];
    double gauss = 0.0;
    double peak = std::abs(fc);
    for (int k = 0; k < 10; ++k)
    {
        const double dx = half * kronrod_nodes[k];
        const double f1 = checked(g(center - dx), center - dx);
        const double f2 = checked(g(center + dx), center + dx);
        kronrod += kronrod_weights[k] * (f1 + f2);
        if (k % 2 == 1)
            gauss += gauss_weights[k / 2] * (f1 + f2);
        peak = std::max({peak, std::abs(f1), std::abs(f2)});
    }
    evaluations += 21;
    Segment s{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
    if (peak < tail_cutoff)
        s.error = std::min(s.error, std::abs(hi - lo) * tail_cutoff);
    return s;
}

QuadratureResult adaptive(const RealFunction & g, double lo, double hi,
                          const QuadratureSpec & spec)
{
    spec.check();
    QuadratureResult out;
    auto by_error = [](const Segment & a, const Segment & b) { return a.error < b.error; };

    std::vector<Segment> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
    heap.push_back(gauss_kronrod(g, lo, hi, spec.tail_cutoff, out.evaluations));

    double total = heap.front().value;
    double error = heap.front().error;
    int subdivisions = 1;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
    {
        if (subdivisions >= spec.max_subdivisions)
            throw NonConvergent("adaptive quadrature exhausted " +
                                std::to_string(spec.max_subdivisions) +
                                " subdivisions (error estimate " + std::to_string(error) + ")");
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi)
            throw NonConvergent("adaptive quadrature hit floating point resolution");
        const Segment left = gauss_kronrod(g, worst.lo, mid, spec.tail_cutoff, out.evaluations);
        const Segment right = gauss_kronrod(g, mid, worst.hi, spec.tail_cutoff, out.evaluations);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++subdivisions;

        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if (subdivisions % 64 == 0 || error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
        {
            // periodic re-sum keeps the running totals from drifting
            CompensatedSum v;
            CompensatedSum e;
            for (const auto & s : heap)
            {
                v.add(s.value);
                e.add(s.error);
            }
            total = v.value();
            error = e.value();
        }
    }

    std::sort(heap.begin(), heap.end(), [](const Segment & a, const Segment & b) { return a.lo < b.lo; });
    out.partition.reserve(heap.size());
    CompensatedSum v;
    for (const auto & s : heap)
    {
        out.partition.push_back({s.lo, s.hi});
        v.add(s.value);
    }
    out.value = v.value();
    out.error = error;
    return out;
}

}  // namespace

const GaussRule & gauss_legendre(int n)
{
    if (n < 1)
        throw DomainError("Gauss-Legendre rule needs at least one node");
    static std::mutex guard;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k)
    {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
    return cache.emplace(n, std::move(rule)).first->second;
}

QuadratureResult integrate_detailed(const RealFunction & f, double a, double b,
                                    const QuadratureSpec & spec)
{
    if (a == b)
        return {};
    if (a > b)
    {
        auto r = integrate_detailed(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    return adaptive(f, a, b, spec);
}

double integrate(const RealFunction & f, double a, double b, const QuadratureSpec & spec)
{
    return integrate_detailed(f, a, b, spec).value;
}

double semi_infinite_point(double lower, double length_scale, double w)
{
    const double v = 1.0 - w;
    return lower + length_scale * (1.0 / (v * v) - 1.0);
}

namespace
{

RealFunction mapped(const RealFunction & f, double lower, double c)
{
    return [&f, lower, c](double w) {
        const double v = 1.0 - w;
        const double t = lower + c * (1.0 / (v * v) - 1.0);
        if (!std::isfinite(t))
            return 0.0;
        const double jac = 2.0 * c / (v * v * v);
        const double ft = f(t);
        if (!std::isfinite(ft))
            throw DomainError("integrand is not finite at " + std::to_string(t));
        if (ft == 0.0)
            return 0.0;
        return ft * jac;
    };
}

}  // namespace

QuadratureResult integrate_semi_infinite_detailed(const RealFunction & f, double lower,
                                                  const QuadratureSpec & spec)
{
    spec.check();
    if (!std::isfinite(lower))
        throw DomainError("semi-infinite lower limit must be finite");
    return adaptive(mapped(f, lower, spec.length_scale), 0.0, 1.0, spec);
}

double integrate_semi_infinite(const RealFunction & f, double lower, const QuadratureSpec & spec)
{
    return integrate_semi_infinite_detailed(f, lower, spec).value;
}

double integrate_on_partition(const RealFunction & f, double lower, double length_scale,
                              const Partition & partition)
{
    const RealFunction g = mapped(f, lower, length_scale);
    CompensatedSum total;
    for (const auto & p : partition)
    {
        const double center = 0.5 * (p.lo + p.hi);
        const double half = 0.5 * (p.hi - p.lo);
        double k = kronrod_weights[10] * g(center);
        for (int i = 0; i < 10; ++i)
        {
            const double dx = half * kronrod_nodes[i];
            k += kronrod_weights[i] * (g(center - dx) + g(center + dx));
        }
        total.add(k * half);
    }
    return total.value();
}

WeightedNodes finite_nodes(const Partition & partition)
{
    WeightedNodes out;
    out.points.reserve(partition.size() * 21);
    out.weights.reserve(partition.size() * 21);
    for (const auto & p : partition)
    {
        const double center = 0.5 * (p.lo + p.hi);
        const double half = 0.5 * (p.hi - p.lo);
        out.points.push_back(center);
        out.weights.push_back(kronrod_weights[10] * half);
        for (int i = 0; i < 10; ++i)
        {
            const double dx = half * kronrod_nodes[i];
            out.points.push_back(center - dx);
            out.weights.push_back(kronrod_weights[i] * half);
            out.points.push_back(center + dx);
            out.weights.push_back(kronrod_weights[i] * half);
        }
    }
    return out;
}

WeightedNodes semi_infinite_nodes(double lower, double length_scale, const Partition & partition)
{
    WeightedNodes out;
    out.points.reserve(partition.size() * 21);
    out.weights.reserve(partition.size() * 21);
    auto push = [&](double w, double weight) {
        const double v = 1.0 - w;
        const double t = lower + length_scale * (1.0 / (v * v) - 1.0);
        if (!std::isfinite(t))
            return;
        out.points.push_back(t);
        out.weights.push_back(weight * 2.0 * length_scale / (v * v * v));
    };
    for (const auto & p : partition)
    {
        const double center = 0.5 * (p.lo + p.hi);
        const double half = 0.5 * (p.hi - p.lo);
        push(center, kronrod_weights[10] * half);
        for (int i = 0; i < 10; ++i)
        {
            push(center - half * kronrod_nodes[i], kronrod_weights[i] * half);
            push(center + half * kronrod_nodes[i], kronrod_weights[i] * half);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Incomplete gamma

namespace
{

constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Lower incomplete gamma by its power series, valid for a > 0.
double lower_gamma_series(double a, double y)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 1000; ++n)
    {
        term *= y / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            break;
    }
    return sum * std::exp(-y + a * std::log(y));
}

// Modified Lentz continued fraction for e^y y^-a Gamma(a, y); any real a, y >= ~1.
double upper_gamma_fraction_scaled(double a, double y)
{
    constexpr double tiny = 1e-300;
    double b = y + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return h;
    }
    throw NonConvergent("incomplete gamma continued fraction did not converge");
}

double upper_gamma_fraction(double a, double y)
{
    return std::exp(-y + a * std::log(y)) * upper_gamma_fraction_scaled(a, y);
}

// E1(y) = Gamma(0, y) for 0 < y < 1.
double exponential_integral_small(double y)
{
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k)
    {
        term *= -y / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum))
            break;
    }
    return -euler_gamma - std::log(y) - sum;
}

}  // namespace

double upper_incomplete_gamma(double a, double y)
{
    if (!(y >= 0.0) || !std::isfinite(a))
        throw DomainError("upper_incomplete_gamma requires y >= 0 and finite a");
    if (y == 0.0)
    {
        if (a <= 0.0)
            throw DomainError("upper_incomplete_gamma(a <= 0, 0) diverges");
        return std::tgamma(a);
    }
    if (std::isinf(y))
        return 0.0;

    if (a > 0.0)
    {
        if (y < a + 1.0)
            return std::tgamma(a) - lower_gamma_series(a, y);
        return upper_gamma_fraction(a, y);
    }
    if (y >= 1.0)
        return upper_gamma_fraction(a, y);

    // Small y, a <= 0: recur downwards from a base order in (0, 1] (or from
    // E1 when a is an integer), Gamma(a, y) = (Gamma(a+1, y) - y^a e^-y) / a.
    const double steps = std::ceil(-a);
    double order = a + steps;
    double value;
    if (order == 0.0)
        value = exponential_integral_small(y);
    else
        value = std::tgamma(order) - lower_gamma_series(order, y);
    const double log_y = std::log(y);
    for (int k = 0; k < static_cast<int>(steps); ++k)
    {
        order -= 1.0;
        value = (value - std::exp(order * log_y - y)) / order;
    }
    return value;
}

double scaled_upper_incomplete_gamma(double a, double y)
{
    if (!(y > 0.0) || !std::isfinite(y) || !std::isfinite(a))
        throw DomainError("scaled_upper_incomplete_gamma requires finite y > 0 and finite a");
    if (y >= 1.0 || (a > 0.0 && y >= a + 1.0))
        return upper_gamma_fraction_scaled(a, y);
    if (a > 0.0)
        return std::exp(y - a * std::log(y)) * upper_incomplete_gamma(a, y);

    // G(a) = (y G(a+1) - 1) / a keeps every intermediate of order 1/|a|
    const double steps = std::ceil(-a);
    double order = a + steps;
    double value = std::exp(y - order * std::log(y)) *
                   (order == 0.0 ? exponential_integral_small(y)
                                 : std::tgamma(order) - lower_gamma_series(order, y));
    for (int k = 0; k < static_cast<int>(steps); ++k)
    {
        order -= 1.0;
        value = (y * value - 1.0) / order;
    }
    return value;
}

double gaussian_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

// ---------------------------------------------------------------------------
// Derivatives

namespace
{

double central_difference(const RealFunction & f, double s, int n, double h)
{
    // sum_k (-1)^k C(n,k) f(s + (n/2 - k) h) / h^n
    double binom = 1.0;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k)
    {
        const double x = s + (0.5 * n - k) * h;
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw DomainError("derivative stencil hit a non-finite value at " + std::to_string(x));
        acc += ((k % 2 == 0) ? 1.0 : -1.0) * binom * fx;
        binom = binom * (n - k) / (k + 1);
    }
    return acc / std::pow(h, n);
}

}  // namespace

DerivativeEstimate nth_derivative_estimate(const RealFunction & f, double s, int n, double step)
{
    if (n < 0)
        throw DomainError("derivative order must be non-negative");
    if (n == 0)
    {
        const double v = f(s);
        if (!std::isfinite(v))
            throw DomainError("function is not finite at the evaluation point");
        return {v, 0.0};
    }
    if (!(step > 0.0))
        throw DomainError("derivative step must be positive");

    constexpr int levels = 4;
    std::array<std::array<double, levels>, levels> table{};
    double h = step;
    for (int i = 0; i < levels; ++i, h *= 0.5)
    {
        table[i][0] = central_difference(f, s, n, h);
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0)
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
    }
    const double best = table[levels - 1][levels - 1];
    const double previous = table[levels - 2][levels - 2];
    return {best, std::abs(best - previous)};
}

double nth_derivative(const RealFunction & f, double s, int n, double step)
{
    return nth_derivative_estimate(f, s, n, step).value;
}

}  // namespace aerial::numerics
