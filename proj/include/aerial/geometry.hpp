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

#include <vector>

#include <Eigen/Core>

#include "aerial/network.hpp"
#include "aerial/numerics.hpp"

// Distance laws and association analysis.
//
// Terminology: the *selector* is the typical node that picks its partner (the
// receiver under receiver orientation, the transmitter otherwise); candidates
// are the nodes of the orientation set. Every distribution has support
// [h_ik, inf) in link distance, where h_ik is the altitude gap.

namespace aerial
{

/// Conditioning event of all downstream quantities: a receiver in rx_layer is
/// served by a transmitter in tx_layer over a `channel` link of length `distance`.
struct LinkEvent
{
    int rx_layer = 0;
    int tx_layer = 0;
    ChannelClass channel = ChannelClass::los;
    AssociationRule rule;
    double distance = 0.0;  ///< [m], at least the altitude gap

    int selector_layer() const
    {
        return rule.orientation == Orientation::receiver ? rx_layer : tx_layer;
    }
    int candidate_layer() const
    {
        return rule.orientation == Orientation::receiver ? tx_layer : rx_layer;
    }
};

/// Builds the event for a selector/candidate pair under `rule`.
LinkEvent make_event(const AssociationRule & rule, int selector, int candidate, ChannelClass c,
                     double distance);

/// Distance to the nearest node of one class in one layer, seen from another layer.
///
/// The cumulative intensity Lambda(v) = int_h^v 2 pi lambda x rho(x) dx is tabulated
/// on panels in horizontal distance and completed with a Gauss-Legendre rule on
/// the last partial panel. When Lambda converges (rho decays geometrically) the
/// nearest node may not exist; defect() is that probability.
class NearestDistanceLaw
{
  public:
    NearestDistanceLaw() = default;
    NearestDistanceLaw(const LosProfile & profile, double density, ChannelClass c);

    double ccdf(double v) const;
    double pdf(double v) const;
    double cumulative_intensity(double v) const;

    /// Same quantities on horizontal distance r.
    double ccdf_horizontal(double r) const;
    double intensity_horizontal(double r) const;
    /// Density of the nearest node's horizontal distance.
    double pdf_horizontal(double r) const;

    /// Probability that no node of this class exists at all.
    double defect() const;

    bool empty() const { return density_ == 0.0 || never_; }
    double density() const { return density_; }
    double altitude_gap() const { return profile_.altitude_gap(); }
    ChannelClass channel() const { return channel_; }
    const LosProfile & profile() const { return profile_; }

  private:
    double class_probability(double r) const { return profile_.probability_at(channel_, r); }
    double partial(double lo, double hi) const;

    LosProfile profile_;
    double density_ = 0.0;
    ChannelClass channel_ = ChannelClass::los;
    bool never_ = true;
    std::vector<double> edges_;
    std::vector<double> cumulative_;
    bool saturated_ = false;  // table stopped because ccdf underflowed
};

NearestDistanceLaw nearest_distance_law(const ValidatedConfig & config, const AssociationRule & rule,
                                        int i, int k, ChannelClass c_o);

/// Integral of f over horizontal distance r in [0, inf). When `piece_length`
/// is positive the integrand may jump at its multiples, so the range is split
/// there before the tail is handed to the semi-infinite rule.
double integrate_horizontal(const numerics::RealFunction & f, double piece_length,
                            const numerics::QuadratureSpec & spec);

/// Same over [lower, inf).
double integrate_horizontal_from(const numerics::RealFunction & f, double lower,
                                 double piece_length, const numerics::QuadratureSpec & spec);

/// Nodes and weights of the rule integrate_horizontal_from settles on for f.
/// Reusing them for a neighbouring integrand gives a result that is smooth in
/// any parameter of that integrand.
numerics::WeightedNodes horizontal_rule(const numerics::RealFunction & f, double lower,
                                        double piece_length, const numerics::QuadratureSpec & spec);

/// Same over [0, upper].
double integrate_horizontal(const numerics::RealFunction & f, double upper, double piece_length,
                            const numerics::QuadratureSpec & spec);

/// Distance beyond which a competitor of class c_o in a layer with bias b_k
/// loses against a candidate of class c at distance y in a layer with bias b_j.
double candidate_radius(Criterion criterion, const PathlossParams & pathloss, ChannelClass c,
                        ChannelClass c_o, double y, double bias_j, double bias_k);

/// Association probabilities of one selector layer: rows are candidate layers,
/// columns are channel classes (LoS, NLoS).
struct AssociationReport
{
    int selector_layer = 0;
    AssociationRule rule;
    Eigen::MatrixX2d probability;

    double total() const { return probability.sum(); }
};

/// All candidate laws of one selector layer under one rule.
class AssociationModel
{
  public:
    AssociationModel(const ValidatedConfig & config, const AssociationRule & rule, int selector,
                     const numerics::QuadratureSpec & spec = default_spec());

    static numerics::QuadratureSpec default_spec();

    int selector_layer() const { return selector_; }
    const AssociationRule & rule() const { return rule_; }
    const ValidatedConfig & config() const { return *config_; }

    bool has_candidates() const;
    const NearestDistanceLaw & law(int k, ChannelClass c) const;

    /// f_V(y) times the probability that no competitor beats the candidate.
    double joint_density(int j, ChannelClass c, double y) const;
    /// Same joint density expressed on the horizontal distance of the candidate.
    double joint_density_horizontal(int j, ChannelClass c, double r) const;

    /// Typical horizontal length of the nearest candidate [m].
    double length_scale() const { return length_scale_; }
    const numerics::QuadratureSpec & spec() const { return spec_; }

    double association_probability(int j, ChannelClass c) const;
    AssociationReport report() const;

  private:
    const ValidatedConfig * config_;
    AssociationRule rule_;
    int selector_;
    numerics::QuadratureSpec spec_;
    std::vector<NearestDistanceLaw> laws_;  // index 2*k + class
    double length_scale_ = 1.0;
};

AssociationReport association_probabilities(const ValidatedConfig & config,
                                            const AssociationRule & rule, int i);

/// Conditional density of the main-link distance given association to (j, c).
class MainLinkLaw
{
  public:
    MainLinkLaw(const AssociationModel & model, int j, ChannelClass c);

    double association_probability() const { return probability_; }
    double pdf(double y) const;
    double cdf(double y) const;
    /// CDF at many points at once; `points` need not be sorted.
    Eigen::VectorXd cdf(const Eigen::VectorXd & points) const;
    double altitude_gap() const { return gap_; }

  private:
    const AssociationModel * model_;
    int layer_;
    ChannelClass channel_;
    double probability_;
    double gap_;
};

MainLinkLaw main_link_pdf(const AssociationModel & model, int j, ChannelClass c);

}  // namespace aerial
