// Copyright 2026 The cploss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CPLOSS_COMPOSITE_HPP_
#define CPLOSS_COMPOSITE_HPP_

#include <string>
#include <string_view>

#include "cploss/link.hpp"
#include "cploss/numerics.hpp"
#include "cploss/proper_loss.hpp"

namespace cploss {

// A loss known only through its two partials over some prediction domain
// (probabilities for CPE losses, raw scores for composite losses).
struct PartialPair {
  std::string name;
  RealFn pos;
  RealFn neg;
};

double pair_conditional_risk(const PartialPair& loss, double eta, double v);

// Composite loss ell(y, q(v)) of a proper loss and a link.
class CompositeLoss {
 public:
  CompositeLoss(ProperLoss base, Link link);

  // Same loss with score-space partials evaluated directly, e.g. phi(y v)
  // for margin losses, which avoids round-off in q near the ends.
  CompositeLoss(ProperLoss base, Link link, std::string name, RealFn pos,
                RealFn neg);

  const std::string& name() const { return name_; }
  const ProperLoss& base() const { return base_; }
  const Link& link() const { return link_; }

  double ell(Label y, double v) const {
    return y == Label::positive ? ell_pos(v) : ell_neg(v);
  }
  double ell_pos(double v) const;
  double ell_neg(double v) const;

  // w(x) / psi'(x); throws for weights with atoms.
  double rho(double x) const;

  PartialPair partials() const;

 private:
  ProperLoss base_;
  Link link_;
  std::string name_;
  RealFn pos_;
  RealFn neg_;
};

CompositeLoss make_composite(const ProperLoss& base, const Link& link);

// L(eta, q(v)); v must lie in the link range.
double composite_conditional_risk(const CompositeLoss& cl, double eta,
                                  double v);

struct ScoreGradients {
  double d_pos = 0.0;  // d/dv ell(1, q(v)) = (q(v) - 1) rho(q(v))
  double d_neg = 0.0;  // d/dv ell(-1, q(v)) = q(v) rho(q(v))
};

ScoreGradients score_gradients(const CompositeLoss& cl, double v);

double composite_regret(const CompositeLoss& cl, double eta, double v);

// Margin loss phi(y v).
struct MarginLoss {
  std::string name;
  RealFn phi;
  RealFn phi_prime;
  // phi' vanishes somewhere (hinge); the proper link is then not unique.
  bool flat_spots = false;
};

// exponential, logistic, hinge, zhang:ALPHA (alpha > 0).
MarginLoss margin_loss(std::string_view spec);

// q(v) = lam_-1'(v) / (lam_-1'(v) - lam_1'(v)). The result is checked to be
// non-decreasing with values in [0,1] on a probe grid of the range.
Link reference_link(RealFn lam_pos_prime, RealFn lam_neg_prime,
                    Interval range, std::string name = "reference");

// q(v) = phi'(-v) / (phi'(-v) + phi'(v)). Throws FlatSpotError when phi'
// vanishes on the probe grid.
Link margin_to_link(const MarginLoss& m);

// Margin loss as a proper composite loss with its own link; the partials
// are evaluated as phi(y v) directly.
CompositeLoss margin_composite(const MarginLoss& m);

// Strictly increasing W with inverse; Wbar and the antiderivative of the
// inverse are optional closed forms (quadrature otherwise).
struct BregmanGenerator {
  RealFn W;
  RealFn W_inv;
  RealFn Wbar;       // optional
  RealFn Wbar_star;  // optional
};

BregmanGenerator bregman_generator(const WeightFunction& wf);

// D_W(x, y) = int_y^x (W(c) - W(y)) dc.
double bregman_divergence(const BregmanGenerator& g, double x, double y);

// |D_W(x, y) - D_{W^-1}(W(y), W(x))|.
double duality_residual(const BregmanGenerator& g, double x, double y);

}  // namespace cploss

#endif  // CPLOSS_COMPOSITE_HPP_
