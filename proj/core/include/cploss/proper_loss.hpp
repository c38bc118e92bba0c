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

#ifndef CPLOSS_PROPER_LOSS_HPP_
#define CPLOSS_PROPER_LOSS_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cploss/numerics.hpp"
#include "cploss/weight.hpp"

namespace cploss {

enum class Label { negative = -1, positive = 1 };

// Proper CPE loss given by its partial losses ell_1 (positive label) and
// ell_-1 (negative label) on [0,1], together with its weight function.
class ProperLoss {
 public:
  struct Parts {
    std::string name;
    RealFn ell_pos;
    RealFn ell_neg;
    RealFn ell_pos_prime;  // optional
    RealFn ell_neg_prime;  // optional
    std::optional<WeightFunction> weight;
    bool fair = false;
    bool strictly_proper = false;
    // True when the partials are closed forms (no quadrature inside).
    bool closed_form = false;
    std::vector<std::string> warnings;
  };

  explicit ProperLoss(Parts parts);

  const std::string& name() const { return parts_->name; }

  double ell(Label y, double etahat) const {
    return y == Label::positive ? ell_pos(etahat) : ell_neg(etahat);
  }
  double ell_pos(double etahat) const { return parts_->ell_pos(etahat); }
  double ell_neg(double etahat) const { return parts_->ell_neg(etahat); }
  double ell_pos_prime(double etahat) const;
  double ell_neg_prime(double etahat) const;

  bool has_weight() const { return parts_->weight.has_value(); }
  const WeightFunction& weight() const;

  bool fair() const { return parts_->fair; }
  bool strictly_proper() const { return parts_->strictly_proper; }
  bool closed_form() const { return parts_->closed_form; }

  // ell_1(0) and ell_-1(1) finite.
  bool definite() const;

  // eta ell_1(eta) -> 0 as eta -> 0 and (1 - eta) ell_-1(eta) -> 0 as
  // eta -> 1, probed at distances 1e-4 and 1e-6 from the endpoint.
  bool regular() const;

  const std::vector<std::string>& warnings() const { return parts_->warnings; }

  const Parts& parts() const { return *parts_; }

 private:
  std::shared_ptr<const Parts> parts_;
};

// Fair proper loss with partials
//   ell_1(p) = int_p^1 (1-c) w(c) dc,  ell_-1(p) = int_0^p c w(c) dc,
// plus step terms m c0 [p >= c0] and m (1-c0) [p < c0] for each atom.
// Closed antiderivatives are used when the weight provides them.
ProperLoss from_weight(const WeightFunction& wf);

// Cost-weighted misclassification loss with threshold c0.
ProperLoss cost_loss(double c0);

// Catalog weight wrapped by from_weight.
ProperLoss catalog_loss(std::string_view weight_name,
                        const ParamMap& params = {});

double conditional_risk(const ProperLoss& loss, double eta, double etahat);

double bayes_risk(const ProperLoss& loss, double eta);

// L(eta, etahat) - L(eta, eta).
double regret(const ProperLoss& loss, double eta, double etahat);

// Bregman form -L(eta) + L(etahat) + (eta - etahat) L'(etahat) of the
// regret, with L' by central differences of the Bayes risk.
double bregman_regret(const ProperLoss& loss, double eta, double etahat);

// Largest |L(eta, etahat) - L(etahat) - (eta - etahat) L'(etahat)| over the
// supplied (eta, etahat) pairs, L' by central differences.
double savage_check(const ProperLoss& loss,
                    std::span<const std::pair<double, double>> grid);

struct SchervishResult {
  double value = 0.0;
  // Set when the mixture integral diverged and was cut off near 0 and 1.
  bool truncated = false;
};

// int_0^1 ell_c(y, etahat) w(c) dc plus the atom terms.
SchervishResult schervish_check(const ProperLoss& loss, Label y,
                                double etahat);

// Tabulated weight -L''(c) on the grid (default: 99 interior points).
// Throws ImpropernessError on clearly negative curvature estimates.
WeightFunction weight_from_loss(const ProperLoss& loss,
                                std::span<const double> grid = {});

enum class HalfSide { lower, upper };

// Symmetric proper loss whose ell_-1 equals `half` on [0,1/2] (lower) or
// [1/2,1] (upper); the other half follows from
//   ell_-1(p) = ell_-1(1/2) + int_{1/2}^p x/(1-x) ell_-1'(1-x) dx
// and ell_1(p) = ell_-1(1-p). half_prime defaults to central differences
// of `half`, which must then be evaluable slightly past 1/2.
ProperLoss reconstruct_symmetric(RealFn half, HalfSide side,
                                 std::optional<double> ell_neg_at_half = {},
                                 RealFn half_prime = {});

}  // namespace cploss

#endif  // CPLOSS_PROPER_LOSS_HPP_
