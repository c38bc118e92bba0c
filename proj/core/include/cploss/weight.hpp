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

#ifndef CPLOSS_WEIGHT_HPP_
#define CPLOSS_WEIGHT_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cploss/numerics.hpp"

namespace cploss {

// Point mass of a generalized weight.
struct Atom {
  double location = 0.5;
  double mass = 1.0;
};

// Weight function w on (0,1), optionally with point masses.
//
// W and Wbar are antiderivatives of the density part only. When the caller
// supplies no closed form they are computed by quadrature with the
// convention W(1/2) = Wbar(1/2) = 0.
class WeightFunction {
 public:
  struct Parts {
    std::string name;
    RealFn w;        // density; empty for pure point-mass weights
    RealFn w_prime;  // optional
    RealFn W;        // optional
    RealFn Wbar;     // optional
    std::vector<Atom> atoms;
    // Points where w jumps or kinks; quadrature is split there.
    std::vector<double> breakpoints;
  };

  explicit WeightFunction(Parts parts);

  const std::string& name() const { return parts_->name; }

  bool has_density() const { return static_cast<bool>(parts_->w); }
  bool has_atoms() const { return !parts_->atoms.empty(); }
  const std::vector<Atom>& atoms() const { return parts_->atoms; }

  const std::vector<double>& breakpoints() const { return parts_->breakpoints; }

  // int_a^b f, split at the breakpoints of w.
  double integrate_against(const RealFn& f, double a, double b) const;

  double w(double c) const;
  double w_prime(double c) const;
  bool has_closed_w_prime() const { return static_cast<bool>(parts_->w_prime); }

  double W(double c) const;
  double Wbar(double c) const;
  bool has_closed_antiderivatives() const {
    return parts_->W && parts_->Wbar;
  }

  // Copy with density, derivatives, antiderivatives and masses times k.
  WeightFunction scaled(double k) const;

  // w(c) = w(1-c) on a grid and atoms mirrored about 1/2.
  bool is_symmetric(int grid_points = 99, double tol = 1e-9) const;

 private:
  std::shared_ptr<const Parts> parts_;
};

using ParamMap = std::map<std::string, double, std::less<>>;

// Catalog names: zero-one, cost (param c0, or "cost(0.3)"), square, log,
// boosting, w1-over-c, w1-over-1mc, minimal.
WeightFunction catalog_weight(std::string_view name,
                              const ParamMap& params = {});

std::vector<std::string> catalog_weight_names();

// Piecewise-linear interpolation of (c, w) pairs, constant beyond the ends.
WeightFunction tabulated_weight(std::vector<std::pair<double, double>> table,
                                std::string name = "custom-tabulated");

// Weight given by an arithmetic expression in the variable c.
WeightFunction expression_weight(std::string_view text);

// Scale so that w(1/2) = 1.
WeightFunction normalize_weight(const WeightFunction& wf);

// Throws DomainError when w is negative, not locally integrable, or when
// supplied antiderivatives disagree with w by differentiation.
void validate_weight(const WeightFunction& wf);

}  // namespace cploss

#endif  // CPLOSS_WEIGHT_HPP_
