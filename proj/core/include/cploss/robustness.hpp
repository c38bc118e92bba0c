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

#ifndef CPLOSS_ROBUSTNESS_HPP_
#define CPLOSS_ROBUSTNESS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "cploss/composite.hpp"
#include "cploss/proper_loss.hpp"
#include "cploss/weight.hpp"

namespace cploss {

// Symmetric label-flip probability alpha in [0, 1/2).
class NoiseLevel {
 public:
  explicit NoiseLevel(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// alpha (1 - eta) + (1 - alpha) eta.
double corrupt(double eta, NoiseLevel alpha);

// Partials (1 - alpha) ell(y, v) + alpha ell(-y, v), whose conditional risk
// at eta equals that of the clean loss at corrupt(eta, alpha).
PartialPair noisy_loss(const PartialPair& loss, NoiseLevel alpha);
PartialPair noisy_loss(const CompositeLoss& cl, NoiseLevel alpha);

// Grid points whose conditional risk is within slack of the grid minimum.
std::vector<double> minimizer_set(const PartialPair& loss, double eta,
                                  std::span<const double> grid, double slack);

// Slack 1e-12 for pure point-mass weights (exact plateaus), otherwise
// 1e-9 (1 + |minimum|).
std::vector<double> minimizer_set(const ProperLoss& loss, double eta,
                                  std::span<const double> grid);

// True when the two sorted grid subsets share a point.
bool sets_intersect(std::span<const double> a, std::span<const double> b);

// Interval with explicit end conventions.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = false;

  bool empty() const {
    return lo > hi || (lo == hi && !(lo_closed && hi_closed));
  }
  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
};

// Non-robust set of the cost loss with threshold c0: [(c0-a)/(1-2a), c0)
// for c0 < 1/2 and [c0, (c0-a)/(1-2a)) otherwise. The ends are not clipped
// to [0,1].
struct RobustInterval {
  double c0 = 0.5;
  double alpha = 0.0;
  RealInterval interval;
};

RobustInterval cost_robust_interval(double c0, NoiseLevel alpha);

// Union of the cost-loss non-robust intervals over the support of w, as
// disjoint intervals sorted by lower end. Consecutive grid points with
// w > 0 are treated as a continuous stretch of support; atoms contribute
// their own interval. Pieces closer than one grid step are merged unless
// the point between them is excluded by both (as 1/2 is). The result is
// clipped to [0,1].
std::vector<RealInterval> proper_nonrobust_region(const WeightFunction& wf,
                                                  NoiseLevel alpha,
                                                  std::span<const double> grid);

bool covered(std::span<const RealInterval> region, double eta);

}  // namespace cploss

#endif  // CPLOSS_ROBUSTNESS_HPP_
