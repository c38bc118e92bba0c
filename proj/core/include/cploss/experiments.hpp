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

#ifndef CPLOSS_EXPERIMENTS_HPP_
#define CPLOSS_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "cploss/composite.hpp"
#include "cploss/numerics.hpp"
#include "cploss/proper_loss.hpp"

namespace cploss {

enum class Marginal { uniform };

// Conditional probability eta on X = [0,1] with a marginal on X.
struct Experiment {
  std::string name;
  RealFn eta;
  Marginal marginal = Marginal::uniform;
};

// eta_1(x) = x^2 (index 1) or eta_2(x) = 1/3 + x/3 (index 2).
Experiment incommensurability_experiment(int index);

// h_alpha(x) = alpha x for alpha in [lo, hi].
struct LinearHypothesisClass {
  double lo = 0.0;
  double hi = 1.0;
  RealFn hypothesis(double alpha) const {
    return [alpha](double x) { return alpha * x; };
  }
};

PartialPair partials_of(const ProperLoss& loss);

// Standard misclassification loss: ell_-1 = [p >= 1/2], ell_1 = [p < 1/2].
PartialPair zero_one_partials();

// E_M L(eta(X), h(X)). Breakpoints mark jumps of the integrand.
double full_risk(const Experiment& exp, const PartialPair& loss,
                 const RealFn& h, std::span<const double> breakpoints = {},
                 const QuadratureSpec& spec = {1e-12, 1e-12});

// Full risk of h_alpha; a divergent risk counts as +infinity.
double linear_full_risk(const Experiment& exp, const PartialPair& loss,
                        double alpha);

struct ConstrainedBayes {
  MinimizeResult result;
  // Objective within rounding of its minimum 1e-4 away on both sides.
  bool flat = false;
};

ConstrainedBayes constrained_bayes(const Experiment& exp,
                                   const PartialPair& loss,
                                   const LinearHypothesisClass& family = {});

// Reference-loss full risk of the surrogate's constrained minimizer.
double surrogate_penalty(const Experiment& exp, const PartialPair& ref_loss,
                         const PartialPair& surrogate,
                         const LinearHypothesisClass& family = {});

struct SurrogateCell {
  std::string experiment;
  std::string surrogate;
  double alpha_star = 0.0;
  double surrogate_risk = 0.0;
  double zero_one_risk = 0.0;
  double reference_alpha = 0.0;
  double reference_zero_one = 0.0;
  bool flat = false;
};

struct SurrogateReport {
  // Order: (eta_1, L_1), (eta_1, L_2), (eta_2, L_1), (eta_2, L_2).
  std::vector<SurrogateCell> cells;
  // S(L_2, eta_1) < S(L_1, eta_1).
  bool surrogate2_better_on_eta1 = false;
  // S(L_1, eta_2) < S(L_2, eta_2).
  bool surrogate1_better_on_eta2 = false;
};

// Surrogates with weights 1/c and 1/(1-c) on both experiments, scored by
// misclassification risk.
SurrogateReport incommensurability_report();

// Fair proper loss with weight (1/2) min(1/c, 1/(1-c)) and closed-form
// partials.
ProperLoss minimal_loss();

// (a/2 + 1/4) log(2a + 1) - a/2, a in [0, 1/2].
double regret_bound_rhs(double a);

// L(1/2) - L(1/2 + a) for a symmetric proper loss.
double regret_bound_rhs(const ProperLoss& loss, double a);

// (1/2) exp(W0((4x - 1)/e) + 1) - 1/2, x >= 0.
double regret_bound_invert(double x);

}  // namespace cploss

#endif  // CPLOSS_EXPERIMENTS_HPP_
