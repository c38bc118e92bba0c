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

#include "cploss/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cploss/error.hpp"

namespace cploss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Experiment incommensurability_experiment(int index) {
  if (index == 1) {
    return Experiment{"eta1", [](double x) { return x * x; }};
  }
  if (index == 2) {
    return Experiment{"eta2", [](double x) { return 1.0 / 3.0 + x / 3.0; }};
  }
  throw DomainError("experiment index must be 1 or 2");
}

PartialPair partials_of(const ProperLoss& loss) {
  return PartialPair{
      .name = loss.name(),
      .pos = [loss](double p) { return loss.ell_pos(p); },
      .neg = [loss](double p) { return loss.ell_neg(p); },
  };
}

PartialPair zero_one_partials() {
  return PartialPair{
      .name = "zero-one",
      .pos = [](double p) { return p < 0.5 ? 1.0 : 0.0; },
      .neg = [](double p) { return p >= 0.5 ? 1.0 : 0.0; },
  };
}

double full_risk(const Experiment& exp, const PartialPair& loss,
                 const RealFn& h, std::span<const double> breakpoints,
                 const QuadratureSpec& spec) {
  return integrate_piecewise(
      [&](double x) {
        return pair_conditional_risk(loss, exp.eta(x), h(x));
      },
      0.0, 1.0, breakpoints, spec);
}

double linear_full_risk(const Experiment& exp, const PartialPair& loss,
                        double alpha) {
  // Misclassification-type losses jump where alpha x crosses 1/2.
  std::vector<double> breaks;
  if (alpha > 0.5) breaks.push_back(0.5 / alpha);
  try {
    return full_risk(exp, loss, LinearHypothesisClass{}.hypothesis(alpha),
                     breaks);
  } catch (const DivergentIntegralError&) {
    return kInf;
  }
}

ConstrainedBayes constrained_bayes(const Experiment& exp,
                                   const PartialPair& loss,
                                   const LinearHypothesisClass& family) {
  const RealFn objective = [&](double alpha) {
    return linear_full_risk(exp, loss, alpha);
  };
  ConstrainedBayes out;
  out.result = minimize_scalar(objective, family.lo, family.hi);
  const double best = out.result.min_value;
  const double eps = 1e-12 * (1.0 + std::abs(best));
  const double left = std::max(family.lo, out.result.argmin - 1e-4);
  const double right = std::min(family.hi, out.result.argmin + 1e-4);
  out.flat = (left == out.result.argmin || objective(left) <= best + eps) &&
             (right == out.result.argmin || objective(right) <= best + eps);
  return out;
}

double surrogate_penalty(const Experiment& exp, const PartialPair& ref_loss,
                         const PartialPair& surrogate,
                         const LinearHypothesisClass& family) {
  const double alpha = constrained_bayes(exp, surrogate, family).result.argmin;
  return linear_full_risk(exp, ref_loss, alpha);
}

SurrogateReport incommensurability_report() {
  const PartialPair l1 = partials_of(catalog_loss("w1-over-c"));
  const PartialPair l2 = partials_of(catalog_loss("w1-over-1mc"));
  const PartialPair zero_one = zero_one_partials();
  struct Row {
    int experiment;
    const PartialPair* loss;
    double alpha;
    double zero_one;
  };
  // Published reference values for the four cells.
  const Row rows[] = {
      {1, &l1, 0.66666667, 0.3580272},
      {1, &l2, 0.81779259, 0.3033476},
      {2, &l1, 1.00000000, 0.4166666},
      {2, &l2, 0.77763472, 0.4207872},
  };
  SurrogateReport report;
  for (const Row& row : rows) {
    const Experiment exp = incommensurability_experiment(row.experiment);
    const ConstrainedBayes cb = constrained_bayes(exp, *row.loss);
    SurrogateCell cell;
    cell.experiment = exp.name;
    cell.surrogate = row.loss->name;
    cell.alpha_star = cb.result.argmin;
    cell.surrogate_risk = cb.result.min_value;
    cell.zero_one_risk = linear_full_risk(exp, zero_one, cell.alpha_star);
    cell.reference_alpha = row.alpha;
    cell.reference_zero_one = row.zero_one;
    cell.flat = cb.flat;
    report.cells.push_back(cell);
  }
  report.surrogate2_better_on_eta1 =
      report.cells[1].zero_one_risk < report.cells[0].zero_one_risk;
  report.surrogate1_better_on_eta2 =
      report.cells[2].zero_one_risk < report.cells[3].zero_one_risk;
  return report;
}

ProperLoss minimal_loss() {
  constexpr double kLn2 = std::numbers::ln2;
  ProperLoss::Parts p;
  p.name = "minimal";
  p.ell_neg = [](double e) {
    return e < 0.5 ? 0.5 * (-e - std::log1p(-e)) : 0.5 * (e - 1.0 + kLn2);
  };
  p.ell_pos = [](double e) {
    return e < 0.5 ? 0.5 * (-e + kLn2) : 0.5 * (e - 1.0 - std::log(e));
  };
  p.ell_neg_prime = [](double e) {
    return e < 0.5 ? 0.5 * e / (1.0 - e) : 0.5;
  };
  p.ell_pos_prime = [](double e) {
    return e < 0.5 ? -0.5 : 0.5 * (1.0 - 1.0 / e);
  };
  p.weight = catalog_weight("minimal");
  p.fair = true;
  p.strictly_proper = true;
  p.closed_form = true;
  return ProperLoss(std::move(p));
}

double regret_bound_rhs(double a) {
  if (!(a >= 0.0 && a <= 0.5)) throw DomainError("a must lie in [0, 1/2]");
  return (0.5 * a + 0.25) * std::log1p(2.0 * a) - 0.5 * a;
}

double regret_bound_rhs(const ProperLoss& loss, double a) {
  if (!(a >= 0.0 && a <= 0.5)) throw DomainError("a must lie in [0, 1/2]");
  return bayes_risk(loss, 0.5) - bayes_risk(loss, 0.5 + a);
}

double regret_bound_invert(double x) {
  if (!(x >= 0.0)) throw DomainError("regret bound argument must be >= 0");
  const double w = lambert_w0((4.0 * x - 1.0) / std::numbers::e);
  return 0.5 * std::exp(w + 1.0) - 0.5;
}

}  // namespace cploss
