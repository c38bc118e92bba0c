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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cploss/error.hpp"
#include "cploss/experiments.hpp"

namespace cploss {
namespace {

constexpr double kLn2 = std::numbers::ln2;

TEST(Experiments, Definitions) {
  const Experiment e1 = incommensurability_experiment(1);
  const Experiment e2 = incommensurability_experiment(2);
  EXPECT_DOUBLE_EQ(e1.eta(0.5), 0.25);
  EXPECT_DOUBLE_EQ(e2.eta(0.5), 0.5);
  EXPECT_THROW(incommensurability_experiment(3), DomainError);
}

TEST(Experiments, SurrogatePartialsMatchPrintedConditionalRisks) {
  const ProperLoss l1 = catalog_loss("w1-over-c");
  const ProperLoss l2 = catalog_loss("w1-over-1mc");
  for (double eta : {0.1, 0.4, 0.8}) {
    for (double h : {0.05, 0.3, 0.6, 0.95}) {
      EXPECT_NEAR(conditional_risk(l1, eta, h),
                  eta * (h - 1.0 - std::log(h)) + (1.0 - eta) * h, 1e-12);
      EXPECT_NEAR(conditional_risk(l2, eta, h),
                  eta * (1.0 - h) + (1.0 - eta) * (-h - std::log1p(-h)), 1e-12);
    }
  }
}

TEST(FullRisk, DegenerateExperiment) {
  const Experiment flat{"flat", [](double) { return 0.3; }};
  const PartialPair log = partials_of(catalog_loss("log"));
  EXPECT_NEAR(full_risk(flat, log, [](double) { return 0.3; }),
              bayes_risk(catalog_loss("log"), 0.3), 1e-12);
}

TEST(FullRisk, MinimumAtReportedAlpha) {
  const Experiment e1 = incommensurability_experiment(1);
  const PartialPair l1 = partials_of(catalog_loss("w1-over-c"));
  const double at = linear_full_risk(e1, l1, 2.0 / 3.0);
  EXPECT_LT(at, linear_full_risk(e1, l1, 2.0 / 3.0 - 1e-3));
  EXPECT_LT(at, linear_full_risk(e1, l1, 2.0 / 3.0 + 1e-3));
}

TEST(FullRisk, ZeroScoreDiverges) {
  const Experiment e1 = incommensurability_experiment(1);
  EXPECT_TRUE(std::isinf(
      linear_full_risk(e1, partials_of(catalog_loss("w1-over-c")), 0.0)));
}

TEST(ConstrainedBayes, PublishedMinimizers) {
  const PartialPair l1 = partials_of(catalog_loss("w1-over-c"));
  const PartialPair l2 = partials_of(catalog_loss("w1-over-1mc"));
  const Experiment e1 = incommensurability_experiment(1);
  const Experiment e2 = incommensurability_experiment(2);
  EXPECT_NEAR(constrained_bayes(e1, l1).result.argmin, 0.66666667, 1e-4);
  EXPECT_NEAR(constrained_bayes(e1, l2).result.argmin, 0.81779259, 1e-4);
  EXPECT_NEAR(constrained_bayes(e2, l1).result.argmin, 1.0, 1e-4);
  EXPECT_NEAR(constrained_bayes(e2, l2).result.argmin, 0.77763472, 1e-4);
  EXPECT_FALSE(constrained_bayes(e1, l1).flat);
}

// First-order condition of the first surrogate on eta_1: the derivative of
// int x^2 (a x - 1 - log(a x)) + (1 - x^2) a x dx is 1/4 - 1/(3a) + 1/2 - 1/4,
// which vanishes at a = 2/3.
TEST(ConstrainedBayes, ClosedFormFirstCell) {
  const auto r = constrained_bayes(incommensurability_experiment(1),
                                   partials_of(catalog_loss("w1-over-c")));
  EXPECT_NEAR(r.result.argmin, 2.0 / 3.0, 1e-7);
}

TEST(ConstrainedBayes, FlatObjectiveFlagged) {
  const PartialPair zero{"zero", [](double) { return 0.0; }, [](double) { return 0.0; }};
  EXPECT_TRUE(constrained_bayes(incommensurability_experiment(1), zero).flat);
}

TEST(SurrogatePenalty, SelfReferenceIsConstrainedBayesRisk) {
  const Experiment e2 = incommensurability_experiment(2);
  const PartialPair l2 = partials_of(catalog_loss("w1-over-1mc"));
  EXPECT_NEAR(surrogate_penalty(e2, l2, l2),
              constrained_bayes(e2, l2).result.min_value, 1e-12);
}

// Misclassification risk of h_a on eta_1 with threshold x >= 1/(2a):
// int_0^t x^2 dx + int_t^1 (1 - x^2) dx, t = 1/(2a).
TEST(SurrogatePenalty, ZeroOneRiskClosedForm) {
  const Experiment e1 = incommensurability_experiment(1);
  const double a = 0.81779259, t = 0.5 / a;
  const double expected = t * t * t / 3.0 + (1.0 - t) - (1.0 - t * t * t) / 3.0;
  EXPECT_NEAR(linear_full_risk(e1, zero_one_partials(), a), expected, 1e-10);
}

TEST(MinimalLoss, LowerBranchValue) {
  EXPECT_NEAR(minimal_loss().ell_neg(0.25), 0.5 * (-0.25 - std::log(0.75)), 1e-15);
}

TEST(MinimalLoss, MatchesWeightConstruction) {
  const ProperLoss printed = minimal_loss();
  const ProperLoss built = from_weight(catalog_weight("minimal"));
  for (double p : interior_grid(99)) {
    EXPECT_NEAR(printed.ell_neg(p), built.ell_neg(p), 1e-8);
    EXPECT_NEAR(printed.ell_pos(p), built.ell_pos(p), 1e-8);
  }
}

TEST(RegretBound, ForwardValues) {
  EXPECT_EQ(regret_bound_rhs(0.0), 0.0);
  EXPECT_NEAR(regret_bound_rhs(0.5), 0.5 * kLn2 - 0.25, 1e-15);
  EXPECT_NEAR(regret_bound_rhs(catalog_loss("square"), 0.2), 0.02, 1e-15);
  EXPECT_NEAR(regret_bound_rhs(minimal_loss(), 0.3), regret_bound_rhs(0.3), 1e-14);
  EXPECT_THROW(regret_bound_rhs(0.6), DomainError);
}

TEST(RegretBound, Inverse) {
  EXPECT_EQ(regret_bound_invert(0.0), 0.0);
  EXPECT_NEAR(regret_bound_invert(0.25), 0.5 * std::numbers::e - 0.5, 1e-15);
  EXPECT_THROW(regret_bound_invert(-1e-3), DomainError);
  for (int i = 0; i <= 50; ++i) {
    const double a = i / 100.0;
    EXPECT_NEAR(regret_bound_invert(regret_bound_rhs(a)), a, 1e-8);
  }
}

}  // namespace
}  // namespace cploss
