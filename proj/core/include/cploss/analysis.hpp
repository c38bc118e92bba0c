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

#ifndef CPLOSS_ANALYSIS_HPP_
#define CPLOSS_ANALYSIS_HPP_

#include <span>
#include <string>
#include <vector>

#include "cploss/composite.hpp"
#include "cploss/link.hpp"
#include "cploss/numerics.hpp"
#include "cploss/proper_loss.hpp"
#include "cploss/weight.hpp"

namespace cploss {

struct ProperCheck {
  bool proper = false;
  WeightFunction weight_estimate;
  double max_residual = 0.0;
};

// Compares -ell_1'(p)/(1-p) with ell_-1'(p)/p on the grid (derivatives by
// central differences). Residuals are relative to max(1, |ratio|).
ProperCheck check_proper(const RealFn& ell_pos, const RealFn& ell_neg,
                         std::span<const double> grid, double tol = 1e-6);

enum class BoundSide { lower, upper };

// For the characterization, lower is -1/x <= w'/w - psi''/psi' and upper is
// w'/w - psi''/psi' <= 1/(1-x). For the oracle, lower flags the negative
// partial and upper the positive one; lhs is then the slope increment and
// rhs the (negative) threshold it fell below.
struct Violation {
  double x = 0.0;
  BoundSide side = BoundSide::lower;
  double lhs = 0.0;
  double rhs = 0.0;
};

enum class ConvexityMethod { characterization, oracle };

struct ConvexityReport {
  bool convex = true;
  std::vector<Violation> violations;
  ConvexityMethod method = ConvexityMethod::characterization;
};

// Evaluates -1/x <= w'/w - psi''/psi' <= 1/(1-x) on the grid, plus the
// boundary probes 1e-4, 1e-3, 1-1e-3, 1-1e-4 when probe_boundary is set.
// Throws DomainError for weights with atoms or w <= 0 on a probe.
ConvexityReport convexity_characterization(const WeightFunction& wf,
                                           const Link& link,
                                           std::span<const double> grid,
                                           double tol = 1e-9,
                                           bool probe_boundary = true);

// Checks that consecutive slopes of v -> ell(y, v) never decrease by more
// than tol (relative to the slopes) on the ascending score grid.
ConvexityReport convexity_oracle(const CompositeLoss& cl,
                                 std::span<const double> score_grid,
                                 double tol = 1e-8);

// psi(x) for each x of the grid, the score grid used by the oracle.
std::vector<double> score_grid_for(const Link& link,
                                   std::span<const double> grid);

struct RegionCurve {
  std::vector<double> xs;
  // Pointwise min and max of psi'(x) / (2 psi'(1/2) x) and
  // psi'(x) / (2 psi'(1/2) (1 - x)).
  std::vector<double> lower;
  std::vector<double> upper;
};

RegionCurve allowable_region(const Link& link, std::span<const double> grid);

// Whether w / w(1/2) lies between the two curves at every grid point.
// The integrated bounds are implied by convexity but do not imply it.
bool inside_region(const WeightFunction& wf, const RegionCurve& region,
                   double tol = 1e-9);

enum class Calibration { calibrated, not_calibrated, indeterminate };

std::string to_string(Calibration c);

// Proper losses: calibrated at c iff w(c) > 0 or an atom sits at c.
Calibration calibration_cc(const ProperLoss& loss, double c);

// General partials: ell_-1'(c) > 0, ell_1'(c) < 0 and
// c ell_1'(c) + (1-c) ell_-1'(c) = 0 (relative to |ell_-1'(c)|).
// Derivatives that vanish numerically give indeterminate.
Calibration calibration_cc(const RealFn& ell_pos, const RealFn& ell_neg,
                           double c, double tol = 1e-8);

Calibration calibration_composite(const CompositeLoss& cl, double c);

}  // namespace cploss

#endif  // CPLOSS_ANALYSIS_HPP_
