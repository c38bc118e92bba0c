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

// Scalar numerics shared by every module: adaptive quadrature that tolerates
// integrable endpoint singularities, bracketed scalar minimisation, the
// principal branch of the Lambert W function, finite differences and
// safeguarded inversion of monotone functions.
//
// All functions are pure and reentrant.

#ifndef CPLOSS_NUMERICS_HPP_
#define CPLOSS_NUMERICS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace cploss {

using RealFn = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Maximum bisection depth of any subinterval.
  int max_depth = 60;
  // Relative offset applied to quadrature nodes that round onto an endpoint,
  // so an integrand singular exactly at a or b is never evaluated there.
  double endpoint_shrink = 1e-14;
  // Upper bound on the number of subintervals kept by the adaptive scheme.
  int max_intervals = 4000;
};

// Estimates the integral of f over [a, b]. Endpoint singularities are
// admissible as long as they are integrable. For a > b the result is
// -integrate(f, b, a).
//
// Throws QuadratureError when the tolerance cannot be met, DivergentIntegralError
// when f returns an infinite value and NumericError when f returns NaN.
double integrate(const RealFn& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Integrates f over [a, b] split at the given interior breakpoints
// (discontinuities of f). Breakpoints outside (a, b) are ignored.
double integrate_piecewise(const RealFn& f, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

struct MinimizeResult {
  double argmin = 0.0;
  double min_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Brent minimisation (golden section with parabolic steps) on [lo, hi].
// The bracket endpoints are compared against the interior optimum, so a
// minimum on the boundary is returned exactly.
MinimizeResult minimize_scalar(const RealFn& f, double lo, double hi,
                               double tol = 1e-9, int max_iterations = 500);

// Principal branch W0 of the Lambert W function: w * exp(w) = z, w >= -1.
// Throws DomainError for z < -1/e.
double lambert_w0(double z);

// Five-point central difference estimate of f' (order 1) or f'' (order 2).
// A non-positive h selects the default 1e-5 * max(1, |x|).
double finite_diff(const RealFn& f, double x, int order, double h = 0.0);

// Same as finite_diff but shrinks the step so that the stencil stays inside
// [lo, hi].
double finite_diff_within(const RealFn& f, double x, int order, double lo,
                          double hi, double h = 0.0);

// Solves f(x) = target for a non-decreasing f on [lo, hi] by Newton steps
// safeguarded with bisection. fprime may be empty. When target lies outside
// [f(lo), f(hi)] the nearer endpoint is returned.
double invert_increasing(const RealFn& f, double target, double lo, double hi,
                         const RealFn& fprime = {}, double xtol = 1e-15);

// Like invert_increasing, but on the whole real line: the bracket starts at
// [-1, 1] and is doubled until it contains the target (up to |x| = 1e6).
double invert_increasing_unbounded(const RealFn& f, double target,
                                   const RealFn& fprime = {});

// n interior points k/(n+1), k = 1..n.
std::vector<double> interior_grid(int n);

// n points evenly spaced on [lo, hi] including both ends (n >= 2).
std::vector<double> linspace(double lo, double hi, int n);

// x * log(y) with the convention 0 * log(0) = 0.
double xlogy(double x, double y);

}  // namespace cploss

#endif  // CPLOSS_NUMERICS_HPP_
