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

#include "cploss/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cploss/error.hpp"

namespace cploss {

ProperCheck check_proper(const RealFn& ell_pos, const RealFn& ell_neg,
                         std::span<const double> grid, double tol) {
  if (grid.empty()) throw DomainError("check_proper: empty grid");
  bool proper = true;
  double worst = 0.0;
  std::vector<std::pair<double, double>> table;
  table.reserve(grid.size());
  for (double p : grid) {
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("check_proper: grid points must be interior");
    }
    const double from_pos =
        -finite_diff_within(ell_pos, p, 1, 0.0, 1.0) / (1.0 - p);
    const double from_neg = finite_diff_within(ell_neg, p, 1, 0.0, 1.0) / p;
    const double scale =
        std::max({1.0, std::abs(from_pos), std::abs(from_neg)});
    const double residual = std::abs(from_pos - from_neg) / scale;
    if (!std::isfinite(residual)) {
      proper = false;
      worst = std::numeric_limits<double>::infinity();
      table.emplace_back(p, 0.0);
      continue;
    }
    worst = std::max(worst, residual);
    const double w = 0.5 * (from_pos + from_neg);
    if (residual > tol || w < -tol * scale) proper = false;
    table.emplace_back(p, std::max(0.0, w));
  }
  if (table.size() < 2) {
    table.emplace_back(std::min(1.0, table.front().first + 1e-9),
                       table.front().second);
  }
  return ProperCheck{proper, tabulated_weight(std::move(table), "shuford"),
                     worst};
}

ConvexityReport convexity_characterization(const WeightFunction& wf,
                                           const Link& link,
                                           std::span<const double> grid,
                                           double tol, bool probe_boundary) {
  if (wf.has_atoms() || !wf.has_density()) {
    throw DomainError("convexity characterization needs an atom-free weight "
                      "density, got '" + wf.name() + "'");
  }
  std::vector<double> xs(grid.begin(), grid.end());
  if (probe_boundary) {
    for (double x : {1e-4, 1e-3, 1.0 - 1e-3, 1.0 - 1e-4}) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const RealFn log_w = [&](double c) { return std::log(wf.w(c)); };
  ConvexityReport report;
  report.method = ConvexityMethod::characterization;
  for (double x : xs) {
    const double w = wf.w(x);
    if (!(w > 0.0)) {
      std::ostringstream msg;
      msg << "weight '" << wf.name() << "' is not strictly positive at x = "
          << x << "; the characterization needs a strictly proper loss";
      throw DomainError(msg.str());
    }
    const double dlog_w = wf.has_closed_w_prime()
                              ? wf.w_prime(x) / w
                              : finite_diff_within(log_w, x, 1, 0.0, 1.0);
    const double value = dlog_w - link.psi_second(x) / link.psi_prime(x);
    const double lower = -1.0 / x;
    const double upper = 1.0 / (1.0 - x);
    if (value < lower - tol * std::max(1.0, std::abs(lower))) {
      report.violations.push_back({x, BoundSide::lower, lower, value});
    }
    if (value > upper + tol * std::max(1.0, std::abs(upper))) {
      report.violations.push_back({x, BoundSide::upper, value, upper});
    }
  }
  report.convex = report.violations.empty();
  return report;
}

ConvexityReport convexity_oracle(const CompositeLoss& cl,
                                 std::span<const double> score_grid,
                                 double tol) {
  ConvexityReport report;
  report.method = ConvexityMethod::oracle;
  if (score_grid.size() < 3) return report;
  for (Label y : {Label::negative, Label::positive}) {
    std::vector<double> f(score_grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = cl.ell(y, score_grid[i]);
    double prev_slope = std::nan("");
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      const double dv = score_grid[i + 1] - score_grid[i];
      const double slope = (f[i + 1] - f[i]) / dv;
      if (!std::isfinite(slope) || !(dv > 0.0)) {
        prev_slope = std::nan("");
        continue;
      }
      if (std::isfinite(prev_slope)) {
        const double increment = slope - prev_slope;
        const double threshold =
            -tol * std::max({1.0, std::abs(slope), std::abs(prev_slope)});
        if (increment < threshold) {
          report.violations.push_back(
              {cl.link().q(score_grid[i]),
               y == Label::negative ? BoundSide::lower : BoundSide::upper,
               increment, threshold});
        }
      }
      prev_slope = slope;
    }
  }
  report.convex = report.violations.empty();
  return report;
}

std::vector<double> score_grid_for(const Link& link,
                                   std::span<const double> grid) {
  std::vector<double> scores;
  scores.reserve(grid.size());
  for (double x : grid) scores.push_back(link.psi(x));
  return scores;
}

RegionCurve allowable_region(const Link& link, std::span<const double> grid) {
  const double mid = link.psi_prime(0.5);
  if (!(mid != 0.0) || !std::isfinite(mid)) {
    throw DomainError("allowable region needs psi'(1/2) finite and nonzero");
  }
  RegionCurve region;
  for (double x : grid) {
    const double d = link.psi_prime(x);
    region.xs.push_back(x);
    const double a = d / (2.0 * mid * x);
    const double b = d / (2.0 * mid * (1.0 - x));
    region.lower.push_back(std::min(a, b));
    region.upper.push_back(std::max(a, b));
  }
  return region;
}

bool inside_region(const WeightFunction& wf, const RegionCurve& region,
                   double tol) {
  const WeightFunction normalized = normalize_weight(wf);
  for (std::size_t i = 0; i < region.xs.size(); ++i) {
    const double w = normalized.w(region.xs[i]);
    const double lo = region.lower[i];
    const double hi = region.upper[i];
    if (w < lo - tol * std::max(1.0, lo) || w > hi + tol * std::max(1.0, hi)) {
      return false;
    }
  }
  return true;
}

std::string to_string(Calibration c) {
  switch (c) {
    case Calibration::calibrated: return "calibrated";
    case Calibration::not_calibrated: return "not-calibrated";
    case Calibration::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Calibration calibration_cc(const ProperLoss& loss, double c) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("c must lie in (0,1)");
  if (!loss.has_weight()) {
    return calibration_cc([&](double p) { return loss.ell_pos(p); },
                          [&](double p) { return loss.ell_neg(p); }, c);
  }
  const WeightFunction& wf = loss.weight();
  for (const Atom& a : wf.atoms()) {
    if (std::abs(a.location - c) <= 1e-12) return Calibration::calibrated;
  }
  if (!wf.has_density()) return Calibration::not_calibrated;
  return wf.w(c) > 0.0 ? Calibration::calibrated : Calibration::not_calibrated;
}

Calibration calibration_cc(const RealFn& ell_pos, const RealFn& ell_neg,
                           double c, double tol) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("c must lie in (0,1)");
  const double d_pos = finite_diff_within(ell_pos, c, 1, 0.0, 1.0);
  const double d_neg = finite_diff_within(ell_neg, c, 1, 0.0, 1.0);
  const double scale = std::max(std::abs(d_pos), std::abs(d_neg));
  if (!std::isfinite(scale)) return Calibration::indeterminate;
  // Signs of derivatives within round-off of zero cannot be trusted.
  const double zero = 1e-9 * std::max(1.0, scale);
  if (std::abs(d_pos) <= zero || std::abs(d_neg) <= zero) {
    return Calibration::indeterminate;
  }
  if (!(d_neg > 0.0 && d_pos < 0.0)) return Calibration::not_calibrated;
  const double stationarity = c * d_pos + (1.0 - c) * d_neg;
  return std::abs(stationarity) <= tol * std::abs(d_neg)
             ? Calibration::calibrated
             : Calibration::not_calibrated;
}

Calibration calibration_composite(const CompositeLoss& cl, double c) {
  return calibration_cc(cl.base(), c);
}

}  // namespace cploss
