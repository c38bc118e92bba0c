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

#include "cploss/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cploss/error.hpp"

namespace cploss {

NoiseLevel::NoiseLevel(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    std::ostringstream msg;
    msg << "noise level " << alpha << " must lie in [0, 1/2)";
    throw DomainError(msg.str());
  }
}

double corrupt(double eta, NoiseLevel alpha) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0,1]");
  const double a = alpha.alpha();
  return a * (1.0 - eta) + (1.0 - a) * eta;
}

PartialPair noisy_loss(const PartialPair& loss, NoiseLevel alpha) {
  const double a = alpha.alpha();
  const RealFn pos = loss.pos;
  const RealFn neg = loss.neg;
  if (a == 0.0) return loss;
  return PartialPair{
      .name = loss.name + "~noisy",
      .pos = [a, pos, neg](double v) {
        return (1.0 - a) * pos(v) + a * neg(v);
      },
      .neg = [a, pos, neg](double v) {
        return (1.0 - a) * neg(v) + a * pos(v);
      },
  };
}

PartialPair noisy_loss(const CompositeLoss& cl, NoiseLevel alpha) {
  return noisy_loss(cl.partials(), alpha);
}

std::vector<double> minimizer_set(const PartialPair& loss, double eta,
                                  std::span<const double> grid, double slack) {
  std::vector<double> risks(grid.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    risks[i] = pair_conditional_risk(loss, eta, grid[i]);
    if (risks[i] < best) best = risks[i];
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (risks[i] <= best + slack) out.push_back(grid[i]);
  }
  return out;
}

std::vector<double> minimizer_set(const ProperLoss& loss, double eta,
                                  std::span<const double> grid) {
  const PartialPair pair{
      .name = loss.name(),
      .pos = [&](double p) { return loss.ell_pos(p); },
      .neg = [&](double p) { return loss.ell_neg(p); },
  };
  const bool plateaus = loss.has_weight() && !loss.weight().has_density();
  if (plateaus) return minimizer_set(pair, eta, grid, 1e-12);
  double best = std::numeric_limits<double>::infinity();
  for (double p : grid) {
    best = std::min(best, pair_conditional_risk(pair, eta, p));
  }
  return minimizer_set(pair, eta, grid, 1e-9 * (1.0 + std::abs(best)));
}

bool sets_intersect(std::span<const double> a, std::span<const double> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

RobustInterval cost_robust_interval(double c0, NoiseLevel alpha) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw DomainError("c0 must lie in (0,1)");
  const double a = alpha.alpha();
  const double moved = (c0 - a) / (1.0 - 2.0 * a);
  RobustInterval out;
  out.c0 = c0;
  out.alpha = a;
  if (c0 < 0.5) {
    out.interval = RealInterval{moved, c0, true, false};
  } else {
    out.interval = RealInterval{c0, moved, true, false};
  }
  return out;
}

namespace {

// Union over c in [a, b] of the cost-loss intervals, split at 1/2.
void add_stretch(double a, double b, double alpha,
                 std::vector<RealInterval>& out) {
  const double scale = 1.0 - 2.0 * alpha;
  if (a < 0.5) {
    // c in [a, min(b, 1/2)): left ends (c - alpha)/scale and right ends c
    // both increase and consecutive intervals overlap.
    const double top = std::min(b, 0.5);
    RealInterval piece{(a - alpha) / scale, top, true, false};
    if (!piece.empty()) out.push_back(piece);
  }
  if (b > 0.5 || (b == 0.5 && a == 0.5)) {
    const double start = std::max(a, 0.5);
    // At c = 1/2 the interval [c, c) is empty, so a stretch reaching down
    // to 1/2 leaves 1/2 itself uncovered.
    RealInterval piece{start, (b - alpha) / scale, start > 0.5, false};
    if (!piece.empty()) out.push_back(piece);
  }
}

}  // namespace

std::vector<RealInterval> proper_nonrobust_region(const WeightFunction& wf,
                                                  NoiseLevel alpha,
                                                  std::span<const double> grid) {
  std::vector<double> cs(grid.begin(), grid.end());
  std::sort(cs.begin(), cs.end());
  const double a = alpha.alpha();
  std::vector<RealInterval> pieces;
  if (a > 0.0) {
    if (wf.has_density()) {
      std::size_t i = 0;
      while (i < cs.size()) {
        if (!(wf.w(cs[i]) > 0.0)) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j + 1 < cs.size() && wf.w(cs[j + 1]) > 0.0) ++j;
        add_stretch(cs[i], cs[j], a, pieces);
        i = j + 1;
      }
    }
    for (const Atom& atom : wf.atoms()) {
      const RealInterval iv = cost_robust_interval(atom.location, alpha).interval;
      if (!iv.empty()) pieces.push_back(iv);
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const RealInterval& x, const RealInterval& y) {
              return x.lo < y.lo || (x.lo == y.lo && x.lo_closed && !y.lo_closed);
            });

  double step = 0.0;
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    step = std::max(step, cs[i + 1] - cs[i]);
  }
  std::vector<RealInterval> merged;
  for (const RealInterval& p : pieces) {
    if (merged.empty()) {
      merged.push_back(p);
      continue;
    }
    RealInterval& cur = merged.back();
    const double gap = p.lo - cur.hi;
    const bool joins = gap < 0.0 ||
                       (gap == 0.0 && (cur.hi_closed || p.lo_closed)) ||
                       (gap > 0.0 && gap < step);
    if (!joins) {
      merged.push_back(p);
      continue;
    }
    if (p.hi > cur.hi || (p.hi == cur.hi && p.hi_closed)) {
      cur.hi = p.hi;
      cur.hi_closed = p.hi_closed;
    }
  }
  // Only eta in [0,1] is meaningful.
  for (RealInterval& r : merged) {
    if (r.lo < 0.0) r = {0.0, r.hi, true, r.hi_closed};
    if (r.hi > 1.0) r = {r.lo, 1.0, r.lo_closed, true};
  }
  return merged;
}

bool covered(std::span<const RealInterval> region, double eta) {
  return std::any_of(region.begin(), region.end(),
                     [eta](const RealInterval& r) { return r.contains(eta); });
}

}  // namespace cploss
