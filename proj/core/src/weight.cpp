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

#include "cploss/weight.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cploss/error.hpp"
#include "cploss/expression.hpp"

namespace cploss {

WeightFunction::WeightFunction(Parts parts) {
  for (const Atom& a : parts.atoms) {
    if (!(a.location > 0.0 && a.location < 1.0) || !(a.mass > 0.0)) {
      throw DomainError("weight '" + parts.name +
                        "': atoms need a location in (0,1) and positive mass");
    }
  }
  parts_ = std::make_shared<const Parts>(std::move(parts));
}

double WeightFunction::w(double c) const {
  return parts_->w ? parts_->w(c) : 0.0;
}

double WeightFunction::w_prime(double c) const {
  if (parts_->w_prime) return parts_->w_prime(c);
  if (!parts_->w) return 0.0;
  return finite_diff_within(parts_->w, c, 1, 0.0, 1.0);
}

double WeightFunction::integrate_against(const RealFn& f, double a,
                                         double b) const {
  return integrate_piecewise(f, a, b, parts_->breakpoints);
}

double WeightFunction::W(double c) const {
  if (parts_->W) return parts_->W(c);
  if (!parts_->w) return 0.0;
  return integrate_against(parts_->w, 0.5, c);
}

double WeightFunction::Wbar(double c) const {
  if (parts_->Wbar) return parts_->Wbar(c);
  if (!parts_->w) return 0.0;
  const RealFn& w = parts_->w;
  // Wbar(c) = int_{1/2}^c W(s) ds = int_{1/2}^c (c - t) w(t) dt.
  return integrate_against([&](double t) { return (c - t) * w(t); }, 0.5, c);
}

WeightFunction WeightFunction::scaled(double k) const {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("weight scale factor must be positive and finite");
  }
  Parts p = *parts_;
  auto scale = [k](RealFn f) -> RealFn {
    if (!f) return f;
    return [k, f = std::move(f)](double c) { return k * f(c); };
  };
  p.w = scale(std::move(p.w));
  p.w_prime = scale(std::move(p.w_prime));
  p.W = scale(std::move(p.W));
  p.Wbar = scale(std::move(p.Wbar));
  for (Atom& a : p.atoms) a.mass *= k;
  return WeightFunction(std::move(p));
}

bool WeightFunction::is_symmetric(int grid_points, double tol) const {
  if (parts_->w) {
    for (double c : interior_grid(grid_points)) {
      const double a = parts_->w(c);
      const double b = parts_->w(1.0 - c);
      if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
    }
  }
  for (const Atom& a : parts_->atoms) {
    const bool mirrored = std::any_of(
        parts_->atoms.begin(), parts_->atoms.end(), [&](const Atom& b) {
          return std::abs(b.location - (1.0 - a.location)) <= tol &&
                 std::abs(b.mass - a.mass) <= tol * a.mass;
        });
    if (!mirrored) return false;
  }
  return true;
}

namespace {

using Parts = WeightFunction::Parts;

double parse_cost_location(std::string_view name, const ParamMap& params) {
  if (name == "cost") {
    const auto it = params.find("c0");
    if (it == params.end()) throw DomainError("cost weight needs param c0");
    return it->second;
  }
  // "cost(0.3)"
  const std::string_view inner = name.substr(5, name.size() - 6);
  double c0 = 0.0;
  const auto [ptr, ec] =
      std::from_chars(inner.data(), inner.data() + inner.size(), c0);
  if (ec != std::errc() || ptr != inner.data() + inner.size()) {
    throw DomainError("malformed cost weight '" + std::string(name) + "'");
  }
  return c0;
}

WeightFunction cost_weight(double c0) {
  if (!(c0 > 0.0 && c0 < 1.0)) {
    std::ostringstream msg;
    msg << "cost weight location c0 = " << c0 << " must lie in (0,1)";
    throw DomainError(msg.str());
  }
  std::ostringstream name;
  name << "cost(" << c0 << ")";
  return WeightFunction(Parts{.name = name.str(), .atoms = {{c0, 1.0}}});
}

}  // namespace

std::vector<std::string> catalog_weight_names() {
  return {"zero-one", "cost",     "square",      "log",
          "boosting", "w1-over-c", "w1-over-1mc", "minimal"};
}

WeightFunction catalog_weight(std::string_view name, const ParamMap& params) {
  if (name == "zero-one") {
    return WeightFunction(Parts{.name = "zero-one", .atoms = {{0.5, 2.0}}});
  }
  if (name == "cost" || (name.starts_with("cost(") && name.ends_with(")"))) {
    return cost_weight(parse_cost_location(name, params));
  }
  if (name == "square") {
    return WeightFunction(Parts{
        .name = "square",
        .w = [](double) { return 1.0; },
        .w_prime = [](double) { return 0.0; },
        .W = [](double c) { return c; },
        .Wbar = [](double c) { return 0.5 * c * c; },
    });
  }
  if (name == "log") {
    return WeightFunction(Parts{
        .name = "log",
        .w = [](double c) { return 1.0 / (c * (1.0 - c)); },
        .w_prime =
            [](double c) {
              const double s = c * (1.0 - c);
              return (2.0 * c - 1.0) / (s * s);
            },
        .W = [](double c) { return std::log(c / (1.0 - c)); },
        .Wbar = [](double c) { return xlogy(c, c) + xlogy(1.0 - c, 1.0 - c); },
    });
  }
  if (name == "boosting") {
    return WeightFunction(Parts{
        .name = "boosting",
        .w = [](double c) { return std::pow(c * (1.0 - c), -1.5); },
        .w_prime =
            [](double c) {
              return 1.5 * (2.0 * c - 1.0) * std::pow(c * (1.0 - c), -2.5);
            },
        .W = [](double c) {
          return 2.0 * (2.0 * c - 1.0) / std::sqrt(c * (1.0 - c));
        },
        .Wbar = [](double c) { return -4.0 * std::sqrt(c * (1.0 - c)); },
    });
  }
  if (name == "w1-over-c") {
    return WeightFunction(Parts{
        .name = "w1-over-c",
        .w = [](double c) { return 1.0 / c; },
        .w_prime = [](double c) { return -1.0 / (c * c); },
        .W = [](double c) { return std::log(c); },
        .Wbar = [](double c) { return xlogy(c, c) - c; },
    });
  }
  if (name == "w1-over-1mc") {
    return WeightFunction(Parts{
        .name = "w1-over-1mc",
        .w = [](double c) { return 1.0 / (1.0 - c); },
        .w_prime = [](double c) { return 1.0 / ((1.0 - c) * (1.0 - c)); },
        .W = [](double c) { return -std::log1p(-c); },
        .Wbar = [](double c) { return xlogy(1.0 - c, 1.0 - c) + c; },
    });
  }
  if (name == "minimal") {
    // w(c) = (1/2) min(1/c, 1/(1-c)).
    return WeightFunction(Parts{
        .name = "minimal",
        .w = [](double c) { return c < 0.5 ? 0.5 / (1.0 - c) : 0.5 / c; },
        .w_prime =
            [](double c) {
              return c < 0.5 ? 0.5 / ((1.0 - c) * (1.0 - c)) : -0.5 / (c * c);
            },
        .W = [](double c) {
          return c < 0.5 ? -0.5 * std::log(2.0 * (1.0 - c))
                         : 0.5 * std::log(2.0 * c);
        },
        .Wbar = [](double c) {
          if (c < 0.5) {
            const double u = 1.0 - c;
            return 0.5 * (xlogy(u, 2.0 * u) - u) + 0.25;
          }
          return 0.5 * (xlogy(c, 2.0 * c) - c) + 0.25;
        },
        .breakpoints = {0.5},
    });
  }
  throw DomainError("unknown weight '" + std::string(name) + "'");
}

WeightFunction tabulated_weight(std::vector<std::pair<double, double>> table,
                                std::string name) {
  if (table.size() < 2) {
    throw DomainError("tabulated weight needs at least two (c, w) pairs");
  }
  std::sort(table.begin(), table.end());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [c, w] = table[i];
    if (!(c >= 0.0 && c <= 1.0) || !(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("tabulated weight entries need c in [0,1], finite w >= 0");
    }
    if (i > 0 && c == table[i - 1].first) {
      throw DomainError("tabulated weight has duplicate abscissa");
    }
  }
  std::vector<double> knots;
  for (const auto& [c, w] : table) knots.push_back(c);
  auto data =
      std::make_shared<const std::vector<std::pair<double, double>>>(
          std::move(table));
  return WeightFunction(Parts{
      .name = std::move(name),
      .w = [data](double c) {
        const auto& t = *data;
        if (c <= t.front().first) return t.front().second;
        if (c >= t.back().first) return t.back().second;
        const auto hi = std::upper_bound(
            t.begin(), t.end(), c,
            [](double v, const auto& p) { return v < p.first; });
        const auto lo = hi - 1;
        const double s = (c - lo->first) / (hi->first - lo->first);
        return lo->second + s * (hi->second - lo->second);
      },
      .breakpoints = std::move(knots),
  });
}

WeightFunction expression_weight(std::string_view text) {
  const Expression expr = Expression::compile(text, "c");
  return WeightFunction(Parts{
      .name = "expr:" + std::string(text),
      .w = [expr](double c) { return expr(c); },
  });
}

WeightFunction normalize_weight(const WeightFunction& wf) {
  for (const Atom& a : wf.atoms()) {
    if (a.location == 0.5) {
      throw DomainError("cannot normalize a weight with an atom at 1/2");
    }
  }
  const double mid = wf.w(0.5);
  if (!(mid > 0.0) || !std::isfinite(mid)) {
    throw DomainError("cannot normalize: w(1/2) must be finite and positive");
  }
  return wf.scaled(1.0 / mid);
}

void validate_weight(const WeightFunction& wf) {
  if (!wf.has_density()) return;
  const auto grid = interior_grid(99);
  for (double c : grid) {
    const double v = wf.w(c);
    if (std::isnan(v) || v < 0.0) {
      std::ostringstream msg;
      msg << "weight '" << wf.name() << "' is negative or undefined at c = "
          << c;
      throw DomainError(msg.str());
    }
  }
  try {
    const double mass =
        integrate([&](double c) { return wf.w(c); }, 1e-3, 1.0 - 1e-3);
    if (!std::isfinite(mass)) throw NumericError("non-finite mass");
  } catch (const NumericError& e) {
    throw DomainError("weight '" + wf.name() +
                      "' is not integrable on [1e-3, 1-1e-3]: " + e.what());
  }
  if (!wf.has_closed_antiderivatives()) return;
  const RealFn W = [&](double c) { return wf.W(c); };
  const RealFn Wbar = [&](double c) { return wf.Wbar(c); };
  for (int k = 1; k <= 19; ++k) {
    const double c = 0.05 * k;
    const double dW = finite_diff(W, c, 1);
    const double dWbar = finite_diff(Wbar, c, 1);
    const double w = wf.w(c);
    const double Wc = wf.W(c);
    if (std::abs(dW - w) > 1e-5 * std::max(1.0, std::abs(w)) ||
        std::abs(dWbar - Wc) > 1e-5 * std::max(1.0, std::abs(Wc))) {
      std::ostringstream msg;
      msg << "weight '" << wf.name()
          << "': antiderivatives inconsistent with w at c = " << c;
      throw DomainError(msg.str());
    }
  }
}

}  // namespace cploss
