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

#include "cploss/link.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cploss/error.hpp"

namespace cploss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double clamp_unit(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

Link::Link(Parts parts) {
  if (!parts.psi || !parts.psi_prime) {
    throw DomainError("link '" + parts.name + "' needs psi and psi_prime");
  }
  if (!(parts.range.lo < parts.range.hi)) {
    throw DomainError("link '" + parts.name + "' has an empty range");
  }
  parts_ = std::make_shared<const Parts>(std::move(parts));
}

double Link::psi_second(double x) const {
  if (parts_->psi_second) return parts_->psi_second(x);
  return finite_diff_within(parts_->psi_prime, x, 1, 0.0, 1.0);
}

double Link::q(double v) const {
  if (parts_->q) return parts_->q(v);
  if (v <= parts_->range.lo) return 0.0;
  if (v >= parts_->range.hi) return 1.0;
  return invert_increasing(parts_->psi, v, 0.0, 1.0, parts_->psi_prime);
}

double Link::q_prime(double v) const {
  if (parts_->q_prime) return parts_->q_prime(v);
  return 1.0 / parts_->psi_prime(q(v));
}

std::vector<std::string> catalog_link_names() {
  return {"identity", "logit", "cll", "square-link", "cosine"};
}

Link catalog_link(std::string_view name) {
  using Parts = Link::Parts;
  if (name == "identity") {
    return Link(Parts{
        .name = "identity",
        .psi = [](double x) { return x; },
        .psi_prime = [](double) { return 1.0; },
        .psi_second = [](double) { return 0.0; },
        .q = [](double v) { return clamp_unit(v); },
        .q_prime = [](double) { return 1.0; },
        .range = {0.0, 1.0},
    });
  }
  if (name == "logit") {
    return Link(Parts{
        .name = "logit",
        .psi = [](double x) { return std::log(x / (1.0 - x)); },
        .psi_prime = [](double x) { return 1.0 / (x * (1.0 - x)); },
        .psi_second =
            [](double x) {
              const double s = x * (1.0 - x);
              return (2.0 * x - 1.0) / (s * s);
            },
        .q = [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
        .q_prime =
            [](double v) {
              const double q = 1.0 / (1.0 + std::exp(-v));
              return q * (1.0 - q);
            },
        .range = {-kInf, kInf},
    });
  }
  if (name == "cll") {
    // psi(x) = log(-log(1-x)); with g = -log(1-x), psi' = 1/((1-x) g).
    return Link(Parts{
        .name = "cll",
        .psi = [](double x) { return std::log(-std::log1p(-x)); },
        .psi_prime =
            [](double x) { return 1.0 / ((1.0 - x) * -std::log1p(-x)); },
        .psi_second =
            [](double x) {
              const double g = -std::log1p(-x);
              const double d = (1.0 - x) * g;
              return (g - 1.0) / (d * d);
            },
        .q = [](double v) { return -std::expm1(-std::exp(v)); },
        .q_prime = [](double v) { return std::exp(v - std::exp(v)); },
        .range = {-kInf, kInf},
    });
  }
  if (name == "square-link") {
    return Link(Parts{
        .name = "square-link",
        .psi = [](double x) { return x * x; },
        .psi_prime = [](double x) { return 2.0 * x; },
        .psi_second = [](double) { return 2.0; },
        .q = [](double v) { return std::sqrt(clamp_unit(v)); },
        .q_prime = [](double v) { return 0.5 / std::sqrt(v); },
        .range = {0.0, 1.0},
    });
  }
  if (name == "cosine") {
    // psi(x) = 1 - cos(pi x), written as 2 sin^2(pi x / 2) for accuracy
    // near zero.
    return Link(Parts{
        .name = "cosine",
        .psi =
            [](double x) {
              const double s = std::sin(0.5 * kPi * x);
              return 2.0 * s * s;
            },
        .psi_prime = [](double x) { return kPi * std::sin(kPi * x); },
        .psi_second = [](double x) { return kPi * kPi * std::cos(kPi * x); },
        .q =
            [](double v) {
              const double s = std::sqrt(std::min(1.0, std::max(0.0, 0.5 * v)));
              return 2.0 / kPi * std::asin(s);
            },
        .q_prime = {},
        .range = {0.0, 2.0},
    });
  }
  throw DomainError("unknown link '" + std::string(name) + "'");
}

Link canonical_link(const WeightFunction& wf) {
  if (wf.has_atoms()) {
    throw DomainError("canonical link of weight '" + wf.name() +
                      "' is undefined: weight has atoms");
  }
  if (!wf.has_density()) {
    throw DomainError("canonical link needs a weight density");
  }
  const double offset = wf.W(0.5);
  RealFn psi = [wf, offset](double x) { return wf.W(x) - offset; };
  auto end_value = [&](double x, double fallback) {
    try {
      const double v = psi(x);
      return std::isnan(v) ? fallback : v;
    } catch (const NumericError&) {
      return fallback;
    }
  };
  const Interval range{end_value(0.0, -kInf), end_value(1.0, kInf)};
  RealFn psi_prime = [wf](double x) { return wf.w(x); };
  RealFn psi_second = [wf](double x) { return wf.w_prime(x); };
  RealFn q = [psi, psi_prime, range](double v) {
    if (v <= range.lo) return 0.0;
    if (v >= range.hi) return 1.0;
    return invert_increasing(psi, v, 0.0, 1.0, psi_prime);
  };
  return Link(Link::Parts{
      .name = "canonical(" + wf.name() + ")",
      .psi = std::move(psi),
      .psi_prime = std::move(psi_prime),
      .psi_second = std::move(psi_second),
      .q = std::move(q),
      .q_prime = {},
      .range = range,
  });
}

Rho rho_of(const WeightFunction& wf, const Link& link) {
  if (wf.has_atoms()) {
    throw DomainError("rho is undefined for weight '" + wf.name() +
                      "' with atoms");
  }
  return Rho([wf, link](double x) { return wf.w(x) / link.psi_prime(x); });
}

}  // namespace cploss
