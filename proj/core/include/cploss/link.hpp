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

#ifndef CPLOSS_LINK_HPP_
#define CPLOSS_LINK_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cploss/numerics.hpp"
#include "cploss/weight.hpp"

namespace cploss {

// Closed interval of prediction values; either end may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

// Strictly increasing link psi: (0,1) -> range with inverse q.
//
// Missing pieces fall back to numerics: psi_second by differencing
// psi_prime, q by safeguarded Newton-bisection on psi, q_prime as
// 1 / psi_prime(q).
class Link {
 public:
  struct Parts {
    std::string name;
    RealFn psi;
    RealFn psi_prime;
    RealFn psi_second;  // optional
    RealFn q;           // optional
    RealFn q_prime;     // optional
    Interval range;
  };

  explicit Link(Parts parts);

  const std::string& name() const { return parts_->name; }
  const Interval& range() const { return parts_->range; }

  double psi(double x) const { return parts_->psi(x); }
  double psi_prime(double x) const { return parts_->psi_prime(x); }
  double psi_second(double x) const;
  double q(double v) const;
  double q_prime(double v) const;

  bool has_closed_psi_second() const {
    return static_cast<bool>(parts_->psi_second);
  }

 private:
  std::shared_ptr<const Parts> parts_;
};

// identity, logit, cll, square-link, cosine.
Link catalog_link(std::string_view name);

std::vector<std::string> catalog_link_names();

// psi = W - W(1/2), psi_prime = w. Rejects weights with atoms.
Link canonical_link(const WeightFunction& wf);

// rho = w / psi_prime.
class Rho {
 public:
  explicit Rho(RealFn rho) : rho_(std::move(rho)) {}
  double operator()(double x) const { return rho_(x); }

 private:
  RealFn rho_;
};

Rho rho_of(const WeightFunction& wf, const Link& link);

}  // namespace cploss

#endif  // CPLOSS_LINK_HPP_
