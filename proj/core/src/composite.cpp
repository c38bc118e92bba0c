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

#include "cploss/composite.hpp"

#include <charconv>
#include <optional>
#include <cmath>
#include <limits>
#include <sstream>

#include "cploss/error.hpp"

namespace cploss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mul0(double a, double b) { return a == 0.0 ? 0.0 : a * b; }

double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

bool unbounded(const Interval& r) {
  return std::isinf(r.lo) && std::isinf(r.hi);
}

std::vector<double> probe_scores(const Interval& range) {
  if (unbounded(range)) return linspace(-20.0, 20.0, 801);
  const double lo = std::isinf(range.lo) ? range.hi - 40.0 : range.lo;
  const double hi = std::isinf(range.hi) ? range.lo + 40.0 : range.hi;
  return linspace(lo, hi, 801);
}

// Link determined by its inverse q; psi by inversion unless given.
Link link_from_inverse(std::string name, RealFn q, Interval range,
                       RealFn psi_closed = {}, RealFn psi_prime_closed = {}) {
  RealFn q_prime = [q, range](double v) {
    if (unbounded(range)) return finite_diff(q, v, 1);
    return finite_diff_within(q, v, 1, range.lo, range.hi);
  };
  RealFn psi = psi_closed;
  if (!psi) {
    psi = [q, q_prime, range](double x) {
      if (x <= 0.0) return range.lo;
      if (x >= 1.0) return range.hi;
      if (unbounded(range)) return invert_increasing_unbounded(q, x, q_prime);
      return invert_increasing(q, x, range.lo, range.hi, q_prime);
    };
  }
  RealFn psi_prime = psi_prime_closed;
  if (!psi_prime) {
    psi_prime = [psi, q_prime](double x) { return 1.0 / q_prime(psi(x)); };
  }
  return Link(Link::Parts{
      .name = std::move(name),
      .psi = std::move(psi),
      .psi_prime = std::move(psi_prime),
      .psi_second = {},
      .q = std::move(q),
      .q_prime = std::move(q_prime),
      .range = range,
  });
}

}  // namespace

double pair_conditional_risk(const PartialPair& loss, double eta, double v) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("eta must lie in [0,1]");
  }
  return mul0(eta, loss.pos(v)) + mul0(1.0 - eta, loss.neg(v));
}

CompositeLoss::CompositeLoss(ProperLoss base, Link link)
    : base_(std::move(base)),
      link_(std::move(link)),
      name_(base_.name() + "+" + link_.name()) {}

CompositeLoss::CompositeLoss(ProperLoss base, Link link, std::string name,
                             RealFn pos, RealFn neg)
    : base_(std::move(base)),
      link_(std::move(link)),
      name_(std::move(name)),
      pos_(std::move(pos)),
      neg_(std::move(neg)) {}

double CompositeLoss::ell_pos(double v) const {
  if (pos_) return pos_(v);
  return base_.ell_pos(link_.q(v));
}

double CompositeLoss::ell_neg(double v) const {
  if (neg_) return neg_(v);
  return base_.ell_neg(link_.q(v));
}

double CompositeLoss::rho(double x) const {
  const WeightFunction& wf = base_.weight();
  if (wf.has_atoms()) {
    throw DomainError("rho is undefined for '" + name_ +
                      "': its weight has atoms");
  }
  return wf.w(x) / link_.psi_prime(x);
}

PartialPair CompositeLoss::partials() const {
  const CompositeLoss self = *this;
  return PartialPair{
      .name = name_,
      .pos = [self](double v) { return self.ell_pos(v); },
      .neg = [self](double v) { return self.ell_neg(v); },
  };
}

CompositeLoss make_composite(const ProperLoss& base, const Link& link) {
  return CompositeLoss(base, link);
}

double composite_conditional_risk(const CompositeLoss& cl, double eta,
                                  double v) {
  if (!cl.link().range().contains(v)) {
    std::ostringstream msg;
    msg << "score " << v << " is outside the range of link '"
        << cl.link().name() << "'";
    throw DomainError(msg.str());
  }
  return pair_conditional_risk(cl.partials(), eta, v);
}

ScoreGradients score_gradients(const CompositeLoss& cl, double v) {
  const double x = cl.link().q(v);
  const double r = cl.rho(x);
  return ScoreGradients{(x - 1.0) * r, x * r};
}

double composite_regret(const CompositeLoss& cl, double eta, double v) {
  if (!cl.link().range().contains(v)) {
    throw DomainError("score outside the link range");
  }
  return regret(cl.base(), eta, cl.link().q(v));
}

MarginLoss margin_loss(std::string_view spec) {
  if (spec == "exponential") {
    return MarginLoss{
        .name = "exponential",
        .phi = [](double v) { return std::exp(-v); },
        .phi_prime = [](double v) { return -std::exp(-v); },
    };
  }
  if (spec == "logistic") {
    return MarginLoss{
        .name = "logistic",
        .phi = [](double v) { return softplus(-v); },
        .phi_prime = [](double v) { return -sigmoid(-v); },
    };
  }
  if (spec == "hinge") {
    return MarginLoss{
        .name = "hinge",
        .phi = [](double v) { return std::max(0.0, 1.0 - v); },
        .phi_prime = [](double v) { return v < 1.0 ? -1.0 : 0.0; },
        .flat_spots = true,
    };
  }
  if (spec.starts_with("zhang:")) {
    const std::string_view text = spec.substr(6);
    double alpha = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), alpha);
    if (ec != std::errc() || ptr != text.data() + text.size() ||
        !(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("zhang margin loss needs a positive alpha, got '" +
                        std::string(text) + "'");
    }
    // phi(v) = log(exp(alpha (1 - v)) + 1) / alpha.
    return MarginLoss{
        .name = "zhang:" + std::string(text),
        .phi = [alpha](double v) { return softplus(alpha * (1.0 - v)) / alpha; },
        .phi_prime = [alpha](double v) { return -sigmoid(alpha * (1.0 - v)); },
    };
  }
  throw DomainError("unknown margin loss '" + std::string(spec) + "'");
}

Link reference_link(RealFn lam_pos_prime, RealFn lam_neg_prime,
                    Interval range, std::string name) {
  RealFn q = [lam_pos_prime, lam_neg_prime](double v) {
    const double a = lam_neg_prime(v);
    return a / (a - lam_pos_prime(v));
  };
  double previous = -kInf;
  for (double v : probe_scores(range)) {
    const double x = q(v);
    if (std::isnan(x) || x < -1e-12 || x > 1.0 + 1e-12 ||
        x < previous - 1e-12) {
      std::ostringstream msg;
      msg << "partial-loss derivatives do not define a proper composite "
             "loss: q("
          << v << ") = " << x;
      throw ImpropernessError(msg.str());
    }
    previous = x;
  }
  return link_from_inverse(std::move(name), std::move(q), range);
}

Link margin_to_link(const MarginLoss& m) {
  if (m.flat_spots) {
    throw FlatSpotError("margin loss '" + m.name +
                        "' has flat spots; its proper link is not unique");
  }
  const RealFn dphi = m.phi_prime;
  for (double v : linspace(-10.0, 10.0, 401)) {
    const double a = dphi(-v);
    const double b = dphi(v);
    if (a == 0.0 || b == 0.0 || a + b == 0.0) {
      std::ostringstream msg;
      msg << "margin loss '" << m.name << "' has phi' = 0 near v = " << v;
      throw FlatSpotError(msg.str());
    }
  }
  RealFn q = [dphi](double v) {
    const double a = dphi(-v);
    return a / (a + dphi(v));
  };
  const Interval reals{-kInf, kInf};
  if (m.name == "exponential") {
    return link_from_inverse(
        "margin(exponential)", std::move(q), reals,
        [](double x) { return 0.5 * std::log(x / (1.0 - x)); },
        [](double x) { return 0.5 / (x * (1.0 - x)); });
  }
  if (m.name == "logistic") {
    return link_from_inverse(
        "margin(logistic)", std::move(q), reals,
        [](double x) { return std::log(x / (1.0 - x)); },
        [](double x) { return 1.0 / (x * (1.0 - x)); });
  }
  return link_from_inverse("margin(" + m.name + ")", std::move(q), reals);
}

CompositeLoss margin_composite(const MarginLoss& m) {
  const Link link = margin_to_link(m);
  const RealFn phi = m.phi;
  const RealFn dphi = m.phi_prime;
  std::optional<ProperLoss> base;
  if (m.name == "exponential") {
    // phi(y psi(p)) with psi = logit/2 is half the boosting loss.
    WeightFunction wf = catalog_weight("boosting").scaled(0.5);
    base = from_weight(wf);
  } else if (m.name == "logistic") {
    base = catalog_loss("log");
  } else {
    ProperLoss::Parts p;
    p.name = "proper(" + m.name + ")";
    p.ell_pos = [phi, link](double x) { return phi(link.psi(x)); };
    p.ell_neg = [phi, link](double x) { return phi(-link.psi(x)); };
    p.ell_pos_prime = [dphi, link](double x) {
      return dphi(link.psi(x)) * link.psi_prime(x);
    };
    p.ell_neg_prime = [dphi, link](double x) {
      return -dphi(-link.psi(x)) * link.psi_prime(x);
    };
    p.weight = WeightFunction(WeightFunction::Parts{
        .name = "weight(" + m.name + ")",
        .w =
            [dphi, link](double x) {
              const double v = link.psi(x);
              return -(dphi(v) + dphi(-v)) * link.psi_prime(x);
            },
    });
    p.fair = std::abs(phi(kInf)) <= 1e-12;
    p.strictly_proper = true;
    base = ProperLoss(std::move(p));
  }
  return CompositeLoss(
      *base, link, m.name, [phi](double v) { return phi(v); },
      [phi](double v) { return phi(-v); });
}

BregmanGenerator bregman_generator(const WeightFunction& wf) {
  const Link canonical = canonical_link(wf);
  const double offset = wf.W(0.5);
  BregmanGenerator g;
  g.W = [wf](double c) { return wf.W(c); };
  g.W_inv = [canonical, offset](double s) { return canonical.q(s - offset); };
  if (wf.has_closed_antiderivatives()) {
    g.Wbar = [wf](double c) { return wf.Wbar(c); };
  }
  return g;
}

double bregman_divergence(const BregmanGenerator& g, double x, double y) {
  if (x == y) return 0.0;
  const double Wy = g.W(y);
  if (g.Wbar) return g.Wbar(x) - g.Wbar(y) - (x - y) * Wy;
  return integrate([&](double c) { return g.W(c) - Wy; }, y, x);
}

double duality_residual(const BregmanGenerator& g, double x, double y) {
  if (x == y) return 0.0;
  const double primal = bregman_divergence(g, x, y);
  const double a = g.W(y);
  const double b = g.W(x);
  double dual;
  if (g.Wbar_star) {
    dual = g.Wbar_star(a) - g.Wbar_star(b) - (a - b) * x;
  } else {
    dual = integrate([&](double s) { return g.W_inv(s) - x; }, b, a);
  }
  return std::abs(primal - dual);
}

}  // namespace cploss
