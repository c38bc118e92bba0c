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

#include "cploss/proper_loss.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cploss/error.hpp"

namespace cploss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a * b with the measure-theoretic convention 0 * inf = 0.
double mul0(double a, double b) { return a == 0.0 ? 0.0 : a * b; }

void check_unit(const char* what, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << what << " = " << x << " must lie in [0,1]";
    throw DomainError(msg.str());
  }
}

bool positive_on_dyadic_grid(const RealFn& w) {
  constexpr int kPoints = 1024;
  int zero_run = 0;
  for (int k = 0; k < kPoints; ++k) {
    const double c = (2.0 * k + 1.0) / (2.0 * kPoints);
    const double v = w(c);
    if (v > 0.0) {
      zero_run = 0;
    } else if (++zero_run > 2) {
      return false;
    }
  }
  return true;
}

double safe_eval(const RealFn& f, double x) {
  try {
    return f(x);
  } catch (const NumericError&) {
    return kInf;
  }
}

}  // namespace

ProperLoss::ProperLoss(Parts parts) {
  if (!parts.ell_pos || !parts.ell_neg) {
    throw DomainError("proper loss '" + parts.name + "' needs both partials");
  }
  parts_ = std::make_shared<const Parts>(std::move(parts));
}

double ProperLoss::ell_pos_prime(double etahat) const {
  if (parts_->ell_pos_prime) return parts_->ell_pos_prime(etahat);
  return finite_diff_within(parts_->ell_pos, etahat, 1, 0.0, 1.0);
}

double ProperLoss::ell_neg_prime(double etahat) const {
  if (parts_->ell_neg_prime) return parts_->ell_neg_prime(etahat);
  return finite_diff_within(parts_->ell_neg, etahat, 1, 0.0, 1.0);
}

const WeightFunction& ProperLoss::weight() const {
  if (!parts_->weight) {
    throw DomainError("proper loss '" + parts_->name + "' carries no weight");
  }
  return *parts_->weight;
}

bool ProperLoss::definite() const {
  return std::isfinite(safe_eval(parts_->ell_pos, 0.0)) &&
         std::isfinite(safe_eval(parts_->ell_neg, 1.0));
}

bool ProperLoss::regular() const {
  auto vanishes = [](double near, double nearer) {
    if (!std::isfinite(near) || !std::isfinite(nearer)) return false;
    return std::abs(nearer) <= 0.5 * std::abs(near) || std::abs(nearer) < 1e-9;
  };
  const double p4 = 1e-4 * safe_eval(parts_->ell_pos, 1e-4);
  const double p6 = 1e-6 * safe_eval(parts_->ell_pos, 1e-6);
  const double n4 = 1e-4 * safe_eval(parts_->ell_neg, 1.0 - 1e-4);
  const double n6 = 1e-6 * safe_eval(parts_->ell_neg, 1.0 - 1e-6);
  return vanishes(p4, p6) && vanishes(n4, n6);
}

ProperLoss from_weight(const WeightFunction& wf) {
  ProperLoss::Parts p;
  p.name = wf.name();
  p.weight = wf;
  p.fair = true;
  p.closed_form = true;

  RealFn neg;
  RealFn pos;
  if (!wf.has_density()) {
    neg = [](double) { return 0.0; };
    pos = [](double) { return 0.0; };
  } else if (wf.has_closed_antiderivatives()) {
    const double wbar0 = wf.Wbar(0.0);
    const double wbar1 = wf.Wbar(1.0);
    // ell_w(y, p) = -Wbar(p) - (y - p) W(p) with y in {0, 1}; the fair
    // version adds Wbar(0) to the negative and Wbar(1) to the positive
    // partial.
    double shift_neg = wbar0;
    double shift_pos = wbar1;
    if (!std::isfinite(wbar0) || !std::isfinite(wbar1)) {
      p.fair = false;
      shift_neg = 0.0;
      shift_pos = 0.0;
      p.warnings.push_back("Wbar(0) or Wbar(1) is infinite; the loss is "
                           "proper but cannot be made fair");
    }
    neg = [wf, shift_neg](double e) {
      return -wf.Wbar(e) + mul0(e, wf.W(e)) + shift_neg;
    };
    pos = [wf, shift_pos](double e) {
      return -wf.Wbar(e) - mul0(1.0 - e, wf.W(e)) + shift_pos;
    };
  } else {
    p.closed_form = false;
    neg = [wf](double e) {
      try {
        return wf.integrate_against([&](double c) { return c * wf.w(c); }, 0.0,
                                    e);
      } catch (const QuadratureError&) {
        if (e >= 1.0) return kInf;
        throw;
      }
    };
    pos = [wf](double e) {
      try {
        return wf.integrate_against(
            [&](double c) { return (1.0 - c) * wf.w(c); }, e, 1.0);
      } catch (const QuadratureError&) {
        if (e <= 0.0) return kInf;
        throw;
      }
    };
    try {
      (void)neg(0.5);
      (void)pos(0.5);
    } catch (const NumericError& e) {
      throw DomainError("weight '" + wf.name() +
                        "' does not define finite partial losses: " +
                        e.what());
    }
  }

  if (wf.has_atoms()) {
    const std::vector<Atom> atoms = wf.atoms();
    p.ell_neg = [neg, atoms](double e) {
      double v = neg(e);
      for (const Atom& a : atoms) {
        if (e >= a.location) v += a.mass * a.location;
      }
      return v;
    };
    p.ell_pos = [pos, atoms](double e) {
      double v = pos(e);
      for (const Atom& a : atoms) {
        if (e < a.location) v += a.mass * (1.0 - a.location);
      }
      return v;
    };
  } else {
    p.ell_neg = std::move(neg);
    p.ell_pos = std::move(pos);
  }

  if (wf.has_density()) {
    p.ell_neg_prime = [wf](double e) { return mul0(e, wf.w(e)); };
    p.ell_pos_prime = [wf](double e) { return -mul0(1.0 - e, wf.w(e)); };
    p.strictly_proper =
        positive_on_dyadic_grid([&](double c) { return wf.w(c); });
  } else {
    p.ell_neg_prime = [](double) { return 0.0; };
    p.ell_pos_prime = [](double) { return 0.0; };
    p.strictly_proper = false;
  }

  if (!std::isfinite(safe_eval(p.ell_pos, 0.0))) {
    p.warnings.push_back("not definite: ell_1(0) is infinite");
  }
  if (!std::isfinite(safe_eval(p.ell_neg, 1.0))) {
    p.warnings.push_back("not definite: ell_-1(1) is infinite");
  }
  return ProperLoss(std::move(p));
}

ProperLoss cost_loss(double c0) {
  return from_weight(catalog_weight("cost", {{"c0", c0}}));
}

ProperLoss catalog_loss(std::string_view weight_name, const ParamMap& params) {
  return from_weight(catalog_weight(weight_name, params));
}

double conditional_risk(const ProperLoss& loss, double eta, double etahat) {
  check_unit("eta", eta);
  check_unit("etahat", etahat);
  return mul0(eta, loss.ell_pos(etahat)) +
         mul0(1.0 - eta, loss.ell_neg(etahat));
}

double bayes_risk(const ProperLoss& loss, double eta) {
  return conditional_risk(loss, eta, eta);
}

double regret(const ProperLoss& loss, double eta, double etahat) {
  if (eta == etahat) return 0.0;
  return conditional_risk(loss, eta, etahat) - bayes_risk(loss, eta);
}

namespace {

double bayes_slope(const ProperLoss& loss, double etahat) {
  return finite_diff_within([&](double e) { return bayes_risk(loss, e); },
                            etahat, 1, 0.0, 1.0);
}

}  // namespace

double bregman_regret(const ProperLoss& loss, double eta, double etahat) {
  check_unit("eta", eta);
  check_unit("etahat", etahat);
  return -bayes_risk(loss, eta) + bayes_risk(loss, etahat) +
         (eta - etahat) * bayes_slope(loss, etahat);
}

double savage_check(const ProperLoss& loss,
                    std::span<const std::pair<double, double>> grid) {
  double worst = 0.0;
  for (const auto& [eta, etahat] : grid) {
    const double lhs = conditional_risk(loss, eta, etahat);
    const double rhs = bayes_risk(loss, etahat) +
                       (eta - etahat) * bayes_slope(loss, etahat);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

SchervishResult schervish_check(const ProperLoss& loss, Label y,
                                double etahat) {
  check_unit("etahat", etahat);
  const WeightFunction& wf = loss.weight();
  SchervishResult out;
  if (wf.has_density()) {
    RealFn integrand;
    if (y == Label::negative) {
      integrand = [&](double c) {
        return etahat >= c ? c * wf.w(c) : 0.0;
      };
    } else {
      integrand = [&](double c) {
        return etahat < c ? (1.0 - c) * wf.w(c) : 0.0;
      };
    }
    const double breaks[] = {etahat};
    try {
      out.value = integrate_piecewise(integrand, 0.0, 1.0, breaks);
    } catch (const QuadratureError&) {
      out.value = integrate_piecewise(integrand, 1e-8, 1.0 - 1e-8, breaks);
      out.truncated = true;
    }
  }
  for (const Atom& a : wf.atoms()) {
    if (y == Label::negative) {
      if (etahat >= a.location) out.value += a.mass * a.location;
    } else if (etahat < a.location) {
      out.value += a.mass * (1.0 - a.location);
    }
  }
  return out;
}

WeightFunction weight_from_loss(const ProperLoss& loss,
                                std::span<const double> grid) {
  std::vector<double> owned;
  if (grid.empty()) {
    owned = interior_grid(99);
    grid = owned;
  }
  // Quadrature-backed partials carry ~1e-10 noise, so difference wider.
  const double h = loss.closed_form() ? 0.0 : 2e-3;
  const double tol = loss.closed_form() ? 1e-6 : 1e-3;
  const RealFn bayes = [&](double e) { return bayes_risk(loss, e); };
  std::vector<std::pair<double, double>> table;
  table.reserve(grid.size());
  for (double c : grid) {
    double w = -finite_diff_within(bayes, c, 2, 0.0, 1.0, h);
    if (w < 0.0) {
      if (w < -tol * std::max(1.0, std::abs(bayes(c)))) {
        std::ostringstream msg;
        msg << "loss '" << loss.name() << "' has convex Bayes risk at c = "
            << c << " (-L'' = " << w << "); it is not proper";
        throw ImpropernessError(msg.str());
      }
      w = 0.0;
    }
    table.emplace_back(c, w);
  }
  return tabulated_weight(std::move(table), "curvature(" + loss.name() + ")");
}

ProperLoss reconstruct_symmetric(RealFn half, HalfSide side,
                                 std::optional<double> ell_neg_at_half,
                                 RealFn half_prime) {
  if (!half) throw DomainError("reconstruct_symmetric: empty half loss");
  const bool lower = side == HalfSide::lower;
  if (!half_prime) {
    half_prime = [half](double u) {
      return finite_diff_within(half, u, 1, 0.0, 1.0);
    };
  }
  const double mid = ell_neg_at_half.value_or(half(0.5));
  if (!std::isfinite(mid)) {
    throw DomainError("reconstruct_symmetric: ell_-1(1/2) must be finite");
  }
  auto specified = [lower](double p) { return lower ? p <= 0.5 : p >= 0.5; };

  ProperLoss::Parts p;
  p.name = std::string("symmetric-from-") + (lower ? "lower" : "upper");
  p.ell_neg = [=](double e) {
    if (specified(e)) return half(e);
    return mid + integrate(
                     [&](double x) { return x / (1.0 - x) * half_prime(1.0 - x); },
                     0.5, e);
  };
  p.ell_neg_prime = [=](double e) {
    if (specified(e)) return half_prime(e);
    return e / (1.0 - e) * half_prime(1.0 - e);
  };
  p.ell_pos = [neg = p.ell_neg](double e) { return neg(1.0 - e); };
  p.ell_pos_prime = [dneg = p.ell_neg_prime](double e) {
    return -dneg(1.0 - e);
  };
  const RealFn w = [dneg = p.ell_neg_prime](double c) { return dneg(c) / c; };
  for (double c : interior_grid(99)) {
    const double v = w(c);
    if (std::isnan(v) || v < -1e-9 * std::max(1.0, std::abs(v))) {
      std::ostringstream msg;
      msg << "reconstructed weight is negative at c = " << c << " (" << v
          << "); the half loss does not extend to a proper loss";
      throw ImpropernessError(msg.str());
    }
  }
  p.weight = WeightFunction(
      WeightFunction::Parts{.name = p.name + "-weight", .w = w});
  p.strictly_proper = positive_on_dyadic_grid(w);
  const double at_zero = safe_eval(p.ell_neg, 0.0);
  p.fair = std::abs(at_zero) <= 1e-12;
  p.closed_form = false;
  return ProperLoss(std::move(p));
}

}  // namespace cploss
