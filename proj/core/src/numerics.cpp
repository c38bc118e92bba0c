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

#include "cploss/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cploss/error.hpp"

namespace cploss {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double result = 0.0;
  double error = 0.0;
  int depth = 0;
};

bool operator<(const Segment& a, const Segment& b) { return a.error < b.error; }

// Integrand after the substitution x = a + (b - a) s(t), s(t) = 3t^2 - 2t^3,
// whose Jacobian vanishes at both ends and smooths endpoint singularities.
class SmoothedIntegrand {
 public:
  SmoothedIntegrand(const RealFn& f, double a, double b, double shrink)
      : f_(f), a_(a), b_(b), width_(b - a), delta_(shrink * (b - a)) {}

  double operator()(double t) const {
    double x;
    if (t <= 0.5) {
      x = a_ + width_ * (t * t * (3.0 - 2.0 * t));
    } else {
      const double u = 1.0 - t;
      x = b_ - width_ * (u * u * (3.0 - 2.0 * u));
    }
    if (x <= a_) x = std::max(a_ + delta_, std::nextafter(a_, b_));
    if (x >= b_) x = std::min(b_ - delta_, std::nextafter(b_, a_));
    const double fx = f_(x);
    if (std::isnan(fx)) {
      std::ostringstream msg;
      msg << "integrand returned NaN at x = " << x;
      throw NumericError(msg.str());
    }
    if (std::isinf(fx)) {
      std::ostringstream msg;
      msg << "integrand is infinite at x = " << x;
      throw DivergentIntegralError(msg.str(), fx);
    }
    const double jacobian = width_ * 6.0 * t * (1.0 - t);
    return jacobian == 0.0 ? 0.0 : fx * jacobian;
  }

 private:
  const RealFn& f_;
  double a_, b_, width_, delta_;
};

Segment gauss_kronrod(const SmoothedIntegrand& g, double lo, double hi,
                      int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.depth = depth;
  s.result = kronrod * half;
  // The estimate cannot beat the rounding level of the rule itself.
  s.error = std::max(std::abs((kronrod - gauss) * half),
                     50.0 * kEps * abs_sum * half);
  return s;
}

}  // namespace

double integrate(const RealFn& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_depth < 1) {
    throw DomainError("integrate: tolerances must be positive and max_depth >= 1");
  }
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate: NaN limit");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, spec);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: limits must be finite");
  }

  const SmoothedIntegrand g(f, a, b, spec.endpoint_shrink);
  std::vector<Segment> heap;
  heap.reserve(64);
  heap.push_back(gauss_kronrod(g, 0.0, 1.0, 0));
  std::vector<Segment> finished;  // segments that may not be split further

  auto totals = [&]() {
    double result = 0.0;
    double error = 0.0;
    for (const Segment& s : heap) {
      result += s.result;
      error += s.error;
    }
    for (const Segment& s : finished) {
      result += s.result;
      error += s.error;
    }
    return std::pair{result, error};
  };

  while (true) {
    const auto [result, error] = totals();
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
    if (error <= tol) return result;
    if (heap.empty() ||
        static_cast<int>(heap.size() + finished.size()) >= spec.max_intervals) {
      std::ostringstream msg;
      msg << "integrate: no convergence on [" << a << ", " << b
          << "], estimate " << result << " +/- " << error;
      throw QuadratureError(msg.str(), result, error);
    }
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.depth >= spec.max_depth || mid <= worst.lo || mid >= worst.hi) {
      finished.push_back(worst);
      continue;
    }
    heap.push_back(gauss_kronrod(g, worst.lo, mid, worst.depth + 1));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(gauss_kronrod(g, mid, worst.hi, worst.depth + 1));
    std::push_heap(heap.begin(), heap.end());
  }
}

double integrate_piecewise(const RealFn& f, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadratureSpec& spec) {
  if (a > b) return -integrate_piecewise(f, b, a, breakpoints, spec);
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);
  QuadratureSpec piece = spec;
  piece.abs_tol = spec.abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], piece);
  }
  return total;
}

MinimizeResult minimize_scalar(const RealFn& f, double lo, double hi,
                               double tol, int max_iterations) {
  if (!(tol > 0.0)) throw DomainError("minimize_scalar: tol must be positive");
  if (!(lo < hi)) throw DomainError("minimize_scalar: requires lo < hi");

  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  double a = lo;
  double b = hi;
  double x = a + golden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  MinimizeResult out;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol / 3.0 + 2.0 * kEps * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
      out.converged = true;
      break;
    }
    bool golden_step = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      const double e_prev = e;
      e = d;
      if (std::isfinite(p) && std::isfinite(q) &&
          std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }
    const double u =
        x + (std::abs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  out.iterations = iter;
  out.argmin = x;
  out.min_value = fx;

  // Boundary optima: the interior iterate only approaches an endpoint.
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo <= out.min_value) {
    out.argmin = lo;
    out.min_value = flo;
  }
  if (fhi < out.min_value) {
    out.argmin = hi;
    out.min_value = fhi;
  }
  return out;
}

double lambert_w0(double z) {
  if (std::isnan(z)) throw DomainError("lambert_w0: NaN argument");
  // 1 + e z vanishes at the branch point; within rounding of it z cannot be
  // told apart from -1/e.
  const double branch = std::fma(std::numbers::e, z, 1.0);
  if (std::abs(branch) <= 4.0 * kEps) return -1.0;
  if (branch < 0.0) {
    std::ostringstream msg;
    msg << "lambert_w0: argument " << z << " is below -1/e";
    throw DomainError(msg.str());
  }
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return kInf;

  double w;
  if (z < -0.25) {
    // Series about the branch point in p = sqrt(2 (1 + e z)).
    const double p = std::sqrt(2.0 * branch);
    w = -1.0 +
        p * (1.0 + p * (-1.0 / 3.0 +
                        p * (11.0 / 72.0 +
                             p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
    if (p < 1e-3) return w;
  } else if (z < 3.0) {
    const double l = std::log1p(z);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double residual = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0 || residual == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * residual / (2.0 * wp1);
    const double step = residual / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double finite_diff(const RealFn& f, double x, int order, double h) {
  if (order != 1 && order != 2) {
    throw DomainError("finite_diff: order must be 1 or 2");
  }
  if (!(h > 0.0)) h = 1e-5 * std::max(1.0, std::abs(x));
  const double fm2 = f(x - 2.0 * h);
  const double fm1 = f(x - h);
  const double fp1 = f(x + h);
  const double fp2 = f(x + 2.0 * h);
  if (order == 1) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  }
  const double f0 = f(x);
  return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

double finite_diff_within(const RealFn& f, double x, int order, double lo,
                          double hi, double h) {
  if (!(h > 0.0)) h = 1e-5 * std::max(1.0, std::abs(x));
  h = std::min({h, 0.5 * (x - lo), 0.5 * (hi - x)});
  if (!(h > 0.0)) {
    throw DomainError("finite_diff_within: x must lie strictly inside [lo, hi]");
  }
  return finite_diff(f, x, order, h);
}

double invert_increasing(const RealFn& f, double target, double lo, double hi,
                         const RealFn& fprime, double xtol) {
  if (!(lo < hi)) throw DomainError("invert_increasing: requires lo < hi");
  double a = lo;
  double b = hi;
  double x = 0.5 * (a + b);
  for (int i = 0; i < 400; ++i) {
    const double fx = f(x) - target;
    if (std::isnan(fx)) throw NumericError("invert_increasing: NaN value");
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      a = x;
    } else {
      b = x;
    }
    if (b - a <= xtol * std::max(std::abs(x), 1e-300)) break;
    double next = 0.5 * (a + b);
    if (fprime) {
      const double d = fprime(x);
      if (d > 0.0 && std::isfinite(d) && std::isfinite(fx)) {
        const double newton = x - fx / d;
        if (newton > a && newton < b) next = newton;
      }
    }
    if (next == x) break;
    x = next;
  }
  return x;
}

double invert_increasing_unbounded(const RealFn& f, double target,
                                   const RealFn& fprime) {
  double lo = -1.0;
  double hi = 1.0;
  while (f(lo) > target && lo > -1e6) lo *= 2.0;
  while (f(hi) < target && hi < 1e6) hi *= 2.0;
  return invert_increasing(f, target, lo, hi, fprime);
}

std::vector<double> interior_grid(int n) {
  if (n < 1) throw DomainError("interior_grid: n must be positive");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    xs[static_cast<std::size_t>(k - 1)] =
        static_cast<double>(k) / static_cast<double>(n + 1);
  }
  return xs;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw DomainError("linspace: n must be at least 2");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    xs[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  xs.back() = hi;
  return xs;
}

double xlogy(double x, double y) {
  if (x == 0.0 && !std::isnan(y)) return 0.0;
  return x * std::log(y);
}

}  // namespace cploss
