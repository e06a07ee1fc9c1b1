#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <valarray>
#include <vector>

#include "mlf/complex.hpp"
#include "mlf/errors.hpp"

namespace mlf {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  int max_depth = 60;

  // Throws DomainError unless both tolerances lie in (0, 1) and the limits
  // are positive.
  void validate() const;
};

// Several integrands sharing one set of nodes.
using CVec = std::valarray<Complex>;

template <class V>
struct BasicQuadResult {
  V value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

using QuadResult = BasicQuadResult<Complex>;

namespace detail {

inline std::size_t component_count(const Complex&) { return 1; }
inline Complex component(const Complex& v, std::size_t) { return v; }
inline std::size_t component_count(const CVec& v) { return v.size(); }
inline Complex component(const CVec& v, std::size_t i) { return v[i]; }

inline double max_abs(const Complex& v) { return std::abs(v); }
inline double max_abs(const CVec& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

inline bool all_finite(const Complex& v) { return is_finite(v); }
inline bool all_finite(const CVec& v) {
  for (const auto& c : v) {
    if (!is_finite(c)) return false;
  }
  return true;
}

// Kronrod 21-point abscissae (positive half) and weights; the embedded
// 10-point Gauss rule uses the odd-indexed abscissae.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980223048, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  V value{};
  double error = 0.0;
  double roundoff = 0.0;
  int depth = 0;
};

template <class V, class F>
Segment<V> gk21(F& f, double a, double b, int depth) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<V, 21> fx;
  fx[10] = f(center);
  for (int j = 0; j < 10; ++j) {
    double dx = half * kXgk[j];
    fx[j] = f(center - dx);
    fx[20 - j] = f(center + dx);
  }
  for (const auto& v : fx) {
    if (!all_finite(v)) {
      throw ConvergenceError("quadrature: non-finite integrand value near x = " +
                             std::to_string(center));
    }
  }

  const std::size_t nc = component_count(fx[10]);
  V kron = fx[10] * Complex(kWgk[10]);
  for (int j = 0; j < 10; ++j) {
    kron += (fx[j] + fx[20 - j]) * Complex(kWgk[j]);
  }

  Segment<V> seg;
  seg.a = a;
  seg.b = b;
  seg.depth = depth;
  seg.value = kron * Complex(half);

  for (std::size_t c = 0; c < nc; ++c) {
    Complex rk = component(kron, c);
    Complex rg = 0.0;
    for (int j = 0; j < 5; ++j) {
      int idx = 2 * j + 1;
      rg += (component(fx[idx], c) + component(fx[20 - idx], c)) * kWg[j];
    }
    double resabs = kWgk[10] * std::abs(component(fx[10], c));
    for (int j = 0; j < 10; ++j) {
      resabs += kWgk[j] * (std::abs(component(fx[j], c)) +
                           std::abs(component(fx[20 - j], c)));
    }
    Complex mean = 0.5 * rk;
    double resasc = kWgk[10] * std::abs(component(fx[10], c) - mean);
    for (int j = 0; j < 10; ++j) {
      resasc += kWgk[j] * (std::abs(component(fx[j], c) - mean) +
                           std::abs(component(fx[20 - j], c) - mean));
    }
    double ah = std::abs(half);
    double err = std::abs((rk - rg) * half);
    resabs *= ah;
    resasc *= ah;
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    double floor = 50.0 * eps * resabs;
    err = std::max(err, floor);
    seg.error = std::max(seg.error, err);
    seg.roundoff = std::max(seg.roundoff, floor);
  }
  return seg;
}

}  // namespace detail

// Adaptive Gauss-Kronrod (10/21) quadrature on [a, b] with optional interior
// breakpoints. Converged when the summed error estimate is at most
// max(abs_tol, rel_tol * |I|), where |I| is the largest component magnitude.
template <class V = Complex, class F>
BasicQuadResult<V> adaptive_integrate(F&& f, double a, double b,
                                      const QuadratureConfig& cfg,
                                      std::span<const double> breakpoints = {}) {
  using Seg = detail::Segment<V>;
  BasicQuadResult<V> out;
  if (a == b) {
    out.value = f(a) * Complex(0.0);
    return out;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto cmp = [](const Seg& x, const Seg& y) { return x.error < y.error; };
  std::priority_queue<Seg, std::vector<Seg>, decltype(cmp)> heap(cmp);

  auto evaluate = [&](double lo, double hi, int depth) {
    out.evaluations += 21;
    return detail::gk21<V>(f, lo, hi, depth);
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    heap.push(evaluate(cuts[i], cuts[i + 1], 0));
  }

  auto totals = [&](V& value, double& err, double& roundoff) {
    auto copy = heap;
    bool first = true;
    err = 0.0;
    roundoff = 0.0;
    while (!copy.empty()) {
      const Seg& s = copy.top();
      if (first) {
        value = s.value;
        first = false;
      } else {
        value += s.value;
      }
      err += s.error;
      roundoff += s.roundoff;
      copy.pop();
    }
  };

  V value{};
  double err = 0.0;
  double roundoff = 0.0;
  int subdivisions = static_cast<int>(heap.size());
  // Running sums drift; they are recomputed from the segments periodically.
  totals(value, err, roundoff);
  for (int iter = 0;; ++iter) {
    double tol = std::max({cfg.abs_tol, cfg.rel_tol * detail::max_abs(value),
                           2.0 * roundoff});
    if (err <= tol) break;
    Seg worst = heap.top();
    if (worst.depth >= cfg.max_depth) {
      throw ConvergenceError("quadrature: maximum bisection depth reached on [" +
                             std::to_string(worst.a) + ", " +
                             std::to_string(worst.b) + "]");
    }
    if (subdivisions >= cfg.max_subdivisions) {
      throw ConvergenceError("quadrature: subdivision limit " +
                             std::to_string(cfg.max_subdivisions) +
                             " reached (error " + std::to_string(err) +
                             ", tolerance " + std::to_string(tol) + ")");
    }
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Seg left = evaluate(worst.a, mid, worst.depth + 1);
    Seg right = evaluate(mid, worst.b, worst.depth + 1);
    ++subdivisions;
    if (iter % 64 == 63) {
      heap.push(left);
      heap.push(right);
      totals(value, err, roundoff);
      continue;
    }
    value -= worst.value;
    value += left.value;
    value += right.value;
    err += left.error + right.error - worst.error;
    roundoff += left.roundoff + right.roundoff - worst.roundoff;
    heap.push(left);
    heap.push(right);
  }
  totals(value, err, roundoff);
  out.value = value * Complex(sign);
  out.error = err;
  return out;
}

// Decay of the integrand on [a, inf); selects the change of variables.
struct DecayHint {
  enum class Kind { Exponential, Algebraic };
  Kind kind = Kind::Exponential;
  double rate = 1.0;

  // Integrand dominated by exp(-rate * t).
  static DecayHint exponential(double rate) { return {Kind::Exponential, rate}; }
  // Integrand dominated by t^{-power}, power > 1. The map scale is 1.
  static DecayHint algebraic(double power) { return {Kind::Algebraic, power}; }
};

// Integral over [a, inf). Exponential decay uses t = a - log(1 - x)/c,
// algebraic decay t = a + x/(1 - x); both map onto x in [0, 1).
// Breakpoints are given in t.
template <class V = Complex, class F>
BasicQuadResult<V> adaptive_integrate_semi_infinite(
    F&& f, double a, DecayHint hint, const QuadratureConfig& cfg,
    std::span<const double> breakpoints = {}) {
  if (!(hint.rate > 0.0)) {
    throw DomainError("integrate_semi_infinite: decay rate must be positive");
  }
  if (hint.kind == DecayHint::Kind::Algebraic && !(hint.rate > 1.0)) {
    throw DomainError("integrate_semi_infinite: algebraic decay needs power > 1");
  }
  const bool expo = hint.kind == DecayHint::Kind::Exponential;
  const double c = hint.rate;
  V zero_value{};
  bool have_zero = false;
  auto g = [&](double x) -> V {
    double t;
    double jac;
    if (expo) {
      t = a - std::log1p(-x) / c;
      jac = 1.0 / (c * (1.0 - x));
    } else {
      t = a + x / (1.0 - x);
      jac = 1.0 / ((1.0 - x) * (1.0 - x));
    }
    if (!std::isfinite(t) || !std::isfinite(jac)) {
      if (!have_zero) {
        zero_value = f(a) * Complex(0.0);
        have_zero = true;
      }
      return zero_value;
    }
    V v = f(t);
    if (detail::max_abs(v) == 0.0) return v;
    return v * Complex(jac);
  };
  std::vector<double> xs;
  for (double t : breakpoints) {
    if (t <= a) continue;
    xs.push_back(expo ? -std::expm1(-c * (t - a)) : (t - a) / (1.0 + t - a));
  }
  return adaptive_integrate<V>(g, 0.0, 1.0, cfg, xs);
}

using RealFunction = std::function<Complex(double)>;

// Throws ConvergenceError when the limits of cfg are exhausted.
QuadResult integrate_finite(const RealFunction& f, double a, double b,
                            const QuadratureConfig& cfg = {},
                            std::span<const double> breakpoints = {});

QuadResult integrate_semi_infinite(const RealFunction& f, double a,
                                   DecayHint hint,
                                   const QuadratureConfig& cfg = {});

}  // namespace mlf
