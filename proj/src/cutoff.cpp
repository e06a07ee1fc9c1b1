#include "mlf/cutoff.hpp"

#include <array>
#include <cmath>

#include "mlf/errors.hpp"

namespace mlf {

namespace {

constexpr int kOrder = 7;  // Taylor coefficients 0..6

// Truncated Taylor series f(r0 + d) = sum_k a[k] d^k.
struct Jet {
  std::array<double, kOrder> a{};

  static Jet constant(double c) {
    Jet j;
    j.a[0] = c;
    return j;
  }
  static Jet variable(double x0, double slope) {
    Jet j;
    j.a[0] = x0;
    j.a[1] = slope;
    return j;
  }
  bool is_zero() const {
    for (double c : a) {
      if (c != 0.0) return false;
    }
    return true;
  }
};

Jet operator+(const Jet& x, const Jet& y) {
  Jet r;
  for (int k = 0; k < kOrder; ++k) r.a[k] = x.a[k] + y.a[k];
  return r;
}

Jet operator*(const Jet& x, const Jet& y) {
  Jet r;
  for (int k = 0; k < kOrder; ++k) {
    for (int j = 0; j <= k; ++j) r.a[k] += x.a[j] * y.a[k - j];
  }
  return r;
}

Jet reciprocal(const Jet& x) {
  Jet r;
  r.a[0] = 1.0 / x.a[0];
  for (int k = 1; k < kOrder; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += x.a[j] * r.a[k - j];
    r.a[k] = -s / x.a[0];
  }
  return r;
}

Jet exp(const Jet& x) {
  // g = exp(f): k g_k = sum_{j=1}^{k} j f_j g_{k-j}
  Jet g;
  g.a[0] = std::exp(x.a[0]);
  for (int k = 1; k < kOrder; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * x.a[j] * g.a[k - j];
    g.a[k] = s / k;
  }
  return g;
}

// h(t) = exp(-1/t); below t = 1e-3 the value and every derivative underflow.
Jet h(const Jet& t) {
  if (t.a[0] <= 1e-3) return Jet{};
  Jet inv = reciprocal(t);
  for (double& c : inv.a) c = -c;
  return exp(inv);
}

// Jet of phi_cut at r0 >= 0.
Jet phi_jet(double r0) {
  if (r0 <= 1.0) return Jet::constant(1.0);
  if (r0 >= 2.0) return Jet{};
  Jet hu = h(Jet::variable(2.0 - r0, -1.0));
  Jet hv = h(Jet::variable(r0 - 1.0, 1.0));
  if (hv.is_zero()) return Jet::constant(1.0);
  if (hu.is_zero()) return Jet{};
  return hu * reciprocal(hu + hv);
}

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

}  // namespace

double cutoff_phi(double r) {
  double x = std::abs(r);
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  double hu = std::exp(-1.0 / (2.0 - x));
  double hv = std::exp(-1.0 / (x - 1.0));
  return hu / (hu + hv);
}

double cutoff_psi(double r) { return 1.0 - cutoff_phi(r); }

double cutoff_derivative(int m, double r) {
  if (m < 0 || m > 6) throw DomainError("cutoff_derivative: requires 0 <= m <= 6");
  if (m == 0) return cutoff_psi(r);
  double x = std::abs(r);
  if (x <= 1.0 || x >= 2.0) return 0.0;
  double d = -phi_jet(x).a[m] * factorial(m);
  // phi_cut is even, so its m-th derivative has parity (-1)^m.
  if (r < 0.0 && m % 2 == 1) d = -d;
  return d;
}

}  // namespace mlf
