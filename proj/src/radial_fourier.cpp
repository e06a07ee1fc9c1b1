#include "mlf/radial_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlf/acceleration.hpp"
#include "mlf/bessel.hpp"
#include "mlf/cutoff.hpp"
#include "mlf/errors.hpp"
#include "mlf/gamma.hpp"

namespace mlf {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_xi(double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("transform: requires |xi| > 0");
}

// E(e^{i phi} s^sigma) for real or complex s with Re s > 0.
Complex ml_factor(const TransformProblem& tp, Complex s) {
  if (s == Complex(0.0)) return reciprocal_gamma(tp.beta);
  Complex w = std::polar(1.0, tp.phi) * std::exp(tp.sigma * principal_log(s));
  return ml_eval(tp.ml(), w).value;
}

Complex ml_factor(const TransformProblem& tp, double s) {
  if (s == 0.0) return reciprocal_gamma(tp.beta);
  return ml_eval(tp.ml(), std::polar(std::pow(s, tp.sigma), tp.phi)).value;
}

QuadratureConfig panel_config(const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.abs_tol = cfg.abs_tol * 0.1;
  return c;
}

AccelerationConfig accel_config(const TailStrategy& s, const QuadratureConfig& cfg) {
  AccelerationConfig a;
  a.order = s.accel_order;
  a.abs_tol = cfg.abs_tol;
  a.rel_tol = cfg.rel_tol;
  a.max_panels = s.max_panels;
  return a;
}

std::size_t start_panel(double r_min, double r0, double width, std::size_t cap) {
  double k = std::ceil((r_min - r0) / width);
  if (k < 0.0) k = 0.0;
  if (k >= static_cast<double>(cap)) {
    throw ConvergenceError("compute_N: algebraic regime starts at r = " + num(r_min) +
                           ", beyond the panel limit; use the rotation strategy");
  }
  return static_cast<std::size_t>(k);
}

QuadResult tail_direct(const TransformProblem& tp, double xi, const TailStrategy& st,
                       const QuadratureConfig& cfg) {
  auto g = [&](double r) -> Complex {
    return cutoff_psi(r) * ml_factor(tp, r / xi) * jbar(tp.n, r);
  };
  const QuadratureConfig pc = panel_config(cfg);
  auto panel = [&](std::size_t k) {
    return adaptive_integrate<Complex>(g, 1.0 + 0.5 * k, 1.0 + 0.5 * (k + 1), pc);
  };
  std::size_t start = start_panel(regular_start(tp, xi), 1.0, 0.5, st.max_panels);
  AcceleratedResult<Complex> a = accelerate_panel_sums<Complex>(panel, start, accel_config(st, cfg));
  QuadResult out;
  out.value = a.value;
  out.error = a.error;
  out.evaluations = a.evaluations;
  return out;
}

QuadResult tail_expansion(const TransformProblem& tp, double xi, const TailStrategy& st,
                          const QuadratureConfig& cfg) {
  const double lambda = tp.n / 2.0 - 1.0;
  const int M = st.order_for(tp.n);
  const BesselExpansion e = build_expansion_any_order(lambda, M);
  const bool exact = e.terminates();
  const std::size_t terms = 2 * (M + 1);
  const std::size_t width = terms + (exact ? 0 : 1);
  const double two_pi = 2.0 * kPi;
  const double half_n = tp.n / 2.0;

  auto g = [&](double r) -> CVec {
    CVec v(width);
    Complex common = cutoff_psi(r) * ml_factor(tp, r / xi) * std::pow(r, half_n);
    double x = two_pi * r;
    Complex ep = std::polar(1.0, x);
    Complex em = std::conj(ep);
    double pw = 1.0 / std::sqrt(x);
    for (int l = 0; l <= M; ++l) {
      v[2 * l] = common * e.c_plus[l] * pw * ep;
      v[2 * l + 1] = common * e.c_minus[l] * pw * em;
      pw /= x;
    }
    if (!exact) v[terms] = common * (bessel_j_real(lambda, x) - e.evaluate(x));
    return v;
  };
  const QuadratureConfig pc = panel_config(cfg);
  auto panel = [&](std::size_t k) {
    return adaptive_integrate<CVec>(g, 1.0 + 0.5 * k, 1.0 + 0.5 * (k + 1), pc);
  };
  std::size_t start = start_panel(regular_start(tp, xi), 1.0, 0.5, st.max_panels);
  AcceleratedResult<CVec> a = accelerate_panel_sums<CVec>(panel, start, accel_config(st, cfg));
  QuadResult out;
  CompensatedSum sum;
  for (const auto& c : a.value) sum += c;
  out.value = sum.value();
  out.error = a.error * static_cast<double>(width);
  out.evaluations = a.evaluations;
  return out;
}

// Angle by which arg w may move from phi in direction dir before entering
// the growth sector |arg w| <= pi alpha / 2.
double sector_room(const TransformProblem& tp, int dir) {
  const double edge = kPi * tp.alpha / 2.0;
  double d = dir > 0 ? -edge - tp.phi : tp.phi - edge;
  d = std::fmod(d, 2.0 * kPi);
  if (d < 0.0) d += 2.0 * kPi;
  return d;
}

QuadResult tail_rotation(const TransformProblem& tp, double xi, const TailStrategy& st,
                         const QuadratureConfig& cfg) {
  (void)st;
  const double lambda = tp.n / 2.0 - 1.0;
  const double two_pi = 2.0 * kPi;
  const double half_n = tp.n / 2.0;
  BesselExpansion e;
  double R;
  if (tp.n % 2 == 1) {
    // Half-integer order: the expansion is exact with a handful of terms.
    e = build_expansion_any_order(lambda, std::max(0, (tp.n - 3) / 2));
    R = 2.0;
  } else {
    // Integer order: at 2 pi R >= 70 twenty terms leave a remainder far
    // below double precision.
    e = build_expansion_any_order(lambda, 20);
    R = std::ceil(70.0 / two_pi);
  }

  QuadResult out;
  {
    auto g = [&](double r) -> Complex {
      return cutoff_psi(r) * ml_factor(tp, r / xi) * jbar(tp.n, r);
    };
    std::vector<double> breaks;
    for (double r = 1.5; r < R; r += 0.5) breaks.push_back(r);
    QuadResult d = adaptive_integrate<Complex>(g, 1.0, R, cfg, breaks);
    out.value = d.value;
    out.error = d.error;
    out.evaluations = d.evaluations;
  }

  for (int dir : {+1, -1}) {
    const double theta = std::min(kPi / 4.0, 0.5 * sector_room(tp, dir) / tp.sigma);
    const Complex rot = std::polar(1.0, dir * theta);
    const std::vector<Complex>& coef = dir > 0 ? e.c_plus : e.c_minus;
    auto g = [&](double t) -> Complex {
      Complex r = R + t * rot;
      Complex x = two_pi * r;
      Complex lx = std::log(x);
      CompensatedSum sum;
      for (int l = 0; l <= e.M; ++l) {
        sum += coef[l] * std::exp(-(l + 0.5) * lx);
      }
      Complex phase = std::exp(static_cast<double>(dir) * kI * x);
      return ml_factor(tp, r / xi) * std::exp(half_n * std::log(r)) * sum.value() * phase * rot;
    };
    QuadResult q = adaptive_integrate_semi_infinite<Complex>(
        g, 0.0, DecayHint::exponential(two_pi * std::sin(theta)), cfg);
    out.value += q.value;
    out.error += q.error;
    out.evaluations += q.evaluations;
  }
  if (!e.terminates()) {
    // Bound for the dropped remainder: |c_{M+1}| (2 pi r)^{-M-3/2} r^{n/2}
    // integrated from R, with |E| <= its value scale 1/Gamma bound.
    Complex next = expansion_coefficient_closed_form(lambda, e.M + 1, +1);
    double p = e.M + 1.5 - half_n;
    double bound = 2.0 * std::abs(next) * std::pow(two_pi, -(e.M + 1.5)) *
                   std::pow(R, 1.0 - p) / (p - 1.0) *
                   std::max(1.0, std::abs(ml_factor(tp, R / xi)));
    out.error += bound;
  }
  return out;
}

}  // namespace

void TransformProblem::validate() const {
  ml().validate();
  if (!(phi > -kPi && phi <= kPi)) {
    throw DomainError("TransformProblem: requires -pi < phi <= pi");
  }
  if (!(std::abs(phi) > kPi * alpha / 2.0)) {
    throw DomainError("TransformProblem: requires |phi| > pi*alpha/2 (got phi = " + num(phi) +
                      ", alpha = " + num(alpha) + ")");
  }
  if (!(sigma > 0.0)) throw DomainError("TransformProblem: requires sigma > 0");
  if (n < 1) throw DomainError("TransformProblem: requires n >= 1");
}

void TransformProblem::require_tail_regime() const {
  validate();
  if (!(sigma > (n - 1) / 2.0)) {
    throw DomainError("TransformProblem: requires sigma > (n-1)/2 (got sigma = " + num(sigma) +
                      ", n = " + std::to_string(n) + "); outside the supported regime");
  }
}

int TailStrategy::order_for(int n) const {
  if (M > 0) return M;
  return std::max(1, (n - 1) / 2 + 1);
}

void TailStrategy::validate(int n) const {
  if (accel_order < 2 || accel_order > 12) {
    throw DomainError("TailStrategy: requires accel_order in [2, 12]");
  }
  if (M < 0) throw DomainError("TailStrategy: requires M >= 0");
  if (M > 0 && !(M > (n - 1) / 2.0)) {
    throw DomainError("TailStrategy: requires M > (n-1)/2");
  }
  if (max_panels < 1) throw DomainError("TailStrategy: requires max_panels >= 1");
}

const char* to_string(TailStrategy::Kind k) {
  switch (k) {
    case TailStrategy::Kind::BesselExpansionAccelerated: return "expansion";
    case TailStrategy::Kind::DirectPeriodSum: return "direct";
    case TailStrategy::Kind::ContourRotation: return "rotation";
  }
  return "unknown";
}

QuadResult fourier_radial_reference(const RealFunction& f0, int n, double xi_mag,
                                    const QuadratureConfig& cfg, double support) {
  if (n < 1) throw DomainError("fourier_radial_reference: requires n >= 1");
  require_xi(xi_mag);
  cfg.validate();
  const double scale = std::pow(xi_mag, -n / 2.0);
  auto g = [&](double r) -> Complex { return f0(r) * jbar(n, xi_mag * r) * scale; };
  QuadResult q;
  if (std::isfinite(support)) {
    std::vector<double> breaks;
    const double step = 0.5 / xi_mag;
    for (double r = step; r < support && breaks.size() < 4000; r += step) breaks.push_back(r);
    q = adaptive_integrate<Complex>(g, 0.0, support, cfg, breaks);
  } else {
    q = adaptive_integrate_semi_infinite<Complex>(g, 0.0, DecayHint::exponential(1.0), cfg);
  }
  const double pref = 2.0 * kPi * std::pow(xi_mag, 1.0 - n / 2.0);
  q.value *= pref;
  q.error *= pref;
  return q;
}

double regular_start(const TransformProblem& tp, double xi_mag) {
  return 1.0 + xi_mag * std::pow(20.0, 1.0 / tp.sigma);
}

QuadResult compute_M(const TransformProblem& tp, double xi_mag, const QuadratureConfig& cfg) {
  tp.validate();
  require_xi(xi_mag);
  cfg.validate();
  auto g = [&](double r) -> Complex {
    return cutoff_phi(r) * ml_factor(tp, r / xi_mag) * jbar(tp.n, r);
  };
  std::vector<double> breaks{0.5, 1.0, 1.5};
  for (double t : {1e-2, 1e-1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 1e2, 1e3, 1e4}) {
    double r = xi_mag * std::pow(t, 1.0 / tp.sigma);
    if (r > 0.0 && r < 2.0) breaks.push_back(r);
  }
  QuadratureConfig c = cfg;
  c.abs_tol = cfg.abs_tol * std::min(1.0, std::pow(xi_mag, std::min(tp.sigma, double(tp.n))));
  c.abs_tol = std::max(c.abs_tol, 1e-300);
  return adaptive_integrate<Complex>(g, 0.0, 2.0, c, breaks);
}

QuadResult compute_N(const TransformProblem& tp, double xi_mag, const TailStrategy& strategy,
                     const QuadratureConfig& cfg) {
  tp.require_tail_regime();
  require_xi(xi_mag);
  cfg.validate();
  strategy.validate(tp.n);
  switch (strategy.kind) {
    case TailStrategy::Kind::DirectPeriodSum: return tail_direct(tp, xi_mag, strategy, cfg);
    case TailStrategy::Kind::BesselExpansionAccelerated:
      return tail_expansion(tp, xi_mag, strategy, cfg);
    case TailStrategy::Kind::ContourRotation: return tail_rotation(tp, xi_mag, strategy, cfg);
  }
  throw DomainError("compute_N: unknown strategy");
}

TransformValue ml_transform(const TransformProblem& tp, double xi_mag,
                            const TailStrategy& strategy, const QuadratureConfig& cfg) {
  QuadResult m = compute_M(tp, xi_mag, cfg);
  QuadResult n = compute_N(tp, xi_mag, strategy, cfg);
  const double pref = 2.0 * kPi * std::pow(xi_mag, -tp.n);
  TransformValue out;
  out.M = m.value;
  out.N = n.value;
  out.value = pref * (m.value + n.value);
  out.error = pref * (m.error + n.error);
  return out;
}

std::vector<Complex> q_coefficients(double sigma, double phi, int ell) {
  if (ell < 0) throw DomainError("q_coefficients: requires ell >= 0");
  const Complex rot = std::polar(1.0, phi);
  std::vector<Complex> a{1.0};
  for (int l = 0; l < ell; ++l) {
    std::vector<Complex> next(a.size() + 1, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
      next[j] += (static_cast<double>(j) * sigma - l) * a[j];
      next[j + 1] += static_cast<double>(j + 1) * sigma * rot * a[j];
    }
    a = std::move(next);
  }
  return a;
}

std::vector<Complex> q_kernels(const TransformProblem& tp, int lmax, double r) {
  if (lmax < 0) throw DomainError("q_kernels: requires lmax >= 0");
  if (!(r >= 0.0)) throw DomainError("q_kernels: requires r >= 0");
  std::vector<Complex> out(lmax + 1, 0.0);
  const MLParams p = tp.ml();
  if (r == 0.0) {
    out[0] = 2.0 * kPi * kI * p.alpha * reciprocal_gamma(p.beta);
    return out;
  }
  const double rs = std::pow(r, tp.sigma);
  KernelPowers P = ml_kernel_powers(p, std::polar(rs, tp.phi), lmax);
  for (int l = 0; l <= lmax; ++l) {
    std::vector<Complex> a = q_coefficients(tp.sigma, tp.phi, l);
    CompensatedSum sum;
    double pw = 1.0;
    for (int j = 0; j <= l; ++j) {
      sum += a[j] * pw * P.values[j];
      pw *= rs;
    }
    out[l] = sum.value();
  }
  return out;
}

Complex q_kernel(const TransformProblem& tp, int ell, double r) {
  return q_kernels(tp, ell, r)[ell];
}

double ibp_identity_check(const TransformProblem& tp, double xi_mag, int ell, int N,
                          const QuadratureConfig& cfg) {
  tp.require_tail_regime();
  require_xi(xi_mag);
  cfg.validate();
  if (N < 1 || N > 3) throw DomainError("ibp_identity_check: requires N in {1, 2, 3}");
  if (ell < 0 || ell > 1) throw DomainError("ibp_identity_check: requires ell in {0, 1}");
  const double a = (tp.n - 1) / 2.0 - ell;

  struct Term {
    int l2;
    int l3;
    Complex coef;
  };
  std::vector<Term> terms;
  const Complex iN = std::pow(kI, N);
  auto fact = [](int m) { return std::tgamma(m + 1.0); };
  for (int l1 = 0; l1 <= N; ++l1) {
    for (int l2 = 0; l1 + l2 <= N; ++l2) {
      int l3 = N - l1 - l2;
      double falling = 1.0;
      for (int k = 0; k < l1; ++k) falling *= a - k;
      double c = fact(N) / (fact(l1) * fact(l2) * fact(l3)) * falling;
      if (c != 0.0) terms.push_back({l2, l3, iN * c});
    }
  }

  auto g = [&](double r) -> CVec {
    CVec v(2);
    std::vector<Complex> Q = q_kernels(tp, N, r / xi_mag);
    Complex osc = std::polar(1.0, r);
    v[0] = osc * std::pow(r, a) * cutoff_psi(r) * Q[0];
    CompensatedSum rhs;
    for (const Term& t : terms) {
      double d = cutoff_derivative(t.l2, r);
      if (d == 0.0) continue;
      rhs += t.coef * std::pow(r, a - N + t.l2) * d * Q[t.l3];
    }
    v[1] = osc * rhs.value();
    return v;
  };
  TailStrategy st;
  const QuadratureConfig pc = panel_config(cfg);
  auto panel = [&](std::size_t k) {
    return adaptive_integrate<CVec>(g, 1.0 + kPi * k, 1.0 + kPi * (k + 1), pc);
  };
  std::size_t start = start_panel(regular_start(tp, xi_mag), 1.0, kPi, st.max_panels);
  AcceleratedResult<CVec> res = accelerate_panel_sums<CVec>(panel, start, accel_config(st, cfg));
  Complex lhs = res.value[0];
  Complex rhs = res.value[1];
  if (lhs == Complex(0.0)) throw ConvergenceError("ibp_identity_check: vanishing left side");
  return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace mlf
