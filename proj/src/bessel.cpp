#include "mlf/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mlf/errors.hpp"
#include "mlf/gamma.hpp"
#include "mp.hpp"

namespace mlf {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * kPi);

void require_order(Complex lambda, const char* who) {
  if (!(lambda.real() > -0.5)) {
    throw DomainError(std::string(who) + ": requires Re lambda > -1/2");
  }
}

}  // namespace

Complex bessel_j_series(Complex lambda, double r) {
  require_order(lambda, "bessel_j_series");
  if (!(r >= 0.0)) throw DomainError("bessel_j_series: requires r >= 0");
  if (r > 40.0) {
    throw AccuracyError("bessel_j_series: r = " + std::to_string(r) +
                        " exceeds the accuracy domain r <= 40");
  }
  if (r == 0.0) return lambda == Complex(0.0) ? Complex(1.0) : Complex(0.0);

  // Normalised terms t_0 = 1, t_{k+1} = t_k (-r^2/4) / ((k+1)(k+1+lambda)).
  const double q = r * r / 4.0;
  double log_t = 0.0;
  double log_max = 0.0;
  int terms = 0;
  for (int k = 0; k < 10000; ++k) {
    log_t += std::log(q) - std::log(k + 1.0) - std::log(std::abs(k + 1.0 + lambda));
    log_max = std::max(log_max, log_t);
    if (k + 1.0 > std::sqrt(q) && log_t < -70.0) {
      terms = k + 2;
      break;
    }
  }
  const mpfr_prec_t prec = mp::precision_for(log_max / std::log(2.0));
  mp::Complex sum(prec, Complex(1.0));
  mp::Complex term(prec, Complex(1.0));
  mp::Real mq(prec, -q);
  for (int k = 0; k + 1 < terms; ++k) {
    term.mul(mq);
    mp::Complex den(prec, Complex(k + 1.0) * (k + 1.0 + lambda));
    term.div(den);
    sum.add(term);
  }
  Complex pref = principal_pow(Complex(r / 2.0), lambda) * reciprocal_gamma(lambda + 1.0);
  return pref * sum.to_complex();
}

QuadResult bessel_j_poisson(Complex lambda, double r, const QuadratureConfig& cfg) {
  require_order(lambda, "bessel_j_poisson");
  if (!(r >= 0.0)) throw DomainError("bessel_j_poisson: requires r >= 0");
  cfg.validate();
  if (r == 0.0) {
    QuadResult out;
    out.value = lambda == Complex(0.0) ? Complex(1.0) : Complex(0.0);
    return out;
  }
  const Complex two_lambda = 2.0 * lambda;
  auto f = [&](double t) -> Complex {
    double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    return std::cos(r * std::sin(t)) * std::exp(two_lambda * std::log(c));
  };
  // One panel per half oscillation of cos(r sin t).
  std::vector<double> breaks;
  int panels = static_cast<int>(std::ceil(r / kPi));
  for (int k = 1; k < panels; ++k) breaks.push_back(std::asin(k * kPi / r));
  QuadResult q = adaptive_integrate<Complex>(f, 0.0, kPi / 2.0, cfg, breaks);
  Complex pref = 2.0 * principal_pow(Complex(2.0), -lambda) * principal_pow(Complex(r), lambda) /
                 (std::sqrt(kPi) * complex_gamma(lambda + 0.5));
  q.value *= pref;
  q.error *= std::abs(pref);
  return q;
}

double bessel_j_half_identity(double r) {
  if (!(r > 0.0)) throw DomainError("bessel_j_half_identity: requires r > 0");
  return std::sqrt(2.0 / kPi) * std::cos(r) / std::sqrt(r);
}

double small_argument_leading(int n, double r) {
  if (n <= 1) throw DomainError("small_argument_leading: requires n > 1");
  double a = std::pow(2.0, 1.0 - n / 2.0) / std::tgamma(n / 2.0);
  if (n == 2) return a;
  return a * std::pow(r, n / 2.0 - 1.0);
}

double small_argument_bound(int n) {
  if (n <= 1) throw DomainError("small_argument_bound: requires n > 1");
  double lam = n / 2.0 - 1.0;
  return 1.0 / (std::pow(2.0, lam) * (1.0 + lam) * std::tgamma(lam + 0.5) * std::sqrt(kPi));
}

double bessel_j_real(double nu, double x) {
  if (nu == -0.5) {
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    return bessel_j_half_identity(x);
  }
  if (!(nu > -0.5)) throw DomainError("bessel_j_real: requires nu >= -1/2");
  return std::cyl_bessel_j(nu, x);
}

Complex expansion_coefficient_closed_form(Complex lambda, int l, int sign) {
  if (l < 0) throw DomainError("expansion coefficient: requires l >= 0");
  // Gamma(lambda + l + 1/2) / Gamma(lambda - l + 1/2) as a finite product.
  Complex prod = 1.0;
  for (int k = 1; k <= 2 * l; ++k) prod *= lambda - (l + 0.5) + static_cast<double>(k);
  double scale = std::ldexp(1.0, -l) / (kSqrt2Pi * std::tgamma(l + 1.0));
  Complex phase = std::exp(static_cast<double>(sign) * kI *
                           (kPi * l / 2.0 - kPi * lambda / 2.0 - kPi / 4.0));
  return scale * prod * phase;
}

Complex expansion_coefficient_product_form(Complex lambda, int l, int sign) {
  if (l < 0) throw DomainError("expansion coefficient: requires l >= 0");
  const Complex c_lambda = principal_pow(Complex(2.0), -lambda) /
                           (std::sqrt(kPi) * complex_gamma(lambda + 0.5));
  // Falling factorial (lambda - 1/2)_l.
  Complex falling = 1.0;
  for (int k = 0; k < l; ++k) falling *= lambda - 0.5 - static_cast<double>(k);
  Complex big_lambda = std::pow(static_cast<double>(sign) * kI / 2.0, l) * falling /
                       std::tgamma(l + 1.0);
  Complex lstar = kPi * lambda / 2.0 + kPi / 4.0;
  return principal_pow(Complex(2.0), lambda - 0.5) * c_lambda *
         complex_gamma(static_cast<double>(l) + lambda + 0.5) * big_lambda *
         std::exp(-static_cast<double>(sign) * kI * lstar);
}

bool BesselExpansion::terminates() const {
  if (lambda.imag() != 0.0) return false;
  double m = lambda.real() - 0.5;
  return m == std::floor(m) && m >= -1.0 && m <= M;
}

Complex BesselExpansion::evaluate(double r) const {
  if (!(r > 0.0)) throw DomainError("BesselExpansion: requires r > 0");
  const Complex ep = std::polar(1.0, r);
  const Complex em = std::conj(ep);
  CompensatedSum sum;
  double pw = 1.0 / std::sqrt(r);
  for (int l = 0; l <= M; ++l) {
    sum += (c_plus[l] * ep + c_minus[l] * em) * pw;
    pw /= r;
  }
  return sum.value();
}

BesselExpansion build_expansion_any_order(Complex lambda, int M) {
  if (M < 0) throw DomainError("build_expansion: requires M >= 0");
  BesselExpansion e;
  e.lambda = lambda;
  e.M = M;
  for (int l = 0; l <= M; ++l) {
    e.c_plus.push_back(expansion_coefficient_closed_form(lambda, l, +1));
    e.c_minus.push_back(expansion_coefficient_closed_form(lambda, l, -1));
  }
  return e;
}

BesselExpansion build_expansion(Complex lambda, int M) {
  if (!(lambda.real() > 0.5)) throw DomainError("build_expansion: requires Re lambda > 1/2");
  if (M < 1) throw DomainError("build_expansion: requires M >= 1");
  BesselExpansion e = build_expansion_any_order(lambda, M);
  for (int l = 0; l <= M; ++l) {
    for (int s : {+1, -1}) {
      Complex a = s > 0 ? e.c_plus[l] : e.c_minus[l];
      Complex b = expansion_coefficient_product_form(lambda, l, s);
      double scale = std::max(std::abs(a), 1e-300);
      if (std::abs(a - b) > 1e-12 * std::max(scale, 1.0)) {
        throw Error("build_expansion: coefficient routes disagree at l = " + std::to_string(l));
      }
    }
  }
  return e;
}

Complex bessel_asymptotic(const BesselExpansion& e, double r) {
  if (!(r > 1.0)) throw DomainError("bessel_asymptotic: requires r > 1");
  return e.evaluate(r);
}

Complex bessel_j_reference(Complex lambda, double r) {
  if (r <= 40.0) return bessel_j_series(lambda, r);
  return build_expansion_any_order(lambda, 6).evaluate(r);
}

DecayCertificate remainder_decay_certificate(Complex lambda, int M,
                                             std::span<const double> r_grid) {
  if (r_grid.size() < 8) {
    throw FitError("remainder_decay_certificate: needs at least 8 grid points");
  }
  for (double r : r_grid) {
    if (!(r > 5.0 && r < 200.0)) {
      throw FitError("remainder_decay_certificate: grid must lie inside (5, 200)");
    }
  }
  const double ratio = r_grid[1] / r_grid[0];
  if (!(ratio > 1.0)) throw FitError("remainder_decay_certificate: grid must increase");
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (std::abs(r_grid[i] / r_grid[i - 1] - ratio) > 1e-6 * ratio) {
      throw FitError("remainder_decay_certificate: grid must be geometric");
    }
  }
  BesselExpansion e = build_expansion(lambda, M);
  DecayCertificate cert;
  cert.lambda = lambda;
  cert.M = M;
  cert.r.assign(r_grid.begin(), r_grid.end());
  constexpr int kSamples = 24;
  for (double r : r_grid) {
    double env = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      double s = r + 2.0 * kPi * i / (kSamples - 1);
      env = std::max(env, std::abs(bessel_j_reference(lambda, s) - e.evaluate(s)));
    }
    cert.envelope.push_back(env);
  }
  // The reference itself is good to about 1e-15 relative to r^{-1/2}.
  const double noise = 1e-14;
  if (e.terminates()) {
    for (double env : cert.envelope) {
      if (env > noise) {
        throw FitError("remainder_decay_certificate: terminating expansion left a remainder");
      }
    }
    cert.exact_termination = true;
    cert.slope = -std::numeric_limits<double>::infinity();
    return cert;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(cert.r.size());
  for (std::size_t i = 0; i < cert.r.size(); ++i) {
    if (cert.envelope[i] < noise) {
      throw FitError("remainder_decay_certificate: remainder at the noise floor near r = " +
                     std::to_string(cert.r[i]) + "; shrink the grid");
    }
    double x = std::log(cert.r[i]);
    double y = std::log(cert.envelope[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  cert.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  cert.intercept = (sy - cert.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < cert.r.size(); ++i) {
    double d = std::log(cert.envelope[i]) - (cert.intercept + cert.slope * std::log(cert.r[i]));
    ss += d * d;
  }
  cert.residual = std::sqrt(ss / n);
  return cert;
}

Complex jbar(int n, double r) {
  if (n < 1) throw DomainError("jbar: requires n >= 1");
  if (!(r >= 0.0)) throw DomainError("jbar: requires r >= 0");
  if (n == 1) {
    if (r == 0.0) return 1.0 / kPi;
    return bessel_j_half_identity(2.0 * kPi * r) * std::sqrt(r);
  }
  if (r == 0.0) return 0.0;
  return std::cyl_bessel_j(n / 2.0 - 1.0, 2.0 * kPi * r) * std::pow(r, n / 2.0);
}

}  // namespace mlf
