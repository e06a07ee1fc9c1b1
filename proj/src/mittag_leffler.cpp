#include "mlf/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mlf/gamma.hpp"
#include "mp.hpp"

namespace mlf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// log of the k-th Taylor term modulus, |z|^k / Gamma(alpha k + beta).
double log_term(const MLParams& p, double log_abs_z, int k) {
  return k * log_abs_z - std::lgamma(p.alpha * k + p.beta);
}

struct SeriesPlan {
  double log_max = 0.0;  // log of the largest term modulus
  int terms = 0;         // index past which every term is negligible
};

SeriesPlan plan_series(const MLParams& p, double abs_z, double tol) {
  SeriesPlan plan;
  plan.log_max = std::log(std::abs(reciprocal_gamma(p.beta)));
  if (abs_z == 0.0) {
    plan.terms = 1;
    return plan;
  }
  const double lz = std::log(abs_z);
  // Results in the decay sector can be far smaller than the largest term, so
  // the cut is absolute rather than relative to that term.
  const double cut = std::log(tol) - 25.0;
  int below = 0;
  for (int k = 1; k < 100000; ++k) {
    double lt = log_term(p, lz, k);
    plan.log_max = std::max(plan.log_max, lt);
    // Past the peak the terms decay monotonically.
    bool past_peak = lt < log_term(p, lz, k - 1);
    if (past_peak && lt < std::min(plan.log_max, 0.0) + cut) {
      if (++below >= 3) {
        plan.terms = k + 1;
        return plan;
      }
    } else {
      below = 0;
    }
  }
  throw AccuracyError("ml_series: series does not settle for alpha = " + num(p.alpha));
}

MLValue series_double(const MLParams& p, Complex z, double tol, int max_terms) {
  CompensatedSum sum;
  double abs_sum = 0.0;
  const Complex lz = z == Complex(0.0) ? Complex(0.0) : principal_log(z);
  int small = 0;
  Complex last = 0.0;
  for (int k = 0; k < max_terms; ++k) {
    Complex t;
    if (k == 0) {
      t = reciprocal_gamma(p.beta);
    } else if (z == Complex(0.0)) {
      t = 0.0;
    } else {
      t = std::exp(static_cast<double>(k) * lz - std::lgamma(p.alpha * k + p.beta));
    }
    sum += t;
    abs_sum += std::abs(t);
    last = t;
    if (std::abs(t) < tol * std::abs(sum.value())) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  MLValue out;
  out.value = sum.value();
  // exp/lgamma carry a relative error of roughly eps times the exponent size.
  double rel = kEps * (4.0 + std::abs(lz) * max_terms * 0.05);
  out.error = rel * abs_sum + std::abs(last);
  out.method = MLMethod::Series;
  return out;
}

MLValue series_mp(const MLParams& p, Complex z, const SeriesPlan& plan) {
  const double log2_scale = plan.log_max / std::log(2.0);
  const mpfr_prec_t prec = mp::precision_for(log2_scale);
  mp::Complex zz(prec, z);
  mp::Complex power(prec, Complex(1.0));
  mp::Complex sum(prec);
  mp::Real arg(prec), g(prec), alpha(prec, p.alpha), beta(prec, p.beta);
  for (int k = 0; k < plan.terms; ++k) {
    if (k > 0) power.mul(zz);
    mpfr_mul_si(arg.get(), alpha.get(), k, MPFR_RNDN);
    mpfr_add(arg.get(), arg.get(), beta.get(), MPFR_RNDN);
    mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
    mp::Complex term = power;
    term.div(g);
    sum.add(term);
  }
  MLValue out;
  out.value = sum.to_complex();
  out.error = 4.0 * kEps * std::abs(out.value) +
              std::exp(plan.log_max) * std::ldexp(1.0, -static_cast<int>(prec - 8));
  out.method = MLMethod::Series;
  return out;
}

Complex emit_reciprocal(const MLParams& p, Complex integral) {
  return integral / (2.0 * kPi * kI * p.alpha);
}

}  // namespace

void MLParams::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw DomainError("MLParams: requires 0 < alpha < 2 (got alpha = " + num(alpha) + ")");
  }
  if (!(beta > 0.0)) {
    throw DomainError("MLParams: requires beta > 0 (got beta = " + num(beta) + ")");
  }
}

const char* to_string(MLMethod m) {
  switch (m) {
    case MLMethod::Series: return "series";
    case MLMethod::Contour: return "contour";
    case MLMethod::Asymptotic: return "asymptotic";
  }
  return "unknown";
}

ContourSpec ContourSpec::with_omega(const MLParams& p, double omega, double epsilon) {
  ContourSpec c;
  c.epsilon = epsilon;
  c.omega = omega;
  const double decay = -std::cos(omega / p.alpha);
  if (!(decay > 0.0)) {
    throw DomainError("ContourSpec: omega / alpha must lie in (pi/2, pi)");
  }
  // Solve decay * rho - (alpha - beta) log rho = 42 + log(1/decay) for the
  // ray variable rho = |z|^{1/alpha}.
  double rho = std::max(std::pow(epsilon, 1.0 / p.alpha), 1.0) + 44.0 / decay;
  for (int i = 0; i < 20; ++i) {
    double extra = std::max(0.0, (p.alpha - p.beta) * std::log(rho)) +
                   std::max(0.0, -std::log(decay));
    rho = std::pow(epsilon, 1.0 / p.alpha) + (44.0 + extra) / decay;
  }
  c.rho_max = std::pow(rho, p.alpha);
  return c;
}

ContourSpec ContourSpec::for_angle(const MLParams& p, double phi, double epsilon) {
  p.validate();
  const double lo = kPi * p.alpha / 2.0;
  const double hi = std::min(std::abs(phi), std::min(kPi * p.alpha, kPi));
  if (!(hi > lo)) {
    throw DomainError("ContourSpec: no admissible omega, requires |phi| > pi*alpha/2");
  }
  return with_omega(p, 0.5 * (lo + hi), epsilon);
}

void ContourSpec::validate(const MLParams& p) const {
  const double lo = kPi * p.alpha / 2.0;
  const double hi = std::min(kPi * p.alpha, kPi);
  if (!(omega > lo && omega < hi)) {
    throw DomainError("ContourSpec: requires pi*alpha/2 < omega < min(pi*alpha, pi)");
  }
  if (!(epsilon > 0.0)) throw DomainError("ContourSpec: requires epsilon > 0");
  if (!(rho_max > epsilon)) throw DomainError("ContourSpec: requires rho_max > epsilon");
  const double envelope = std::pow(rho_max, 1.0 / p.alpha) * std::cos(omega / p.alpha);
  if (!(envelope < std::log(1e-18))) {
    throw DomainError("ContourSpec: rho_max too small for the 1e-18 envelope");
  }
}

MLValue ml_series(const MLParams& p, Complex z, double tol) {
  p.validate();
  if (!is_finite(z)) throw DomainError("ml_series: non-finite argument");
  if (std::abs(z) > 60.0) {
    throw AccuracyError("ml_series: |z| = " + num(std::abs(z)) +
                        " exceeds the accuracy domain |z| <= 60");
  }
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("ml_series: tol must lie in (0, 1)");
  SeriesPlan plan = plan_series(p, std::abs(z), std::min(tol, 1e-17));
  if (plan.log_max > std::log(1e3)) {
    if (plan.log_max / std::log(2.0) > 4000.0) {
      throw AccuracyError("ml_series: cancellation beyond supported precision");
    }
    return series_mp(p, z, plan);
  }
  return series_double(p, z, tol, plan.terms + 8);
}

MLValue ml_contour(const MLParams& p, Complex z, const ContourSpec& c,
                   const QuadratureConfig& cfg) {
  p.validate();
  c.validate(p);
  cfg.validate();
  const double az = std::abs(z);
  const bool inside = az < c.epsilon;
  const bool beyond = az > 0.0 && std::abs(principal_arg(z)) > c.omega;
  if (!inside && !beyond) {
    throw DomainError("ml_contour: requires |z| < epsilon or |arg z| > omega");
  }
  auto kernel = [z](Complex w) -> Complex { return 1.0 / (w - z); };
  std::vector<double> breaks;
  if (az > c.epsilon) breaks.push_back(az);
  QuadResult q = detail::contour_integral<Complex>(p, c, kernel, cfg, breaks);
  MLValue out;
  out.value = emit_reciprocal(p, q.value);
  out.error = q.error / (2.0 * kPi * p.alpha);
  out.method = MLMethod::Contour;
  return out;
}

MLValue ml_on_ray(const MLParams& p, double phi, double r, const ContourSpec& c,
                  const QuadratureConfig& cfg) {
  p.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("ml_on_ray: requires r >= 0");
  if (!(std::abs(phi) > kPi * p.alpha / 2.0)) {
    throw DomainError("ml_on_ray: requires |phi| > pi*alpha/2");
  }
  if (!(std::abs(phi) > c.omega)) {
    throw DomainError("ml_on_ray: requires |phi| > omega");
  }
  return ml_contour(p, std::polar(r, phi), c, cfg);
}

MLValue ml_on_ray(const MLParams& p, double phi, double r) {
  MLDispatch d;
  return ml_on_ray(p, phi, r, ContourSpec::for_angle(p, phi), d.contour_cfg);
}

Complex ml_sector_asymptotic(const MLParams& p, Complex z, int K) {
  p.validate();
  if (K < 0) throw DomainError("ml_sector_asymptotic: requires K >= 0");
  if (!(std::abs(principal_arg(z)) > kPi * p.alpha / 2.0)) {
    throw DomainError("ml_sector_asymptotic: requires |arg z| > pi*alpha/2");
  }
  if (!(std::abs(z) >= 20.0)) {
    throw DomainError("ml_sector_asymptotic: requires |z| >= 20");
  }
  CompensatedSum sum;
  const Complex inv = 1.0 / z;
  Complex power = 1.0;
  for (int k = 1; k <= K; ++k) {
    power *= inv;
    sum += -power * reciprocal_gamma(p.beta - p.alpha * k);
  }
  return sum.value();
}

MLValue hankel_reciprocal_gamma(const MLParams& p, const ContourSpec& c, double shift,
                                const QuadratureConfig& cfg) {
  p.validate();
  c.validate(p);
  cfg.validate();
  const double e = -shift / p.alpha;
  auto kernel = [e](Complex w) -> Complex { return principal_pow(w, Complex(e)); };
  QuadResult q = detail::contour_integral<Complex>(p, c, kernel, cfg);
  MLValue out;
  out.value = emit_reciprocal(p, q.value);
  out.error = q.error / (2.0 * kPi * p.alpha);
  out.method = MLMethod::Contour;
  return out;
}

namespace {

// Size of the exponentially small part exp(z^{1/alpha}) that the algebraic
// sector expansion omits.
double exponential_part(const MLParams& p, Complex z) {
  const double th = std::abs(principal_arg(z));
  if (p.alpha < 1.0 && th > kPi * p.alpha) return 0.0;
  const double az = std::abs(z);
  return std::pow(az, (1.0 - p.beta) / p.alpha) / p.alpha *
         std::exp(std::pow(az, 1.0 / p.alpha) * std::cos(th / p.alpha));
}

// Sector expansion truncated at its smallest term; returns false when that
// term or the omitted exponential part is not negligible.
bool try_asymptotic(const MLParams& p, Complex z, double rel_tol, MLValue& out) {
  CompensatedSum sum;
  const Complex inv = 1.0 / z;
  Complex power = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  double smallest = prev;
  for (int k = 1; k <= 400; ++k) {
    power *= inv;
    Complex t = -power * reciprocal_gamma(p.beta - p.alpha * k);
    double at = std::abs(t);
    // For the pole cases a term can vanish exactly; the envelope keeps going.
    double env = std::abs(power) * std::exp(-std::lgamma(std::abs(p.beta - p.alpha * k) + 1.0));
    if (at > 0.0 && at > prev && k > 2) break;
    sum += t;
    if (at > 0.0) {
      prev = at;
      smallest = std::min(smallest, at);
    } else {
      smallest = std::min(smallest, env);
    }
    if (smallest < 1e-300) break;
  }
  Complex v = sum.value();
  double scale = std::abs(v);
  double exp_part = exponential_part(p, z);
  if (!(smallest <= rel_tol * scale) || !(exp_part <= rel_tol * scale)) return false;
  out.value = v;
  out.error = smallest + exp_part + kEps * scale;
  out.method = MLMethod::Asymptotic;
  return true;
}

}  // namespace

MLValue ml_eval(const MLParams& p, Complex z, const MLDispatch& d) {
  p.validate();
  if (!is_finite(z)) throw DomainError("ml_eval: non-finite argument");
  const double az = std::abs(z);
  const double th = az == 0.0 ? 0.0 : std::abs(principal_arg(z));
  const bool decay_sector = th > kPi * p.alpha / 2.0;
  const double growth = std::pow(az, 1.0 / p.alpha);
  if (az <= d.series_radius && (!decay_sector || growth <= d.series_growth_limit)) {
    return ml_series(p, z);
  }
  if (!decay_sector) {
    if (az <= d.growth_series_radius) return ml_series(p, z);
    throw DomainError("ml_eval: |z| = " + num(az) + " > " + num(d.growth_series_radius) +
                      " inside the growth sector |arg z| <= pi*alpha/2 is unsupported");
  }
  if (az >= d.asymptotic_radius && growth >= d.asymptotic_min_growth) {
    MLValue out;
    if (try_asymptotic(p, z, d.asymptotic_rel_tol, out)) return out;
  }
  const double phi = principal_arg(z);
  return ml_on_ray(p, phi, az, ContourSpec::for_angle(p, phi), d.contour_cfg);
}

namespace {

std::vector<Complex> kernel_series(const MLParams& p, Complex w, int jmax, double& err) {
  // E^{(j)}(w) = sum_{k>=j} k!/(k-j)! w^{k-j} / Gamma(alpha k + beta)
  SeriesPlan plan = plan_series(p, std::abs(w), 1e-17);
  const int K = plan.terms + jmax + 8;
  std::vector<Complex> out(jmax + 1);
  std::vector<CompensatedSum> sums(jmax + 1);
  std::vector<double> abs_sums(jmax + 1, 0.0);
  const Complex lw = w == Complex(0.0) ? Complex(0.0) : principal_log(w);
  for (int k = 0; k < K; ++k) {
    double lg = std::lgamma(p.alpha * k + p.beta);
    for (int j = 0; j <= std::min(jmax, k); ++j) {
      // log(k!/(k-j)!/j!) for the j!-normalised derivative.
      double lbin = std::lgamma(k + 1.0) - std::lgamma(k - j + 1.0) - std::lgamma(j + 1.0);
      Complex t;
      if (k == j) {
        t = std::exp(lbin - lg);
      } else if (w == Complex(0.0)) {
        t = 0.0;
      } else {
        t = std::exp(static_cast<double>(k - j) * lw + lbin - lg);
      }
      sums[j] += t;
      abs_sums[j] += std::abs(t);
    }
  }
  err = 0.0;
  const Complex pref = 2.0 * kPi * kI * p.alpha;
  for (int j = 0; j <= jmax; ++j) {
    out[j] = pref * sums[j].value();
    err = std::max(err, std::abs(pref) * kEps * 16.0 * abs_sums[j]);
  }
  return out;
}

bool kernel_asymptotic(const MLParams& p, Complex w, int jmax, double rel_tol,
                       std::vector<Complex>& out, double& err) {
  // P_j = 2 pi i alpha (-1)^{j+1} sum_m C(j+m, m) w^{-j-1-m} / Gamma(beta - alpha(m+1))
  const Complex pref = 2.0 * kPi * kI * p.alpha;
  const Complex inv = 1.0 / w;
  out.assign(jmax + 1, 0.0);
  err = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    CompensatedSum sum;
    double prev = std::numeric_limits<double>::infinity();
    double smallest = prev;
    Complex pw = std::pow(inv, j + 1);
    for (int m = 0; m < 400; ++m) {
      if (m > 0) pw *= inv;
      double lbin = std::lgamma(j + m + 1.0) - std::lgamma(m + 1.0) - std::lgamma(j + 1.0);
      Complex t = std::exp(lbin) * pw * reciprocal_gamma(p.beta - p.alpha * (m + 1));
      double at = std::abs(t);
      double env = std::exp(lbin) * std::abs(pw) *
                   std::exp(-std::lgamma(std::abs(p.beta - p.alpha * (m + 1)) + 1.0));
      if (at > 0.0 && at > prev && m > 2) break;
      sum += t;
      if (at > 0.0) {
        prev = at;
        smallest = std::min(smallest, at);
      } else {
        smallest = std::min(smallest, env);
      }
      if (smallest < 1e-300) break;
    }
    Complex v = (j % 2 == 0 ? -1.0 : 1.0) * pref * sum.value();
    // Each derivative of the omitted exp(w^{1/alpha}) part gains a factor
    // of about w^{1/alpha - 1} / alpha.
    double omitted = exponential_part(p, w) *
                     std::exp(j * std::log(std::pow(std::abs(w), 1.0 / p.alpha - 1.0) / p.alpha) -
                              std::lgamma(j + 1.0));
    double e = std::abs(pref) * (smallest + omitted);
    if (!(e <= rel_tol * std::abs(v))) return false;
    out[j] = v;
    err = std::max(err, e);
  }
  return true;
}

}  // namespace

KernelPowers ml_kernel_powers(const MLParams& p, Complex w, int jmax, const MLDispatch& d) {
  p.validate();
  if (jmax < 0) throw DomainError("ml_kernel_powers: requires jmax >= 0");
  KernelPowers out;
  const double aw = std::abs(w);
  const double th = aw == 0.0 ? 0.0 : std::abs(principal_arg(w));
  const bool decay_sector = th > kPi * p.alpha / 2.0;
  const double growth = std::pow(aw, 1.0 / p.alpha);
  if (aw <= d.series_radius && (!decay_sector || growth <= d.series_growth_limit)) {
    out.values = kernel_series(p, w, jmax, out.error);
    out.method = MLMethod::Series;
    return out;
  }
  if (!decay_sector) {
    throw DomainError("ml_kernel_powers: |w| > 5 inside the growth sector is unsupported");
  }
  if (aw >= d.asymptotic_radius && growth >= d.asymptotic_min_growth) {
    if (kernel_asymptotic(p, w, jmax, d.asymptotic_rel_tol, out.values, out.error)) {
      out.method = MLMethod::Asymptotic;
      return out;
    }
  }
  const double phi = principal_arg(w);
  ContourSpec c = ContourSpec::for_angle(p, phi);
  auto kernel = [w, jmax](Complex z) -> CVec {
    CVec v(jmax + 1);
    Complex inv = 1.0 / (z - w);
    Complex acc = inv;
    for (int j = 0; j <= jmax; ++j) {
      v[j] = acc;
      acc *= inv;
    }
    return v;
  };
  std::vector<double> breaks{aw};
  BasicQuadResult<CVec> q = detail::contour_integral<CVec>(p, c, kernel, d.contour_cfg, breaks);
  out.values.assign(std::begin(q.value), std::end(q.value));
  out.error = q.error;
  out.method = MLMethod::Contour;
  return out;
}

}  // namespace mlf
