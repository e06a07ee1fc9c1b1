#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mlf/complex.hpp"
#include "mlf/errors.hpp"
#include "mlf/quadrature.hpp"

namespace mlf {

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;

  // 0 < alpha < 2, beta > 0.
  void validate() const;
};

// The Hankel-type contour: ray arg z = -omega from infinity to |z| = epsilon,
// the arc |z| = epsilon counterclockwise, then the ray arg z = +omega back
// out. rho_max is the |z| at which both rays are truncated.
struct ContourSpec {
  double epsilon = 1.0;
  double omega = 0.0;
  double rho_max = 0.0;

  // Midpoint omega between pi*alpha/2 and min(|phi|, pi*alpha), and the
  // default truncation for that omega.
  static ContourSpec for_angle(const MLParams& p, double phi, double epsilon = 1.0);
  // Given omega, truncation such that exp(rho_max^{1/alpha} cos(omega/alpha))
  // is far below 1e-18 once the algebraic factors are included.
  static ContourSpec with_omega(const MLParams& p, double omega, double epsilon = 1.0);

  void validate(const MLParams& p) const;
};

enum class MLMethod { Series, Contour, Asymptotic };
const char* to_string(MLMethod m);

struct MLValue {
  Complex value{};
  double error = 0.0;
  MLMethod method = MLMethod::Series;
};

// Taylor series sum_k z^k / Gamma(alpha k + beta). Stops after three
// consecutive terms below tol * |partial sum|. When the largest term exceeds
// the result scale by more than 1e3 the sum is carried out in MPFR at a
// precision sized to the cancellation. Throws AccuracyError for |z| > 60.
MLValue ml_series(const MLParams& p, Complex z, double tol = 1e-17);

// (1/(2 pi i alpha)) times the contour integral of
// exp(w^{1/alpha}) w^{(1-beta)/alpha} / (w - z) over C_{eps,omega}.
// Requires |z| < epsilon or |arg z| > omega.
MLValue ml_contour(const MLParams& p, Complex z, const ContourSpec& c,
                   const QuadratureConfig& cfg = {});

// E(r e^{i phi}) for any r >= 0 from the contour representation.
MLValue ml_on_ray(const MLParams& p, double phi, double r, const ContourSpec& c,
                  const QuadratureConfig& cfg = {});
MLValue ml_on_ray(const MLParams& p, double phi, double r);

// -sum_{k=1}^{K} z^{-k} / Gamma(beta - alpha k).
// Requires |arg z| > pi alpha / 2 and |z| >= 20.
Complex ml_sector_asymptotic(const MLParams& p, Complex z, int K);

// (1/(2 pi i alpha)) times the contour integral of
// exp(z^{1/alpha}) z^{(1 - beta - shift)/alpha}; equals 1/Gamma(beta) for
// shift = alpha and 1/Gamma(beta - alpha) for shift = 0.
MLValue hankel_reciprocal_gamma(const MLParams& p, const ContourSpec& c, double shift,
                                const QuadratureConfig& cfg = {});

// Routing thresholds for ml_eval.
struct MLDispatch {
  double series_radius = 5.0;
  // In the decay sector the series is used only while |z|^{1/alpha} stays
  // below this; beyond it the alternating terms cancel too much.
  double series_growth_limit = 7.0;
  // Outside the decay sector only the series applies; no cancellation beyond
  // the largest term occurs there, which the MPFR path absorbs.
  double growth_series_radius = 60.0;
  double asymptotic_radius = 20.0;
  double asymptotic_min_growth = 40.0;  // required |z|^{1/alpha}
  double asymptotic_rel_tol = 1e-15;
  QuadratureConfig contour_cfg{1e-15, 1e-13, 4000, 60};
};

MLValue ml_eval(const MLParams& p, Complex z, const MLDispatch& d = {});

// P_j(w) = contour integral of exp(z^{1/alpha}) z^{(1-beta)/alpha} / (z - w)^{j+1}
// for j = 0..jmax, so that P_0 = 2 pi i alpha E(w) and
// P_j = 2 pi i alpha E^{(j)}(w) / j!.
struct KernelPowers {
  std::vector<Complex> values;
  double error = 0.0;
  MLMethod method = MLMethod::Series;
};
KernelPowers ml_kernel_powers(const MLParams& p, Complex w, int jmax,
                              const MLDispatch& d = {});

namespace detail {

// Integral of exp(z^{1/alpha}) z^{(1-beta)/alpha} h(z) dz over C_{eps,omega},
// for a kernel h returning V (Complex or CVec). ray_breaks are |z| values
// where the ray integrand needs a split, such as the modulus of a nearby pole.
template <class V, class Kernel>
BasicQuadResult<V> contour_integral(const MLParams& p, const ContourSpec& c,
                                    Kernel&& h, const QuadratureConfig& cfg,
                                    std::span<const double> ray_breaks = {}) {
  const double a = p.alpha;
  const double b = p.beta;
  const double w = c.omega;
  const Complex up = std::polar(1.0, w);
  const Complex up_exp = std::polar(1.0, w / a);
  const Complex up_pow = std::polar(1.0, w * (1.0 - b) / a);
  const Complex dn = std::conj(up);
  const Complex dn_exp = std::conj(up_exp);
  const Complex dn_pow = std::conj(up_pow);

  const double rho0 = std::pow(c.epsilon, 1.0 / a);
  const double rho1 = std::pow(c.rho_max, 1.0 / a);

  auto ray = [&](double rho) -> V {
    double amp = a * std::pow(rho, a - b);  // alpha rho^{alpha-1} rho^{1-beta}
    double za = std::pow(rho, a);
    V hp = h(za * up);
    V hm = h(za * dn);
    Complex fp = amp * up * std::exp(rho * up_exp) * up_pow;
    Complex fm = amp * dn * std::exp(rho * dn_exp) * dn_pow;
    V out = hp * fp;
    out -= hm * fm;
    return out;
  };

  std::vector<double> breaks;
  for (double m : ray_breaks) {
    double r = std::pow(m, 1.0 / a);
    if (r > rho0 && r < rho1) breaks.push_back(r);
  }
  // Peak and decay scale of exp(rho cos(omega/alpha)) rho^{alpha-beta}.
  const double decay = -std::cos(w / a);
  for (double s : {1.0, 4.0, 12.0}) {
    double r = rho0 + s / decay;
    if (r < rho1) breaks.push_back(r);
  }

  BasicQuadResult<V> rays = adaptive_integrate<V>(ray, rho0, rho1, cfg, breaks);

  const double eps_root = rho0;
  const double arc_pow = std::pow(c.epsilon, (1.0 - b) / a);
  auto arc = [&](double theta) -> V {
    Complex e = std::polar(1.0, theta);
    Complex z = c.epsilon * e;
    Complex f = std::exp(eps_root * std::polar(1.0, theta / a)) * arc_pow *
                std::polar(1.0, theta * (1.0 - b) / a) * kI * z;
    V out = h(z);
    return out * f;
  };
  std::vector<double> arc_breaks{0.0};
  BasicQuadResult<V> arcs = adaptive_integrate<V>(arc, -w, w, cfg, arc_breaks);

  BasicQuadResult<V> out;
  out.value = rays.value;
  out.value += arcs.value;
  out.error = rays.error + arcs.error;
  out.evaluations = rays.evaluations + arcs.evaluations;
  // Discarded tails beyond rho1: |integrand| decays at least like
  // exp(-decay rho); bound the remainder by |f(rho1)| / decay on each ray.
  out.error += 2.0 * detail::max_abs(ray(rho1)) / decay;
  return out;
}

}  // namespace detail

}  // namespace mlf
