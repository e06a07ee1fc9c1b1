#pragma once

#include <span>
#include <vector>

#include "mlf/complex.hpp"
#include "mlf/quadrature.hpp"

namespace mlf {

// Ascending series for J_lambda(r), Re lambda > -1/2, 0 <= r <= 40. The
// prefactor (r/2)^lambda / Gamma(lambda+1) is applied in double and the
// normalised sum is carried out in MPFR, so the absolute error stays near
// 1e-16 despite terms of size e^r. Throws AccuracyError for r > 40.
Complex bessel_j_series(Complex lambda, double r);

// Poisson integral, rewritten with s = sin t as
// 2 c r^lambda * int_0^{pi/2} cos(r sin t) cos^{2 lambda} t dt.
QuadResult bessel_j_poisson(Complex lambda, double r, const QuadratureConfig& cfg = {});

// sqrt(2/pi) r^{-1/2} cos r. Throws DomainError at r <= 0.
double bessel_j_half_identity(double r);

// a_n r^{n/2 - 1} with a_n = 2^{1 - n/2} / Gamma(n/2), n > 1.
double small_argument_leading(int n, double r);
// C with |J_{n/2-1}(r) - a_n r^{n/2-1}| <= C r^{n/2}.
double small_argument_bound(int n);

// Real-order J_nu(x) for nu >= -1/2: the closed form at nu = -1/2,
// otherwise std::cyl_bessel_j.
double bessel_j_real(double nu, double x);

// J_lambda(r) ~ sum_{l<=M} sum_{+-} c_l^{+-} r^{-(l+1/2)} e^{+-ir}.
struct BesselExpansion {
  Complex lambda{};
  int M = 1;
  std::vector<Complex> c_plus;   // l = 0..M
  std::vector<Complex> c_minus;  // l = 0..M

  // True when every coefficient beyond M vanishes (lambda - 1/2 an integer
  // in [-1, M]); the expansion is then exact.
  bool terminates() const;
  // Sum of the expansion at real r > 0.
  Complex evaluate(double r) const;
};

// Coefficients from the closed form
//   c_l^{+-} = 2^{-l} / (sqrt(2 pi) l!) * prod_{k=1}^{2l} (lambda - l - 1/2 + k)
//              * exp(+-i(pi l/2 - pi lambda/2 - pi/4)),
// cross-checked against the product form
//   2^{lambda - 1/2} c_lambda Gamma(l + lambda + 1/2) Lambda_l^{+-} e^{-+i lambda_*}
// with c_lambda = 2^{-lambda} / (sqrt(pi) Gamma(lambda + 1/2)),
// Lambda_l^{+-} = (+-i/2)^l (lambda - 1/2)_l / l! and lambda_* = pi lambda/2 + pi/4.
// Throws DomainError unless Re lambda > 1/2 and M >= 1.
BesselExpansion build_expansion(Complex lambda, int M);

// Closed-form coefficients only, for any lambda (the transform kernels use
// lambda = -1/2 and 0). M >= 0.
BesselExpansion build_expansion_any_order(Complex lambda, int M);

// The two coefficient routes at (lambda, l), for inspection.
Complex expansion_coefficient_closed_form(Complex lambda, int l, int sign);
Complex expansion_coefficient_product_form(Complex lambda, int l, int sign);

// bessel_asymptotic(e, r) = e.evaluate(r); DomainError for r <= 1.
Complex bessel_asymptotic(const BesselExpansion& e, double r);

// Fitted decay of L(r) = J_lambda(r) - expansion(r). L oscillates, so each
// grid point carries the maximum of |L| over [r, r + 2 pi].
struct DecayCertificate {
  Complex lambda{};
  int M = 1;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  bool exact_termination = false;
  std::vector<double> r;
  std::vector<double> envelope;

  double required_slope() const { return -(M + 1.5) + 0.15; }
  bool satisfied() const { return exact_termination || slope <= required_slope(); }
};

// Grid must have >= 8 geometrically spaced points inside (5, 200); FitError
// otherwise, and when |L| sinks to the double-precision noise floor.
DecayCertificate remainder_decay_certificate(Complex lambda, int M,
                                             std::span<const double> r_grid);

// Reference J_lambda(r): the series for r <= 40, the M = 6 expansion beyond.
Complex bessel_j_reference(Complex lambda, double r);

// J_{n/2-1}(2 pi r) r^{n/2}; for n = 1 this is cos(2 pi r)/pi, with the
// limit 1/pi at r = 0.
Complex jbar(int n, double r);

}  // namespace mlf
