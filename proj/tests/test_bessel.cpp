#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "golden_values.hpp"
#include "mlf/bessel.hpp"
#include "mlf/cutoff.hpp"
#include "mlf/errors.hpp"

using namespace mlf;

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// The M = 1 large-r form with cos and sin of r - (pi lambda/2 + pi/4).
double two_term(double lambda, double r) {
  double ph = r - (kPi * lambda / 2 + kPi / 4);
  return std::sqrt(2.0 / kPi) * std::cos(ph) / std::sqrt(r) -
         (lambda - 0.5) * (lambda + 0.5) / kSqrt2Pi * std::sin(ph) / std::pow(r, 1.5);
}

std::vector<double> geometric(double lo, double ratio, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(ratio, i));
  return g;
}

}  // namespace

TEST_CASE("series examples and domain") {
  CHECK(bessel_j_series(0.0, 0.0) == Complex(1.0));
  CHECK(bessel_j_series(1.0, 0.0) == Complex(0.0));
  CHECK(std::abs(bessel_j_series(0.5, kPi)) < 1e-15);
  CHECK(std::abs(bessel_j_series(2.0, 20.0) - golden::kJ2At20) < 1e-13);
  CHECK(std::abs(bessel_j_series(Complex(1.0, 0.5), 3.0) - golden::kJ1p5iAt3) < 1e-13);
  CHECK_THROWS_AS(bessel_j_series(0.0, 41.0), AccuracyError);
  CHECK_THROWS_AS(bessel_j_series(-0.7, 1.0), DomainError);
}

TEST_CASE("poisson integral examples") {
  CHECK(std::abs(bessel_j_poisson(0.0, 1.0).value - golden::kJ0At1) < 1e-12);
  CHECK(std::abs(bessel_j_poisson(1.0, 2.0).value - golden::kJ1At2) < 1e-12);
  CHECK(std::abs(bessel_j_poisson(0.0, 1e-12).value - 1.0) < 1e-12);
  CHECK(std::abs(bessel_j_poisson(Complex(1.0, 0.5), 3.0).value - golden::kJ1p5iAt3) < 1e-11);
}

TEST_CASE("poisson and series agree") {
  for (double lam : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      Complex a = bessel_j_poisson(lam, r).value;
      Complex b = bessel_j_series(lam, r);
      CHECK(std::abs(a - b) < 1e-9);
      CHECK(std::abs(b - std::cyl_bessel_j(lam, r)) < 1e-12);
    }
  }
}

TEST_CASE("half-order identity") {
  CHECK(std::abs(bessel_j_half_identity(kPi / 2)) < 1e-16);
  CHECK(std::abs(bessel_j_half_identity(2 * kPi) - 1.0 / kPi) < 1e-15);
  CHECK(std::abs(bessel_j_half_identity(1.0) - std::sqrt(2.0 / kPi) * std::cos(1.0)) < 1e-16);
  CHECK(std::abs(bessel_j_half_identity(1.0) - 0.4310988) < 1e-7);
  CHECK_THROWS_AS(bessel_j_half_identity(0.0), DomainError);
}

TEST_CASE("small-argument leading term and remainder bound") {
  CHECK(small_argument_leading(2, 0.0) == doctest::Approx(1.0));
  CHECK(small_argument_leading(3, 0.1) ==
        doctest::Approx(std::pow(2.0, -0.5) / std::tgamma(1.5) * std::sqrt(0.1)));
  for (int n = 2; n <= 5; ++n) {
    const double c = small_argument_bound(n);
    for (double r = 0.01; r <= 1.0; r += 0.01) {
      double diff = std::abs(std::cyl_bessel_j(n / 2.0 - 1.0, r) - small_argument_leading(n, r));
      CHECK(diff <= c * std::pow(r, n / 2.0));
    }
  }
  CHECK_THROWS_AS(small_argument_leading(1, 0.5), DomainError);
}

TEST_CASE("expansion coefficients") {
  // lambda = 3/2, l = 0: the phase e^{-+i pi} makes both coefficients -1/sqrt(2 pi).
  BesselExpansion e = build_expansion(1.5, 1);
  CHECK(std::abs(e.c_plus[0] + 1.0 / kSqrt2Pi) < 1e-15);
  CHECK(std::abs(e.c_minus[0] + 1.0 / kSqrt2Pi) < 1e-15);
  for (double lam : {1.0, 1.5, 2.0, 2.5}) {
    for (int l = 0; l <= 6; ++l) {
      for (int s : {+1, -1}) {
        Complex a = expansion_coefficient_closed_form(lam, l, s);
        Complex b = expansion_coefficient_product_form(lam, l, s);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
  CHECK_THROWS_AS(build_expansion(0.5, 2), DomainError);
  CHECK_THROWS_AS(build_expansion(2.0, 0), DomainError);
}

TEST_CASE("M = 1 expansion is the two-term cos/sin form") {
  for (double lam : {0.75, 1.0, 2.5, 3.0}) {
    BesselExpansion e = build_expansion(lam, 1);
    const double ls = kPi * lam / 2 + kPi / 4;
    CHECK(std::abs(e.c_plus[0] - std::polar(1.0, -ls) / kSqrt2Pi) < 1e-12);
    Complex c1 = kI * (lam * lam - 0.25) / (2.0 * kSqrt2Pi) * std::polar(1.0, -ls);
    CHECK(std::abs(e.c_plus[1] - c1) < 1e-12);
    CHECK(std::abs(e.c_minus[1] - std::conj(c1)) < 1e-12);
    for (double r : {2.0, 10.0, 33.0}) CHECK(std::abs(e.evaluate(r) - two_term(lam, r)) < 1e-12);
  }
  CHECK(std::abs(bessel_asymptotic(build_expansion(2.5, 1), 10.0) - two_term(2.5, 10.0)) < 1e-12);
}

TEST_CASE("l = 0 pair") {
  for (double lam : {-0.5, 0.0, 1.0, 2.2}) {
    BesselExpansion e = build_expansion_any_order(lam, 0);
    const double ls = kPi * lam / 2 + kPi / 4;
    for (double r : {1.5, 7.0, 40.0}) {
      Complex v = e.evaluate(r);
      CHECK(std::abs(v.imag()) < 1e-15);
      CHECK(std::abs(v - std::sqrt(2.0 / kPi) * std::cos(r - ls) / std::sqrt(r)) < 1e-12);
    }
  }
  BesselExpansion h = build_expansion_any_order(-0.5, 0);
  for (double r : {0.3, 2.0, 25.0}) CHECK(std::abs(h.evaluate(r) - bessel_j_half_identity(r)) < 1e-12);
}

TEST_CASE("asymptotic remainder sizes") {
  CHECK(std::abs(bessel_asymptotic(build_expansion(2.0, 3), 20.0) - golden::kJ2At20) <=
        5.0 * std::pow(20.0, -4.5));
  BesselExpansion e = build_expansion(1.0, 2);
  const double c = std::abs(bessel_asymptotic(e, 10.0) - std::cyl_bessel_j(1.0, 10.0)) *
                   std::pow(10.0, 3.5);
  CHECK(std::abs(bessel_asymptotic(e, 5.0) - golden::kJ1At5) <= 2.0 * c * std::pow(5.0, -3.5));
  CHECK(std::abs(build_expansion(2.5, 2).evaluate(10.0) - golden::kJ52At10) < 1e-15);
  CHECK_THROWS_AS(bessel_asymptotic(e, 1.0), DomainError);
}

TEST_CASE("expansion terminates exactly for half-odd orders") {
  CHECK(build_expansion(1.5, 1).terminates());
  CHECK(build_expansion(2.5, 3).terminates());
  CHECK_FALSE(build_expansion(2.5, 1).terminates());
  CHECK_FALSE(build_expansion(2.0, 6).terminates());
  BesselExpansion e = build_expansion(2.5, 2);
  for (double r : {0.7, 3.0, 50.0}) CHECK(std::abs(e.evaluate(r) - std::cyl_bessel_j(2.5, r)) < 1e-14);
}

TEST_CASE("remainder decay certificates") {
  std::vector<double> grid = geometric(6.0, 1.25, 10);
  DecayCertificate c = remainder_decay_certificate(2.0, 1, grid);
  CHECK(c.slope <= -2.35);
  CHECK(c.satisfied());
  DecayCertificate t = remainder_decay_certificate(1.5, 2, grid);
  CHECK(t.exact_termination);
  CHECK(t.satisfied());
  std::vector<double> one{10.0};
  CHECK_THROWS_AS(remainder_decay_certificate(2.0, 1, one), FitError);
  std::vector<double> outside = geometric(3.0, 1.25, 10);
  CHECK_THROWS_AS(remainder_decay_certificate(2.0, 1, outside), FitError);
}

TEST_CASE("reference switches to the expansion beyond r = 40") {
  for (double r : {20.0, 30.0, 40.0}) {
    Complex s = bessel_j_series(1.0, r);
    Complex a = build_expansion_any_order(1.0, 6).evaluate(r);
    CHECK(std::abs(s - a) < 1e-9 * std::pow(20.0 / r, 7.5));
  }
  CHECK(std::abs(bessel_j_reference(1.0, 120.0) - std::cyl_bessel_j(1.0, 120.0)) < 1e-14);
}

TEST_CASE("jbar examples and small-r shape") {
  CHECK(std::abs(jbar(1, 0.25)) < 1e-16);
  CHECK(jbar(2, 0.0) == Complex(0.0));
  CHECK(std::abs(jbar(3, 0.5)) < 1e-16);
  CHECK(std::abs(jbar(1, 0.0) - 1.0 / kPi) < 1e-16);
  for (int n = 1; n <= 4; ++n) {
    // |J_nu(x)| <= (x/2)^nu / Gamma(nu + 1), attained as r -> 0.
    const double limit = std::pow(kPi, n / 2.0 - 1.0) / std::tgamma(n / 2.0);
    double sup = 0.0;
    for (double r = 0.005; r <= 2.0; r += 0.005) {
      sup = std::max(sup, std::abs(jbar(n, r)) / std::pow(r, n - 1));
    }
    CHECK(sup <= limit * (1.0 + 1e-12));
    CHECK(sup >= limit * 0.999);
  }
}

TEST_CASE("cutoff functions") {
  CHECK(cutoff_phi(0.5) == 1.0);
  CHECK(cutoff_phi(3.0) == 0.0);
  CHECK(cutoff_psi(3.0) == 1.0);
  double p = cutoff_phi(1.5);
  CHECK(p > 0.0);
  CHECK(p < 1.0);
  CHECK(p + cutoff_psi(1.5) == 1.0);
  CHECK(cutoff_phi(-1.7) == cutoff_phi(1.7));
}

TEST_CASE("cutoff derivatives") {
  CHECK(cutoff_derivative(0, 0.5) == 0.0);
  CHECK(cutoff_derivative(1, 3.0) == 0.0);
  const double h = 1e-5;
  double fd = (cutoff_psi(1.5 + h) - cutoff_psi(1.5 - h)) / (2 * h);
  CHECK(std::abs(cutoff_derivative(1, 1.5) - fd) < 1e-6);
  for (int m = 1; m <= 6; ++m) {
    for (double r : {1.1, 1.37, 1.5, 1.82}) {
      double g = 1e-4;
      double fdm = (cutoff_derivative(m - 1, r + g) - cutoff_derivative(m - 1, r - g)) / (2 * g);
      double scale = std::max(1.0, std::abs(cutoff_derivative(m, r)));
      CHECK(std::abs(cutoff_derivative(m, r) - fdm) < 1e-4 * scale * std::pow(10.0, m / 2.0));
    }
    CHECK(cutoff_derivative(m, 0.99) == 0.0);
    CHECK(cutoff_derivative(m, 2.01) == 0.0);
  }
  CHECK_THROWS_AS(cutoff_derivative(7, 1.5), DomainError);
}
