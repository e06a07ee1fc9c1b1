#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "golden_values.hpp"
#include "mlf/errors.hpp"
#include "mlf/gamma.hpp"
#include "mlf/mittag_leffler.hpp"

using namespace mlf;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

const QuadratureConfig kTight{1e-15, 1e-13, 4000, 60};

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((MLParams{2.5, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((MLParams{0.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((MLParams{0.5, -1.0}.validate()), DomainError);
  MLParams p{0.8, 1.0};
  ContourSpec c = ContourSpec::for_angle(p, kPi);
  CHECK(c.omega > kPi * 0.4);
  CHECK(c.omega < kPi * 0.8);
  CHECK(std::exp(std::pow(c.rho_max, 1.0 / p.alpha) * std::cos(c.omega / p.alpha)) < 1e-18);
  ContourSpec bad = c;
  bad.omega = 0.3 * kPi;
  CHECK_THROWS_AS(bad.validate(p), DomainError);
}

TEST_CASE("series examples") {
  CHECK(std::abs(ml_series({1, 1}, 1.0).value - std::exp(1.0)) < 1e-15);
  CHECK(std::abs(ml_series({0.7, 1.3}, 0.0).value - 1.0 / std::tgamma(1.3)) < 1e-15);
  CHECK(rel(ml_series({0.5, 1}, -1.0).value, golden::kMlHalfMinusOne) < 1e-14);
  CHECK(rel(ml_series({0.4, 0.5}, -4.0).value, golden::kMl04_05_Minus4) < 1e-12);
  CHECK(rel(ml_series({1, 2}, 1.0).value, std::exp(1.0) - 1.0) < 1e-15);
}

TEST_CASE("contour examples") {
  MLParams p{1, 1};
  ContourSpec c = ContourSpec::with_omega(p, 0.6 * kPi, 1.0);
  CHECK(rel(ml_contour(p, -1.0, c).value, std::exp(-1.0)) < 1e-10);
  MLParams q{0.8, 1};
  CHECK(rel(ml_contour(q, 0.0, ContourSpec::for_angle(q, kPi)).value, 1.0) < 1e-10);
  MLParams s{0.8, 1.5};
  Complex z = -2.0;
  ContourSpec cs = ContourSpec::for_angle(s, kPi, 4.0);
  CHECK(rel(ml_contour(s, z, cs, kTight).value, golden::kMl08_15_Minus2) < 1e-8);
  CHECK(rel(ml_contour(s, z, cs, kTight).value, ml_series(s, z).value) < 1e-8);
}

TEST_CASE("ray examples") {
  CHECK(rel(ml_on_ray({1, 1}, kPi, 1.0).value, std::exp(-1.0)) < 1e-10);
  CHECK(rel(ml_on_ray({0.6, 1}, kPi, 0.0).value, 1.0) < 1e-12);
  Complex v = ml_on_ray({0.6, 1}, 0.75 * kPi, 5.0).value;
  CHECK(rel(v, golden::kMl06_1_Ray5) < 1e-10);
  CHECK(rel(v, ml_series({0.6, 1}, std::polar(5.0, 0.75 * kPi)).value) < 1e-7);
}

TEST_CASE("sector asymptotic examples") {
  CHECK(std::abs(ml_sector_asymptotic({1, 1}, -50.0, 6)) <= 1.0 / 2500.0);
  CHECK(ml_sector_asymptotic({0.5, 1}, -100.0, 0) == Complex(0.0));
  Complex asym = ml_sector_asymptotic({0.5, 1}, std::polar(100.0, kPi), 12);
  Complex ray = ml_on_ray({0.5, 1}, kPi, 100.0).value;
  CHECK(rel(asym, ray) < 1e-6);
  CHECK(rel(ray, golden::kMlHalfMinus100) < 1e-10);
  CHECK_THROWS_AS(ml_sector_asymptotic({1.2, 1}, 30.0, 4), DomainError);
  CHECK_THROWS_AS(ml_sector_asymptotic({0.5, 1}, -5.0, 4), DomainError);
}

TEST_CASE("hankel reciprocal gamma") {
  MLParams p{0.7, 1.2};
  ContourSpec c = ContourSpec::for_angle(p, kPi);
  CHECK(rel(hankel_reciprocal_gamma(p, c, p.alpha).value, 1.0 / std::tgamma(1.2)) < 1e-10);
  CHECK(rel(hankel_reciprocal_gamma(p, c, 0.0).value, 1.0 / std::sqrt(kPi)) < 1e-10);
  MLParams q{0.9, 0.9};
  CHECK(std::abs(hankel_reciprocal_gamma(q, ContourSpec::for_angle(q, kPi), 0.0).value) < 1e-12);
}

TEST_CASE("dispatch examples") {
  MLValue v = ml_eval({1, 2}, 1.0);
  CHECK(rel(v.value, std::exp(1.0) - 1.0) < 1e-14);
  CHECK(v.method == MLMethod::Series);
  CHECK(std::abs(ml_eval({0.7, 1}, 0.0).value - 1.0) < 1e-15);
  Complex z = std::polar(30.0, kPi);
  Complex ray = ml_on_ray({0.7, 1}, kPi, 30.0).value;
  Complex asym = ml_sector_asymptotic({0.7, 1}, z, 10);
  CHECK(rel(ray, asym) < 1e-6);
  CHECK(rel(ray, golden::kMl07_1_Minus30) < 1e-9);
  CHECK(rel(ml_eval({0.7, 1}, z).value, golden::kMl07_1_Minus30) < 1e-9);
  CHECK(ml_eval({0.5, 1}, std::polar(1e4, kPi)).method == MLMethod::Asymptotic);
  CHECK_THROWS_AS(ml_eval({0.8, 1}, 100.0), DomainError);
  CHECK_THROWS_AS(ml_series({0.8, 1}, 100.0), AccuracyError);
  CHECK(rel(ml_eval({1.2, 2}, std::polar(4.0, -0.75 * kPi)).value, golden::kMl12_2_Ray4) < 1e-12);
}

TEST_CASE("ray and series agree on the representation grid") {
  for (double a : {0.4, 0.8, 1.2, 1.7}) {
    for (double b : {0.5, 1.0, 2.0}) {
      for (double phi : {0.75 * kPi, -0.75 * kPi, kPi}) {
        if (std::abs(phi) <= kPi * a / 2) continue;
        for (double r : {0.1, 1.0, 4.0}) {
          Complex s = ml_series({a, b}, std::polar(r, phi)).value;
          Complex q = ml_on_ray({a, b}, phi, r).value;
          CHECK_MESSAGE(rel(q, s) < 1e-7, "alpha " << a << " beta " << b << " r " << r);
        }
      }
    }
  }
}

TEST_CASE("epsilon independence") {
  MLParams p{0.8, 1.3};
  Complex z = std::polar(0.3, 0.9 * kPi);
  Complex ref = ml_contour(p, z, ContourSpec::for_angle(p, kPi, 1.0), kTight).value;
  for (double eps : {0.5, 2.0}) {
    Complex v = ml_contour(p, z, ContourSpec::for_angle(p, kPi, eps), kTight).value;
    CHECK(rel(v, ref) < 1e-9);
  }
}

TEST_CASE("omega independence") {
  MLParams p{0.6, 1.0};
  double lo = kPi * 0.3, hi = kPi * 0.6;
  Complex a = ml_on_ray(p, kPi, 3.0, ContourSpec::with_omega(p, lo + 0.3 * (hi - lo)), kTight).value;
  Complex b = ml_on_ray(p, kPi, 3.0, ContourSpec::with_omega(p, lo + 0.7 * (hi - lo)), kTight).value;
  CHECK(rel(a, b) < 1e-9);
}

TEST_CASE("sector decay keeps r^sigma E bounded") {
  const double sigma = 0.9;
  for (double a : {0.5, 1.3}) {
    MLParams p{a, 1.0};
    double running = 0.0, at_half = 0.0;
    for (double r = 1.0; r <= 100.0; r *= 1.1) {
      double v = std::pow(r, sigma) * std::abs(ml_eval(p, std::polar(std::pow(r, sigma), kPi)).value);
      running = std::max(running, v);
      if (r < 50.0) at_half = running;
    }
    CHECK(std::isfinite(running));
    CHECK(running <= at_half * 1.001);
    // For alpha < 1 the approach to 1/Gamma(beta - alpha) is monotone.
    if (a < 1.0) CHECK(std::abs(running * std::abs(complex_gamma(1.0 - a)) - 1.0) < 0.02);
  }
}

TEST_CASE("growth sector rate") {
  MLParams p{0.8, 1.0};
  for (double phi : {0.0, 0.2 * kPi}) {
    double previous = 1e300;
    for (double r : {10.0, 20.0, 35.0, 50.0}) {
      Complex v = ml_eval(p, std::polar(r, phi)).value;
      double ratio = std::log(std::abs(v)) / std::pow(r, 1.0 / p.alpha);
      double gap = std::abs(ratio / std::cos(phi / p.alpha) - 1.0);
      CHECK(gap < previous);
      previous = gap;
      if (r == 50.0) CHECK(gap < 0.05);
    }
  }
}

TEST_CASE("kernel powers are scaled derivatives") {
  MLParams p{0.8, 1.1};
  for (Complex w : {Complex(-0.7, 0.2), std::polar(12.0, 0.95 * kPi), std::polar(60.0, kPi)}) {
    KernelPowers k = ml_kernel_powers(p, w, 2);
    Complex e = ml_eval(p, w).value;
    CHECK(rel(k.values[0], 2.0 * kPi * kI * p.alpha * e) < 1e-9);
    double h = 1e-4 * std::max(1.0, std::abs(w));
    Complex d = (ml_eval(p, w + h).value - ml_eval(p, w - h).value) / (2.0 * h);
    CHECK(std::abs(k.values[1] - 2.0 * kPi * kI * p.alpha * d) <
          1e-6 * std::abs(k.values[0]) + 1e-9);
  }
}
