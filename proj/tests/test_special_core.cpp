#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mlf/acceleration.hpp"
#include "mlf/complex.hpp"
#include "mlf/errors.hpp"
#include "mlf/gamma.hpp"
#include "mlf/quadrature.hpp"

using namespace mlf;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("gamma at classical points") {
  CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(complex_gamma(0.5) - std::sqrt(kPi)) < 1e-15);
  CHECK(std::abs(complex_gamma(4.0) - 6.0) < 1e-14);
  CHECK_THROWS_AS(complex_gamma(0.0), PoleError);
  CHECK_THROWS_AS(complex_gamma(-3.0), PoleError);
}

TEST_CASE("reciprocal gamma is entire") {
  CHECK(reciprocal_gamma(0.0) == Complex(0.0));
  CHECK(reciprocal_gamma(-1.0) == Complex(0.0));
  CHECK(std::abs(reciprocal_gamma(1.0) - 1.0) < 1e-15);
  CHECK(reciprocal_gamma(150.0).real() > 0.0);
}

TEST_CASE("gamma recurrence and reciprocal identity off the poles") {
  for (double x = -4.75; x <= 6.0; x += 0.5) {
    for (double y : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
      Complex z(x, y);
      if (is_nonpositive_integer(z) || is_nonpositive_integer(z + 1.0)) continue;
      CHECK(rel(complex_gamma(z + 1.0), z * complex_gamma(z)) < 1e-12);
      CHECK(std::abs(reciprocal_gamma(z) * complex_gamma(z) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("gamma against lgamma for large arguments") {
  for (double x : {10.5, 25.25, 49.0}) {
    CHECK(std::abs(log_gamma(x).real() - std::lgamma(x)) < 1e-13 * std::lgamma(x));
    CHECK(rel(complex_gamma(x), std::tgamma(x)) < 1e-13);
  }
  // |Gamma(iy)|^2 = pi / (y sinh(pi y))
  for (double y : {0.5, 3.0, 20.0}) {
    double exact = kPi / (y * std::sinh(kPi * y));
    CHECK(std::abs(std::norm(complex_gamma(Complex(0.0, y))) - exact) < 1e-12 * exact);
  }
}

TEST_CASE("principal power branch") {
  CHECK(std::abs(principal_pow(-1.0, 0.5) - kI) < 1e-15);
  CHECK(std::abs(principal_pow(std::polar(1.0, kPi / 2), 2.0) + 1.0) < 1e-15);
  CHECK(std::abs(principal_pow(4.0, 0.5) - 2.0) < 1e-15);
  CHECK(principal_arg(Complex(-1.0, -0.0)) == kPi);
}

TEST_CASE("principal power exponent laws") {
  for (double r : {0.3, 1.0, 7.0}) {
    for (double t : {-1.5, -0.4, 0.0, 0.9, 1.4}) {
      Complex z = std::polar(r, t);
      CHECK(std::abs(principal_pow(z, 1.0) - z) < 1e-15 * r);
      for (Complex a : {Complex(0.3), Complex(-0.2, 0.1), Complex(0.5, -0.4)}) {
        for (Complex b : {Complex(0.25), Complex(0.1, 0.3)}) {
          Complex lhs = principal_pow(z, a) * principal_pow(z, b);
          CHECK(rel(lhs, principal_pow(z, a + b)) < 1e-14);
        }
      }
    }
  }
}

TEST_CASE("finite quadrature examples") {
  QuadResult q = integrate_finite([](double) { return Complex(1.0); }, 0.0, 1.0);
  CHECK(std::abs(q.value - 1.0) < 1e-14);
  q = integrate_finite([](double t) { return Complex(std::cos(t), std::sin(t)); }, 0.0, kPi);
  CHECK(std::abs(q.value - Complex(0.0, 2.0)) < 1e-12);
  // Endpoint singularity t^{-1/2}.
  q = integrate_finite([](double t) { return Complex(1.0 / std::sqrt(t)); }, 0.0, 1.0,
                       QuadratureConfig{1e-8, 1e-8, 4000, 60});
  CHECK(std::abs(q.value - 2.0) < 1e-7);
  CHECK(q.error >= 0.0);
}

TEST_CASE("semi-infinite quadrature examples") {
  QuadResult q = integrate_semi_infinite([](double t) { return Complex(std::exp(-t)); }, 0.0,
                                         DecayHint::exponential(1.0));
  CHECK(std::abs(q.value - 1.0) < 1e-12);
  q = integrate_semi_infinite([](double t) { return Complex(t * std::exp(-t * t)); }, 0.0,
                              DecayHint::exponential(1.0));
  CHECK(std::abs(q.value - 0.5) < 1e-12);
  q = integrate_semi_infinite([](double t) { return Complex(1.0 / (1.0 + t * t)); }, 0.0,
                              DecayHint::algebraic(2.0));
  CHECK(std::abs(q.value - kPi / 2) < 1e-10);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return Complex(1.0); }, 0.0,
                                          DecayHint::algebraic(1.0)),
                  DomainError);
}

TEST_CASE("quadrature errors and validation") {
  QuadratureConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = {};
  bad.rel_tol = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(integrate_finite([](double t) { return Complex(1.0 / t); }, 0.0, 1.0),
                  Error);
  QuadratureConfig tight;
  tight.max_subdivisions = 3;
  CHECK_THROWS_AS(
      integrate_finite([](double t) { return Complex(std::sin(200.0 * t)); }, 0.0, 10.0, tight),
      ConvergenceError);
}

TEST_CASE("vector-valued quadrature integrates components together") {
  auto f = [](double t) {
    CVec v(2);
    v[0] = t;
    v[1] = t * t;
    return v;
  };
  BasicQuadResult<CVec> q = adaptive_integrate<CVec>(f, 0.0, 3.0, QuadratureConfig{});
  CHECK(std::abs(q.value[0] - 4.5) < 1e-13);
  CHECK(std::abs(q.value[1] - 9.0) < 1e-13);
}

TEST_CASE("sequence acceleration on alternating series") {
  // Partial sums of log 2 = 1 - 1/2 + 1/3 - ...
  std::vector<Complex> s;
  Complex acc = 0.0;
  for (int k = 1; k <= 13; ++k) {
    acc += (k % 2 ? 1.0 : -1.0) / k;
    s.push_back(acc);
  }
  CHECK(std::abs(wynn_epsilon(s) - std::log(2.0)) < 1e-9);
  CHECK(std::abs(iterated_aitken(s) - std::log(2.0)) < 1e-9);
  CHECK(std::abs(s.back() - std::log(2.0)) > 1e-2);
}

TEST_CASE("accelerated panel sums of an oscillatory tail") {
  // int_1^inf sin(t)/t dt = pi/2 - Si(1)
  const double si1 = 0.946083070367183;
  auto panel = [](std::size_t k) {
    double a = 1.0 + kPi * k, b = a + kPi;
    return adaptive_integrate<Complex>([](double t) { return Complex(std::sin(t) / t); }, a, b,
                                       QuadratureConfig{});
  };
  AcceleratedResult<Complex> r = accelerate_panel_sums<Complex>(panel, 0, AccelerationConfig{});
  CHECK(std::abs(r.value - (kPi / 2 - si1)) < 1e-10);
  CHECK(r.panels < 100);
  AccelerationConfig bad;
  bad.order = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  CHECK(std::abs(s.value().real() - 1e-13) < 1e-20);
}
