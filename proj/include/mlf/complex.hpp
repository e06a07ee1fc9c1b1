#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace mlf {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Argument in (-pi, pi]. std::arg returns -pi for a negative real with a
// negative-zero imaginary part; that value is folded onto +pi.
inline double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi) a = kPi;
  return a;
}

inline Complex principal_log(Complex z) {
  return {std::log(std::abs(z)), principal_arg(z)};
}

// z^w = exp(w (ln|z| + i arg z)). Throws DomainError for z = 0 with Re w <= 0.
Complex principal_pow(Complex z, Complex w);

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Neumaier's variant of Kahan summation, applied independently to the real
// and imaginary parts.
class CompensatedSum {
 public:
  void add(Complex x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  CompensatedSum& operator+=(Complex x) {
    add(x);
    return *this;
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  struct Part {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
      double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - t) + x;
      } else {
        comp += (x - t) + sum;
      }
      sum = t;
    }
    double value() const { return sum + comp; }
  };
  Part re_;
  Part im_;
};

}  // namespace mlf
