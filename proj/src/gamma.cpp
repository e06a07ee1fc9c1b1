#include "mlf/gamma.hpp"

#include <array>
#include <cmath>
#include <string>

#include "mlf/errors.hpp"

namespace mlf {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;

constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// log Gamma(z) for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
  Complex zm1 = z - 1.0;
  Complex series = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    series += kLanczosCoeffs[k] / (zm1 + static_cast<double>(k));
  }
  Complex t = zm1 + kLanczosG + 0.5;
  return kHalfLog2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    throw DomainError("log_gamma: requires Re z >= 1/2");
  }
  return lanczos_log_gamma(z);
}

Complex complex_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("complex_gamma: pole at z = " + std::to_string(z.real()));
  }
  if (z.imag() == 0.0) {
    return std::tgamma(z.real());
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return kPi / (std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)));
  }
  return std::exp(lanczos_log_gamma(z));
}

Complex reciprocal_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.imag() == 0.0) {
    double x = z.real();
    // tgamma overflows beyond ~171.6; 1/Gamma underflows to zero there anyway.
    if (x > 171.0) return std::exp(-std::lgamma(x));
    return 1.0 / std::tgamma(x);
  }
  if (z.real() < 0.5) {
    return std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)) / kPi;
  }
  return std::exp(-lanczos_log_gamma(z));
}

Complex principal_pow(Complex z, Complex w) {
  if (z == Complex{0.0, 0.0}) {
    if (w.real() > 0.0) return 0.0;
    throw DomainError("principal_pow: 0^w undefined for Re w <= 0");
  }
  return std::exp(w * principal_log(z));
}

}  // namespace mlf
