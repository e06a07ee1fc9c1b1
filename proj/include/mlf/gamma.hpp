#pragma once

#include "mlf/complex.hpp"

namespace mlf {

// True when z is exactly 0, -1, -2, ...
bool is_nonpositive_integer(Complex z);

// Gamma on the complex plane. Lanczos approximation (g = 607/128) with the
// reflection formula for Re z < 1/2; purely real arguments go through
// std::tgamma. Relative accuracy is about 1e-14 for |z| <= 50.
// Throws PoleError at the nonpositive integers.
Complex complex_gamma(Complex z);

// 1/Gamma(z), entire. Exactly zero at the nonpositive integers.
Complex reciprocal_gamma(Complex z);

// Principal branch of log Gamma for Re z >= 1/2 (Lanczos form).
Complex log_gamma(Complex z);

}  // namespace mlf
