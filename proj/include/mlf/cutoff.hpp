#pragma once

namespace mlf {

// phi_cut(r) = h(2-|r|) / (h(2-|r|) + h(|r|-1)), h(t) = exp(-1/t) for t > 0
// and 0 otherwise. Equal to 1 on [-1, 1], supported in [-2, 2].
double cutoff_phi(double r);
double cutoff_psi(double r);

// m-th derivative of psi_cut, 0 <= m <= 6, from truncated Taylor arithmetic
// on the closed form. Throws DomainError for m outside that range.
double cutoff_derivative(int m, double r);

}  // namespace mlf
