#pragma once

#include <limits>
#include <vector>

#include "mlf/complex.hpp"
#include "mlf/mittag_leffler.hpp"
#include "mlf/quadrature.hpp"

namespace mlf {

// Transform of x -> E_{alpha,beta}(e^{i phi} |x|^sigma) on R^n.
struct TransformProblem {
  double alpha = 1.0;
  double beta = 1.0;
  double phi = kPi;
  double sigma = 1.0;
  int n = 1;

  MLParams ml() const { return {alpha, beta}; }
  // 0 < alpha < 2, beta > 0, phi in (-pi, pi], |phi| > pi alpha/2,
  // sigma > 0, n >= 1.
  void validate() const;
  // validate() plus sigma > (n-1)/2.
  void require_tail_regime() const;
};

struct TailStrategy {
  enum class Kind { BesselExpansionAccelerated, DirectPeriodSum, ContourRotation };
  Kind kind = Kind::BesselExpansionAccelerated;
  int M = 0;            // expansion order; 0 picks the smallest M > (n-1)/2
  int accel_order = 6;  // Shanks order, in [2, 12]
  std::size_t max_panels = 200000;

  int order_for(int n) const;
  void validate(int n) const;
};

const char* to_string(TailStrategy::Kind k);

// (2 pi / |xi|^{n/2-1}) int_0^support f0(r) J_{n/2-1}(2 pi |xi| r) r^{n/2} dr.
// An infinite support uses the exponential map with unit rate, which suits
// profiles that decay at least exponentially.
QuadResult fourier_radial_reference(const RealFunction& f0, int n, double xi_mag,
                                    const QuadratureConfig& cfg = {},
                                    double support = std::numeric_limits<double>::infinity());

// int_0^2 phi_cut(r) E(e^{i phi} r^sigma / |xi|^sigma) Jbar_n(r) dr.
QuadResult compute_M(const TransformProblem& tp, double xi_mag,
                     const QuadratureConfig& cfg = {});

// int_1^inf psi_cut(r) E(e^{i phi} r^sigma / |xi|^sigma) Jbar_n(r) dr.
// Panels are half periods of Jbar_n; extrapolation begins once
// r >= regular_start(tp, xi), where the ML factor is in its algebraic regime.
// ContourRotation integrates [1, R] directly and continues the e^{+-2 pi i r}
// parts along rays R + t e^{+-i theta} into the half planes where they decay.
QuadResult compute_N(const TransformProblem& tp, double xi_mag, const TailStrategy& strategy,
                     const QuadratureConfig& cfg = {});

double regular_start(const TransformProblem& tp, double xi_mag);

struct TransformValue {
  Complex value{};
  double error = 0.0;
  Complex M{};
  Complex N{};
};

// (2 pi / |xi|^n) (compute_M + compute_N).
TransformValue ml_transform(const TransformProblem& tp, double xi_mag,
                            const TailStrategy& strategy = {},
                            const QuadratureConfig& cfg = {});

// Coefficients a_{l,j} with Q_l(s) = sum_j a_{l,j} s^{j sigma} P_j(e^{i phi} s^sigma),
// where Q_l(s) = s^l (d/ds)^l P_0(e^{i phi} s^sigma). Index j = 0..l.
std::vector<Complex> q_coefficients(double sigma, double phi, int ell);

// Q_l(r) for l >= 0; Q_0 is the contour integral with the simple pole at
// e^{i phi} r^sigma, equal to 2 pi i alpha E(e^{i phi} r^sigma).
Complex q_kernel(const TransformProblem& tp, int ell, double r);

// Q_0..Q_lmax at r, sharing one set of contour integrals.
std::vector<Complex> q_kernels(const TransformProblem& tp, int lmax, double r);

// |LHS - RHS| / |LHS| for the N-fold integration by parts of
//   int_1^inf e^{ir} r^{(n-1)/2 - l} psi(r) Q_0(r/|xi|) dr.
// Requires N in {1, 2, 3} and l in {0, 1}.
double ibp_identity_check(const TransformProblem& tp, double xi_mag, int ell, int N,
                          const QuadratureConfig& cfg = {});

}  // namespace mlf
