#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlf/complex.hpp"
#include "mlf/quadrature.hpp"
#include "mlf/radial_fourier.hpp"

namespace mlf {

using Sample = std::pair<double, Complex>;  // (|xi|, F(xi))

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  std::vector<Sample> grid;
};

// Least-squares line through (log |xi|, log |F|). Needs at least six samples
// on a geometric grid, all nonzero; DegenerateFitError otherwise.
ExponentFit fit_exponent(std::span<const Sample> samples);

// `points` values from lo to hi with a constant ratio.
std::vector<double> geometric_grid(double lo, double hi, int points);

// True when beta - alpha is a nonpositive integer, so 1/Gamma(beta - alpha)
// and with it the leading |x|^{-sigma} term of the profile vanish.
bool leading_term_vanishes(const TransformProblem& tp);

enum class SmallXiLaw { Power, Log, Constant };
const char* to_string(SmallXiLaw law);

// Power for (n-1)/2 < sigma < n, Log for sigma = n, Constant for sigma > n.
SmallXiLaw expected_small_xi_law(int n, double sigma);

// |F| = intercept + coefficient log|xi|; residual is RMS in log |F| so it is
// comparable with ExponentFit::residual.
struct LogFit {
  double intercept = 0.0;
  double coefficient = 0.0;
  double r_squared = 0.0;
  double residual = 0.0;
};

struct LawTolerances {
  double slope = 0.05;
  double spread = 0.05;      // relative spread of F / model over the limiting third
  double log_r_squared = 0.99;
  double log_selection = 5.0;  // power residual / log residual needed to pick Log
};

struct AsymptoticConfig {
  QuadratureConfig quad{1e-14, 1e-12, 4000, 60};
  TailStrategy strategy{TailStrategy::Kind::ContourRotation};
  LawTolerances tol;
  unsigned workers = 0;  // 0: worker_count()
};

struct SmallXiReport {
  SmallXiLaw expected = SmallXiLaw::Power;
  SmallXiLaw detected = SmallXiLaw::Power;
  double expected_slope = 0.0;
  ExponentFit fit;
  LogFit log_fit;
  double ratio_spread = 0.0;
  bool slope_matched = false;
  bool ratio_stable = false;
  bool leading_term_vanishes = false;  // ratio check skipped
  bool matched = false;
  std::string notes;

  // Throws LawMismatchError unless matched.
  void enforce() const;
};

struct LargeXiReport {
  double expected_slope = 0.0;
  ExponentFit fit;
  Complex constant_reference{};  // predicted limit of F |xi|^n
  Complex constant_measured{};   // F |xi|^n at the largest grid point
  double ratio_spread = 0.0;     // of F |xi|^n over the upper third
  Complex singular_constant{};   // coefficient of |xi|^{-n-sigma} from the |x|^sigma term
  double singular_ratio = 0.0;   // |F| |xi|^{n+sigma} / |singular_constant| at the top
  bool slope_matched = false;
  bool constants_matched = false;
  bool matched = false;
  std::string notes;

  void enforce() const;
};

struct AsymptoticReport {
  SmallXiReport small;
  LargeXiReport large;
  bool matched() const { return small.matched && large.matched; }
  void enforce() const;
};

// F on the grid, evaluated in parallel; ordering follows the grid.
std::vector<Sample> transform_samples(const TransformProblem& tp, std::span<const double> grid,
                                      const AsymptoticConfig& cfg = {});

// Grid must lie in [1e-4, 1e-1] (small) or [10, 1e4] (large).
SmallXiReport verify_small_xi(const TransformProblem& tp, std::span<const double> grid,
                              const AsymptoticConfig& cfg = {});
LargeXiReport verify_large_xi(const TransformProblem& tp, std::span<const double> grid,
                              const AsymptoticConfig& cfg = {});
SmallXiReport small_xi_report(const TransformProblem& tp, std::span<const Sample> samples,
                              const LawTolerances& tol = {});
LargeXiReport large_xi_report(const TransformProblem& tp, std::span<const Sample> samples,
                              const LawTolerances& tol = {});

// e^{i phi}/Gamma(alpha+beta) times the transform constant of |x|^sigma on R^n,
// pi^{-sigma-n/2} Gamma((n+sigma)/2) / Gamma(-sigma/2).
Complex large_xi_singular_constant(const TransformProblem& tp);

// (1/Gamma(beta)) int_0^2 phi_cut Jbar_n dr.
Complex near_constant(const TransformProblem& tp, const QuadratureConfig& cfg = {});

struct LpRegion {
  enum class Source { HausdorffYoung, Full };
  double p_lower = 1.0;
  double p_upper = 1.0;  // may be +inf
  bool lower_open = true;
  bool upper_open = true;
  Source source = Source::Full;

  bool contains(double p) const;
  bool is_endpoint(double p) const;
};

const char* to_string(LpRegion::Source s);

struct LpRegions {
  LpRegion full;
  std::optional<LpRegion> hausdorff_young;  // empty when sigma <= n/2
  // The regions assume 1/Gamma(beta - alpha) != 0; flagged otherwise.
  bool leading_term_vanishes = false;
};

// DomainError unless sigma > (n-1)/2.
LpRegions lp_region(const TransformProblem& tp);

enum class LpVerdict { Finite, DivergentAtZero, DivergentAtInfinity };
const char* to_string(LpVerdict v);

// |F| at Gauss-Legendre nodes of log-uniform shells covering [1e-3, 1] and
// [1, 1e3]. The samples serve every exponent p.
struct LpSamples {
  struct Shell {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> weight;  // includes |S^{n-1}| |xi|^{n-1} d|xi|
    std::vector<double> abs_f;
  };
  TransformProblem tp;
  std::vector<Shell> near;  // ordered from |xi| = 1 towards 0
  std::vector<Shell> far;   // ordered from |xi| = 1 towards infinity
};

struct LpCheck {
  LpVerdict verdict = LpVerdict::Finite;
  bool analytic = false;  // endpoint p, classified from the region
  double near_ratio = 0.0;  // geometric mean shell-to-shell ratio, last six shells
  double far_ratio = 0.0;
  double near_integral = 0.0;
  double far_integral = 0.0;
  std::vector<double> near_shells;
  std::vector<double> far_shells;
};

LpSamples sample_lp_shells(const TransformProblem& tp, const AsymptoticConfig& cfg = {},
                           int shells_per_side = 10);
LpCheck lp_numerical_check(const LpSamples& samples, double p);
LpCheck lp_numerical_check(const TransformProblem& tp, double p, const AsymptoticConfig& cfg = {});

}  // namespace mlf
