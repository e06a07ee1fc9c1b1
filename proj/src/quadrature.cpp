#include "mlf/quadrature.hpp"

namespace mlf {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) {
    throw DomainError("QuadratureConfig: abs_tol must lie in (0, 1)");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("QuadratureConfig: rel_tol must lie in (0, 1)");
  }
  if (max_subdivisions < 1) {
    throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
  }
  if (max_depth < 1) {
    throw DomainError("QuadratureConfig: max_depth must be >= 1");
  }
}

QuadResult integrate_finite(const RealFunction& f, double a, double b,
                            const QuadratureConfig& cfg,
                            std::span<const double> breakpoints) {
  cfg.validate();
  return adaptive_integrate<Complex>(f, a, b, cfg, breakpoints);
}

QuadResult integrate_semi_infinite(const RealFunction& f, double a,
                                   DecayHint hint,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  return adaptive_integrate_semi_infinite<Complex>(f, a, hint, cfg);
}

}  // namespace mlf
