#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "mlf/complex.hpp"
#include "mlf/errors.hpp"
#include "mlf/quadrature.hpp"

namespace mlf {

// Wynn's epsilon algorithm on the given partial sums. With 2k+1 sums this is
// the Shanks transform e_k of the first one; with an even count the leading
// sum is dropped.
Complex wynn_epsilon(std::span<const Complex> sums);

// Repeated Aitken delta-squared until a single value remains.
Complex iterated_aitken(std::span<const Complex> sums);

struct AccelerationConfig {
  int order = 6;             // Shanks order k, in [2, 12]
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_panels = 200000;

  void validate() const;
};

template <class V>
struct AcceleratedResult {
  V value{};
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

// Sums panel integrals panel(0), panel(1), ... and extrapolates the sequence
// of partial sums componentwise. Extrapolation starts once regular_start
// panels have been added; the run stops when three consecutive estimates
// agree within tolerance.
template <class V, class PanelFn>
AcceleratedResult<V> accelerate_panel_sums(PanelFn&& panel,
                                           std::size_t regular_start,
                                           const AccelerationConfig& cfg) {
  cfg.validate();
  const std::size_t window = 2 * static_cast<std::size_t>(cfg.order) + 1;
  AcceleratedResult<V> out;
  std::vector<V> sums;
  std::vector<V> estimates;
  double quad_error = 0.0;
  V running{};
  std::size_t nc = 0;
  std::vector<Complex> scratch(window);

  for (std::size_t k = 0; k < cfg.max_panels; ++k) {
    BasicQuadResult<V> piece = panel(k);
    out.evaluations += piece.evaluations;
    quad_error += piece.error;
    if (k == 0) {
      running = piece.value;
      nc = detail::component_count(running);
    } else {
      running += piece.value;
    }
    sums.push_back(running);
    out.panels = k + 1;
    if (k + 1 < regular_start || sums.size() < window) continue;

    V est = running;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < window; ++i) {
        scratch[i] = detail::component(sums[sums.size() - window + i], c);
      }
      Complex e = wynn_epsilon(scratch);
      if constexpr (std::is_same_v<V, Complex>) {
        est = e;
      } else {
        est[c] = e;
      }
    }
    estimates.push_back(est);
    if (estimates.size() >= 3) {
      const V& e0 = estimates[estimates.size() - 3];
      const V& e1 = estimates[estimates.size() - 2];
      const V& e2 = estimates[estimates.size() - 1];
      V d1 = e2 - e1;
      V d2 = e1 - e0;
      double spread = std::max(detail::max_abs(d1), detail::max_abs(d2));
      double tol = std::max(cfg.abs_tol, cfg.rel_tol * detail::max_abs(e2));
      if (spread <= tol) {
        out.value = e2;
        out.error = spread + quad_error;
        return out;
      }
    }
    // Keep memory bounded; only the trailing window is ever needed.
    if (sums.size() > 4 * window) sums.erase(sums.begin(), sums.end() - window);
    if (estimates.size() > 8) estimates.erase(estimates.begin(), estimates.end() - 3);
  }
  throw ConvergenceError("acceleration: no stable estimate after " +
                         std::to_string(cfg.max_panels) + " panels");
}

}  // namespace mlf
