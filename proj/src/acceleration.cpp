#include "mlf/acceleration.hpp"

namespace mlf {

void AccelerationConfig::validate() const {
  if (order < 2 || order > 12) {
    throw DomainError("AccelerationConfig: accel_order must lie in [2, 12]");
  }
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("AccelerationConfig: tolerances must be positive");
  }
  if (max_panels < 1) {
    throw DomainError("AccelerationConfig: max_panels must be >= 1");
  }
}

Complex wynn_epsilon(std::span<const Complex> sums) {
  std::size_t m = sums.size();
  if (m == 0) throw DomainError("wynn_epsilon: empty sequence");
  if (m % 2 == 0) {
    sums = sums.subspan(1);
    --m;
  }
  // prev holds column k-1, cur column k; even columns carry the estimates.
  std::vector<Complex> prev(m + 1, Complex(0.0));
  std::vector<Complex> cur(sums.begin(), sums.end());
  Complex best = cur.back();
  for (std::size_t col = 1; col < m; ++col) {
    std::vector<Complex> next(m - col);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      Complex diff = cur[j + 1] - cur[j];
      if (diff == Complex(0.0)) {
        // The sequence is already stationary at this level.
        return col % 2 == 1 ? cur[j + 1] : best;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) {
      if (!is_finite(cur.back())) return best;
      best = cur.back();
    }
  }
  return best;
}

Complex iterated_aitken(std::span<const Complex> sums) {
  std::vector<Complex> s(sums.begin(), sums.end());
  if (s.empty()) throw DomainError("iterated_aitken: empty sequence");
  while (s.size() >= 3) {
    std::vector<Complex> t(s.size() - 2);
    for (std::size_t j = 0; j < t.size(); ++j) {
      Complex d1 = s[j + 1] - s[j];
      Complex d2 = s[j + 2] - s[j + 1];
      Complex den = d2 - d1;
      t[j] = den == Complex(0.0) ? s[j + 2] : s[j + 2] - d2 * d2 / den;
    }
    s = std::move(t);
  }
  return s.back();
}

}  // namespace mlf
