#include "chiral_casimir/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chiral_casimir::kernel {

Matrix2 rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, s, -s, c};
}

Matrix2 round_trip_matrix(double theta, MediumKind kind) {
  const Matrix2 forward = rotation_matrix(theta);
  if (kind == MediumKind::optically_active) return rotation_matrix(-theta) * forward;
  return forward * forward;
}

double log_det_kernel(double x, double theta) {
  if (!(x >= 0.0 && x < kMaxDamping)) {
    throw std::domain_error("log_det_kernel: x must lie in [0, 1 - 1e-15), got " +
                            std::to_string(x));
  }
  const double s = std::sin(theta);
  if (x < 0.5) return std::log1p(x * (x - 2.0 * std::cos(2.0 * theta)));
  // 1 + x^2 - 2x cos 2t == (1 - x)^2 + 4x sin^2 t, which keeps precision near x = 1.
  const double one_minus_x = 1.0 - x;
  return std::log(one_minus_x * one_minus_x + 4.0 * x * s * s);
}

}  // namespace chiral_casimir::kernel
