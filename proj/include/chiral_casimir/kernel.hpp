#pragma once

// Polarization rotation operators and the round-trip log-determinant.

namespace chiral_casimir::kernel {

/// Real 2x2 matrix, row-major.
struct Matrix2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static constexpr Matrix2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr double determinant() const noexcept { return a11 * a22 - a12 * a21; }
  constexpr Matrix2 transposed() const noexcept { return {a11, a21, a12, a22}; }

  friend constexpr Matrix2 operator*(const Matrix2& a, const Matrix2& b) noexcept {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend constexpr Matrix2 operator*(double s, const Matrix2& a) noexcept {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
  }
  friend constexpr Matrix2 operator-(const Matrix2& a, const Matrix2& b) noexcept {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Fixed-angle and Faraday media add the return-pass rotation (round trip 2 theta);
/// an optically active medium undoes it (round trip identity).
enum class MediumKind { fixed_angle, faraday, optically_active };

/// [[cos t, sin t], [-sin t, cos t]]
Matrix2 rotation_matrix(double theta);

Matrix2 round_trip_matrix(double theta, MediumKind kind);

/// Largest x accepted by log_det_kernel is below this bound.
inline constexpr double kMaxDamping = 1.0 - 1e-15;

/// ln det(I - x A^2) = ln(1 + x^2 - 2 x cos 2theta) for x = exp(-2 kappa l).
/// Throws std::domain_error unless 0 <= x < 1 - 1e-15.
double log_det_kernel(double x, double theta);

}  // namespace chiral_casimir::kernel
