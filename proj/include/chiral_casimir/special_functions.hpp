#pragma once

// Trigonometric polylogarithm sums on and inside the unit circle.
//
//   clausen_cos(s, phi)          = sum_{m>=1} cos(m phi) / m^s   = Re Li_s(e^{i phi})
//   clausen_sin(s, phi)          = sum_{m>=1} sin(m phi) / m^s   = Im Li_s(e^{i phi})
//   re_polylog_damped(s, r, phi) = sum_{m>=1} r^m cos(m phi) / m^s
//
// Only the integer orders 2, 3 and 4 are supported.

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace chiral_casimir::special {

inline constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
inline constexpr double kZeta3 = 1.2020569031595942853997381615114;
inline constexpr double kZeta4 =
    std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi / 90.0;

class PolylogOrder {
 public:
  /// Throws std::invalid_argument unless s is 2, 3 or 4.
  explicit PolylogOrder(int s);

  int value() const noexcept { return s_; }

 private:
  int s_;
};

/// zeta(s) for s in {2, 3, 4}.
double zeta(PolylogOrder s) noexcept;

/// Reduces a finite angle to [0, 2pi) using an extended-precision 2pi.
/// Throws std::domain_error for non-finite input.
double reduce_angle(double phi);

double clausen_cos(PolylogOrder s, double phi);
double clausen_sin(PolylogOrder s, double phi);

/// Throws std::domain_error unless 0 <= r < 1.
double re_polylog_damped(PolylogOrder s, double r, double phi);

enum class Harmonic { cosine, sine };

struct TailedSum {
  double sum = 0.0;
  double tail_bound = 0.0;
  long terms = 0;
  bool converged = false;
};

/// Sums  sum_{m>=1} c_m * trig(m phi)  for a coefficient sequence with
/// m^decay_power * |c_m| nonincreasing, so the tail after M terms is bounded by
/// |c_M| * M / (decay_power - 1).
///
/// `offset` is the part of the total that is computed elsewhere; the relative
/// stopping tests use |offset + partial sum|. Summation stops once three
/// consecutive |c_m| fall below rel_tol * |total| and the tail bound does as well,
/// or once the coefficients underflow to zero.
template <class Coefficient>
TailedSum harmonic_series(Harmonic kind, double phi, Coefficient&& coefficient,
                          int decay_power, double offset, double rel_tol, long max_m) {
  TailedSum out;
  int small_run = 0;
  double last = 0.0;
  for (long m = 1; m <= max_m; ++m) {
    const double c = coefficient(m);
    out.terms = m;
    last = std::abs(c);
    if (c == 0.0) {
      out.tail_bound = 0.0;
      out.converged = true;
      return out;
    }
    const double arg = static_cast<double>(m) * phi;
    out.sum += c * (kind == Harmonic::cosine ? std::cos(arg) : std::sin(arg));
    const double scale = rel_tol * std::abs(offset + out.sum);
    small_run = last < scale ? small_run + 1 : 0;
    if (small_run >= 3) {
      const double tail = last * static_cast<double>(m) / (decay_power - 1);
      if (tail <= scale) {
        out.tail_bound = tail;
        out.converged = true;
        return out;
      }
    }
  }
  out.tail_bound = last * static_cast<double>(out.terms) / (decay_power - 1);
  return out;
}

}  // namespace chiral_casimir::special
