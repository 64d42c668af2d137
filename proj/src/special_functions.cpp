#include "chiral_casimir/special_functions.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace chiral_casimir::special {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiLong = 6.283185307179586476925286766559005768L;

constexpr int kEvenZetaCount = 96;

// zeta(2k) for k = 0..kEvenZetaCount-1 (index 0 unused), from
// (k + 1/2) zeta(2k) = sum_{j=1}^{k-1} zeta(2j) zeta(2k-2j).
// Every term is positive, so the recurrence is stable.
constexpr std::array<double, kEvenZetaCount> make_even_zeta_table() {
  std::array<double, kEvenZetaCount> z{};
  z[1] = kPi * kPi / 6.0;
  for (int k = 2; k < kEvenZetaCount; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j) acc += z[j] * z[k - j];
    z[k] = acc / (k + 0.5);
  }
  return z;
}

constexpr auto kEvenZeta = make_even_zeta_table();

double zeta_int(int s) {
  switch (s) {
    case 2: return kZeta2;
    case 3: return kZeta3;
    case 4: return kZeta4;
    default: return 0.0;
  }
}

// Li_s(e^w) for integer s >= 2 and 0 < |w| < 2pi:
//   sum_{k=0}^{s-2} zeta(s-k) w^k/k! + w^{s-1}/(s-1)! (H_{s-1} - log(-w))
//   - w^s/(2 s!) + sum_{j>=1} (-1)^j zeta(2j) (w/2pi)^{2j} w^{s-1} / (j (2j+1)...(2j+s-1)).
// The last sum uses zeta(1-2j) = -B_{2j}/(2j) rewritten through zeta(2j).
std::complex<double> polylog_log_expansion(int s, std::complex<double> w) {
  std::complex<double> sum = 0.0;
  std::complex<double> power = 1.0;
  double factorial = 1.0;
  for (int k = 0; k <= s - 2; ++k) {
    sum += zeta_int(s - k) * power / factorial;
    power *= w;
    factorial *= k + 1;
  }
  double harmonic = 0.0;
  for (int k = 1; k <= s - 1; ++k) harmonic += 1.0 / k;

  const std::complex<double> lead = power / factorial;  // w^{s-1}/(s-1)!
  sum += lead * (harmonic - std::log(-w));
  sum -= 0.5 * lead * w / static_cast<double>(s);

  const std::complex<double> z = w / kTwoPi;
  const std::complex<double> z2 = z * z;
  std::complex<double> zpow = 1.0;
  for (int j = 1; j < kEvenZetaCount; ++j) {
    zpow *= -z2;
    double denom = j;
    for (int i = 1; i <= s - 1; ++i) denom *= 2 * j + i;
    const std::complex<double> term = kEvenZeta[j] * zpow * power / denom;
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

}  // namespace

PolylogOrder::PolylogOrder(int s) : s_(s) {
  if (s < 2 || s > 4) {
    throw std::invalid_argument("polylog order must be 2, 3 or 4, got " + std::to_string(s));
  }
}

double zeta(PolylogOrder s) noexcept { return zeta_int(s.value()); }

double reduce_angle(double phi) {
  if (!std::isfinite(phi)) throw std::domain_error("angle must be finite");
  long double r = std::fmod(static_cast<long double>(phi), kTwoPiLong);
  if (r < 0) r += kTwoPiLong;
  auto out = static_cast<double>(r);
  if (out >= kTwoPi) out = 0.0;
  return out;
}

double clausen_cos(PolylogOrder s, double phi) {
  double x = reduce_angle(phi);
  if (x > kPi) x = kTwoPi - x;
  switch (s.value()) {
    case 2:
      return kPi * kPi / 6.0 - kPi * x / 2.0 + x * x / 4.0;
    case 4: {
      const double x2 = x * x;
      return kZeta4 - kPi * kPi * x2 / 12.0 + kPi * x2 * x / 12.0 - x2 * x2 / 48.0;
    }
    default:
      if (x == 0.0) return kZeta3;
      return polylog_log_expansion(3, {0.0, x}).real();
  }
}

double clausen_sin(PolylogOrder s, double phi) {
  double x = reduce_angle(phi);
  double sign = 1.0;
  if (x > kPi) {
    x = kTwoPi - x;
    sign = -1.0;
  }
  if (s.value() == 3) return sign * x * (x - kPi) * (x - kTwoPi) / 12.0;
  if (x == 0.0 || x == kPi) return 0.0;
  return sign * polylog_log_expansion(s.value(), {0.0, x}).imag();
}

double re_polylog_damped(PolylogOrder s, double r, double phi) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw std::domain_error("damping factor must lie in [0, 1), got " + std::to_string(r));
  }
  if (r == 0.0) return 0.0;
  double x = reduce_angle(phi);
  if (x > kPi) x -= kTwoPi;

  if (r > 0.5) return polylog_log_expansion(s.value(), {std::log(r), x}).real();

  // Geometric tail after M terms: r^{M+1} / ((M+1)^s (1-r)).
  const int order = s.value();
  double sum = 0.0;
  double rm = 1.0;
  for (int m = 1;; ++m) {
    rm *= r;
    sum += rm * std::cos(m * x) / std::pow(static_cast<double>(m), order);
    const double tail = rm * r / (std::pow(m + 1.0, order) * (1.0 - r));
    if (tail < 1e-18) break;
  }
  return sum;
}

}  // namespace chiral_casimir::special
