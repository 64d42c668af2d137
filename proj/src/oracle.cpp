#include "chiral_casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chiral_casimir/kernel.hpp"

namespace chiral_casimir::oracle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxSegments = 20'000;
constexpr double kRelativeFloor = 1e-14;

// u ln det(I - e^{-u} A^2). Both modes for n > 0; at n = 0 a tm_only zero mode
// keeps a single unrotated mode, ln(1 - e^{-u}) = log_det_kernel(e^{-u}, 0) / 2.
double integrand(double u, double theta, bool single_mode) {
  const double x = std::exp(-u);
  if (x >= kernel::kMaxDamping) return 0.0;  // u ln(u^2) -> 0 as u -> 0
  if (single_mode) return 0.5 * u * kernel::log_det_kernel(x, 0.0);
  return u * kernel::log_det_kernel(x, theta);
}

struct Segment {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

bool operator<(const Segment& x, const Segment& y) { return x.error < y.error; }

// 15-point Kronrod rule with the embedded 7-point Gauss rule; |K15 - G7| is
// used as the (pessimistic) error of the K15 value.
template <class F>
Segment kronrod_segment(F& f, double a, double b) {
  const auto& x = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
  const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kronrod = wk[0] * fc;
  double gauss = wg[0] * fc;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(mid - half * x[i]) + f(mid + half * x[i]);
    kronrod += wk[i] * pair;
    if (i % 2 == 0) gauss += wg[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs(kronrod - gauss) * half};
}

// Globally adaptive: bisect the worst segment until the summed error estimate
// is below abs_tol, or below kRelativeFloor times the segment-wise L1 norm.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol) {
  std::priority_queue<Segment> heap;
  heap.push(kronrod_segment(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  double l1 = std::abs(value);
  while (error > std::max(abs_tol, kRelativeFloor * l1)) {
    if (heap.size() >= kMaxSegments) {
      throw std::runtime_error("oracle quadrature did not reach tolerance on [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod_segment(f, worst.a, mid);
    const Segment right = kronrod_segment(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
    heap.push(left);
    heap.push(right);
  }
  // Re-add from scratch so the running updates leave no drift.
  value = 0.0;
  for (; !heap.empty(); heap.pop()) value += heap.top().value;
  if (!std::isfinite(value)) throw std::runtime_error("oracle quadrature produced a non-finite value");
  return value;
}

double richardson_derivative(auto&& f, double x, double step) {
  const double d1 = (f(x + step) - f(x - step)) / (2.0 * step);
  const double d2 = (f(x + 0.5 * step) - f(x - 0.5 * step)) / step;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

void QuadControl::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (!(kappa_cutoff_factor >= 10.0)) throw std::invalid_argument("cutoff must be >= 10");
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  if (!(fd_step_rel > 0.0 && fd_step_rel < 0.1)) {
    throw std::invalid_argument("fd_step_rel must lie in (0, 0.1)");
  }
}

double oracle_matsubara_term(long n, const ReducedPoint& p, const QuadControl& q) {
  q.validate();
  if (n < 0) throw std::domain_error("Matsubara index must be non-negative");
  if (n > 0 && (!(p.tau > 0.0) || !std::isfinite(p.tau))) {
    throw std::domain_error("oracle_matsubara_term needs tau > 0 for n > 0");
  }
  const double lo = n == 0 ? 0.0 : 2.0 * static_cast<double>(n) * p.tau;
  const bool single = n == 0 && p.zero_mode == ZeroModePolicy::tm_only;
  return 0.5 * integrate([&](double u) { return integrand(u, p.theta, single); }, lo,
                         lo + q.kappa_cutoff_factor, 1e-2 * q.abs_tol);
}

double oracle_free_energy(const ReducedPoint& p, const QuadControl& q) {
  q.validate();
  if (!(p.tau > 0.0) || !std::isfinite(p.tau)) {
    throw std::domain_error("oracle_free_energy needs tau > 0");
  }
  double total = 0.5 * oracle_matsubara_term(0, p, q);
  for (long n = 1; n <= q.max_n; ++n) {
    const double a = 2.0 * static_cast<double>(n) * p.tau;
    if (std::exp(-a) * (1.0 + a) * kPi * kPi / 6.0 < q.abs_tol) return total;
    total += oracle_matsubara_term(n, p, q);
  }
  throw std::runtime_error("oracle Matsubara sum not converged within max_n");
}

double oracle_free_energy_T0(double theta, const QuadControl& q) {
  q.validate();
  if (!std::isfinite(theta)) throw std::domain_error("theta must be finite");
  const double cutoff = q.kappa_cutoff_factor;
  auto inner = [&](double z) {
    return integrate([&](double u) { return integrand(u, theta, false); }, z, z + cutoff,
                     1e-3 * q.abs_tol);
  };
  return integrate(inner, 0.0, cutoff, q.abs_tol) / (32.0 * kPi * kPi);
}

double oracle_pressure(const ReducedPoint& p, const QuadControl& q) {
  q.validate();
  QuadControl tight = q;
  tight.abs_tol = std::min(q.abs_tol, 1e-14);
  // Units with l0 = 1 at fixed T: E(lambda) ~ E_hat(theta, tau lambda) / lambda^2.
  auto energy = [&](double lambda) {
    return oracle_free_energy({p.theta, p.tau * lambda, p.zero_mode}, tight) / (lambda * lambda);
  };
  return -richardson_derivative(energy, 1.0, q.fd_step_rel);
}

double oracle_pressure_T0(double theta, const QuadControl& q) {
  q.validate();
  const double e0 = oracle_free_energy_T0(theta, q);
  auto energy = [e0](double lambda) { return e0 / (lambda * lambda * lambda); };
  return -richardson_derivative(energy, 1.0, q.fd_step_rel);
}

Comparison compare(double engine_value, double oracle_value, double rel_tol) {
  Comparison c;
  c.abs_gap = std::abs(engine_value - oracle_value);
  const double denom =
      std::max({std::abs(engine_value), std::abs(oracle_value), 1e-30});
  c.rel_gap = c.abs_gap / denom;
  c.pass = c.rel_gap < rel_tol;
  return c;
}

}  // namespace chiral_casimir::oracle
