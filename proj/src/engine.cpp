#include "chiral_casimir/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chiral_casimir/special_functions.hpp"

namespace chiral_casimir {
namespace {

using special::Harmonic;
using special::PolylogOrder;

constexpr double kPi = std::numbers::pi;

const PolylogOrder kOrder2{2};
const PolylogOrder kOrder3{3};
const PolylogOrder kOrder4{4};

void require_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("reduced temperature must be positive and finite (use the T = 0 path "
                            "for tau = 0), got " + std::to_string(tau));
  }
}

// Bose-type weights of the m-th harmonic after the geometric n-sums, c = 2 m tau:
//   g1 = y/(1-y),  g2 = y/(1-y)^2,  g3 = y(1+y)/(1-y)^3
struct GeometricWeights {
  double g1 = 0.0, g2 = 0.0, g3 = 0.0;
};

GeometricWeights geometric_weights(double c) {
  const double e = std::expm1(c);
  if (std::isinf(e)) return {};
  const double inv = 1.0 / e;
  const double g2 = inv * (1.0 + inv);
  return {inv, g2, g2 * (1.0 + 2.0 * inv)};
}

// sum_{n>=a} q^n, sum n q^n, sum n^2 q^n
struct GeometricTail {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
};

GeometricTail geometric_tail(double tau, long a) {
  const double q = std::exp(-2.0 * tau);
  const double qa = std::exp(-2.0 * tau * static_cast<double>(a));
  const double omq = -std::expm1(-2.0 * tau);
  const double ad = static_cast<double>(a);
  GeometricTail t;
  t.s0 = qa / omq;
  t.s1 = qa * (ad - (ad - 1.0) * q) / (omq * omq);
  t.s2 = qa * (ad * ad - (2.0 * ad * ad - 2.0 * ad - 1.0) * q + (ad - 1.0) * (ad - 1.0) * q * q) /
         (omq * omq * omq);
  return t;
}

double zero_mode_energy_term(double phi, ZeroModePolicy zero_mode) {
  return zero_mode == ZeroModePolicy::full ? -special::clausen_cos(kOrder3, phi)
                                           : -0.5 * special::kZeta3;
}

EvalResult from_tailed(double offset, const special::TailedSum& s) {
  return {offset + s.sum, s.tail_bound, s.terms, s.converged};
}

EvalResult energy_m_first(double phi, double tau, ZeroModePolicy zm, const SeriesControl& ctrl) {
  const double zero = 0.5 * zero_mode_energy_term(phi, zm);
  auto coefficient = [tau](long m) {
    const double md = static_cast<double>(m);
    const double c = 2.0 * md * tau;
    const auto w = geometric_weights(c);
    return -(w.g1 + c * w.g2) / (md * md * md);
  };
  return from_tailed(zero, special::harmonic_series(Harmonic::cosine, phi, coefficient, 4, zero,
                                                    ctrl.rel_tol, ctrl.max_m));
}

EvalResult pressure_m_first(double phi, double tau, ZeroModePolicy zm, const SeriesControl& ctrl) {
  const double zero = zero_mode_energy_term(phi, zm);
  auto coefficient = [tau](long m) {
    const double md = static_cast<double>(m);
    const double c = 2.0 * md * tau;
    const auto w = geometric_weights(c);
    return -(2.0 * w.g1 + 2.0 * c * w.g2 + c * c * w.g3) / (md * md * md);
  };
  return from_tailed(zero, special::harmonic_series(Harmonic::cosine, phi, coefficient, 4, zero,
                                                    ctrl.rel_tol, ctrl.max_m));
}

// Sums per-Matsubara terms n = 1.. until the closed-form tail bound drops below
// rel_tol * |total|.
template <class Term, class TailBound>
EvalResult matsubara_sum(double zero_part, Term&& term, TailBound&& tail_bound,
                         const SeriesControl& ctrl) {
  EvalResult out{zero_part, 0.0, 0, false};
  for (long n = 1; n <= ctrl.max_n; ++n) {
    out.value += term(n);
    out.terms_used = n;
    out.error_estimate = tail_bound(n + 1);
    if (out.error_estimate <= ctrl.rel_tol * std::abs(out.value)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rel_tol must lie in (0, 1)");
  if (max_m < 1) throw std::invalid_argument("max_m must be >= 1");
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
}

void CavityConfig::validate() const {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw std::invalid_argument("separation must be positive and finite");
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be non-negative and finite");
  }
  if (kind == MediumKind::faraday) {
    if (!std::isfinite(verdet) || !std::isfinite(bfield)) {
      throw std::invalid_argument("Verdet constant and magnetic field must be finite");
    }
  } else if (!std::isfinite(theta)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
}

double reduced_temperature(double separation, double temperature) {
  return 2.0 * kPi * separation * constants::k_B * temperature / (constants::hbar * constants::c);
}

bool near_zero_temperature(double tau) noexcept { return tau > 0.0 && tau < kLowTauWarning; }

double effective_theta(const CavityConfig& cfg) {
  switch (cfg.kind) {
    case MediumKind::fixed_angle: return cfg.theta;
    case MediumKind::faraday: return cfg.verdet * cfg.bfield * cfg.separation;
    case MediumKind::optically_active: return 0.0;
  }
  return cfg.theta;
}

double normalize_theta(double theta) {
  double phi = special::reduce_angle(2.0 * theta);
  if (phi > kPi) phi = 2.0 * kPi - phi;
  return 0.5 * phi;
}

double matsubara_term(long n, const ReducedPoint& p) {
  if (n < 0) throw std::domain_error("Matsubara index must be non-negative");
  const double phi = 2.0 * normalize_theta(p.theta);
  if (n == 0) return zero_mode_energy_term(phi, p.zero_mode);
  const double a = 2.0 * static_cast<double>(n) * p.tau;
  const double r = std::exp(-a);
  return -(special::re_polylog_damped(kOrder3, r, phi) +
           a * special::re_polylog_damped(kOrder2, r, phi));
}

EvalResult reduced_free_energy(const ReducedPoint& p, const SeriesControl& ctrl) {
  ctrl.validate();
  require_positive_tau(p.tau);
  const double theta = normalize_theta(p.theta);
  const double phi = 2.0 * theta;
  if (ctrl.order == SummationOrder::m_first) return energy_m_first(phi, p.tau, p.zero_mode, ctrl);

  const ReducedPoint q{theta, p.tau, p.zero_mode};
  return matsubara_sum(
      0.5 * matsubara_term(0, q), [&q](long n) { return matsubara_term(n, q); },
      [tau = p.tau](long a) {
        const auto t = geometric_tail(tau, a);
        return special::kZeta2 * (t.s0 + 2.0 * tau * t.s1);
      },
      ctrl);
}

EvalResult reduced_pressure(const ReducedPoint& p, const SeriesControl& ctrl) {
  ctrl.validate();
  require_positive_tau(p.tau);
  const double theta = normalize_theta(p.theta);
  const double phi = 2.0 * theta;
  if (ctrl.order == SummationOrder::m_first) return pressure_m_first(phi, p.tau, p.zero_mode, ctrl);

  // Per n: -[2 Li3 + 2a Li2 + a^2 Re Li1] with a = 2 n tau and
  // Re Li1(r e^{i phi}) = -ln(1 - 2 r cos phi + r^2) / 2.
  const auto term = [theta, phi, tau = p.tau](long n) {
    const double a = 2.0 * static_cast<double>(n) * tau;
    const double r = std::exp(-a);
    const double li1 = -0.5 * kernel::log_det_kernel(r, theta);
    return -(2.0 * special::re_polylog_damped(kOrder3, r, phi) +
             2.0 * a * special::re_polylog_damped(kOrder2, r, phi) + a * a * li1);
  };
  return matsubara_sum(
      zero_mode_energy_term(phi, p.zero_mode), term,
      [tau = p.tau](long a) {
        const auto t = geometric_tail(tau, a);
        const double omq = -std::expm1(-2.0 * tau);
        return 2.0 * special::kZeta3 * t.s0 + 4.0 * tau * special::kZeta2 * t.s1 +
               4.0 * tau * tau * t.s2 / omq;
      },
      ctrl);
}

EvalResult reduced_free_energy_dtheta(const ReducedPoint& p, const SeriesControl& ctrl) {
  ctrl.validate();
  require_positive_tau(p.tau);
  // Only pi-periodicity is used here; the derivative is odd in theta.
  const double phi = special::reduce_angle(2.0 * p.theta);
  const double zero =
      p.zero_mode == ZeroModePolicy::full ? special::clausen_sin(kOrder2, phi) : 0.0;
  auto coefficient = [tau = p.tau](long m) {
    const double md = static_cast<double>(m);
    const double c = 2.0 * md * tau;
    const auto w = geometric_weights(c);
    return 2.0 * (w.g1 + c * w.g2) / (md * md);
  };
  return from_tailed(zero, special::harmonic_series(Harmonic::sine, phi, coefficient, 3, zero,
                                                    ctrl.rel_tol, ctrl.max_m));
}

double reduced_free_energy_T0(double theta) {
  return -special::clausen_cos(kOrder4, 2.0 * theta) / (8.0 * kPi * kPi);
}

double reduced_pressure_T0(double theta) { return 3.0 * reduced_free_energy_T0(theta); }

double reduced_free_energy_T0_dtheta(double theta) {
  return special::clausen_sin(kOrder3, 2.0 * theta) / (4.0 * kPi * kPi);
}

double classical_limit_reduced(double theta, ZeroModePolicy zero_mode) {
  return 0.5 * zero_mode_energy_term(2.0 * normalize_theta(theta), zero_mode);
}

EvalResult physical_free_energy(const CavityConfig& cfg, const SeriesControl& ctrl) {
  cfg.validate();
  const double theta = effective_theta(cfg);
  const double l = cfg.separation;
  if (cfg.temperature == 0.0) {
    const double scale = constants::hbar * constants::c / (l * l * l);
    return {reduced_free_energy_T0(theta) * scale, 0.0, 0, true};
  }
  const double tau = reduced_temperature(l, cfg.temperature);
  const auto r = reduced_free_energy({theta, tau, cfg.zero_mode}, ctrl);
  const double scale = constants::k_B * cfg.temperature / (4.0 * kPi * l * l);
  return {r.value * scale, r.error_estimate * scale, r.terms_used, r.converged};
}

namespace {

EvalResult finite_difference_pressure(const CavityConfig& cfg, const SeriesControl& ctrl) {
  SeriesControl tight = ctrl;
  tight.rel_tol = std::min(ctrl.rel_tol, 1e-14);
  EvalResult out{0.0, 0.0, 0, true};
  auto energy = [&](double l) {
    CavityConfig shifted = cfg;
    shifted.separation = l;
    const auto e = physical_free_energy(shifted, tight);
    out.terms_used += e.terms_used;
    out.converged = out.converged && e.converged;
    return e.value;
  };
  const double l = cfg.separation;
  const double h = l * 1e-5;
  const double d1 = (energy(l + h) - energy(l - h)) / (2.0 * h);
  const double d2 = (energy(l + 0.5 * h) - energy(l - 0.5 * h)) / h;
  out.value = -(4.0 * d2 - d1) / 3.0;
  out.error_estimate = std::abs(d2 - d1) / 3.0;
  if (!std::isfinite(out.value) || !std::isfinite(out.error_estimate)) out.converged = false;
  return out;
}

EvalResult fixed_angle_pressure(const CavityConfig& cfg, double theta, const SeriesControl& ctrl) {
  const double l = cfg.separation;
  if (cfg.temperature == 0.0) {
    const double scale = constants::hbar * constants::c / (l * l * l * l);
    return {reduced_pressure_T0(theta) * scale, 0.0, 0, true};
  }
  const double tau = reduced_temperature(l, cfg.temperature);
  const auto r = reduced_pressure({theta, tau, cfg.zero_mode}, ctrl);
  const double scale = constants::k_B * cfg.temperature / (4.0 * kPi * l * l * l);
  return {r.value * scale, r.error_estimate * scale, r.terms_used, r.converged};
}

}  // namespace

EvalResult physical_pressure(const CavityConfig& cfg, const SeriesControl& ctrl) {
  cfg.validate();
  ctrl.validate();
  if (cfg.kind == MediumKind::faraday) return finite_difference_pressure(cfg, ctrl);
  return fixed_angle_pressure(cfg, effective_theta(cfg), ctrl);
}

EvalResult physical_pressure_chain_rule(const CavityConfig& cfg, const SeriesControl& ctrl) {
  cfg.validate();
  ctrl.validate();
  const double theta = effective_theta(cfg);
  auto fixed = fixed_angle_pressure(cfg, theta, ctrl);
  if (cfg.kind != MediumKind::faraday) return fixed;

  const double l = cfg.separation;
  const double dtheta_dl = cfg.verdet * cfg.bfield;
  if (cfg.temperature == 0.0) {
    const double de_dtheta =
        reduced_free_energy_T0_dtheta(theta) * constants::hbar * constants::c / (l * l * l);
    fixed.value -= de_dtheta * dtheta_dl;
    return fixed;
  }
  const double tau = reduced_temperature(l, cfg.temperature);
  const auto d = reduced_free_energy_dtheta({theta, tau, cfg.zero_mode}, ctrl);
  const double scale = constants::k_B * cfg.temperature / (4.0 * kPi * l * l);
  fixed.value -= d.value * scale * dtheta_dl;
  fixed.error_estimate += d.error_estimate * scale * std::abs(dtheta_dl);
  fixed.terms_used += d.terms_used;
  fixed.converged = fixed.converged && d.converged;
  return fixed;
}

}  // namespace chiral_casimir
