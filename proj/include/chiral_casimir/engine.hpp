#pragma once

// Free energy per unit area and pressure between ideal metal plates across a
// polarization-rotating gap.
//
// All series work happens in the reduced variables (theta, tau). Reduced
// quantities, for T > 0:
//
//   E_hat = E_c * 4 pi beta l^2        P_hat = P * 4 pi beta l^3
//
// and for T = 0:
//
//   E0_hat = E_c l^3 / (hbar c)        P0_hat = P l^4 / (hbar c)
//
// Negative free energy and negative pressure mean attraction.

#include "chiral_casimir/kernel.hpp"
#include "chiral_casimir/types.hpp"

namespace chiral_casimir {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 299792458.0;         // m / s
inline constexpr double k_B = 1.380649e-23;      // J / K
}  // namespace constants

using kernel::MediumKind;

enum class SummationOrder { m_first, n_first };

struct SeriesControl {
  double rel_tol = 1e-10;
  long max_m = 1'000'000;
  SummationOrder order = SummationOrder::m_first;
  long max_n = 1'000'000;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct CavityConfig {
  double separation = 1e-6;  // m
  double temperature = 0.0;  // K
  MediumKind kind = MediumKind::fixed_angle;
  double theta = 0.0;   // rad, fixed_angle / optically_active
  double verdet = 0.0;  // rad / (T m), faraday
  double bfield = 0.0;  // T, faraday
  ZeroModePolicy zero_mode = ZeroModePolicy::full;

  /// Throws std::invalid_argument unless l > 0, T >= 0 and the angle inputs
  /// consulted by `kind` are finite.
  void validate() const;
};

/// tau = 2 pi l k_B T / (hbar c).
double reduced_temperature(double separation, double temperature);

/// Below this tau (with T > 0) the Matsubara series is slow; prefer the T = 0 path.
inline constexpr double kLowTauWarning = 1e-6;
bool near_zero_temperature(double tau) noexcept;

/// fixed_angle -> theta, faraday -> V B l, optically_active -> 0.
double effective_theta(const CavityConfig& cfg);

/// Folds theta into [0, pi/2] using pi-periodicity and evenness of the kernel.
double normalize_theta(double theta);

/// Reduced free energy at tau > 0.
///   m_first: E_hat = -(1/2) Cl3(2 theta)
///                    - sum_m cos(2 m theta)/m^3 [y/(1-y) + 2 m tau y/(1-y)^2],  y = exp(-2 m tau)
///   n_first: (1/2) matsubara_term(0) + sum_{n>=1} matsubara_term(n)
/// Throws std::domain_error for tau <= 0.
EvalResult reduced_free_energy(const ReducedPoint& p, const SeriesControl& ctrl = {});

/// E0_hat(theta) = -Cl4(2 theta) / (8 pi^2).
double reduced_free_energy_T0(double theta);

/// P_hat = 2 E_hat - tau dE_hat/dtau, at fixed theta.
EvalResult reduced_pressure(const ReducedPoint& p, const SeriesControl& ctrl = {});

/// P0_hat(theta) = 3 E0_hat(theta).
double reduced_pressure_T0(double theta);

/// dE_hat/dtheta at fixed tau.
EvalResult reduced_free_energy_dtheta(const ReducedPoint& p, const SeriesControl& ctrl = {});

/// dE0_hat/dtheta = S3(2 theta) / (4 pi^2).
double reduced_free_energy_T0_dtheta(double theta);

/// tau -> infinity limit of E_hat: only the n = 0 term survives.
double classical_limit_reduced(double theta, ZeroModePolicy zero_mode = ZeroModePolicy::full);

/// Reduced contribution 4 pi l^2 I_n of a single Matsubara index (without the
/// n = 0 half weight):
///   n >= 1: -[Re Li3(r e^{2 i theta}) + 2 n tau Re Li2(r e^{2 i theta})],  r = exp(-2 n tau)
///   n = 0:  -Cl3(2 theta)   (full),  -zeta(3)/2  (tm_only)
/// Throws std::domain_error for negative n.
double matsubara_term(long n, const ReducedPoint& p);

/// Free energy per unit area, J/m^2.
EvalResult physical_free_energy(const CavityConfig& cfg, const SeriesControl& ctrl = {});

/// Pressure P = -dE_c/dl at fixed T, Pa. Faraday media are differentiated with
/// the effective angle V B l moving along with l (Richardson-extrapolated central
/// differences, step l * 1e-5).
EvalResult physical_pressure(const CavityConfig& cfg, const SeriesControl& ctrl = {});

/// Faraday pressure through the chain rule P = P(theta fixed) - dE_c/dtheta * V B.
/// For other media this equals physical_pressure.
EvalResult physical_pressure_chain_rule(const CavityConfig& cfg, const SeriesControl& ctrl = {});

}  // namespace chiral_casimir
