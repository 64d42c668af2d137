#pragma once

// Brute-force quadrature of the Lifshitz free energy with the round-trip
// log-determinant integrand. Nothing here expands the logarithm in a series;
// the only physics shared with the engine is kernel::log_det_kernel.

#include "chiral_casimir/types.hpp"

namespace chiral_casimir::oracle {

struct QuadControl {
  double abs_tol = 1e-10;
  double kappa_cutoff_factor = 40.0;  // integration length in u = 2 kappa l
  long max_n = 100'000;
  double fd_step_rel = 1e-5;

  void validate() const;
};

/// Single Matsubara contribution (1/2) int_{2 n tau}^{2 n tau + cutoff} u ln det(...) du,
/// without the n = 0 half weight.
double oracle_matsubara_term(long n, const ReducedPoint& p, const QuadControl& q = {});

/// Reduced free energy E_hat(theta, tau) for tau > 0:
///   sum'_n (1/2) int_{2 n tau}^{2 n tau + cutoff} u ln det(I - e^{-u} A^2) du
/// with half weight at n = 0. Throws std::domain_error for tau <= 0 and
/// std::runtime_error when a quadrature misses its tolerance.
double oracle_free_energy(const ReducedPoint& p, const QuadControl& q = {});

/// Reduced T = 0 free energy E_c l^3 / (hbar c) by nested quadrature:
///   1/(32 pi^2) int_0^cutoff dz int_z^{z+cutoff} u ln det(I - e^{-u} A^2) du
double oracle_free_energy_T0(double theta, const QuadControl& q = {});

/// P_hat = P 4 pi beta l^3 from Richardson central differences in l of the
/// physically scaled oracle free energy E_hat(theta, tau l / l0) / l^2.
double oracle_pressure(const ReducedPoint& p, const QuadControl& q = {});

/// P l^4 / (hbar c) at T = 0 from central differences of E0_hat / l^3.
double oracle_pressure_T0(double theta, const QuadControl& q = {});

struct Comparison {
  bool pass = false;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
};

/// Passes when |a - b| / max(|a|, |b|, 1e-30) < rel_tol (strict).
Comparison compare(double engine_value, double oracle_value, double rel_tol);

}  // namespace chiral_casimir::oracle
