#pragma once

// Domain types shared by the series engine and the quadrature oracle.

namespace chiral_casimir {

/// How the zero-frequency (n = 0) Matsubara term is populated.
///   full    - both polarizations, mixed by the round-trip rotation.
///   tm_only - a single unmixed polarization (experimental).
enum class ZeroModePolicy { full, tm_only };

/// A point in the reduced two-parameter family.
/// tau = 2 pi l k_B T / (hbar c); l * zeta_n = n * tau.
struct ReducedPoint {
  double theta = 0.0;  // round-trip half angle, radians
  double tau = 0.0;
  ZeroModePolicy zero_mode = ZeroModePolicy::full;
};

struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long terms_used = 0;
  bool converged = false;
};

}  // namespace chiral_casimir
