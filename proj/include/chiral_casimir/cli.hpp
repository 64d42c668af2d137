#pragma once

// Command-line front end: single points, parameter sweeps, certification runs
// against the quadrature oracle, and CSV emission.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chiral_casimir/engine.hpp"
#include "chiral_casimir/oracle.hpp"

namespace chiral_casimir::cli {

enum ExitCode : int {
  kSuccess = 0,
  kArgumentError = 1,
  kConvergenceFailure = 2,
  kCertificationFailure = 3,
};

enum class Units { si, reduced };

enum class AxisName { theta, separation, temperature, bfield };

struct Axis {
  double start = 0.0;
  double stop = 0.0;
  long count = 1;
  bool log = false;

  /// Throws std::invalid_argument on count < 1, start > stop, or log spacing
  /// with start <= 0.
  void validate() const;
  std::vector<double> values() const;
};

/// Parses "start:stop:count" or "start:stop:count:log".
Axis parse_axis(std::string_view text);

struct SweepSpec {
  CavityConfig base;
  // First entry is the outer (slowest) axis.
  std::vector<std::pair<AxisName, Axis>> axes;
  SeriesControl control;

  void validate() const;
};

struct SweepRow {
  double theta_rad = 0.0;
  double theta_eff_rad = 0.0;
  double separation_m = 0.0;
  double temperature_K = 0.0;
  double tau = 0.0;
  double reduced_free_energy = 0.0;
  double reduced_pressure = 0.0;
  double free_energy_J_per_m2 = 0.0;
  double pressure_Pa = 0.0;
  long terms_used = 0;
  double error_estimate = 0.0;
  bool converged = false;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// One table row. At T = 0 the reduced columns hold E l^3/(hbar c) and
/// P l^4/(hbar c); at T > 0 they hold E 4 pi beta l^2 and P 4 pi beta l^3.
SweepRow evaluate_row(const CavityConfig& cfg, const SeriesControl& ctrl);

/// CHIRAL_CASIMIR_THREADS if set to a positive integer, else hardware concurrency.
unsigned thread_count_from_env();

/// Rows follow the grid with the outer axis slowest, independent of `threads`.
SweepTable run_sweep(const SweepSpec& spec, unsigned threads = 0);

void emit_csv(const SweepTable& table, std::ostream& out, Units units = Units::si);

struct CertifyCheck {
  std::string name;
  double engine = 0.0;
  double oracle = 0.0;
  oracle::Comparison result;
};

inline constexpr double kCertifyTolerance = 1e-6;

/// Engine versus oracle on the 5x5 (theta, tau) grid plus T = 0 energies and
/// finite-temperature pressures.
std::vector<CertifyCheck> certify_default_grid(ZeroModePolicy zero_mode, const SeriesControl& ctrl);

void emit_certify_csv(const std::vector<CertifyCheck>& checks, std::ostream& out);

/// Full CLI. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chiral_casimir::cli
