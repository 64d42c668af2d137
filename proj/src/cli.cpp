#include "chiral_casimir/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"

namespace chiral_casimir::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

void set_axis_value(CavityConfig& cfg, AxisName axis, double value) {
  switch (axis) {
    case AxisName::theta: cfg.theta = value; break;
    case AxisName::separation: cfg.separation = value; break;
    case AxisName::temperature: cfg.temperature = value; break;
    case AxisName::bfield: cfg.bfield = value; break;
  }
}

}  // namespace

void Axis::validate() const {
  if (count < 1) throw std::invalid_argument("range count must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument("range bounds must be finite");
  }
  if (start > stop) throw std::invalid_argument("range start must not exceed stop");
  if (log && !(start > 0.0)) throw std::invalid_argument("log spacing requires start > 0");
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = start;
    return v;
  }
  const double denom = static_cast<double>(count - 1);
  for (long i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / denom;
    v[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
            : start + t * (stop - start);
  }
  // Endpoints exactly as given.
  v.front() = start;
  v.back() = stop;
  return v;
}

Axis parse_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(':', pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw std::invalid_argument("range must be start:stop:count[:log], got '" + std::string(text) +
                                "'");
  }
  Axis a;
  a.start = parse_double(parts[0]);
  a.stop = parse_double(parts[1]);
  const double count = parse_double(parts[2]);
  if (count != std::floor(count)) throw std::invalid_argument("range count must be an integer");
  a.count = static_cast<long>(count);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw std::invalid_argument("range spacing must be 'log'");
    a.log = true;
  }
  a.validate();
  return a;
}

void SweepSpec::validate() const {
  if (axes.size() > 2) throw std::invalid_argument("at most two swept axes per run");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    axes[i].second.validate();
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i].first == axes[j].first) throw std::invalid_argument("axis swept twice");
    }
  }
  control.validate();
}

SweepRow evaluate_row(const CavityConfig& cfg, const SeriesControl& ctrl) {
  cfg.validate();
  SweepRow row;
  row.theta_rad = cfg.theta;
  row.theta_eff_rad = effective_theta(cfg);
  row.separation_m = cfg.separation;
  row.temperature_K = cfg.temperature;

  const double l = cfg.separation;
  const bool zero_t = cfg.temperature == 0.0;
  row.tau = zero_t ? 0.0 : reduced_temperature(l, cfg.temperature);

  const auto energy = physical_free_energy(cfg, ctrl);
  const auto pressure = physical_pressure(cfg, ctrl);
  row.free_energy_J_per_m2 = energy.value;
  row.pressure_Pa = pressure.value;
  row.error_estimate = energy.error_estimate;
  row.terms_used = energy.terms_used + pressure.terms_used;
  row.converged = energy.converged && pressure.converged;

  const double theta = row.theta_eff_rad;
  const double hc = constants::hbar * constants::c;
  const double thermal = constants::k_B * cfg.temperature / (4.0 * kPi);
  if (zero_t) {
    row.reduced_free_energy = reduced_free_energy_T0(theta);
  } else {
    row.reduced_free_energy = reduced_free_energy({theta, row.tau, cfg.zero_mode}, ctrl).value;
  }
  if (cfg.kind != MediumKind::faraday) {
    row.reduced_pressure = zero_t ? reduced_pressure_T0(theta)
                                  : reduced_pressure({theta, row.tau, cfg.zero_mode}, ctrl).value;
  } else {
    row.reduced_pressure =
        zero_t ? pressure.value * l * l * l * l / hc : pressure.value * l * l * l / thermal;
  }

  const bool finite = std::isfinite(row.reduced_free_energy) && std::isfinite(row.reduced_pressure) &&
                      std::isfinite(row.free_energy_J_per_m2) && std::isfinite(row.pressure_Pa) &&
                      std::isfinite(row.error_estimate);
  row.converged = row.converged && finite;
  return row;
}

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("CHIRAL_CASIMIR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepTable run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  std::vector<CavityConfig> grid{spec.base};
  for (const auto& [name, axis] : spec.axes) {
    std::vector<CavityConfig> expanded;
    for (const auto& cfg : grid) {
      for (double v : axis.values()) {
        CavityConfig next = cfg;
        set_axis_value(next, name, v);
        expanded.push_back(next);
      }
    }
    grid = std::move(expanded);
  }

  SweepTable table;
  table.rows.resize(grid.size());
  auto evaluate = [&](std::size_t i) {
    try {
      table.rows[i] = evaluate_row(grid[i], spec.control);
    } catch (const std::exception&) {
      SweepRow& row = table.rows[i];
      row = {};
      row.theta_rad = grid[i].theta;
      row.separation_m = grid[i].separation;
      row.temperature_K = grid[i].temperature;
      row.reduced_free_energy = row.reduced_pressure = std::nan("");
      row.free_energy_J_per_m2 = row.pressure_Pa = std::nan("");
      row.converged = false;
    }
  };

  if (threads == 0) threads = thread_count_from_env();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
    return table;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) evaluate(i);
      });
    }
  }
  return table;
}

void emit_csv(const SweepTable& table, std::ostream& out, Units units) {
  if (units == Units::reduced) {
    out << "theta_rad,theta_eff_rad,tau,reduced_free_energy,reduced_pressure\n";
    for (const auto& r : table.rows) {
      out << format_double(r.theta_rad) << ',' << format_double(r.theta_eff_rad) << ','
          << format_double(r.tau) << ',' << format_double(r.reduced_free_energy) << ','
          << format_double(r.reduced_pressure) << '\n';
    }
    return;
  }
  out << "theta_rad,theta_eff_rad,separation_m,temperature_K,tau,reduced_free_energy,"
         "reduced_pressure,free_energy_J_per_m2,pressure_Pa,terms_used,error_estimate,converged\n";
  for (const auto& r : table.rows) {
    out << format_double(r.theta_rad) << ',' << format_double(r.theta_eff_rad) << ','
        << format_double(r.separation_m) << ',' << format_double(r.temperature_K) << ','
        << format_double(r.tau) << ',' << format_double(r.reduced_free_energy) << ','
        << format_double(r.reduced_pressure) << ',' << format_double(r.free_energy_J_per_m2)
        << ',' << format_double(r.pressure_Pa) << ',' << r.terms_used << ','
        << format_double(r.error_estimate) << ',' << (r.converged ? "true" : "false") << '\n';
  }
}

std::vector<CertifyCheck> certify_default_grid(ZeroModePolicy zero_mode,
                                               const SeriesControl& ctrl) {
  std::vector<CertifyCheck> checks;
  auto add = [&](std::string name, double engine, double oracle_value) {
    checks.push_back({std::move(name), engine, oracle_value,
                      oracle::compare(engine, oracle_value, kCertifyTolerance)});
  };
  const oracle::QuadControl quad;

  for (double theta : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
    for (double tau : {0.3, 0.7, 1.0, 2.0, 5.0}) {
      const ReducedPoint p{theta, tau, zero_mode};
      add("free_energy theta=" + format_double(theta) + " tau=" + format_double(tau),
          reduced_free_energy(p, ctrl).value, oracle::oracle_free_energy(p, quad));
    }
  }
  for (double theta : {0.0, kPi / 4, kPi / 2}) {
    add("free_energy_T0 theta=" + format_double(theta), reduced_free_energy_T0(theta),
        oracle::oracle_free_energy_T0(theta, quad));
  }
  for (double theta : {0.0, 0.3, kPi / 2}) {
    for (double tau : {0.3, 1.0, 3.0}) {
      const ReducedPoint p{theta, tau, zero_mode};
      add("pressure theta=" + format_double(theta) + " tau=" + format_double(tau),
          reduced_pressure(p, ctrl).value, oracle::oracle_pressure(p, quad));
    }
  }
  return checks;
}

void emit_certify_csv(const std::vector<CertifyCheck>& checks, std::ostream& out) {
  out << "check,engine,oracle,abs_gap,rel_gap,pass\n";
  for (const auto& c : checks) {
    out << '"' << c.name << "\"," << format_double(c.engine) << ',' << format_double(c.oracle)
        << ',' << format_double(c.result.abs_gap) << ',' << format_double(c.result.rel_gap) << ','
        << (c.result.pass ? "true" : "false") << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir free energy and pressure between ideal metal plates across a chiral gap",
               "chiral_casimir"};

  std::string mode = "point";
  double theta = 0.0, separation = 1e-6, temperature = 0.0, bfield = 0.0, verdet = 0.0;
  double rel_tol = SeriesControl{}.rel_tol;
  std::string medium = "fixed", zero_mode = "full", units = "si", output, grid = "default";
  std::string theta_range, separation_range, temperature_range, bfield_range;

  app.add_option("--mode", mode, "point | sweep | certify")
      ->check(CLI::IsMember({"point", "sweep", "certify"}));
  app.add_option("--theta", theta, "one-way rotation angle [rad]");
  app.add_option("--theta-range", theta_range, "start:stop:count[:log]");
  app.add_option("--separation", separation, "plate separation [m]");
  app.add_option("--separation-range", separation_range, "start:stop:count[:log]");
  app.add_option("--temperature", temperature, "temperature [K]");
  app.add_option("--temperature-range", temperature_range, "start:stop:count[:log]");
  app.add_option("--bfield", bfield, "magnetic field [T] (faraday)");
  app.add_option("--bfield-range", bfield_range, "start:stop:count[:log]");
  app.add_option("--verdet", verdet, "Verdet constant [rad/(T m)] (faraday)");
  app.add_option("--medium", medium, "fixed | faraday | optical")
      ->check(CLI::IsMember({"fixed", "faraday", "optical"}));
  app.add_option("--zero-mode", zero_mode, "full | tm-only")
      ->check(CLI::IsMember({"full", "tm-only"}));
  app.add_option("--rel-tol", rel_tol, "series relative tolerance");
  app.add_option("--units", units, "si | reduced")->check(CLI::IsMember({"si", "reduced"}));
  app.add_option("--output", output, "write CSV to PATH instead of stdout");
  app.add_option("--grid", grid, "certification grid")->check(CLI::IsMember({"default"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kArgumentError;
  }

  SweepSpec spec;
  try {
    spec.base.theta = theta;
    spec.base.separation = separation;
    spec.base.temperature = temperature;
    spec.base.bfield = bfield;
    spec.base.verdet = verdet;
    spec.base.kind = medium == "faraday"   ? MediumKind::faraday
                     : medium == "optical" ? MediumKind::optically_active
                                           : MediumKind::fixed_angle;
    spec.base.zero_mode = zero_mode == "tm-only" ? ZeroModePolicy::tm_only : ZeroModePolicy::full;
    spec.control.rel_tol = rel_tol;

    const std::pair<AxisName, const std::string*> ranges[] = {
        {AxisName::theta, &theta_range},
        {AxisName::separation, &separation_range},
        {AxisName::temperature, &temperature_range},
        {AxisName::bfield, &bfield_range},
    };
    for (const auto& [name, text] : ranges) {
      if (!text->empty()) spec.axes.emplace_back(name, parse_axis(*text));
    }
    if (mode != "sweep" && !spec.axes.empty()) {
      throw std::invalid_argument("range flags are only valid with --mode sweep");
    }
    spec.validate();
    spec.base.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kArgumentError;
  }

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      err << "error: cannot open '" << output << "' for writing\n";
      return kConvergenceFailure;
    }
  }
  std::ostream& sink = output.empty() ? out : file;

  if (mode == "certify") {
    const auto checks = certify_default_grid(spec.base.zero_mode, spec.control);
    emit_certify_csv(checks, sink);
    const bool ok = std::all_of(checks.begin(), checks.end(),
                                [](const CertifyCheck& c) { return c.result.pass; });
    sink.flush();
    if (!sink) return kConvergenceFailure;
    if (!ok) {
      err << "certification failed\n";
      return kCertificationFailure;
    }
    return kSuccess;
  }

  const auto table = run_sweep(spec);
  for (const auto& row : table.rows) {
    if (near_zero_temperature(row.tau)) {
      err << "warning: tau = " << format_double(row.tau)
          << " is below 1e-6; the T = 0 path (--temperature 0) is recommended\n";
      break;
    }
  }
  emit_csv(table, sink, units == "reduced" ? Units::reduced : Units::si);
  sink.flush();
  if (!sink) {
    err << "error: failed writing output\n";
    return kConvergenceFailure;
  }
  const bool ok = std::all_of(table.rows.begin(), table.rows.end(),
                              [](const SweepRow& r) { return r.converged; });
  if (!ok) {
    err << "warning: some rows did not converge\n";
    return kConvergenceFailure;
  }
  return kSuccess;
}

}  // namespace chiral_casimir::cli
