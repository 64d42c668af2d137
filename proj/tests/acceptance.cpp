// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                      run every criterion
//   acceptance --criterion 5        run one criterion
//   acceptance --criterion 10-cli   criterion 10 without the literal pressure check
//   acceptance --criterion 10-literal
//
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chiral_casimir/cli.hpp"
#include "chiral_casimir/engine.hpp"
#include "chiral_casimir/oracle.hpp"
#include "chiral_casimir/special_functions.hpp"

using namespace chiral_casimir;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;

  // Records a sub-check; failing ones are marked so they stand out in the line.
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + (ok ? what : "NOT MET: " + what);
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

const std::vector<double> kGridTheta{0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2};
const std::vector<double> kGridTau{0.3, 0.7, 1.0, 2.0, 5.0};

// ---------------------------------------------------------------------------

Verdict ideal_metal() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  const double e = reduced_free_energy_T0(0.0);
  const double p = reduced_pressure_T0(0.0);
  const double q = oracle::oracle_free_energy_T0(0.0);
  const double e_ref = -kPi * kPi / 720, p_ref = -kPi * kPi / 240;
  const double dt = seconds_since(t0);
  v.require(std::abs(e - e_ref) <= 1e-10, "|E0 + pi^2/720| = " + fmt(std::abs(e - e_ref)));
  v.require(std::abs(p - p_ref) <= 1e-10, "|P0 + pi^2/240| = " + fmt(std::abs(p - p_ref)));
  v.require(std::abs(q - e_ref) <= 1e-8, "|oracle + pi^2/720| = " + fmt(std::abs(q - e_ref)));
  v.require(dt < 1.0, "runtime " + fmt(dt) + " s");
  return v;
}

Verdict boyer_limit() {
  Verdict v;
  const double ratio = reduced_free_energy_T0(kPi / 2) / reduced_free_energy_T0(0.0);
  v.require(std::abs(ratio + 7.0 / 8.0) <= 1e-10, "E0(pi/2)/E0(0) = " + fmt(ratio));
  return v;
}

Verdict quarter_angle() {
  Verdict v;
  const double e = reduced_free_energy_T0(kPi / 4);
  const double ref = 7 * kPi * kPi / 92160;
  v.require(std::abs(e - ref) <= 1e-10, "|E0(pi/4) - 7pi^2/92160| = " + fmt(std::abs(e - ref)));

  double lo = 0.5, hi = 1.0;
  const double p_lo = reduced_pressure_T0(lo), p_hi = reduced_pressure_T0(hi);
  v.require(p_lo < 0 && p_hi > 0, "pressure bracketed on [0.5, 1]");
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reduced_pressure_T0(mid) < 0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  v.require(root > 0.74 && root < 0.76, "theta* = " + fmt(root) + " rad");
  return v;
}

Verdict optical() {
  Verdict v;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  int equal = 0;
  for (double temperature : {0.0, 300.0}) {
    CavityConfig ref;
    ref.temperature = temperature;
    ref.theta = 0.0;
    const double e0 = physical_free_energy(ref).value;
    for (int i = 0; i < 10; ++i) {
      CavityConfig cfg = ref;
      cfg.kind = kernel::MediumKind::optically_active;
      cfg.theta = angle(rng);
      equal += bit_equal(physical_free_energy(cfg).value, e0);
    }
  }
  v.require(equal == 20, std::to_string(equal) + "/20 bit-identical to theta = 0");
  return v;
}

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  double worst = 0;
  for (double theta : kGridTheta) {
    for (double tau : kGridTau) {
      const ReducedPoint p{theta, tau};
      const double o = oracle::oracle_free_energy(p);
      worst = std::max(worst, std::abs(reduced_free_energy(p).value - o) / std::abs(o));
    }
  }
  const double dt = seconds_since(t0);
  v.require(worst <= 1e-6, "max relative gap " + fmt(worst));
  v.require(dt < 60.0, "runtime " + fmt(dt) + " s");
  return v;
}

Verdict dual_order() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  SeriesControl m_first, n_first;
  n_first.order = SummationOrder::n_first;
  double worst = 0;
  for (double theta : kGridTheta) {
    for (double tau : kGridTau) {
      const ReducedPoint p{theta, tau};
      worst = std::max(worst, rel(reduced_free_energy(p, n_first).value,
                                  reduced_free_energy(p, m_first).value));
    }
  }
  const double dt = seconds_since(t0);
  v.require(worst <= 1e-9, "max relative gap " + fmt(worst));
  v.require(dt < 5.0, "runtime " + fmt(dt) + " s");
  return v;
}

Verdict limits() {
  Verdict v;
  double hot = 0, cold = 0;
  for (double theta : {0.0, 0.3, 1.0, kPi / 2}) {
    hot = std::max(hot, rel(reduced_free_energy({theta, 10.0}).value,
                            classical_limit_reduced(theta)));
    // E l^3 / (hbar c) = E_hat tau / (8 pi^2).
    const double tau = 1e-3;
    cold = std::max(cold, rel(reduced_free_energy({theta, tau}).value * tau / (8 * kPi * kPi),
                              reduced_free_energy_T0(theta)));
  }
  v.require(hot <= 1e-6, "tau = 10 vs classical: " + fmt(hot));
  v.require(cold <= 1e-5, "tau = 1e-3 vs T = 0: " + fmt(cold));
  return v;
}

Verdict derivatives() {
  Verdict v;
  SeriesControl tight;
  tight.rel_tol = 1e-14;
  double worst = 0;
  for (double theta : {0.0, 0.3, kPi / 2}) {
    for (double tau : {0.3, 1.0, 3.0}) {
      const double l = 1e-6;
      CavityConfig cfg;
      cfg.separation = l;
      cfg.theta = theta;
      cfg.temperature = tau * constants::hbar * constants::c / (2 * kPi * l * constants::k_B);
      auto energy = [&](double sep) {
        CavityConfig c = cfg;
        c.separation = sep;
        return physical_free_energy(c, tight).value;
      };
      auto central = [&](double h) { return (energy(l + h) - energy(l - h)) / (2 * h); };
      const double h = 1e-3 * l;
      const double fd = -(4 * central(h / 2) - central(h)) / 3;
      const double from_reduced = reduced_pressure({theta, tau}).value * constants::k_B *
                                  cfg.temperature / (4 * kPi * l * l * l);
      worst = std::max(worst, rel(from_reduced, fd));
    }
  }
  v.require(worst <= 1e-6, "pressure vs Richardson FD: " + fmt(worst));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const special::PolylogOrder three{3};
  double grad = 0;
  for (int i = 0; i < 20; ++i) {
    const double theta = angle(rng);
    const double expected = special::clausen_sin(three, 2 * theta) / (4 * kPi * kPi);
    const double h = 1e-3;
    auto central = [&](double hh) {
      return (reduced_free_energy_T0(theta + hh) - reduced_free_energy_T0(theta - hh)) / (2 * hh);
    };
    const double fd = (4 * central(h / 2) - central(h)) / 3;
    grad = std::max({grad, std::abs(reduced_free_energy_T0_dtheta(theta) - expected),
                     std::abs(fd - expected)});
  }
  v.require(grad <= 1e-8, "T = 0 gradient gap " + fmt(grad));
  return v;
}

Verdict symmetry() {
  Verdict v;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  std::uniform_real_distribution<double> log_tau(std::log(0.1), std::log(5.0));
  double worst = 0;
  auto gap = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  for (int i = 0; i < 100; ++i) {
    const double theta = angle(rng), tau = std::exp(log_tau(rng));
    const double e = reduced_free_energy({theta, tau}).value;
    const double p = reduced_pressure({theta, tau}).value;
    worst = std::max({worst, gap(reduced_free_energy({theta + kPi, tau}).value, e),
                      gap(reduced_free_energy({-theta, tau}).value, e),
                      gap(reduced_pressure({theta + kPi, tau}).value, p),
                      gap(reduced_pressure({-theta, tau}).value, p),
                      gap(reduced_free_energy_T0(theta + kPi), reduced_free_energy_T0(theta)),
                      gap(reduced_free_energy_T0(-theta), reduced_free_energy_T0(theta))});
  }
  v.require(worst <= 1e-12, "max deviation " + fmt(worst));
  return v;
}

int invoke(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  out = o.str();
  return code;
}

double point_pressure(std::string& line) {
  std::string out;
  invoke({"--mode", "point", "--separation", "1e-6", "--temperature", "0", "--theta", "0"}, out);
  std::istringstream in(out);
  std::getline(in, line);
  std::getline(in, line);
  std::istringstream row(line);
  std::string field;
  for (int i = 0; i <= 8; ++i) std::getline(row, field, ',');
  return std::strtod(field.c_str(), nullptr);
}

Verdict cli_behaviour() {
  Verdict v;
  std::string out;
  const int certify = invoke({"--mode", "certify", "--grid", "default"}, out);
  v.require(certify == 0, "certify exit " + std::to_string(certify));

  std::string line;
  const double p = point_pressure(line);
  const double closed = -kPi * kPi * constants::hbar * constants::c / (240 * std::pow(1e-6, 4));
  v.require(rel(p, closed) <= 1e-12, "point pressure " + fmt(p) + " Pa = -pi^2 hbar c/(240 l^4)");

  const std::vector<std::string> sweep{"--mode",          "sweep",    "--theta-range",
                                       "0:1.5707963267948966:9", "--temperature-range",
                                       "0:400:5"};
  std::string a, b;
  const int ca = invoke(sweep, a), cb = invoke(sweep, b);
  v.require(ca == 0 && cb == 0 && a == b && !a.empty(), "sweep reruns byte-identical");
  return v;
}

Verdict cli_point_literal() {
  Verdict v;
  std::string line;
  const double p = point_pressure(line);
  v.require(rel(p, -1.3011e-3) <= 1e-4,
            "point pressure " + fmt(p) + " Pa vs -1.3011e-3 Pa: relative gap " +
                fmt(rel(p, -1.3011e-3)) + " (limit 1e-4)");
  return v;
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
  std::string selected;
  app.add_option("--criterion", selected, "run a single criterion (1-10, 10-cli, 10-literal)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {"1", "ideal-metal limit", ideal_metal},
      {"2", "Boyer limit", boyer_limit},
      {"3", "quarter-angle repulsion and pressure root", quarter_angle},
      {"4", "optically active medium", optical},
      {"5", "engine-oracle equivalence", oracle_equivalence},
      {"6", "dual evaluation order", dual_order},
      {"7", "classical and zero-temperature limits", limits},
      {"8", "derivative consistency", derivatives},
      {"9", "symmetry suite", symmetry},
      {"10", "command line",
       [] {
         Verdict v = cli_behaviour();
         const Verdict lit = cli_point_literal();
         v.pass = v.pass && lit.pass;
         v.detail += "; " + lit.detail;
         return v;
       }},
  };
  const std::vector<Criterion> parts{
      {"10-cli", "command line: certify, closed-form point, determinism", cli_behaviour},
      {"10-literal", "command line: point pressure literal -1.3011e-3 Pa", cli_point_literal},
  };

  std::vector<const Criterion*> run;
  for (const auto* list : {&all, &parts}) {
    for (const auto& c : *list) {
      if (selected.empty() ? list == &all : c.id == selected) run.push_back(&c);
    }
  }
  if (run.empty()) {
    std::cerr << "unknown criterion '" << selected << "'\n";
    return 1;
  }

  int failed = 0;
  for (const auto* c : run) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c->check();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << c->id << " (" << c->title
              << "): " << v.detail << "  [" << fmt(seconds_since(t0)) << " s]" << std::endl;
  }
  std::cout << (run.size() - failed) << "/" << run.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
