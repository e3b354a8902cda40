// Copyright 2026 The cdcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: cdcalc_acceptance [path-to-cdcalc-cli]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "cdcalc/certify/certifier.h"
#include "cdcalc/certify/jet_form.h"
#include "cdcalc/geometry/lattice_sets.h"
#include "cdcalc/inequality/checks.h"
#include "cdcalc/inequality/constants.h"
#include "cdcalc/inequality/equivalence.h"
#include "cdcalc/inequality/sobolev.h"
#include "cdcalc/inequality/test_functions.h"
#include "cdcalc/models/catalog.h"
#include "cdcalc/report/run.h"
#include "cdcalc/semigroup/generator.h"
#include "cdcalc/semigroup/heat.h"
#include "cdcalc/symbolic/model.h"

using namespace cdcalc;
using symbolic::Rational;
using symbolic::ScalarField;

namespace {

// Regression constant: largest certified rho1 for su2 at (rho2, kappa, d) = (1/2, 1, 2).
constexpr double kSu2MaxRho1 = 1.0;
constexpr std::uint64_t kSeed = 42;

std::string cli_path;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Lattice {
  models::ModelCatalogEntry entry;
  std::unique_ptr<semigroup::DiscreteGenerator> g;
  std::unique_ptr<semigroup::HeatOperator> h;
};

// Default lattices are built once and shared across criteria.
Lattice& lattice(const std::string& model) {
  static std::map<std::string, Lattice> cache;
  auto it = cache.find(model);
  if (it != cache.end()) return it->second;
  Lattice l{models::catalog_entry(model), nullptr, nullptr};
  l.g = std::make_unique<semigroup::DiscreteGenerator>(
      semigroup::build_generator(l.entry, l.entry.default_lattice));
  l.h = std::make_unique<semigroup::HeatOperator>(semigroup::HeatOperator::build(*l.g));
  return cache.emplace(model, std::move(l)).first->second;
}

ScalarField random_polynomial(int dim, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5), den(1, 4);
  ScalarField f(dim);
  for (int term = 0; term < 8; ++term) {
    symbolic::Exponent e(dim, 0);
    int left = degree;
    for (int i = 0; i < dim && left > 0; ++i) {
      std::uniform_int_distribution<int> pick(0, left);
      e[i] = pick(rng);
      left -= e[i];
    }
    std::shuffle(e.begin(), e.end(), rng);
    f.add_term(e, Rational(coeff(rng), den(rng)));
  }
  return f;
}

certify::CDParams su2_params(double rho1) {
  auto p = *models::su2().reference_cd;
  p.rho1 = rho1;
  return p;
}

double certified_su2_rho1() {
  static const double value = [] {
    auto e = models::su2();
    const auto& p = *e.reference_cd;
    return certify::maximize_rho1(e.model, p.rho2, p.kappa, p.d,
                                  certify::sample_points(e, {3, 100, 1.0, kSeed}), certify::nu_grid());
  }();
  return value;
}

Outcome c1_heisenberg_certificate() {
  const auto t0 = std::chrono::steady_clock::now();
  auto e = models::heisenberg(1);
  const auto points = certify::sample_points(e, {3, 0, 1.0, kSeed});
  const auto nus = certify::nu_grid();
  const double rho = certify::maximize_rho1(e.model, 0.5, 1.0, 2.0, points, nus);
  const auto rep = certify::verify_cd(e.model, {0.0, 0.5, 1.0, 2.0}, points, nus);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(rho) <= 1e-4 && rep.certified && points.size() == 27 && nus.size() == 13 &&
                  secs < 60.0;
  return {ok, "max rho1 = " + fmt(rho, 3) + ", CD(0,1/2,1,2) " + (rep.certified ? "certified" : "NOT certified") +
                  " on " + std::to_string(points.size()) + " points x " + std::to_string(nus.size()) +
                  " nu, " + fmt(secs, 3) + " s"};
}

Outcome c2_su2_rho1() {
  auto e = models::su2();
  const auto& p = *e.reference_cd;
  const double a = certified_su2_rho1();
  const double b = certify::maximize_rho1(e.model, p.rho2, p.kappa, p.d,
                                          certify::sample_points(e, {3, 100, 1.0, kSeed + 1}),
                                          certify::nu_grid());
  const bool ok = a > 0.0 && std::abs(a - b) <= 1e-4 && std::abs(a - kSu2MaxRho1) <= 1e-4;
  return {ok, "max rho1 = " + fmt(a, 10) + " (seed " + std::to_string(kSeed) + "), " + fmt(b, 10) +
                  " (seed " + std::to_string(kSeed + 1) + "), regression constant " + fmt(kSu2MaxRho1)};
}

Outcome c3_jet_reduction() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> coord(-4, 4);
  double worst = 0.0;
  int count = 0;
  for (const auto& name : models::catalog_names()) {
    const auto e = models::catalog_entry(name);
    if (!e.reference_cd) continue;
    const certify::JetFormAssembler jets(e.model);
    const auto exact = certify::ExactCDParams::from(*e.reference_cd);
    const int n = e.model.chart_dim();
    for (int k = 0; k < 100; ++k) {
      const ScalarField f = random_polynomial(n, 4, rng);
      std::vector<Rational> xq(n);
      std::vector<double> xd(n);
      for (int i = 0; i < n; ++i) {
        xq[i] = Rational(coord(rng), 4);
        xd[i] = xq[i].get_d();
      }
      const Rational nu(1 + k % 3, 2);
      const double symbolic_value = certify::cd_deficit(e.model, f, exact, nu).evaluate(xq).get_d();
      const auto c = certify::jet_coefficients(f, xq, jets.basis());
      Eigen::VectorXd cv(static_cast<Eigen::Index>(c.size()));
      for (std::size_t i = 0; i < c.size(); ++i) cv[static_cast<Eigen::Index>(i)] = c[i].get_d();
      const auto form = jets.form_at(xd, *e.reference_cd, nu.get_d());
      const double quad = cv.dot(form.matrix * cv);
      worst = std::max(worst, std::abs(symbolic_value - quad) / (1.0 + std::abs(symbolic_value)));
      ++count;
    }
  }
  return {worst <= 1e-10, std::to_string(count) + " degree-4 polynomials across models, max relative gap " +
                              fmt(worst, 3)};
}

Outcome c4_symbolic_oracles() {
  const auto h = models::heisenberg(1).model;
  const auto x = ScalarField::coordinate(3, 0), y = ScalarField::coordinate(3, 1),
             z = ScalarField::coordinate(3, 2);
  const bool gamma_ok = symbolic::gamma(h, z) == Rational(1, 4) * (x * x + y * y);
  const bool gamma2_ok = symbolic::gamma2(h, z) == ScalarField::constant(3, Rational(1, 2));
  const bool lap_ok = symbolic::sub_laplacian(h, z).is_zero();
  std::mt19937_64 rng(kSeed);
  int checked = 0, failed = 0;
  std::string failing;
  for (const auto& name : models::catalog_names()) {
    const auto e = models::catalog_entry(name);
    for (int k = 0; k < 100; ++k) {
      ++checked;
      if (!symbolic::gamma_forms_commute(e.model, random_polynomial(e.model.chart_dim(), 3, rng))) {
        ++failed;
        failing = name;
      }
    }
  }
  const bool ok = gamma_ok && gamma2_ok && lap_ok && failed == 0;
  return {ok, std::string("Gamma(z) ") + (gamma_ok ? "ok" : "wrong") + ", Gamma2(z) " +
                  (gamma2_ok ? "ok" : "wrong") + ", Lz " + (lap_ok ? "ok" : "wrong") + "; Gamma/Gamma^Z commutation on " +
                  std::to_string(checked) + " polynomials, " + std::to_string(failed) + " failures" +
                  (failing.empty() ? "" : " (" + failing + ")")};
}

Outcome c5_semigroup_axioms() {
  const auto t0 = std::chrono::steady_clock::now();
  double mass_err = 0.0, semigroup_err = 0.0, ibp_err = 0.0;
  std::string lattices;
  for (const char* model : {"heisenberg", "torus3"}) {
    auto& l = lattice(model);
    const auto& g = *l.g;
    const auto& h = *l.h;
    lattices += std::string(lattices.empty() ? "" : ", ") + model;
    const semigroup::Vector one = semigroup::Vector::Ones(static_cast<Eigen::Index>(g.size()));
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      mass_err = std::max(mass_err, (h.apply(one, t).values - one).cwiseAbs().maxCoeff());
    }
    const auto fs = inequality::random_family(g, 10, kSeed, inequality::FunctionKind::kSigned);
    for (const auto& f : fs) {
      const double scale = f.values.cwiseAbs().maxCoeff();
      for (auto [t, s] : {std::pair{0.05, 0.1}, {0.3, 0.7}, {1.0, 2.5}}) {
        const auto direct = h.apply(f.values, t + s).values;
        const auto composed = h.apply(h.apply(f.values, s).values, t).values;
        semigroup_err = std::max(semigroup_err, (direct - composed).cwiseAbs().maxCoeff() / scale);
      }
      const double energy = g.inner(f.values, -g.apply(f.values));
      double grad = 0.0;
      for (int i = 0; i < g.frame_size(); ++i) {
        const semigroup::Vector dp = g.forward()[i] * f.values, dm = g.backward()[i] * f.values;
        grad += 0.5 * (g.inner(dp, dp) + g.inner(dm, dm));
      }
      ibp_err = std::max(ibp_err, std::abs(energy - grad) / std::max(1.0, std::abs(energy)));
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = mass_err <= 1e-10 && semigroup_err <= 1e-8 && ibp_err <= 1e-10 && secs < 300.0;
  return {ok, lattices + " 16^3: |P_t1 - 1| " + fmt(mass_err, 3) + ", |P_{t+s} - P_tP_s| " +
                  fmt(semigroup_err, 3) + ", energy gap " + fmt(ibp_err, 3) + ", " + fmt(secs, 3) + " s"};
}

Outcome c6_li_yau() {
  const auto times = inequality::log_grid(0.05, 5.0, 12);
  auto& hz = lattice("heisenberg");
  const auto fz = inequality::random_family(*hz.g, 50, kSeed, inequality::FunctionKind::kPositive);
  const auto rz = inequality::check_li_yau(*hz.g, *hz.h, {0.0, 0.5, 1.0, 2.0}, inequality::Regime::kZero,
                                           fz, times, 0.02);
  auto& hs = lattice("su2");
  const auto fp = inequality::random_family(*hs.g, 50, kSeed, inequality::FunctionKind::kPositive);
  const auto rp = inequality::check_li_yau(*hs.g, *hs.h, su2_params(certified_su2_rho1()),
                                           inequality::Regime::kPositive, fp, times, 0.02);
  const bool ok = rz.passed() && rp.passed() && times.size() == 12 && fz.size() == 50;
  return {ok, "heisenberg rho1=0 max violation " + fmt(rz.max_violation, 4) + " (" + rz.worst.function_id +
                  ", t=" + fmt(rz.worst.t, 3) + "); su2 rho1>0 max violation " + fmt(rp.max_violation, 4) +
                  " (" + rp.worst.function_id + ", t=" + fmt(rp.worst.t, 3) + "); tol 0.02"};
}

Outcome c7_lichnerowicz() {
  auto& l = lattice("su2");
  const double rho1 = certified_su2_rho1();
  const auto rep = inequality::check_lichnerowicz(*l.h, su2_params(rho1), 0.02);
  const double lambda1 = rep.extra.at("lambda1").get<double>();
  const double bound = rep.extra.at("bound").get<double>();
  // kappa = 0 reduces to the Riemannian rho1 d/(d-1), exactly.
  bool exact_ok = true;
  int cases = 0;
  for (int r1 = 1; r1 <= 4; ++r1) {
    for (int r2 = 1; r2 <= 3; ++r2) {
      for (int dn = 3; dn <= 9; dn += 2) {
        const Rational rho(r1, 2), rho2(r2, 3), d(dn, 2);
        const auto b = inequality::lichnerowicz_bound(certify::ExactCDParams{rho, rho2, 0, d});
        Rational expect = rho * d / (d - 1);
        expect.canonicalize();
        exact_ok = exact_ok && b == expect;
        ++cases;
      }
    }
  }
  const bool ok = rep.passed() && lambda1 >= bound && exact_ok;
  return {ok, "lambda1 = " + fmt(lambda1, 8) + " >= bound " + fmt(bound, 8) + " (rho1 = " + fmt(rho1, 8) +
                  "), margin " + fmt(lambda1 - bound, 6) + "; kappa=0 exact on " + std::to_string(cases) +
                  " parameter sets: " + (exact_ok ? "yes" : "NO")};
}

Outcome c8_pseudo_poincare_spectral() {
  const auto times = inequality::log_grid(0.01, 100.0, 25);
  double worst = -1e300;
  std::size_t pairs = 0;
  bool reports_ok = true;
  for (const char* model : {"heisenberg", "su2"}) {
    auto& l = lattice(model);
    const auto p = *l.entry.reference_cd;
    const auto rep = inequality::check_pseudo_poincare_spectral(*l.h, p, times);
    reports_ok = reports_ok && rep.passed();
    // Independent brute force over every eigenvalue.
    const double c = 2.0 + 4.0 * p.kappa / p.rho2;
    for (Eigen::Index k = 0; k < l.h->eigenvalues().size(); ++k) {
      const double lambda = std::min(0.0, l.h->eigenvalues()[k]);
      for (double t : times) {
        const double lhs = 1.0 - std::exp(lambda * t);
        const double rhs = std::sqrt(c * t) * std::sqrt(-lambda);
        worst = std::max(worst, lhs - rhs);
        ++pairs;
      }
    }
  }
  const bool ok = reports_ok && worst <= 0.0;
  return {ok, std::to_string(pairs) + " (eigenvalue, t) pairs on heisenberg and su2, max (lhs - rhs) = " +
                  fmt(worst, 4) + ", checker " + (reports_ok ? "agrees" : "DISAGREES")};
}

Outcome c9_metric_side() {
  const auto t0 = std::chrono::steady_clock::now();
  inequality::EquivalenceOptions o;
  o.samples = 100'000;
  o.seed = kSeed;
  o.times = inequality::log_grid(0.05, 1.0, 8);
  o.lambdas = {0.25, 0.5, 2.0, 4.0};
  const auto rep = inequality::check_equivalence_chain(o);
  const double secs = seconds_since(t0);
  const double slope = rep.extra.at("volume").at("slope").get<double>();
  const auto& scaled = rep.extra.at("kernel").at("scaled");
  double kmin = 1e300, kmax = 0.0;
  for (const auto& v : scaled) {
    kmin = std::min(kmin, v.get<double>());
    kmax = std::max(kmax, v.get<double>());
  }
  const double kernel_spread = kmax / kmin - 1.0;
  double iso_dev = 0.0;
  double gauge_base = -1.0;
  for (const auto& row : rep.extra.at("isoperimetric").at("ratios")) {
    const auto id = row.at("set").get<std::string>();
    if (id.rfind("gauge-ball", 0) != 0) continue;
    const double ratio = row.at("ratio").get<double>();
    if (gauge_base < 0.0) gauge_base = ratio;
    iso_dev = std::max({iso_dev, std::abs(ratio / gauge_base - 1.0),
                        std::abs(row.at("ratio_mc").get<double>() / gauge_base - 1.0)});
  }
  const bool ok = std::abs(slope - 4.0) <= 0.2 && kernel_spread <= 0.05 && iso_dev <= 0.02 && secs < 600.0;
  return {ok, "volume slope " + fmt(slope, 5) + " (1e5 samples/radius), kernel t^2 p_t(0) spread " +
                  fmt(kernel_spread, 3) + ", gauge-ball isoperimetric deviation " + fmt(iso_dev, 3) + " (surface and Monte Carlo volume)" +
                  ", full chain " + (rep.passed() ? "passes" : "FAILS") + ", " + fmt(secs, 3) + " s"};
}

Outcome c10_cheeger() {
  auto& l = lattice("su2");
  const auto p = su2_params(certified_su2_rho1());
  const auto sets = geometry::su2_cap_family(*l.g, 8, kSeed);
  const auto cheeger = inequality::check_cheeger(p, geometry::measure_sets(*l.g, sets), 0.02);
  const auto ultra = inequality::check_ultracontractivity(*l.h, p, inequality::log_grid(0.1, 10.0, 12), 0.05);
  const bool ok = cheeger.passed() && ultra.passed() && cheeger.witnesses > 0;
  return {ok, "min P/mu " + fmt(cheeger.extra.at("min_ratio").get<double>(), 4) + " vs bound " +
                  fmt(cheeger.extra.at("bound").get<double>(), 4) + " over " + std::to_string(sets.size()) +
                  " caps (max violation " + fmt(cheeger.max_violation, 3) + "); kernel diagonal max violation " +
                  fmt(ultra.max_violation, 3) + " (tol 0.05)"};
}

Outcome c11_improved_sobolev() {
  const auto p = *models::heisenberg(1).reference_cd;
  const std::vector<double> lambdas{0.25, 0.5, 1.0, 2.0, 4.0};
  const auto rep = inequality::check_improved_sobolev_dilation(p, 1.0, lambdas, 2.0, 4.0, 0.05);
  double dev = 0.0;
  for (const auto& row : rep.extra.at("family")) {
    dev = std::max(dev, std::abs(row.at("relative").get<double>() - 1.0));
  }
  return {rep.passed(), "R(f o delta_l)/R(f) for l in {1/4,1/2,1,2,4}: max |ratio - 1| = " + fmt(dev, 3) +
                            ", max violation " + fmt(rep.max_violation, 3)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome c12_reproducible_run() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("cdcalc-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string config = (dir / "config.json").string();
  {
    std::ofstream c(config);
    c << R"({"model": "su2", "params": {"source": "reference"}, "lattice": {"points": [8, 8, 16]},
 "seed": 7, "functions": 10, "times": {"min": 0.1, "max": 3, "count": 6}})";
  }
  std::string csv[2], via;
  int codes[2];
  for (int k = 0; k < 2; ++k) {
    const std::string out = (dir / ("run" + std::to_string(k))).string();
    if (!cli_path.empty()) {
      const std::string cmd = "\"" + cli_path + "\" run --config \"" + config + "\" --output \"" + out +
                              "\" 2>/dev/null";
      const int status = std::system(cmd.c_str());
      codes[k] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      via = "cli";
    } else {
      auto cfg = report::RunConfig::load(config);
      cfg.output = out;
      codes[k] = report::run(cfg);
      via = "library";
    }
    csv[k] = slurp(out + ".csv");
  }
  fs::remove_all(dir);
  const bool ok = !csv[0].empty() && csv[0] == csv[1];
  std::size_t rows = 0;
  for (char ch : csv[0]) rows += ch == '\n';
  return {ok, "two runs via " + via + ": " + std::to_string(csv[0].size()) + " bytes, " +
                  std::to_string(rows) + " lines, " + (ok ? "identical" : "DIFFERENT") + " (exit codes " +
                  std::to_string(codes[0]) + ", " + std::to_string(codes[1]) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"heisenberg certificate", c1_heisenberg_certificate},
      {"su2 positive rho1", c2_su2_rho1},
      {"jet reduction soundness", c3_jet_reduction},
      {"symbolic oracles", c4_symbolic_oracles},
      {"semigroup axioms", c5_semigroup_axioms},
      {"li-yau sweeps", c6_li_yau},
      {"lichnerowicz", c7_lichnerowicz},
      {"pseudo-poincare spectral", c8_pseudo_poincare_spectral},
      {"metric side", c9_metric_side},
      {"cheeger and kernel bound", c10_cheeger},
      {"improved sobolev dilation", c11_improved_sobolev},
      {"reproducible run", c12_reproducible_run},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %2zu  %-28s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
