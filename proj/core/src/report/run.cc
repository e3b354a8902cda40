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

#include "cdcalc/report/run.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cdcalc/certify/certifier.h"
#include "cdcalc/geometry/lattice_sets.h"
#include "cdcalc/inequality/checks.h"
#include "cdcalc/inequality/equivalence.h"
#include "cdcalc/inequality/sobolev.h"
#include "cdcalc/inequality/test_functions.h"
#include "cdcalc/models/catalog.h"
#include "cdcalc/semigroup/heat.h"

namespace cdcalc::report {

namespace {

using inequality::InequalityReport;
using nlohmann::json;

const std::vector<std::string> kInequalities{
    "li-yau",       "gradient",  "pseudo-poincare", "reverse-poincare", "poincare",
    "besov-sobolev", "lichnerowicz", "cheeger",      "ultracontractive", "equivalence"};

const std::set<std::string> kPositiveOnly{"reverse-poincare", "poincare", "lichnerowicz", "cheeger",
                                          "ultracontractive"};

const char* source_name(ParamSource s) {
  switch (s) {
    case ParamSource::kReference: return "reference";
    case ParamSource::kMaximize: return "maximize";
    case ParamSource::kExplicit: return "explicit";
  }
  return "?";
}

std::string pnorm_label(double p) { return std::isinf(p) ? "inf" : format_number(p); }

template <class T>
T get(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> known_inequalities() { return kInequalities; }

RunConfig RunConfig::from_json(const json& j) {
  static const std::set<std::string> keys{"model",     "params",  "lattice",       "seed",
                                          "functions", "times",   "inequalities",  "tolerances",
                                          "dual_exponent", "volume_samples", "output"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }
  RunConfig c;
  try {
    if (!j.contains("model")) throw ConfigError("config needs 'model'");
    if (!j.contains("seed")) throw ConfigError("config needs an explicit 'seed'");
    c.model = j.at("model").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("params")) {
      const auto& p = j.at("params");
      const auto src = get<std::string>(p, "source", "reference");
      if (src == "reference") c.source = ParamSource::kReference;
      else if (src == "maximize") c.source = ParamSource::kMaximize;
      else if (src == "explicit") c.source = ParamSource::kExplicit;
      else throw ConfigError("params.source must be reference, maximize or explicit");
      if (p.contains("rho2") || p.contains("rho1")) {
        certify::CDParams cd;
        cd.rho1 = get<double>(p, "rho1", 0.0);
        cd.rho2 = p.at("rho2").get<double>();
        cd.kappa = p.at("kappa").get<double>();
        cd.d = p.at("d").get<double>();
        c.params = cd;
      }
      if (c.source == ParamSource::kExplicit && !c.params) {
        throw ConfigError("explicit params need rho1, rho2, kappa and d");
      }
    }
    if (j.contains("lattice")) {
      const auto& l = j.at("lattice");
      c.lattice_points = get<std::vector<int>>(l, "points", {});
      c.max_points = get<std::size_t>(l, "max_points", 0);
    }
    c.functions = get<std::size_t>(j, "functions", c.functions);
    if (j.contains("times")) {
      const auto& t = j.at("times");
      c.t_min = get<double>(t, "min", c.t_min);
      c.t_max = get<double>(t, "max", c.t_max);
      c.t_count = get<int>(t, "count", c.t_count);
    }
    c.inequalities = get<std::vector<std::string>>(j, "inequalities", {});
    c.tolerances = get<std::map<std::string, double>>(j, "tolerances", {});
    c.dual_exponent = get<bool>(j, "dual_exponent", false);
    c.volume_samples = get<std::size_t>(j, "volume_samples", c.volume_samples);
    c.output = get<std::string>(j, "output", "");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  for (const auto& name : c.inequalities) {
    if (std::find(kInequalities.begin(), kInequalities.end(), name) == kInequalities.end()) {
      throw ConfigError("unknown inequality '" + name + "'");
    }
  }
  for (const auto& [name, tol] : c.tolerances) {
    if (std::find(kInequalities.begin(), kInequalities.end(), name) == kInequalities.end()) {
      throw ConfigError("tolerance given for unknown inequality '" + name + "'");
    }
    if (!(tol >= 0.0)) throw ConfigError("tolerances must be >= 0");
  }
  if (c.functions == 0) throw ConfigError("functions must be positive");
  if (!(c.t_min > 0.0 && c.t_max >= c.t_min && c.t_count >= 1)) {
    throw ConfigError("times need 0 < min <= max and count >= 1");
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed config " + path + ": " + e.what());
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  json j;
  j["model"] = model;
  json p{{"source", source_name(source)}};
  if (params) {
    if (source == ParamSource::kExplicit) p["rho1"] = params->rho1;
    p["rho2"] = params->rho2;
    p["kappa"] = params->kappa;
    p["d"] = params->d;
  }
  j["params"] = p;
  json l = json::object();
  if (!lattice_points.empty()) l["points"] = lattice_points;
  if (max_points) l["max_points"] = max_points;
  j["lattice"] = l;
  j["seed"] = seed;
  j["functions"] = functions;
  j["times"] = {{"min", t_min}, {"max", t_max}, {"count", t_count}};
  j["inequalities"] = inequalities;
  j["tolerances"] = tolerances;
  j["dual_exponent"] = dual_exponent;
  j["volume_samples"] = volume_samples;
  j["output"] = output;
  return j;
}

bool RunResult::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

json RunResult::to_json(const RunConfig& config) const {
  json j;
  j["config"] = config.to_json();
  j["params"] = {{"rho1", params.rho1}, {"rho2", params.rho2}, {"kappa", params.kappa}, {"d", params.d}};
  j["certified"] = certified;
  j["passed"] = passed();
  json rows = json::array();
  for (const auto& r : reports) rows.push_back(r.to_json());
  j["reports"] = rows;
  return j;
}

std::string RunResult::csv() const {
  std::ostringstream out;
  out << "name,max_violation,tolerance,pass\n";
  for (const auto& r : reports) {
    out << r.name << ',' << format_number(r.max_violation) << ',' << format_number(r.tolerance) << ','
        << (r.passed() ? "true" : "false") << '\n';
  }
  return out.str();
}

RunResult execute(const RunConfig& c) {
  auto entry = models::catalog_entry(c.model);
  RunResult res;

  // Parameters and the certificate row.
  certify::SamplingOptions so;
  so.seed = c.seed;
  const auto points = certify::sample_points(entry, so);
  const certify::Certifier cert(entry.model, points, certify::nu_grid());
  std::optional<certify::CDParams> base = c.params ? c.params : entry.reference_cd;
  if (!base) throw ConfigError("model '" + c.model + "' has no reference parameters; give params");
  certify::CDParams p = *base;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.source == ParamSource::kReference && entry.reference_cd) p = *entry.reference_cd;
  if (c.source == ParamSource::kMaximize) p.rho1 = cert.maximize_rho1(p.rho2, p.kappa, p.d);
  res.params = p;
  const auto certificate = cert.verify(p);
  res.certified = certificate.certified;
  {
    InequalityReport r;
    r.name = "certify";
    r.params = p;
    r.rho1_certified = res.certified;
    r.tolerance = certificate.tolerance;
    r.seed = c.seed;
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& cell : certificate.cells) {
      r.record(-cell.min_eig, 0.0, "nu=" + format_number(cell.nu), cell.nu,
               static_cast<long long>(cell.point_index));
      min_eig = std::min(min_eig, cell.min_eig);
    }
    res.certificate_min_eig = min_eig;
    r.extra = {{"points", points.size()}, {"nus", certificate.nus.size()}, {"min_eig", min_eig},
               {"violations", certificate.violations()}, {"source", source_name(c.source)}};
    res.reports.push_back(std::move(r));
  }

  // Which checks run.
  const bool positive = p.rho1 > 0.0;
  std::vector<std::string> wanted = c.inequalities;
  if (wanted.empty()) {
    for (const auto& name : kInequalities) {
      if (kPositiveOnly.count(name) && !positive) continue;
      if (name == "cheeger" && c.model != "su2") continue;
      if (name == "equivalence" && c.model != "heisenberg") continue;
      wanted.push_back(name);
    }
  }
  for (const auto& name : wanted) {
    if (kPositiveOnly.count(name) && !positive) {
      throw ConfigError(name + " needs rho1 > 0, run parameters have rho1 = " + format_number(p.rho1));
    }
    if (name == "cheeger" && c.model != "su2") throw ConfigError("cheeger candidate sets exist for su2 only");
    if (name == "equivalence" && c.model != "heisenberg") {
      throw ConfigError("equivalence chain runs on heisenberg only");
    }
  }
  auto tol = [&](const std::string& name, double fallback) {
    auto it = c.tolerances.find(name);
    return it == c.tolerances.end() ? fallback : it->second;
  };
  auto add = [&](InequalityReport r, const std::string& suffix = "") {
    r.name += suffix;
    r.params = p;
    r.rho1_certified = res.certified;
    r.seed = c.seed;
    res.reports.push_back(std::move(r));
  };

  const bool lattice_needed = std::any_of(wanted.begin(), wanted.end(), [](const auto& n) {
    return n != "equivalence";
  });
  if (lattice_needed) {
    auto spec = entry.default_lattice;
    if (!c.lattice_points.empty()) {
      if (c.lattice_points.size() != spec.axes.size()) {
        throw ConfigError("lattice.points needs " + std::to_string(spec.axes.size()) + " entries");
      }
      for (std::size_t a = 0; a < spec.axes.size(); ++a) spec.axes[a].points = c.lattice_points[a];
    }
    if (c.max_points) spec.max_points = c.max_points;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const auto g = semigroup::build_generator(entry, spec);
    const auto h = semigroup::HeatOperator::build(g);
    const auto regime = positive ? inequality::Regime::kPositive : inequality::Regime::kZero;
    const auto times = inequality::log_grid(c.t_min, c.t_max, c.t_count);
    const auto signed_fs = inequality::random_family(g, c.functions, c.seed, inequality::FunctionKind::kSigned);
    const std::vector<double> pnorms{1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()};
    const double d = inequality::kDefaultTolerance;

    for (const auto& name : wanted) {
      if (name == "li-yau") {
        auto fs = inequality::random_family(g, c.functions, c.seed, inequality::FunctionKind::kPositive);
        add(inequality::check_li_yau(g, h, p, regime, fs, times, tol(name, d)));
      } else if (name == "gradient") {
        for (double pn : pnorms) {
          add(inequality::check_gradient_bounds(g, h, p, regime, signed_fs, times, pn, tol(name, d)),
              "[p=" + pnorm_label(pn) + "]");
        }
        add(inequality::check_gradient_spectral(h, p, times));
      } else if (name == "pseudo-poincare") {
        for (double pn : pnorms) {
          add(inequality::check_pseudo_poincare(g, h, p, regime, signed_fs, times, pn, c.dual_exponent,
                                                tol(name, d)),
              "[p=" + pnorm_label(pn) + "]");
        }
        add(inequality::check_pseudo_poincare_spectral(h, p, times));
      } else if (name == "reverse-poincare") {
        add(inequality::check_reverse_poincare(g, h, p, signed_fs, times, tol(name, d)));
      } else if (name == "poincare") {
        for (double pn : {1.0, 1.5, 2.0, 4.0}) {
          add(inequality::check_poincare(g, h, p, signed_fs, pn, tol(name, d)), "[p=" + pnorm_label(pn) + "]");
        }
      } else if (name == "besov-sobolev") {
        auto mz = inequality::random_family(g, std::min<std::size_t>(c.functions, 20), c.seed,
                                            inequality::FunctionKind::kMeanZero);
        auto r = inequality::check_improved_sobolev(g, h, p, mz, 2.0, 4.0);
        if (c.tolerances.count(name)) r.tolerance = c.tolerances.at(name);
        add(std::move(r));
        if (c.model == "heisenberg") {
          add(inequality::check_improved_sobolev_dilation(p, 1.0, {0.25, 0.5, 1.0, 2.0, 4.0}, 2.0, 4.0,
                                                          tol(name, 0.05)));
        }
      } else if (name == "lichnerowicz") {
        add(inequality::check_lichnerowicz(h, p, tol(name, d)));
      } else if (name == "cheeger") {
        const auto sets = geometry::su2_cap_family(g, 8, c.seed);
        add(inequality::check_cheeger(p, geometry::measure_sets(g, sets), tol(name, d)));
      } else if (name == "ultracontractive") {
        add(inequality::check_ultracontractivity(h, p, inequality::log_grid(0.1, 10.0, 12),
                                                 tol(name, 0.05)));
      }
    }
  }
  if (std::find(wanted.begin(), wanted.end(), "equivalence") != wanted.end()) {
    inequality::EquivalenceOptions eo;
    eo.samples = c.volume_samples;
    eo.seed = c.seed;
    add(inequality::check_equivalence_chain(eo));
  }
  return res;
}

int run(const RunConfig& config, std::string* diagnostic) {
  auto fail = [&](int code, const std::string& msg) {
    if (diagnostic) *diagnostic = msg;
    return code;
  };
  RunResult res;
  try {
    res = execute(config);
  } catch (const models::UnknownModel& e) {
    return fail(2, e.what());
  } catch (const models::SizeCapExceeded& e) {
    return fail(3, e.what());
  } catch (const ConfigError& e) {
    return fail(2, e.what());
  } catch (const inequality::RegimeError& e) {
    return fail(2, e.what());
  }
  if (!config.output.empty()) {
    std::ofstream js(config.output + ".json");
    std::ofstream cs(config.output + ".csv");
    if (!js || !cs) return fail(2, "cannot write reports under " + config.output);
    js << res.to_json(config).dump(2) << '\n';
    cs << res.csv();
  }
  if (!res.passed()) {
    std::string failed;
    for (const auto& r : res.reports) {
      if (!r.passed()) failed += (failed.empty() ? "" : ", ") + r.name;
    }
    return fail(1, "failed: " + failed);
  }
  if (diagnostic) diagnostic->clear();
  return 0;
}

}  // namespace cdcalc::report
