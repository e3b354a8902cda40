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

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "cdcalc/certify/certifier.h"
#include "cdcalc/geometry/ball_volume.h"
#include "cdcalc/geometry/candidate.h"
#include "cdcalc/geometry/heisenberg.h"
#include "cdcalc/models/catalog.h"
#include "cdcalc/report/run.h"
#include "cdcalc/semigroup/generator.h"
#include "cdcalc/semigroup/heat.h"

using namespace cdcalc;
using nlohmann::json;

namespace {

int emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << '\n';
    return 2;
  }
  f << j.dump(2) << '\n';
  return 0;
}

json params_json(const certify::CDParams& p) {
  return {{"rho1", p.rho1}, {"rho2", p.rho2}, {"kappa", p.kappa}, {"d", p.d}};
}

// Runs `body`, mapping library errors to the documented exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const models::UnknownModel& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const models::SizeCapExceeded& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const report::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

struct ParamFlags {
  std::optional<double> rho1, rho2, kappa, d;
  void add(CLI::App* app) {
    app->add_option("--rho1", rho1, "rho1 (explicit parameters)");
    app->add_option("--rho2", rho2, "rho2");
    app->add_option("--kappa", kappa, "kappa");
    app->add_option("--d", d, "dimension parameter d");
  }
  bool any() const { return rho1 || rho2 || kappa || d; }
  // Explicit flags override the model's reference values field by field.
  certify::CDParams resolve(const models::ModelCatalogEntry& e) const {
    certify::CDParams p = e.reference_cd.value_or(certify::CDParams{});
    if (!e.reference_cd && !(rho2 && kappa && d)) {
      throw report::ConfigError("model has no reference parameters; give --rho2 --kappa --d");
    }
    if (rho1) p.rho1 = *rho1;
    if (rho2) p.rho2 = *rho2;
    if (kappa) p.kappa = *kappa;
    if (d) p.d = *d;
    p.validate();
    return p;
  }
};

models::PeriodicLatticeSpec scaled_lattice(const models::ModelCatalogEntry& e, int grid) {
  auto spec = e.default_lattice;
  if (grid <= 0) return spec;
  const int first = spec.axes.front().points;
  for (auto& a : spec.axes) a.points = static_cast<int>(std::lround(double(a.points) * grid / first));
  spec.validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdcalc: curvature-dimension certificates and semigroup inequality checks"};
  app.require_subcommand(1);

  // models list
  auto* models_cmd = app.add_subcommand("models", "Built-in model catalog");
  auto* list_cmd = models_cmd->add_subcommand("list", "List catalog models");
  models_cmd->require_subcommand(1);

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "Certify CD(rho1, rho2, kappa, d) at sample points");
  std::string cert_model, cert_out;
  bool cert_max = false;
  std::uint64_t cert_seed = 0;
  int cert_grid = 3, cert_random = 100;
  ParamFlags cert_params;
  certify_cmd->add_option("--model", cert_model)->required();
  cert_params.add(certify_cmd);
  certify_cmd->add_flag("--maximize", cert_max, "bisect for the largest certified rho1");
  certify_cmd->add_option("--seed", cert_seed);
  certify_cmd->add_option("--grid", cert_grid, "grid points per axis");
  certify_cmd->add_option("--random", cert_random, "random sample points");
  certify_cmd->add_option("--out", cert_out);

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "Smallest eigenvalues of -L on the model lattice");
  std::string spec_model, spec_out;
  int spec_grid = 0, spec_count = 16;
  spec_cmd->add_option("--model", spec_model)->required();
  spec_cmd->add_option("--grid", spec_grid, "points on the first axis, others scaled alike");
  spec_cmd->add_option("--count", spec_count);
  spec_cmd->add_option("--out", spec_out, "CSV path (index,eigenvalue)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run one inequality check");
  report::RunConfig vcfg;
  std::string v_ineq;
  std::string v_out;
  ParamFlags v_params;
  verify_cmd->add_option("--model", vcfg.model)->required();
  verify_cmd->add_option("--inequality", v_ineq)->required()->check(CLI::IsMember(report::known_inequalities()));
  verify_cmd->add_option("--seed", vcfg.seed)->required();
  verify_cmd->add_option("--functions", vcfg.functions);
  verify_cmd->add_flag("--dual-exponent", vcfg.dual_exponent, "use p' inside the pseudo-Poincare factor");
  verify_cmd->add_option("--samples", vcfg.volume_samples, "ball-volume samples per radius (equivalence)");
  verify_cmd->add_option("--out", v_out, "report JSON path");
  v_params.add(verify_cmd);

  // geometry
  auto* geo_cmd = app.add_subcommand("geometry", "Heisenberg metric geometry");
  geo_cmd->require_subcommand(1);
  auto* bv_cmd = geo_cmd->add_subcommand("ball-volume", "Monte Carlo CC ball volume");
  std::vector<double> bv_r;
  std::size_t bv_samples = 100'000;
  std::uint64_t bv_seed = 0;
  int bv_segments = 8;
  bv_cmd->add_option("--r", bv_r, "radius (repeat for a log-log slope)")->required();
  bv_cmd->add_option("--samples", bv_samples);
  bv_cmd->add_option("--seed", bv_seed);
  bv_cmd->add_option("--segments", bv_segments);
  auto* per_cmd = geo_cmd->add_subcommand("perimeter", "Horizontal perimeter of a candidate set");
  std::string per_set;
  std::vector<double> per_param;
  double per_lambda = 1.0, per_eps = 0.0;
  int per_res = 48;
  per_cmd->add_option("--set", per_set)->required()->check(CLI::IsMember({"gauge-ball", "box", "tube"}));
  per_cmd->add_option("--param", per_param, "gauge-ball: R; box: a c; tube: a h")->required();
  per_cmd->add_option("--lambda", per_lambda, "dilate the set first");
  per_cmd->add_option("--resolution", per_res);
  per_cmd->add_option("--mollify", per_eps, "also report the mollified total variation at this width");
  auto* dist_cmd = geo_cmd->add_subcommand("distance", "CC distance from the origin");
  std::vector<double> dist_to;
  int dist_k = 32, dist_starts = 8;
  std::uint64_t dist_seed = 0;
  dist_cmd->add_option("--to", dist_to, "x y z")->required()->expected(3);
  dist_cmd->add_option("--segments", dist_k);
  dist_cmd->add_option("--starts", dist_starts);
  dist_cmd->add_option("--seed", dist_seed);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a configured suite and write JSON and CSV reports");
  std::string run_config;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_output;
  run_cmd->add_option("--config", run_config)->required();
  run_cmd->add_option("--seed", run_seed, "override the config seed");
  run_cmd->add_option("--output", run_output, "override the output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*list_cmd) {
    return guarded([&] {
      for (const auto& name : models::catalog_names()) {
        const auto e = models::catalog_entry(name);
        std::cout << name << "\tdim=" << e.model.chart_dim();
        if (e.homogeneous_dim) std::cout << "\tD=" << *e.homogeneous_dim;
        if (e.reference_cd) std::cout << '\t' << certify::to_string(*e.reference_cd);
        std::cout << '\t' << e.description << '\n';
      }
      return 0;
    });
  }

  if (*certify_cmd) {
    return guarded([&] {
      const auto e = models::catalog_entry(cert_model);
      auto p = cert_params.resolve(e);
      certify::SamplingOptions so{cert_grid, cert_random, 1.0, cert_seed};
      certify::Certifier c(e.model, certify::sample_points(e, so), certify::nu_grid());
      json out;
      if (cert_max) {
        p.rho1 = c.maximize_rho1(p.rho2, p.kappa, p.d);
        out["max_rho1"] = p.rho1;
      }
      const auto rep = c.verify(p);
      out["model"] = cert_model;
      out["seed"] = cert_seed;
      out["certificate"] = rep.to_json();
      const int rc = emit(out, cert_out);
      if (rc) return rc;
      return rep.certified ? 0 : 1;
    });
  }

  if (*spec_cmd) {
    return guarded([&] {
      const auto e = models::catalog_entry(spec_model);
      const auto g = semigroup::build_generator(e, scaled_lattice(e, spec_grid));
      const auto vals = semigroup::spectrum(g, spec_count);
      std::ostringstream csv;
      csv << "index,eigenvalue\n";
      for (std::size_t i = 0; i < vals.size(); ++i) csv << i << ',' << report::format_number(vals[i]) << '\n';
      if (spec_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream f(spec_out);
        if (!f) throw report::ConfigError("cannot write " + spec_out);
        f << csv.str();
      }
      return 0;
    });
  }

  if (*verify_cmd) {
    return guarded([&] {
      vcfg.inequalities = {v_ineq};
      if (v_params.any()) {
        vcfg.source = report::ParamSource::kExplicit;
        vcfg.params = v_params.resolve(models::catalog_entry(vcfg.model));
      }
      const auto res = report::execute(vcfg);
      const int rc = emit(res.to_json(vcfg), v_out);
      if (rc) return rc;
      for (const auto& r : res.reports) {
        std::cerr << r.name << ": max violation " << report::format_number(r.max_violation) << " (tol "
                  << report::format_number(r.tolerance) << ") " << (r.passed() ? "pass" : "FAIL") << '\n';
      }
      return res.passed() ? 0 : 1;
    });
  }

  if (*bv_cmd) {
    return guarded([&] {
      geometry::VolumeOptions vo;
      vo.samples = bv_samples;
      vo.seed = bv_seed;
      vo.distance.segments = bv_segments;
      json rows = json::array();
      json out;
      auto row = [](const geometry::VolumeEstimate& v) {
        return json{{"r", v.r},           {"value", v.value},   {"stderr", v.stderr_},
                    {"samples", v.samples}, {"hits", v.hits}, {"optimized", v.optimized},
                    {"retried", v.retried}};
      };
      if (bv_r.size() == 1) {
        out = row(geometry::ball_volume({0, 0, 0}, bv_r[0], vo));
      } else {
        const auto fit = geometry::volume_growth(bv_r, vo);
        for (const auto& v : fit.points) rows.push_back(row(v));
        out = {{"volumes", rows}, {"slope", fit.slope}, {"intercept", fit.intercept}};
      }
      return emit(out, "");
    });
  }

  if (*per_cmd) {
    return guarded([&] {
      geometry::CandidateSet e;
      auto need = [&](std::size_t n) {
        if (per_param.size() != n) throw report::ConfigError(per_set + " takes " + std::to_string(n) + " --param values");
      };
      if (per_set == "gauge-ball") {
        need(1);
        e = geometry::gauge_ball(per_param[0]);
      } else if (per_set == "box") {
        need(2);
        e = geometry::box(per_param[0], per_param[1]);
      } else {
        need(2);
        e = geometry::tube(per_param[0], per_param[1]);
      }
      if (per_lambda != 1.0) e = geometry::dilate(e, per_lambda);
      geometry::PerimeterOptions po;
      po.resolution = per_res;
      const auto per = geometry::horizontal_perimeter(e, po);
      const auto vol = geometry::enclosed_volume(e, po);
      json out{{"set", e.id()},
               {"perimeter", per.value},
               {"perimeter_coarse", per.coarse},
               {"perimeter_rel_change", per.rel_change},
               {"volume", vol.value},
               {"isoperimetric_ratio", std::pow(vol.value, 0.75) / per.value}};
      if (per_eps > 0.0) out["mollified_perimeter"] = geometry::mollified_perimeter(e, per_eps);
      return emit(out, "");
    });
  }

  if (*dist_cmd) {
    return guarded([&] {
      geometry::DistanceOptions o;
      o.segments = dist_k;
      o.starts = dist_starts;
      o.seed = dist_seed;
      const geometry::Point y{dist_to[0], dist_to[1], dist_to[2]};
      const auto r = geometry::cc_distance({0, 0, 0}, y, o);
      return emit(json{{"value", r.value},
                       {"lower_bound", r.lower_bound},
                       {"endpoint_error", r.endpoint_error},
                       {"segments", dist_k}},
                  "");
    });
  }

  if (*run_cmd) {
    return guarded([&] {
      auto cfg = report::RunConfig::load(run_config);
      if (run_seed) cfg.seed = *run_seed;
      if (run_output) cfg.output = *run_output;
      std::string diag;
      const int rc = report::run(cfg, &diag);
      if (!diag.empty()) std::cerr << diag << '\n';
      return rc;
    });
  }
  return 0;
}
