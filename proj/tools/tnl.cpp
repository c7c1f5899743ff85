#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tnl/evaluator.hpp"
#include "tnl/io.hpp"
#include "tnl/multilinear.hpp"
#include "tnl/verify.hpp"

namespace {

using tnl::io::Json;

enum ExitCode { kOk = 0, kParse = 2, kUnsupported = 3, kSuiteFailed = 4 };

struct RunConfig {
  std::uint64_t seed = 0;
  double p = 2.0;
  double q = 2.0;
  double factor_p = 2.0;
  int restarts = 0;
  std::size_t max_rank = 0;
  std::size_t family_budget = 3;
  int grid = 0;
  std::size_t samples = 10;
  int steps = 6;
  std::string kind;
  std::string norm;
  std::string suite;
  std::string ideal = "sup";
  std::string in;
  std::string out;
  std::string format = "json";
  std::vector<std::string> dims;
  std::optional<double> tolerance;
  bool serial = false;
};

tnl::EvaluatorParams evaluator_params(const RunConfig& c) {
  tnl::EvaluatorParams e;
  e.p = c.p;
  e.seed = c.seed;
  e.restarts = c.restarts;
  e.max_rank = c.max_rank;
  e.grid_resolution = c.grid;
  return e;
}

std::vector<std::vector<tnl::NormedSpace>> shapes(const RunConfig& c) {
  if (c.dims.empty()) return tnl::verify::default_shapes(c.factor_p);
  std::vector<std::vector<tnl::NormedSpace>> out;
  for (const auto& spec : c.dims) {
    std::vector<tnl::NormedSpace> s;
    for (auto d : tnl::verify::parse_dims(spec)) s.push_back(tnl::NormedSpace::ellp(d, c.factor_p));
    out.push_back(std::move(s));
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.restarts < 0) throw tnl::InvalidArgument("restarts must be positive");
  if (c.samples == 0) throw tnl::InvalidArgument("samples must be positive");
  if (c.family_budget == 0) throw tnl::InvalidArgument("family_budget must be positive");
  if (c.grid < 0) throw tnl::InvalidArgument("grid must be non-negative");
  if (c.steps < 0) throw tnl::InvalidArgument("steps must be non-negative");
  if (!(c.p >= 1.0) || !(c.q >= 1.0) || !(c.factor_p >= 1.0))
    throw tnl::InvalidArgument("exponents must be >= 1");
  if (c.format != "json" && c.format != "csv")
    throw tnl::InvalidArgument("format must be json or csv");
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw tnl::ParseError("cannot write " + c.out);
  f << text;
}

std::string render(const RunConfig& c, const tnl::verify::SuiteReport& r) {
  if (c.format == "csv") return tnl::verify::report_csv({r});
  return tnl::verify::report_json(r).dump(2) + "\n";
}

// The input is a map when it carries a codomain block, a tensor otherwise.
tnl::MultilinearMap load_map(const Json& j) {
  if (j.contains("codomain")) return tnl::io::parse_map(j);
  return tnl::MultilinearMap::from_form(tnl::io::parse_tensor(j));
}

tnl::Tensor load_tensor(const Json& j) {
  if (!j.contains("codomain")) return tnl::io::parse_tensor(j);
  const auto a = tnl::io::parse_map(j);
  if (!a.scalar()) throw tnl::Unsupported("tensor norms need a tensor or a scalar form");
  return a.as_form();
}

int cmd_norm(const RunConfig& c) {
  if (c.in.empty()) throw tnl::InvalidArgument("--in is required");
  const Json j = tnl::io::load_file(c.in);
  const auto params = evaluator_params(c);
  Json out = {{"kind", c.kind}, {"seed", c.seed}};
  const std::string& k = c.kind;
  if (k == "eps" || k == "pi" || k == "sigma_p" || k == "beta_p") {
    out["estimate"] = tnl::io::to_json(tnl::make_evaluator(k, params)->estimate(load_tensor(j)));
  } else if (k == "sup") {
    out["estimate"] = tnl::io::to_json(tnl::sup_norm(load_map(j), tnl::epsilon_config(params)).estimate);
  } else if (k == "lin") {
    const auto beta = tnl::make_evaluator(c.norm.empty() ? "pi" : c.norm, params);
    out["norm"] = beta->name();
    out["estimate"] = tnl::io::to_json(tnl::linearization_norm(load_map(j), *beta));
  } else if (k == "sm_pq") {
    tnl::SummingConfig s;
    s.p = c.p;
    s.q = c.q;
    s.family_budget = c.family_budget;
    if (c.restarts > 0) s.restarts = c.restarts;
    s.sup = tnl::epsilon_config(params);
    s.seed = c.seed;
    const auto r = tnl::sm_pq_norm(load_map(j), s);
    out["estimate"] = tnl::io::to_json(r.estimate);
    out["families"] = r.families;
  } else if (k == "si_p") {
    const auto a = load_map(j);
    if (!a.scalar()) throw tnl::Unsupported("si_p is computed for scalar maps only");
    const tnl::SigmaNorm sigma(params);
    const auto r = tnl::sigma_p_dual(a.as_form(), sigma.dual_config());
    out["estimate"] = tnl::io::to_json(r.estimate);
    out["family"] = tnl::io::to_json(r.family);
  } else {
    throw tnl::InvalidArgument("unknown --kind '" + k + "'");
  }
  if (c.format == "csv") {
    const auto& e = out["estimate"];
    emit(c, "kind,lower,upper,converged,seed\n" + k + "," + e["lower"].dump() + "," +
                e["upper"].dump() + "," + e["converged"].dump() + "," + std::to_string(c.seed) + "\n");
  } else {
    emit(c, out.dump(2) + "\n");
  }
  return kOk;
}

tnl::verify::SuiteOptions suite_options(const RunConfig& c, const std::string& norm) {
  tnl::verify::SuiteOptions o;
  o.norm = norm;
  o.params = evaluator_params(c);
  o.shapes = shapes(c);
  o.samples = c.samples;
  o.seed = c.seed;
  o.exec = c.serial ? tnl::Exec::serial : tnl::Exec::parallel;
  o.ideal = c.ideal;
  o.witness_steps = c.steps;
  return o;
}

int finish(const RunConfig& c, tnl::verify::SuiteReport r) {
  if (c.tolerance && (r.status == "pass" || r.status == "fail")) {
    r.tolerance = *c.tolerance;
    r.config["tolerance"] = *c.tolerance;
    r.status = r.max_deviation <= r.tolerance ? "pass" : "fail";
  }
  emit(c, render(c, r));
  if (r.status == "fail") return kSuiteFailed;
  if (r.status == "unsupported") {
    std::cerr << "unsupported: " << r.note << "\n";
    return kUnsupported;
  }
  return kOk;
}

int cmd_verify(const RunConfig& c) {
  if (c.suite.empty()) throw tnl::InvalidArgument("a suite name is required");
  if (c.suite == "witness") throw tnl::InvalidArgument("use the witness subcommand");
  return finish(c, tnl::verify::run_suite(c.suite, suite_options(c, c.norm.empty() ? "pi" : c.norm)));
}

int cmd_witness(const RunConfig& c) {
  return finish(c, tnl::verify::run_suite("witness", suite_options(c, c.norm.empty() ? "beta_p" : c.norm)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical tensor norms, ideal norms and property suites"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key = value configuration file")->envname("TNL_CONFIG");

  RunConfig c;
  double tolerance = -1.0;
  app.add_option("--seed", c.seed, "Seed for all randomness");
  app.add_option("--p", c.p, "Exponent of sigma_p, beta_p, si_p and sm_pq");
  app.add_option("--q", c.q, "Second exponent of sm_pq");
  app.add_option("--factor-p,--factor_p", c.factor_p, "Exponent of the l_p factors built from --dims");
  app.add_option("--restarts", c.restarts, "Search restarts (0 keeps the defaults)");
  app.add_option("--max-rank,--max_rank", c.max_rank, "Decomposition rank (0 selects an exact default)");
  app.add_option("--family-budget,--family_budget", c.family_budget, "Largest family per factor for sm_pq");
  app.add_option("--grid,--grid_resolution", c.grid, "Lattice resolution for smooth dual balls (0 disables)");
  app.add_option("--samples", c.samples, "Samples per shape");
  app.add_option("--steps", c.steps, "Perturbation steps per witness start");
  app.add_option("--norm", c.norm, "Tensor norm: eps, pi, sigma_p or beta_p");
  app.add_option("--ideal", c.ideal, "Representation suite ideal: sup or lbeta");
  app.add_option("--dims", c.dims, "Factor dimensions such as 2x3x2; repeatable");
  app.add_option("--out", c.out, "Output file (stdout when omitted)");
  app.add_option("--format", c.format, "json or csv");
  app.add_option("--tolerance", tolerance, "Override the suite's tolerance tier");
  app.add_flag("--serial", c.serial, "Run suite samples on one thread");

  auto* norm = app.add_subcommand("norm", "Estimate a norm of a tensor or map file")->fallthrough();
  norm->add_option("--kind", c.kind, "eps, pi, sigma_p, beta_p, sup, lin, sm_pq or si_p")->required();
  norm->add_option("--in", c.in, "Input JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Run a property suite")->fallthrough();
  verify->add_option("suite,--suite", c.suite,
                     "crossnorm, metric, smoothness, property_b, representation or bidual");

  auto* witness = app.add_subcommand("witness", "Search for a smoothness violation")->fallthrough();

  try {
    app.parse(argc, argv);
    if (tolerance >= 0.0) c.tolerance = tolerance;
    validate(c);
    if (*norm) return cmd_norm(c);
    if (*verify) return cmd_verify(c);
    if (*witness) return cmd_witness(c);
    return kParse;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  } catch (const tnl::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const tnl::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kUnsupported;
  } catch (const tnl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
}
