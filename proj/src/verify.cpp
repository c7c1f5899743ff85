#include "tnl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tnl/kernels.hpp"
#include "tnl/multilinear.hpp"

namespace tnl::verify {

using io::Json;

namespace {

using Shapes = std::vector<std::vector<NormedSpace>>;

std::string shape_name(const std::vector<NormedSpace>& s) {
  std::string out;
  for (std::size_t l = 0; l < s.size(); ++l) {
    if (l) out += " x ";
    out += s[l].describe();
  }
  return out;
}

Shapes shapes_of(const SuiteOptions& o) {
  return o.shapes.empty() ? default_shapes() : o.shapes;
}

Json config_json(const std::string& suite, const SuiteOptions& o) {
  Json shapes = Json::array();
  for (const auto& s : shapes_of(o)) shapes.push_back(shape_name(s));
  return {{"suite", suite},
          {"norm", o.norm},
          {"p", io::number(o.params.p)},
          {"seed", o.seed},
          {"restarts", o.params.restarts},
          {"max_rank", o.params.max_rank},
          {"grid", o.params.grid_resolution},
          {"samples", o.samples},
          {"shapes", shapes},
          {"ideal", o.ideal},
          {"vector_valued", o.vector_valued},
          {"witness_steps", o.witness_steps}};
}

SuiteReport start(const std::string& suite, const TensorNormEvaluator& beta,
                  const SuiteOptions& o, double tol) {
  SuiteReport r;
  r.suite = suite;
  r.norm = beta.name();
  r.tolerance = tol;
  r.config = config_json(suite, o);
  return r;
}

// Runs fn(shape index, sample index, sample seed) for every sample, in
// parallel under Exec::parallel, and appends the per-sample records in
// index order.
template <class Fn>
std::vector<double> for_samples(const SuiteOptions& o, std::size_t shapes,
                                SuiteReport& r, Fn&& fn) {
  const std::size_t total = shapes * o.samples;
  std::vector<Json> records(total);
  std::vector<double> devs(total, 0.0);
  kernels::for_each_index(total, o.exec, [&](std::size_t k) {
    const std::size_t i = k / o.samples, s = k % o.samples;
    Json rec = {{"shape", i}, {"sample", s}};
    devs[k] = fn(i, s, stream_seed(o.seed, i, s), rec);
    rec["deviation"] = io::number(devs[k]);
    records[k] = std::move(rec);
  });
  for (auto& rec : records) r.samples.push_back(std::move(rec));
  return devs;
}

void finish(SuiteReport& r, const std::vector<double>& devs) {
  for (double d : devs)
    r.max_deviation = std::isnan(d) ? kInf : std::max(r.max_deviation, d);
  if (std::isinf(r.tolerance))
    r.status = "recorded";
  else
    r.status = r.max_deviation <= r.tolerance ? "pass" : "fail";
}

SuiteReport unsupported(SuiteReport r, const std::string& why) {
  r.status = "unsupported";
  r.note = why;
  return r;
}

std::vector<double> gaussian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

double rel(double a, double b) {
  const double d = std::abs(a - b);
  return b != 0.0 ? d / std::abs(b) : d;
}

}  // namespace

double smoothness_tolerance(const std::string& norm) {
  if (norm == "pi") return 1e-9;
  if (norm == "eps") return 1e-6;
  if (norm == "sigma_p") return 1e-5;
  return kInf;
}

std::vector<std::vector<NormedSpace>> default_shapes(double p) {
  Shapes out;
  for (const auto& d : std::vector<std::vector<std::size_t>>{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
    std::vector<NormedSpace> s;
    for (auto k : d) s.push_back(NormedSpace::ellp(k, p));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::size_t> parse_dims(const std::string& spec) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad dimension list '" + spec + "'");
    const auto d = std::stoul(part);
    if (d == 0) throw ParseError("dimensions must be positive in '" + spec + "'");
    out.push_back(d);
  }
  if (out.empty()) throw ParseError("empty dimension list");
  return out;
}

double headline(const NormEstimate& e) {
  return std::isfinite(e.upper) ? e.upper : e.lower;
}

SuiteReport check_crossnorm(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("crossnorm", beta, o, 1e-6);
  const auto shapes = shapes_of(o);
  auto devs = for_samples(o, shapes.size(), r, [&](std::size_t i, std::size_t, std::uint64_t seed, Json& rec) {
    const TensorSpace space(shapes[i]);
    Rng rng(seed);
    // Elementary tensor: both bounds must equal the product of the norms.
    std::vector<std::vector<double>> xs;
    double prod = 1.0;
    for (const auto& f : shapes[i]) {
      xs.push_back(gaussian(f.dim(), rng));
      prod *= f.norm(xs.back());
    }
    const auto e = beta.estimate(elementary(space, xs));
    double dev = rel(e.lower, prod);
    if (std::isfinite(e.upper)) dev = std::max(dev, rel(e.upper, prod));
    // Product functionals act with norm at most the product of their norms.
    const Tensor z = random_tensor(space, seed);
    const auto ez = beta.estimate(z);
    std::vector<Functional> fs;
    double fnorm = 1.0;
    for (const auto& f : shapes[i]) {
      const auto d = f.dual();
      fs.push_back({gaussian(d.dim(), rng)});
      fnorm *= d.norm(fs.back().coords);
    }
    const double lhs = std::abs(eval_functionals(z, fs));
    const double bound = fnorm * headline(ez);
    const double excess = std::max(0.0, lhs - bound - 1e-9) / bound;
    rec["product"] = io::number(prod);
    rec["elementary"] = io::to_json(e);
    rec["functional_value"] = io::number(lhs);
    rec["functional_bound"] = io::number(bound);
    return std::max(dev, excess);
  });
  const auto z0 = beta.estimate(Tensor::zeros(TensorSpace(shapes.front())));
  r.samples.push_back({{"zero_tensor", io::to_json(z0)}});
  devs.push_back(headline(z0));
  finish(r, devs);
  return r;
}

SuiteReport check_metric_mapping(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("metric", beta, o, 1e-6);
  const auto shapes = shapes_of(o);
  const EpsilonConfig op_cfg = epsilon_config(o.params);
  auto devs = for_samples(o, shapes.size(), r, [&](std::size_t i, std::size_t s, std::uint64_t seed, Json& rec) {
    const TensorSpace space(shapes[i]);
    Rng rng(stream_seed(seed, 0x0b));
    const Tensor z = random_tensor(space, seed);
    std::vector<LinearMap> us;
    double opn = 1.0;
    for (std::size_t l = 0; l < shapes[i].size(); ++l) {
      const auto& f = shapes[i][l];
      LinearMap u = LinearMap::identity(f);
      if (s == 1 && l == 0) {
        std::fill(u.matrix.begin(), u.matrix.end(), 0.0);
      } else if (s >= 2) {
        u.matrix = gaussian(f.dim() * f.dim(), rng);
      }
      opn *= headline(operator_norm(u, op_cfg));
      us.push_back(std::move(u));
    }
    const auto ew = beta.estimate(apply_operators(z, us));
    const auto ez = beta.estimate(z);
    const double rhs = opn * headline(ez);
    rec["image"] = io::to_json(ew);
    rec["source"] = io::to_json(ez);
    rec["operator_norms"] = io::number(opn);
    if (rhs == 0.0) return ew.lower;
    return std::max(0.0, ew.lower / rhs - 1.0);
  });
  finish(r, devs);
  return r;
}

SuiteReport check_smoothness(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("smoothness", beta, o, smoothness_tolerance(beta.name()));
  const auto shapes = shapes_of(o);
  auto devs = for_samples(o, shapes.size(), r, [&](std::size_t i, std::size_t s, std::uint64_t seed, Json& rec) {
    const TensorSpace space(shapes[i]);
    const auto style = s % 2 == 0 ? TensorStyle::Dense() : TensorStyle::LowRank(2);
    const Tensor flat = random_tensor(space, seed, style);
    const Tensor full = unflatten_scalar(flat);
    const auto ef = beta.estimate(full);
    const auto e0 = beta.estimate(flatten_scalar(full));
    rec["with_scalar"] = io::to_json(ef);
    rec["flattened"] = io::to_json(e0);
    return rel(headline(ef), headline(e0));
  });
  finish(r, devs);
  return r;
}

SuiteReport check_property_b(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("property_b", beta, o, smoothness_tolerance(beta.name()));
  const auto shapes = shapes_of(o);
  std::vector<double> devs;
  try {
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      const auto rep = property_B_check(beta, shapes[i], o.samples, stream_seed(o.seed, i), o.exec);
      for (std::size_t s = 0; s < o.samples; ++s) {
        r.samples.push_back({{"shape", i},
                             {"sample", s},
                             {"with_scalar", io::number(rep.full[s])},
                             {"adjoint", io::number(rep.reduced[s])},
                             {"deviation", io::number(rep.deviation[s])}});
        devs.push_back(rep.deviation[s]);
      }
    }
  } catch (const Unsupported& e) {
    return unsupported(std::move(r), e.what());
  }
  finish(r, devs);
  return r;
}

SuiteReport check_representation(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("representation", beta, o, 1e-4);
  const bool sup_ideal = o.ideal == "sup";
  if (!sup_ideal && o.ideal != "lbeta")
    return unsupported(std::move(r), "unknown ideal '" + o.ideal + "'");
  if (sup_ideal && beta.name() != "pi")
    return unsupported(std::move(r), "the ideal of all bounded maps is compared against pi only");
  if (!sup_ideal && beta.name() == "beta_p")
    return unsupported(std::move(r), "no dual estimator for beta_p");
  const bool vector = o.vector_valued && sup_ideal;
  const EpsilonConfig sup_cfg = epsilon_config(o.params);
  const auto shapes = shapes_of(o);
  std::vector<double> devs;
  try {
    devs = for_samples(o, shapes.size(), r, [&](std::size_t i, std::size_t s, std::uint64_t seed, Json& rec) {
      const auto& dom = shapes[i];
      const NormedSpace cod = (vector && s % 2 == 1) ? NormedSpace::ellp(2, dom.front().p())
                                                     : NormedSpace::scalars();
      const auto t = random_map(dom, cod, seed);
      const NormEstimate lhs = sup_ideal ? sup_norm(t, sup_cfg).estimate
                                         : linearization_norm(t, beta);
      const NormEstimate rhs = linearization_norm(to_scalar_form(t), beta);
      rec["codomain"] = cod.describe();
      rec["ideal_norm"] = io::to_json(lhs);
      rec["dual_norm"] = io::to_json(rhs);
      return rel(headline(lhs), headline(rhs));
    });
  } catch (const Unsupported& e) {
    return unsupported(std::move(r), e.what());
  }
  finish(r, devs);
  if (!sup_ideal && o.vector_valued && beta.name() == "eps")
    r.note = "vector-valued case for eps: not falsifiable at desk scale; scalar maps checked";
  return r;
}

SuiteReport check_bidual_consistency(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("bidual", beta, o, 1e-6);
  const auto* pi = dynamic_cast<const ProjectiveNorm*>(&beta);
  const auto* eps = dynamic_cast<const InjectiveNorm*>(&beta);
  if (pi == nullptr && eps == nullptr)
    return unsupported(std::move(r), "the dual ball of " + beta.name() +
                                         " has no sound estimator");
  const auto shapes = shapes_of(o);
  auto devs = for_samples(o, shapes.size(), r, [&](std::size_t i, std::size_t, std::uint64_t seed, Json& rec) {
    const TensorSpace space(shapes[i]);
    const Tensor z = random_tensor(space, seed);
    const auto e = beta.estimate(z);
    double bidual = 0.0;
    if (pi != nullptr) {
      const auto up = pi_upper(z, pi->config().search);
      bidual = pi_lower(z, pi->config(), up.feasible ? &up.decomposition : nullptr);
      bool hilbert = space.order() == 2;
      for (const auto& f : space.factors()) hilbert = hilbert && f.p() == 2.0 && !f.is_weighted();
      if (hilbert) rec["oracle"] = io::number(pi_matrix_oracle(z));
    } else {
      // Product of injective maximizers, then random-direction ascent on
      // <A, z> / (upper bound on the dual norm of A).
      const auto s = epsilon_search(z, eps->config());
      std::vector<double> a = kernels::outer(s.functionals);
      auto ratio = [&](const std::vector<double>& f) {
        const double d = headline(beta.dual_estimate(Tensor(space, f)));
        return d > 0.0 ? std::abs(dot(f, z.coeffs)) / d : 0.0;
      };
      bidual = ratio(a);
      Rng rng(stream_seed(seed, 0xb1d));
      double step = 0.3;
      for (int it = 0; it < 6; ++it) {
        auto d = gaussian(a.size(), rng);
        const double na = std::sqrt(dot(a, a)), nd = std::sqrt(dot(d, d));
        auto cand = a;
        for (std::size_t k = 0; k < a.size(); ++k) cand[k] += step * na / nd * d[k];
        const double rc = ratio(cand);
        if (rc > bidual) {
          bidual = rc;
          a = std::move(cand);
        } else {
          step *= 0.5;
        }
      }
    }
    rec["direct"] = io::to_json(e);
    rec["bidual"] = io::number(bidual);
    double dev = 0.0;
    const double scale = std::max(e.lower, 1e-300);
    if (bidual < e.lower) dev = (e.lower - bidual) / scale;
    if (std::isfinite(e.upper) && bidual > e.upper) dev = (bidual - e.upper) / scale;
    if (rec.contains("oracle")) dev = std::max(dev, rel(bidual, rec["oracle"].get<double>()));
    return dev;
  });
  const auto z0 = beta.estimate(Tensor::zeros(TensorSpace(shapes.front())));
  r.samples.push_back({{"zero_tensor", io::to_json(z0)}});
  devs.push_back(headline(z0));
  finish(r, devs);
  return r;
}

SuiteReport witness_search_nonsmooth(const TensorNormEvaluator& beta, const SuiteOptions& o) {
  auto r = start("witness", beta, o, smoothness_tolerance(beta.name()));
  const auto shapes = shapes_of(o);
  struct Candidate {
    double violation = -1.0;
    std::vector<double> coeffs;
    NormEstimate full, flat;
    std::uint64_t seed = 0;
    int steps = 0;
  };
  auto violation = [&](const TensorSpace& space, const std::vector<double>& c, Candidate& out) {
    const Tensor flat(space, c);
    out.full = beta.estimate(unflatten_scalar(flat));
    out.flat = beta.estimate(flat);
    out.coeffs = c;
    out.violation = rel(headline(out.full), headline(out.flat));
    return out.violation;
  };
  const std::size_t total = shapes.size() * o.samples;
  std::vector<Candidate> best(total);
  kernels::for_each_index(total, o.exec, [&](std::size_t k) {
    const std::size_t i = k / o.samples, s = k % o.samples;
    const std::uint64_t seed = stream_seed(o.seed, i, s);
    const TensorSpace space(shapes[i]);
    Candidate cur;
    cur.seed = seed;
    violation(space, random_tensor(space, seed).coeffs, cur);
    Rng rng(stream_seed(seed, 0x717));
    double step = 0.3;
    for (int it = 0; it < o.witness_steps; ++it) {
      auto d = gaussian(cur.coeffs.size(), rng);
      const double nc = std::sqrt(dot(cur.coeffs, cur.coeffs));
      const double nd = std::sqrt(dot(d, d));
      auto c = cur.coeffs;
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += step * nc / nd * d[j];
      Candidate next;
      next.seed = seed;
      if (violation(space, c, next) > cur.violation) {
        next.steps = it + 1;
        cur = std::move(next);
      } else {
        step *= 0.5;
      }
    }
    best[k] = std::move(cur);
  });
  std::vector<double> devs;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < total; ++k) {
    r.samples.push_back({{"shape", k / o.samples},
                         {"sample", k % o.samples},
                         {"seed", best[k].seed},
                         {"violation", io::number(best[k].violation)}});
    devs.push_back(best[k].violation);
    if (best[k].violation > best[arg].violation) arg = k;
  }
  finish(r, devs);
  if (total > 0) {
    const auto& b = best[arg];
    r.samples.push_back({{"best",
                          {{"shape", shape_name(shapes[arg / o.samples])},
                           {"seed", b.seed},
                           {"accepted_steps", b.steps},
                           {"coeffs", b.coeffs},
                           {"with_scalar", io::to_json(b.full)},
                           {"flattened", io::to_json(b.flat)},
                           {"violation", io::number(b.violation)}}}});
  }
  if (r.status == "recorded")
    r.note = "no smoothness claim for " + beta.name() + "; best candidate recorded";
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "crossnorm", "metric", "smoothness", "property_b", "representation", "bidual", "witness"};
  return names;
}

SuiteReport run_suite(const std::string& suite, const SuiteOptions& o) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw InvalidArgument("unknown suite '" + suite + "'");
  const auto beta = make_evaluator(o.norm, o.params);
  if (suite == "crossnorm") return check_crossnorm(*beta, o);
  if (suite == "metric") return check_metric_mapping(*beta, o);
  if (suite == "smoothness") return check_smoothness(*beta, o);
  if (suite == "property_b") return check_property_b(*beta, o);
  if (suite == "representation") return check_representation(*beta, o);
  if (suite == "bidual") return check_bidual_consistency(*beta, o);
  return witness_search_nonsmooth(*beta, o);
}

std::uint64_t config_hash(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json report_json(const SuiteReport& r) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(r.config)));
  return {{"suite", r.suite},
          {"norm", r.norm},
          {"status", r.status},
          {"max_deviation", io::number(r.max_deviation)},
          {"tolerance", io::number(r.tolerance)},
          {"config", r.config},
          {"config_hash", hash},
          {"samples", r.samples},
          {"note", r.note}};
}

std::string report_csv(const std::vector<SuiteReport>& reports) {
  std::string out = "suite,norm,config_hash,max_deviation,status\n";
  for (const auto& r : reports) {
    char line[256];
    std::snprintf(line, sizeof line, "%s,%s,%016llx,%.17g,%s\n", r.suite.c_str(),
                  r.norm.c_str(), static_cast<unsigned long long>(config_hash(r.config)),
                  r.max_deviation, r.status.c_str());
    out += line;
  }
  return out;
}

}  // namespace tnl::verify
