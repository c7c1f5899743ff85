#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnl/evaluator.hpp"
#include "tnl/io.hpp"

namespace tnl::verify {

struct SuiteOptions {
  /// Tensor norm under test: eps, pi, sigma_p or beta_p.
  std::string norm = "pi";
  EvaluatorParams params;
  /// Factor spaces to sample on; empty selects the suite default.
  std::vector<std::vector<NormedSpace>> shapes;
  /// Samples per shape.
  std::size_t samples = 10;
  std::uint64_t seed = 0;
  Exec exec = Exec::serial;
  /// Representation suite: "sup" (all bounded maps, against pi) or "lbeta"
  /// (the ideal of the norm under test).
  std::string ideal = "sup";
  /// Representation suite: include vector-valued maps.
  bool vector_valued = true;
  /// Witness search: random perturbation steps per start.
  int witness_steps = 6;
};

/// Outcome of one suite: pass/fail against its tolerance tier,
/// "unsupported", "not_falsifiable", or "recorded" (no claim).
struct SuiteReport {
  std::string suite;
  std::string norm;
  std::string status;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  io::Json config;
  io::Json samples = io::Json::array();
  std::string note;

  bool failed() const { return status == "fail"; }
};

/// Smoothness tolerance tier: 1e-9 for pi, 1e-6 for eps, 1e-5 for sigma_p,
/// +inf (no claim) otherwise.
double smoothness_tolerance(const std::string& norm);

/// (2,2), (2,3), (3,3), (2,2,2) with l_p factors.
std::vector<std::vector<NormedSpace>> default_shapes(double factor_p = 2.0);

/// Parses "2x3x2" into factor dimensions.
std::vector<std::size_t> parse_dims(const std::string& spec);

SuiteReport check_crossnorm(const TensorNormEvaluator& beta, const SuiteOptions& o);
SuiteReport check_metric_mapping(const TensorNormEvaluator& beta, const SuiteOptions& o);
SuiteReport check_smoothness(const TensorNormEvaluator& beta, const SuiteOptions& o);
SuiteReport check_property_b(const TensorNormEvaluator& beta, const SuiteOptions& o);
SuiteReport check_representation(const TensorNormEvaluator& beta, const SuiteOptions& o);
SuiteReport check_bidual_consistency(const TensorNormEvaluator& beta, const SuiteOptions& o);

/// Maximizes |beta(z) - beta(psi(z))| / beta(psi(z)) over sampled and
/// perturbed z on the given shapes; the best candidate goes in the samples.
SuiteReport witness_search_nonsmooth(const TensorNormEvaluator& beta,
                                     const SuiteOptions& o);

/// Suite names: crossnorm, metric, smoothness, property_b, representation,
/// bidual, witness. Throws InvalidArgument for unknown names.
SuiteReport run_suite(const std::string& suite, const SuiteOptions& o);
const std::vector<std::string>& suite_names();

/// Value used for comparisons: the upper bound when finite, else the lower.
double headline(const NormEstimate& e);

io::Json report_json(const SuiteReport& r);
/// Header plus one row per report: suite,norm,config_hash,max_deviation,status.
std::string report_csv(const std::vector<SuiteReport>& reports);
/// FNV-1a of the canonical JSON dump.
std::uint64_t config_hash(const io::Json& config);

}  // namespace tnl::verify
