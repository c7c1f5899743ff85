#include <gtest/gtest.h>

#include "support.hpp"
#include "tnl/verify.hpp"

using namespace tnl;
using namespace tnl::test;

namespace {

verify::SuiteOptions small(const std::string& norm, std::size_t samples = 3) {
  verify::SuiteOptions o;
  o.norm = norm;
  o.samples = samples;
  o.shapes = {ell({2, 2}, 2.0), ell({2, 3}, 1.0)};
  return o;
}

}  // namespace

TEST(Evaluator, Factory) {
  for (const char* n : {"eps", "pi", "sigma_p", "beta_p"}) EXPECT_EQ(make_evaluator(n)->name(), n);
  EXPECT_THROW(make_evaluator("gamma"), InvalidArgument);
  EXPECT_THROW(BetaNorm().dual_estimate(random_tensor(TensorSpace(ell({2, 2}, 2.0)), 1)), Unsupported);
}

TEST(Verify, ParseDims) {
  EXPECT_EQ(verify::parse_dims("2x3x2"), (std::vector<std::size_t>{2, 3, 2}));
  EXPECT_THROW(verify::parse_dims("2x0"), ParseError);
  EXPECT_THROW(verify::parse_dims("2xx3"), ParseError);
  EXPECT_THROW(verify::parse_dims(""), ParseError);
}

TEST(Verify, CrossnormPasses) {
  for (const char* n : {"eps", "pi", "sigma_p"}) {
    const auto r = verify::run_suite("crossnorm", small(n, 2));
    EXPECT_EQ(r.status, "pass") << n << " " << r.max_deviation;
  }
}

TEST(Verify, MetricMapping) {
  for (const char* n : {"eps", "pi"}) {
    const auto r = verify::run_suite("metric", small(n, 4));
    EXPECT_EQ(r.status, "pass") << n << " " << r.max_deviation;
  }
}

TEST(Verify, SmoothnessTiers) {
  EXPECT_EQ(verify::smoothness_tolerance("pi"), 1e-9);
  EXPECT_EQ(verify::smoothness_tolerance("eps"), 1e-6);
  EXPECT_EQ(verify::smoothness_tolerance("sigma_p"), 1e-5);
  for (const char* n : {"eps", "pi"}) {
    const auto r = verify::run_suite("smoothness", small(n));
    EXPECT_EQ(r.status, "pass") << n << " " << r.max_deviation;
  }
  EXPECT_EQ(verify::run_suite("smoothness", small("beta_p", 1)).status, "recorded");
}

TEST(Verify, PropertyBUnsupportedForBeta) {
  EXPECT_EQ(verify::run_suite("property_b", small("beta_p", 1)).status, "unsupported");
  EXPECT_EQ(verify::run_suite("property_b", small("pi", 2)).status, "pass");
}

TEST(Verify, Representation) {
  auto o = small("pi", 2);
  EXPECT_EQ(verify::run_suite("representation", o).status, "pass");
  o.norm = "eps";
  EXPECT_EQ(verify::run_suite("representation", o).status, "unsupported");
  o.ideal = "lbeta";
  const auto r = verify::run_suite("representation", o);
  EXPECT_EQ(r.status, "pass");
  EXPECT_FALSE(r.note.empty());
}

TEST(Verify, Bidual) {
  const auto pi = verify::run_suite("bidual", small("pi", 2));
  EXPECT_EQ(pi.status, "pass") << pi.max_deviation;
  auto o = small("eps", 2);
  o.shapes = {ell({2, 2}, 1.0)};
  EXPECT_EQ(verify::run_suite("bidual", o).status, "pass");
  EXPECT_EQ(verify::run_suite("bidual", small("sigma_p", 1)).status, "unsupported");
}

TEST(Verify, WitnessRecord) {
  auto o = small("pi", 1);
  o.witness_steps = 2;
  const auto r = verify::run_suite("witness", o);
  EXPECT_EQ(r.status, "pass");
  const auto j = verify::report_json(r);
  EXPECT_TRUE(j["samples"].back().contains("best"));
  EXPECT_TRUE(j["samples"].back()["best"].contains("seed"));
}

TEST(Verify, ReportsAreDeterministic) {
  const auto o = small("eps", 2);
  const auto a = verify::run_suite("crossnorm", o);
  const auto b = verify::run_suite("crossnorm", o);
  EXPECT_EQ(verify::report_json(a).dump(), verify::report_json(b).dump());
  EXPECT_EQ(verify::report_csv({a}), verify::report_csv({b}));
  auto other = o;
  other.seed = 1;
  EXPECT_NE(verify::config_hash(verify::run_suite("crossnorm", other).config), verify::config_hash(a.config));
}

TEST(Verify, UnknownSuite) {
  EXPECT_THROW(verify::run_suite("nosuch", small("pi")), InvalidArgument);
}
