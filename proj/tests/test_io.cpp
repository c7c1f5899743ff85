#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "tnl/io.hpp"

using namespace tnl;
using io::Json;

TEST(Io, SpaceRoundTrip) {
  for (const auto& s : {NormedSpace::ellp(3, 1.0), NormedSpace::ellp(2, kInf),
                        NormedSpace::weighted(2, 1.5, {0.5, 3.0})}) {
    EXPECT_EQ(io::parse_space(io::to_json(s)), s);
  }
  EXPECT_EQ(io::parse_space(Json::parse(R"({"dim": 2, "norm": "ellp", "p": "inf"})")),
            NormedSpace::ellp(2, kInf));
}

TEST(Io, TensorRoundTrip) {
  const Json j = Json::parse(R"({"factors": [{"dim": 2, "norm": "ellp", "p": 2},
                                             {"dim": 2, "norm": "ellp", "p": 1}],
                                 "coeffs": [1, 2, 3, 4]})");
  const Tensor z = io::parse_tensor(j);
  EXPECT_EQ(z.coeffs, (std::vector<double>{1, 2, 3, 4}));
  const Tensor back = io::parse_tensor(io::to_json(z));
  EXPECT_EQ(back.coeffs, z.coeffs);
  EXPECT_EQ(back.space, z.space);
}

TEST(Io, MapDefaultsToScalars) {
  const Json j = Json::parse(R"({"factors": [{"dim": 2, "norm": "ellp", "p": 2}], "coeffs": [1, 2]})");
  const auto a = io::parse_map(j);
  EXPECT_TRUE(a.scalar());
  auto v = j;
  v["codomain"] = {{"dim", 2}, {"norm", "ellp"}, {"p", 2}};
  v["coeffs"] = {1, 0, 0, 1};
  EXPECT_EQ(io::parse_map(v).codomain.dim(), 2u);
}

TEST(Io, ErrorsBecomeParseErrors) {
  EXPECT_THROW(io::parse_tensor(Json::parse(R"({"factors": []})")), ParseError);
  EXPECT_THROW(io::parse_tensor(Json::parse(R"({"factors": [{"dim": 2, "norm": "ellp", "p": 2}], "coeffs": [1]})")),
               ParseError);
  EXPECT_THROW(io::parse_space(Json::parse(R"({"dim": 2, "norm": "bogus"})")), ParseError);
  EXPECT_THROW(io::load_file("/nonexistent/file.json"), ParseError);
  const std::string path = ::testing::TempDir() + "bad.json";
  std::ofstream(path) << "{nope";
  EXPECT_THROW(io::load_file(path), ParseError);
}

TEST(Io, EstimateJson) {
  NormEstimate e;
  e.lower = 1.5;
  const Json j = io::to_json(e);
  EXPECT_EQ(j["upper"], "inf");
  EXPECT_EQ(j["lower"], 1.5);
  EXPECT_EQ(io::number(-kInf), "-inf");
}

TEST(Io, DecompositionRoundTrip) {
  Decomposition d;
  d.terms.push_back({2.0, {{1, 0}, {0, 1}}});
  const auto back = io::parse_decomposition(io::to_json(d));
  ASSERT_EQ(back.terms.size(), 1u);
  EXPECT_EQ(back.terms[0].lambda, 2.0);
  EXPECT_EQ(back.terms[0].vectors, d.terms[0].vectors);
}
