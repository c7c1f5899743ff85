#include "tnl/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tnl::io {

namespace {

double parse_exponent(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    throw ParseError("exponent must be a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ParseError("exponent must be a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(std::string(what) + " must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<NormedSpace> parse_factors(const Json& j) {
  const Json& f = field(j, "factors");
  if (!f.is_array() || f.empty())
    throw ParseError("\"factors\" must be a non-empty array");
  std::vector<NormedSpace> out;
  for (const auto& s : f) out.push_back(parse_space(s));
  return out;
}

template <class Fn>
auto rethrow_as_parse(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

NormedSpace parse_space(const Json& j) {
  return rethrow_as_parse([&] {
    const Json& d = field(j, "dim");
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw ParseError("\"dim\" must be a positive integer");
    const auto dim = static_cast<std::size_t>(d.get<long long>());
    const std::string kind = field(j, "norm").get<std::string>();
    const double p = parse_exponent(field(j, "p"));
    if (kind == "ellp") return NormedSpace::ellp(dim, p);
    if (kind == "weighted_ellp")
      return NormedSpace::weighted(dim, p, numbers(field(j, "weights"), "\"weights\""));
    throw ParseError("unknown norm kind \"" + kind + "\"");
  });
}

Json to_json(const NormedSpace& s) {
  Json j;
  j["dim"] = s.dim();
  j["p"] = number(s.p());
  if (!s.is_weighted()) {
    j["norm"] = "ellp";
    return j;
  }
  j["norm"] = "weighted_ellp";
  // Reciprocal-weight spaces are written with their effective weights.
  std::vector<double> w;
  for (std::size_t i = 0; i < s.dim(); ++i) w.push_back(s.scale(i));
  j["weights"] = w;
  return j;
}

Tensor parse_tensor(const Json& j) {
  return rethrow_as_parse([&] {
    return Tensor(TensorSpace(parse_factors(j)), numbers(field(j, "coeffs"), "\"coeffs\""));
  });
}

Json to_json(const Tensor& z) {
  Json j;
  j["factors"] = Json::array();
  for (const auto& f : z.space.factors()) j["factors"].push_back(to_json(f));
  j["coeffs"] = z.coeffs;
  return j;
}

MultilinearMap parse_map(const Json& j) {
  return rethrow_as_parse([&] {
    NormedSpace cod = j.contains("codomain") ? parse_space(j.at("codomain"))
                                             : NormedSpace::scalars();
    return MultilinearMap(parse_factors(j), std::move(cod),
                          numbers(field(j, "coeffs"), "\"coeffs\""));
  });
}

Json to_json(const MultilinearMap& a) {
  Json j;
  j["factors"] = Json::array();
  for (const auto& f : a.domain) j["factors"].push_back(to_json(f));
  j["codomain"] = to_json(a.codomain);
  j["coeffs"] = a.coeffs;
  return j;
}

Decomposition parse_decomposition(const Json& j) {
  return rethrow_as_parse([&] {
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
    Decomposition d;
    for (const auto& t : terms) {
      Decomposition::Term term;
      term.lambda = t.contains("lambda") ? t.at("lambda").get<double>() : 1.0;
      const Json& vs = field(t, "vectors");
      if (!vs.is_array()) throw ParseError("\"vectors\" must be an array");
      for (const auto& v : vs) term.vectors.push_back(numbers(v, "vector"));
      d.terms.push_back(std::move(term));
    }
    return d;
  });
}

Json to_json(const Decomposition& d) {
  Json j;
  j["terms"] = Json::array();
  for (const auto& t : d.terms) j["terms"].push_back({{"lambda", t.lambda}, {"vectors", t.vectors}});
  return j;
}

Json to_json(const NormEstimate& e) {
  return {{"lower", number(e.lower)},
          {"upper", number(e.upper)},
          {"converged", e.converged},
          {"iterations", e.iterations},
          {"seed", e.seed}};
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace tnl::io
