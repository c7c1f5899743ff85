#pragma once

#include <string>

#include "json.hpp"
#include "tnl/common.hpp"
#include "tnl/multilinear.hpp"
#include "tnl/tensor.hpp"

namespace tnl::io {

using Json = nlohmann::json;

/// {"dim": d, "norm": "ellp", "p": 2} or {"dim": d, "norm": "weighted_ellp",
/// "p": 2, "weights": [...]}; p may be the string "inf".
NormedSpace parse_space(const Json& j);
Json to_json(const NormedSpace& s);

/// {"factors": [...], "coeffs": [...]}, coefficients row-major.
Tensor parse_tensor(const Json& j);
Json to_json(const Tensor& z);

/// The tensor format plus a "codomain" space block; "factors" is the domain.
MultilinearMap parse_map(const Json& j);
Json to_json(const MultilinearMap& a);

/// {"terms": [{"lambda": ..., "vectors": [[...], ...]}]}
Decomposition parse_decomposition(const Json& j);
Json to_json(const Decomposition& d);

/// Infinite bounds are written as the string "inf".
Json to_json(const NormEstimate& e);
Json number(double x);

/// Reads and parses a JSON file; ParseError on I/O or syntax errors.
Json load_file(const std::string& path);

}  // namespace tnl::io
