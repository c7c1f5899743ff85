#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace tnl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Raised when an operation is asked for on inputs it does not handle
/// (e.g. extreme points of a smooth ball).
struct Unsupported : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

/// Execution policy for restart- and sample-level loops. Both policies
/// produce bit-identical results; `serial` is the reference path.
enum class Exec { serial, parallel };

/// Lower/upper bracket on a norm value.
struct NormEstimate {
  double lower = 0.0;
  double upper = kInf;
  bool converged = false;
  int iterations = 0;
  std::uint64_t seed = 0;

  static NormEstimate exact(double v, std::uint64_t seed = 0) {
    return {v, v, true, 0, seed};
  }
  bool certified() const { return upper < kInf; }
  /// Value used when a single number is needed: the certified value when the
  /// bracket is closed, otherwise the best lower bound.
  double value() const { return lower; }
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  return mix_seed(mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b) ^ c);
}

using Rng = std::mt19937_64;

}  // namespace tnl
