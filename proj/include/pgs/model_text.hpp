#pragma once

#include <cstdint>
#include <string>

#include "pgs/model.hpp"

namespace pgs {

/// Parses the .pgs model text format:
///   # comment
///   actions I a1 a2 ...
///   actions II b1 b2 ...
///   props p q ...
///   state s0 [p q]          # labels optional
///   init s0
///   trans s0 a1 b1 -> s1:1/2 s2:1/2
///   trans s1 * * -> s1:1    # '*' expands over an alphabet; explicit
///                           # entries override wildcard ones
/// Probabilities are rationals (num/den), decimals, or integers.
RawModel parse_pgs(const std::string& text);

Pgs load_pgs_file(const std::string& path);

/// Canonical text form; parse(write(g)) reproduces g exactly.
std::string write_pgs(const Pgs& g);

struct GenOptions {
  int states = 4;
  int actions = 2;  // per player
  int props = 2;
  std::uint64_t seed = 1;
  int max_denominator = 16;
  int max_support = 3;
};

/// Seeded random total PGS; byte-identical text for equal options.
Pgs random_model(const GenOptions& opts);

}  // namespace pgs
