#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace pgs {

/// Exact rational number. All model probabilities and feasibility arithmetic
/// use this type; floating point appears only in value iteration.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "3/4", "0.75", "1", "-2/5". Returns nullopt on malformed input.
std::optional<Rat> rat_parse(const std::string& text);

/// Canonical form: "num/den", or "num" when the denominator is one.
std::string rat_str(const Rat& q);

inline double rat_double(const Rat& q) { return q.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rat rat_of_double(double x) { return Rat(x); }

}  // namespace pgs
