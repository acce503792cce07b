#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgs/rational.hpp"

namespace pgs {

struct DistributionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite-support probability map over interned ids (states or actions).
/// Entries are kept sorted by id, strictly positive, and sum to exactly one.
class Distribution {
 public:
  Distribution() = default;

  static Distribution point(int id);

  /// Validates: no negative mass, total exactly one. Zero entries are
  /// dropped, duplicate ids accumulated.
  static Distribution make(std::vector<std::pair<int, Rat>> entries);
  static std::optional<Distribution> try_make(
      std::vector<std::pair<int, Rat>> entries);

  const std::vector<std::pair<int, Rat>>& entries() const { return entries_; }
  Rat mass(int id) const;
  std::vector<int> support() const;
  bool empty() const { return entries_.empty(); }

  bool is_point() const { return entries_.size() == 1; }
  int point_id() const { return entries_.front().first; }

  bool operator==(const Distribution& other) const = default;

 private:
  std::vector<std::pair<int, Rat>> entries_;
};

/// Pointwise sum(weights[i] * parts[i]); weights must sum to one.
Distribution convex_combine(const std::vector<Distribution>& parts,
                            const std::vector<Rat>& weights);

}  // namespace pgs
