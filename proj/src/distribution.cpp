#include "pgs/distribution.hpp"

#include <algorithm>
#include <map>

namespace pgs {

Distribution Distribution::point(int id) {
  Distribution d;
  d.entries_.emplace_back(id, Rat(1));
  return d;
}

std::optional<Distribution> Distribution::try_make(
    std::vector<std::pair<int, Rat>> entries) {
  std::map<int, Rat> acc;
  for (auto& [id, p] : entries) {
    if (sgn(p) < 0) return std::nullopt;
    if (sgn(p) > 0) acc[id] += p;
  }
  Rat total(0);
  for (auto& [id, p] : acc) total += p;
  if (total != 1) return std::nullopt;
  Distribution d;
  d.entries_.assign(acc.begin(), acc.end());
  return d;
}

Distribution Distribution::make(std::vector<std::pair<int, Rat>> entries) {
  auto d = try_make(std::move(entries));
  if (!d) throw DistributionError("probabilities must be >= 0 and sum to 1");
  return *d;
}

Rat Distribution::mass(int id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const std::pair<int, Rat>& e, int key) { return e.first < key; });
  if (it != entries_.end() && it->first == id) return it->second;
  return Rat(0);
}

std::vector<int> Distribution::support() const {
  std::vector<int> ids;
  ids.reserve(entries_.size());
  for (auto& [id, p] : entries_) ids.push_back(id);
  return ids;
}

Distribution convex_combine(const std::vector<Distribution>& parts,
                            const std::vector<Rat>& weights) {
  if (parts.size() != weights.size())
    throw DistributionError("convex_combine: length mismatch");
  Rat total(0);
  for (const Rat& w : weights) {
    if (sgn(w) < 0) throw DistributionError("convex_combine: negative weight");
    total += w;
  }
  if (total != 1) throw DistributionError("convex_combine: weights must sum to 1");

  std::map<int, Rat> acc;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (sgn(weights[i]) == 0) continue;
    for (auto& [id, p] : parts[i].entries()) acc[id] += weights[i] * p;
  }
  std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
  return Distribution::make(std::move(entries));
}

}  // namespace pgs
