#include "pgs/relation.hpp"

#include <algorithm>
#include <set>

namespace pgs {

RelationTable::RelationTable(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool RelationTable::contains(int left, int right) const {
  return std::binary_search(pairs_.begin(), pairs_.end(),
                            std::make_pair(left, right));
}

void RelationTable::insert(int left, int right) {
  auto p = std::make_pair(left, right);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) pairs_.insert(it, p);
}

void RelationTable::erase(int left, int right) {
  auto p = std::make_pair(left, right);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it != pairs_.end() && *it == p) pairs_.erase(it);
}

RelationTable RelationTable::inverse() const {
  std::vector<std::pair<int, int>> inv;
  inv.reserve(pairs_.size());
  for (auto& [l, r] : pairs_) inv.emplace_back(r, l);
  return RelationTable(std::move(inv));
}

bool RelationTable::is_symmetric() const {
  for (auto& [l, r] : pairs_)
    if (!contains(r, l)) return false;
  return true;
}

RelationTable compose_relations(const RelationTable& r,
                                const RelationTable& s) {
  std::set<std::pair<int, int>> out;
  for (auto& [a, b] : r.pairs())
    for (auto& [b2, c] : s.pairs())
      if (b == b2) out.emplace(a, c);
  return RelationTable(std::vector<std::pair<int, int>>(out.begin(), out.end()));
}

RelationTable label_equal_pairs(const Pgs& left, const Pgs& right) {
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < left.num_states(); ++s)
    for (int t = 0; t < right.num_states(); ++t)
      if (left.labels_equal(s, right, t)) pairs.emplace_back(s, t);
  return RelationTable(std::move(pairs));
}

nlohmann::ordered_json relation_to_json(const RelationTable& r,
                                        const Pgs& left, const Pgs& right) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& [l, t] : r.pairs())
    arr.push_back({left.states.at(l), right.states.at(t)});
  return arr;
}

RelationTable relation_from_json(const nlohmann::json& j, const Pgs& left,
                                 const Pgs& right) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2)
      throw ModelError("relation entries must be [left, right] pairs");
    int l = left.state_id(item[0].get<std::string>());
    int t = right.state_id(item[1].get<std::string>());
    if (l < 0 || t < 0)
      throw ModelError("relation references unknown state '" +
                       item[l < 0 ? 0 : 1].get<std::string>() + "'");
    pairs.emplace_back(l, t);
  }
  return RelationTable(std::move(pairs));
}

nlohmann::ordered_json forward_relation_to_json(const ForwardRelationTable& r,
                                                const Pgs& left,
                                                const Pgs& right) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& [l, dist] : r.pairs) {
    nlohmann::ordered_json target;
    for (auto& [t, p] : dist.entries())
      target[right.states.at(t)] = rat_str(p);
    arr.push_back({left.states.at(l), target});
  }
  return arr;
}

ForwardRelationTable forward_relation_from_json(const nlohmann::json& j,
                                                const Pgs& left,
                                                const Pgs& right) {
  ForwardRelationTable table;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[1].is_object())
      throw ModelError(
          "forward relation entries must be [state, {state: prob}] pairs");
    int l = left.state_id(item[0].get<std::string>());
    if (l < 0)
      throw ModelError("forward relation references unknown state '" +
                       item[0].get<std::string>() + "'");
    std::vector<std::pair<int, Rat>> entries;
    for (auto it = item[1].begin(); it != item[1].end(); ++it) {
      int t = right.state_id(it.key());
      if (t < 0)
        throw ModelError("forward relation references unknown state '" +
                         it.key() + "'");
      auto q = rat_parse(it.value().get<std::string>());
      if (!q) throw ModelError("bad probability '" +
                               it.value().get<std::string>() + "'");
      entries.emplace_back(t, *q);
    }
    auto dist = Distribution::try_make(entries);
    if (!dist)
      throw ModelError("forward relation target is not a distribution");
    table.pairs.emplace_back(l, *dist);
  }
  return table;
}

}  // namespace pgs
