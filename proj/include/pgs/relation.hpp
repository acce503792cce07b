#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pgs/distribution.hpp"
#include "pgs/model.hpp"

#include "json.hpp"

namespace pgs {

/// Finite relation between two state spaces, stored as sorted (left, right)
/// id pairs.
class RelationTable {
 public:
  RelationTable() = default;
  explicit RelationTable(std::vector<std::pair<int, int>> pairs);

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  bool contains(int left, int right) const;
  bool empty() const { return pairs_.empty(); }
  size_t size() const { return pairs_.size(); }

  void insert(int left, int right);
  void erase(int left, int right);

  RelationTable inverse() const;
  bool is_symmetric() const;

  bool operator==(const RelationTable&) const = default;

 private:
  std::vector<std::pair<int, int>> pairs_;
};

/// Relational composition: (a, c) whenever (a, b) in r and (b, c) in s.
RelationTable compose_relations(const RelationTable& r,
                                const RelationTable& s);

/// All label-equal pairs between two structures (the refinement start).
RelationTable label_equal_pairs(const Pgs& left, const Pgs& right);

/// Finite relation between states and distributions over another space.
struct ForwardRelationTable {
  std::vector<std::pair<int, Distribution>> pairs;

  bool empty() const { return pairs.empty(); }
  size_t size() const { return pairs.size(); }
};

/// JSON round-trips use state names, probabilities as "num/den" strings.
nlohmann::ordered_json relation_to_json(const RelationTable& r,
                                        const Pgs& left, const Pgs& right);
RelationTable relation_from_json(const nlohmann::json& j, const Pgs& left,
                                 const Pgs& right);

nlohmann::ordered_json forward_relation_to_json(const ForwardRelationTable& r,
                                                const Pgs& left,
                                                const Pgs& right);
ForwardRelationTable forward_relation_from_json(const nlohmann::json& j,
                                                const Pgs& left,
                                                const Pgs& right);

}  // namespace pgs
