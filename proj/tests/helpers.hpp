#pragma once

#include <string>
#include <vector>

#include "pgs/cli.hpp"
#include "pgs/model.hpp"
#include "pgs/model_text.hpp"
#include "pgs/rng.hpp"

namespace pgs::test {

inline std::string data_path(const std::string& name) {
  return std::string(PGS_TEST_DATA_DIR) + "/" + name;
}

inline Pgs fig1() { return load_pgs_file(data_path("fig1.pgs")); }
inline Pgs fig2a() { return load_pgs_file(data_path("fig2a.pgs")); }
inline Pgs fig2b() { return load_pgs_file(data_path("fig2b.pgs")); }

/// Random distribution over a nonempty subset of the given ids, denominators
/// <= 16.
inline Distribution random_distribution(const std::vector<int>& ids,
                                        SplitMix64& rng) {
  long den = 1 + static_cast<long>(rng.below(16));
  std::vector<long> weights(ids.size(), 0);
  for (long i = 0; i < den; ++i) weights[rng.below(ids.size())] += 1;
  std::vector<std::pair<int, Rat>> entries;
  for (size_t i = 0; i < ids.size(); ++i)
    if (weights[i] > 0) entries.emplace_back(ids[i], rat(weights[i], den));
  return Distribution::make(entries);
}

inline MixedMove random_move(int actions, SplitMix64& rng) {
  std::vector<int> ids(actions);
  for (int a = 0; a < actions; ++a) ids[a] = a;
  return random_distribution(ids, rng);
}

inline Level1Strategy random_level1(const Pgs& g, Player p, SplitMix64& rng) {
  Level1Strategy s;
  for (int i = 0; i < g.num_states(); ++i)
    s.moves.push_back(random_move(g.num_actions(p), rng));
  return s;
}

inline std::vector<int> all_states(const Pgs& g) {
  std::vector<int> ids(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) ids[s] = s;
  return ids;
}

inline Pgs small_random_model(std::uint64_t seed, int states = 3,
                              int actions = 2, int props = 1) {
  GenOptions opts;
  opts.states = states;
  opts.actions = actions;
  opts.props = props;
  opts.seed = seed;
  return random_model(opts);
}

}  // namespace pgs::test
