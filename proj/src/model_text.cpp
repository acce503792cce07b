#include "pgs/model_text.hpp"

#include <fstream>
#include <sstream>

#include "pgs/rng.hpp"

namespace pgs {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ModelError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

RawModel parse_pgs(const std::string& text) {
  RawModel raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_init = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::vector<std::string> words = split_ws(line);
    if (words.empty()) continue;
    const std::string& head = words[0];

    if (head == "actions") {
      if (words.size() < 3) fail(lineno, "actions needs a player and names");
      auto& list = words[1] == "I"    ? raw.actions_i
                   : words[1] == "II" ? raw.actions_ii
                                      : (fail(lineno, "player must be I or II"),
                                         raw.actions_i);
      if (!list.empty()) fail(lineno, "duplicate actions declaration");
      list.assign(words.begin() + 2, words.end());
    } else if (head == "props") {
      raw.props.insert(raw.props.end(), words.begin() + 1, words.end());
    } else if (head == "state") {
      if (words.size() < 2) fail(lineno, "state needs a name");
      RawModel::State st;
      st.name = words[1];
      for (size_t i = 2; i < words.size(); ++i) {
        std::string label = words[i];
        // Labels may be written bare or wrapped in [ ... ].
        while (!label.empty() && (label.front() == '[' || label.front() == ','))
          label.erase(label.begin());
        while (!label.empty() && (label.back() == ']' || label.back() == ','))
          label.pop_back();
        if (!label.empty()) st.labels.push_back(label);
      }
      raw.states.push_back(std::move(st));
    } else if (head == "init") {
      if (words.size() != 2)
        fail(lineno, "init takes exactly one state name");
      if (saw_init) fail(lineno, "duplicate init declaration");
      raw.initial = words[1];
      saw_init = true;
    } else if (head == "trans") {
      // trans s a b -> t1:p1 t2:p2 ...
      if (words.size() < 6) fail(lineno, "malformed transition");
      RawModel::Trans tr;
      tr.line = lineno;
      tr.state = words[1];
      tr.action_i = words[2];
      tr.action_ii = words[3];
      if (words[4] != "->") fail(lineno, "expected '->'");
      for (size_t i = 5; i < words.size(); ++i) {
        auto colon = words[i].rfind(':');
        if (colon == std::string::npos)
          fail(lineno, "successor entries look like state:prob");
        tr.successors.emplace_back(words[i].substr(0, colon),
                                   words[i].substr(colon + 1));
      }
      raw.transitions.push_back(std::move(tr));
    } else {
      fail(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!saw_init) throw ModelError("model has no init declaration");
  return raw;
}

Pgs load_pgs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return validate_model(parse_pgs(buf.str()));
}

std::string write_pgs(const Pgs& g) {
  std::ostringstream out;
  out << "actions I";
  for (const auto& a : g.actions_i) out << ' ' << a;
  out << "\nactions II";
  for (const auto& b : g.actions_ii) out << ' ' << b;
  out << '\n';
  if (!g.props.empty()) {
    out << "props";
    for (const auto& p : g.props) out << ' ' << p;
    out << '\n';
  }
  for (int s = 0; s < g.num_states(); ++s) {
    out << "state " << g.states[s];
    for (int p : g.labels[s]) out << ' ' << g.props[p];
    out << '\n';
  }
  out << "init " << g.states[g.initial] << '\n';
  for (int s = 0; s < g.num_states(); ++s)
    for (int a = 0; a < g.num_actions(Player::I); ++a)
      for (int b = 0; b < g.num_actions(Player::II); ++b) {
        out << "trans " << g.states[s] << ' ' << g.actions_i[a] << ' '
            << g.actions_ii[b] << " ->";
        for (auto& [t, p] : g.delta(s, a, b).entries())
          out << ' ' << g.states[t] << ':' << rat_str(p);
        out << '\n';
      }
  return out.str();
}

Pgs random_model(const GenOptions& opts) {
  if (opts.states < 1 || opts.actions < 1 || opts.props < 0)
    throw ModelError("bad generator options");
  SplitMix64 rng = SplitMix64(opts.seed).split(0x67656e);

  RawModel raw;
  for (int a = 0; a < opts.actions; ++a)
    raw.actions_i.push_back("a" + std::to_string(a + 1));
  for (int b = 0; b < opts.actions; ++b)
    raw.actions_ii.push_back("b" + std::to_string(b + 1));
  for (int p = 0; p < opts.props; ++p)
    raw.props.push_back("p" + std::to_string(p));
  for (int s = 0; s < opts.states; ++s) {
    RawModel::State st;
    st.name = "s" + std::to_string(s);
    for (int p = 0; p < opts.props; ++p)
      if (rng.below(2)) st.labels.push_back(raw.props[p]);
    raw.states.push_back(std::move(st));
  }
  raw.initial = raw.states[0].name;

  for (int s = 0; s < opts.states; ++s)
    for (int a = 0; a < opts.actions; ++a)
      for (int b = 0; b < opts.actions; ++b) {
        RawModel::Trans tr;
        tr.state = raw.states[s].name;
        tr.action_i = raw.actions_i[a];
        tr.action_ii = raw.actions_ii[b];
        int support =
            1 + static_cast<int>(rng.below(std::min(opts.max_support,
                                                    opts.states)));
        // Distinct successor states.
        std::vector<int> succ;
        while (static_cast<int>(succ.size()) < support) {
          int t = static_cast<int>(rng.below(opts.states));
          bool dup = false;
          for (int u : succ) dup = dup || u == t;
          if (!dup) succ.push_back(t);
        }
        // Positive integer weights over a denominator <= max_denominator.
        long den = support +
                   static_cast<long>(rng.below(
                       std::max(1, opts.max_denominator - support + 1)));
        std::vector<long> weights(support, 1);
        long rest = den - support;
        for (int i = 0; i + 1 < support && rest > 0; ++i) {
          long take = static_cast<long>(rng.below(rest + 1));
          weights[i] += take;
          rest -= take;
        }
        weights[support - 1] += rest;
        for (int i = 0; i < support; ++i)
          tr.successors.emplace_back(
              raw.states[succ[i]].name,
              rat_str(rat(weights[i], den)));
        raw.transitions.push_back(std::move(tr));
      }
  return validate_model(raw);
}

}  // namespace pgs
