#pragma once

// Hand-rolled random generators and brute-force helpers shared by the unit
// tests and the acceptance binary.

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mauto/automaton.hpp"
#include "mauto/finite_structure.hpp"
#include "mauto/mso.hpp"
#include "mauto/msoplus.hpp"

namespace gen {

using namespace mauto;

using Rng = std::mt19937_64;

inline int pick(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
inline bool coin(Rng& r, double p = 0.5) { return std::bernoulli_distribution(p)(r); }

/// Domain {a, b}, P = {a}, E = {(a,b), (b,b)}.
inline std::shared_ptr<const FiniteStructure> two_element() {
  static const std::shared_ptr<const FiniteStructure> s =
      FiniteStructure::parse("domain a b\nrel P/1 = {a}\nrel E/2 = {(a,b) (b,b)}\n", "two");
  return s;
}

/// Random structure over P/1 and E/2 with min_size..max_size elements.
inline std::shared_ptr<FiniteStructure> random_structure(Rng& r, int max_size = 3, int min_size = 1) {
  const int n = pick(r, min_size, max_size);
  std::vector<std::string> dom;
  for (int i = 0; i < n; ++i) dom.push_back(std::string(1, static_cast<char>('a' + i)));
  std::map<std::string, std::set<std::vector<int>>> tables;
  for (int i = 0; i < n; ++i) {
    if (coin(r)) tables["P"].insert({i});
    for (int j = 0; j < n; ++j)
      if (coin(r)) tables["E"].insert({i, j});
  }
  return std::make_shared<FiniteStructure>(dom, Signature({{"P", 1}, {"E", 2}}), tables, "rand");
}

inline TheoryPtr two_fresh() {
  static const TheoryPtr t = PaddedTheory::fresh(two_element());
  return t;
}

/// Random formula over the P/E signature with the given free-variable pool.
inline Formula formula(Rng& r, std::vector<std::string> vars, int depth, bool allow_pad, int& counter) {
  auto var = [&] { return vars[static_cast<std::size_t>(pick(r, 0, static_cast<int>(vars.size()) - 1))]; };
  if (depth == 0 || coin(r, 0.3)) {
    switch (pick(r, 0, allow_pad ? 4 : 3)) {
      case 0: return var_rel("P", {var()});
      case 1: return var_rel("E", {var(), var()});
      case 2: return var_eq(var(), var());
      case 3: return coin(r, 0.15) ? (coin(r) ? Formula::truth() : Formula::falsity()) : var_rel("P", {var()});
      default: return var_pad(var());
    }
  }
  switch (pick(r, 0, 5)) {
    case 0: return Formula::negation(formula(r, vars, depth - 1, allow_pad, counter));
    case 1:
      return Formula::conj({formula(r, vars, depth - 1, allow_pad, counter), formula(r, vars, depth - 1, allow_pad, counter)});
    case 2:
      return Formula::disj({formula(r, vars, depth - 1, allow_pad, counter), formula(r, vars, depth - 1, allow_pad, counter)});
    case 3:
      return Formula::implies(formula(r, vars, depth - 1, allow_pad, counter), formula(r, vars, depth - 1, allow_pad, counter));
    default: {
      const std::string y = "v" + std::to_string(counter++);
      vars.push_back(y);
      Formula body = formula(r, vars, depth - 1, allow_pad, counter);
      return coin(r) ? Formula::exists(y, body) : Formula::forall(y, body);
    }
  }
}

inline Formula formula(Rng& r, const std::vector<std::string>& vars, int depth, bool allow_pad = true) {
  int counter = 0;
  return formula(r, vars, depth, allow_pad, counter);
}

/// Random automaton with 1..max_states states over the two-element theory.
inline MAutomaton automaton(Rng& r, int tracks, int max_states = 4) {
  std::vector<std::string> ts;
  for (int j = 1; j <= tracks; ++j) ts.push_back(track_var(j));
  MAutomaton a(two_fresh(), tracks);
  const int n = pick(r, 1, max_states);
  for (int q = 0; q < n; ++q) a.add_state(coin(r, 0.4), coin(r, 0.4));
  if (a.initial_states().empty()) a.set_initial(0);
  const int edges = pick(r, 1, 2 * n + 1);
  for (int e = 0; e < edges; ++e) a.add_transition(pick(r, 0, n - 1), formula(r, ts, pick(r, 0, 2)), pick(r, 0, n - 1));
  return a;
}

/// All words over `letters` with length at most `max_len`.
inline std::vector<Word> words(const std::vector<Element>& letters, int max_len, int min_len = 0) {
  std::vector<Word> out;
  std::vector<Word> layer{{}};
  for (int len = 0; len <= max_len; ++len) {
    if (len >= min_len) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        next.push_back(w);
        next.back().push_back(l);
      }
    layer = std::move(next);
  }
  return out;
}

inline std::vector<Element> two_letters() { return {Element::atom(0), Element::atom(1)}; }

/// All tuples of `tracks` words over the two-element domain, each of length <= max_len.
inline std::vector<TupleWord> tuples(int tracks, int max_len) {
  const auto ws = words(two_letters(), max_len);
  std::vector<TupleWord> out{{}};
  for (int t = 0; t < tracks; ++t) {
    std::vector<TupleWord> next;
    for (const auto& prefix : out)
      for (const auto& w : ws) {
        next.push_back(prefix);
        next.back().push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline std::size_t conv_length(const TupleWord& t) {
  std::size_t m = 0;
  for (const auto& w : t) m = std::max(m, w.size());
  return m;
}

/// Random MSO sentence of depth at most `depth` over `tracks` tracks.
struct MsoGen {
  Rng& r;
  int tracks;
  int counter = 0;

  Formula column() {
    std::vector<std::string> ts;
    for (int j = 1; j <= tracks; ++j) ts.push_back(track_var(j));
    return formula(r, ts, pick(r, 0, 1), true);
  }

  MsoFormula atom(const std::vector<std::string>& pos, const std::vector<std::string>& sets) {
    auto pv = [&] { return pos[static_cast<std::size_t>(pick(r, 0, static_cast<int>(pos.size()) - 1))]; };
    auto sv = [&] { return sets[static_cast<std::size_t>(pick(r, 0, static_cast<int>(sets.size()) - 1))]; };
    if (pos.empty() && sets.empty()) return coin(r) ? MsoFormula::truth() : MsoFormula::falsity();
    if (pos.empty()) return MsoFormula::subset(sv(), sv());
    switch (pick(r, 0, sets.empty() ? 2 : 4)) {
      case 0: return MsoFormula::lt(pv(), pv());
      case 1: return MsoFormula::alpha(column(), pv());
      case 2: return coin(r) ? MsoFormula::pos_eq(pv(), pv()) : MsoFormula::alpha(column(), pv());
      case 3: return MsoFormula::in(pv(), sv());
      default: return MsoFormula::subset(sv(), sv());
    }
  }

  MsoFormula operator()(int depth, std::vector<std::string> pos = {}, std::vector<std::string> sets = {}) {
    if (depth == 0 || ((!pos.empty() || !sets.empty()) && coin(r, 0.25))) return atom(pos, sets);
    const int k = pick(r, 0, 9);
    if (k <= 4 || (pos.empty() && sets.empty())) {
      const std::string v = (k == 4 ? "X" : "x") + std::to_string(counter++);
      if (k == 4) sets.push_back(v); else pos.push_back(v);
      MsoFormula body = (*this)(depth - 1, pos, sets);
      if (k == 4) return coin(r) ? MsoFormula::exists_set(v, body) : MsoFormula::forall_set(v, body);
      return coin(r) ? MsoFormula::exists_pos(v, body) : MsoFormula::forall_pos(v, body);
    }
    switch (k) {
      case 5: return MsoFormula::negation((*this)(depth - 1, pos, sets));
      case 6: return MsoFormula::conj({(*this)(depth - 1, pos, sets), (*this)(depth - 1, pos, sets)});
      case 7: return MsoFormula::disj({(*this)(depth - 1, pos, sets), (*this)(depth - 1, pos, sets)});
      default: return MsoFormula::implies((*this)(depth - 1, pos, sets), (*this)(depth - 1, pos, sets));
    }
  }
};

/// Random restricted MSO+ sentence: n prefix variables, at most `max_theta`
/// theta atoms, body depth at most `depth`.
struct MsoPlusGen {
  Rng& r;
  int n;
  int max_theta;
  int thetas = 0;
  int counter = 0;

  Formula symbols(int m) {
    std::vector<std::string> ss;
    for (int j = 1; j <= m; ++j) ss.push_back("s" + std::to_string(j));
    return formula(r, ss, pick(r, 0, 1), false);
  }

  MsoFormula atom(const std::vector<std::string>& prefix, const std::vector<std::string>& local) {
    std::vector<std::string> all = prefix;
    all.insert(all.end(), local.begin(), local.end());
    auto any = [&] { return all[static_cast<std::size_t>(pick(r, 0, static_cast<int>(all.size()) - 1))]; };
    const int k = pick(r, 0, 3);
    if (k <= 1 && thetas < max_theta) {
      ++thetas;
      std::vector<std::string> args = prefix;
      if (!local.empty() && coin(r, 0.7)) args.push_back(local[static_cast<std::size_t>(pick(r, 0, static_cast<int>(local.size()) - 1))]);
      std::shuffle(args.begin(), args.end(), r);
      return MsoFormula::theta(symbols(static_cast<int>(args.size())), args);
    }
    if (k == 2) return MsoFormula::lt(any(), any());
    return MsoFormula::alpha(formula(r, {track_var(1)}, pick(r, 0, 1), false), any());
  }

  MsoFormula body(int depth, const std::vector<std::string>& prefix, std::vector<std::string> local) {
    if (depth == 0 || coin(r, 0.25)) return atom(prefix, local);
    switch (pick(r, 0, 5)) {
      case 0:
      case 1: {
        const std::string y = "y" + std::to_string(counter++);
        local.push_back(y);
        MsoFormula b = body(depth - 1, prefix, local);
        return coin(r) ? MsoFormula::exists_pos(y, b) : MsoFormula::forall_pos(y, b);
      }
      case 2: return MsoFormula::negation(body(depth - 1, prefix, local));
      case 3: return MsoFormula::conj({body(depth - 1, prefix, local), body(depth - 1, prefix, local)});
      case 4: return MsoFormula::disj({body(depth - 1, prefix, local), body(depth - 1, prefix, local)});
      default: return MsoFormula::implies(body(depth - 1, prefix, local), body(depth - 1, prefix, local));
    }
  }

  MsoPlusSentence operator()(int depth) {
    MsoPlusSentence s;
    for (int i = 1; i <= n; ++i) s.symvars.push_back("x" + std::to_string(i));
    s.body = body(depth, s.symvars, {});
    return s;
  }
};

}  // namespace gen
