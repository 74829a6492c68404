#include "mauto/automaton_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

namespace mauto {

namespace {

std::vector<int> all_tracks(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::set<std::string> track_names(int n) {
  std::set<std::string> s;
  for (int i = 1; i <= n; ++i) s.insert(track_var(i));
  return s;
}

bool sat(const MAutomaton& a, const Formula& f) {
  if (f.kind() == Formula::Kind::True) return true;
  if (f.kind() == Formula::Kind::False) return false;
  return a.theory()->satisfiable(f);
}

struct Minterm {
  Formula formula;
  std::vector<bool> positive;
};

// Satisfiable minterms over fs, built by splitting one formula at a time.
std::vector<Minterm> minterms(const MAutomaton& a, const std::vector<Formula>& fs) {
  std::vector<Minterm> cur{{Formula::truth(), {}}};
  for (const auto& f : fs) {
    std::vector<Minterm> next;
    for (const auto& m : cur) {
      for (bool pos : {true, false}) {
        Formula g = simplify(land(m.formula, pos ? f : lnot(f)));
        if (!sat(a, g)) continue;
        auto bits = m.positive;
        bits.push_back(pos);
        next.push_back({std::move(g), std::move(bits)});
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// Index of f in fs, appending it when new.
std::size_t intern(std::vector<Formula>& fs, const Formula& f) {
  auto it = std::find(fs.begin(), fs.end(), f);
  if (it != fs.end()) return static_cast<std::size_t>(it - fs.begin());
  fs.push_back(f);
  return fs.size() - 1;
}

}  // namespace

Formula all_pad(const std::vector<int>& tracks) {
  std::vector<Formula> fs;
  for (int t : tracks) fs.push_back(var_pad(track_var(t)));
  return land(std::move(fs));
}

MAutomaton union_of(const MAutomaton& a, const MAutomaton& b) {
  require_compatible(a, b);
  MAutomaton out(a.theory(), a.tracks());
  for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), a.is_final(q));
  for (int q = 0; q < b.state_count(); ++q) out.add_state(b.is_initial(q), b.is_final(q));
  for (const auto& t : a.transitions()) out.add_transition(t.from, t.label, t.to);
  const int off = a.state_count();
  for (const auto& t : b.transitions()) out.add_transition(t.from + off, t.label, t.to + off);
  return out;
}

MAutomaton intersect(const MAutomaton& a, const MAutomaton& b) {
  require_compatible(a, b);
  MAutomaton out(a.theory(), a.tracks());
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  auto id_of = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), out.state_count());
    if (fresh) {
      out.add_state(a.is_initial(p) && b.is_initial(q), a.is_final(p) && b.is_final(q));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  for (int p : a.initial_states())
    for (int q : b.initial_states()) id_of(p, q);
  const auto oa = a.outgoing(), ob = b.outgoing();
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    const int src = ids.at({p, q});
    for (int i : oa[static_cast<std::size_t>(p)]) {
      const auto& ta = a.transitions()[static_cast<std::size_t>(i)];
      for (int j : ob[static_cast<std::size_t>(q)]) {
        const auto& tb = b.transitions()[static_cast<std::size_t>(j)];
        Formula f = simplify(land(ta.label, tb.label));
        if (!sat(a, f)) continue;
        const int dst = id_of(ta.to, tb.to);
        out.add_transition(src, f, dst);
      }
    }
  }
  return out;
}

MAutomaton mintermize(const MAutomaton& a) {
  std::vector<Formula> fs;
  std::vector<std::size_t> index;
  for (const auto& t : a.transitions()) index.push_back(intern(fs, t.label));
  const auto ms = minterms(a, fs);
  MAutomaton out(a.theory(), a.tracks());
  for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), a.is_final(q));
  std::set<std::tuple<int, std::size_t, int>> seen;
  for (std::size_t k = 0; k < a.transitions().size(); ++k) {
    const auto& t = a.transitions()[k];
    for (std::size_t m = 0; m < ms.size(); ++m) {
      if (!ms[m].positive[index[k]]) continue;
      if (seen.emplace(t.from, m, t.to).second) out.add_transition(t.from, ms[m].formula, t.to);
    }
  }
  return out;
}

MAutomaton determinize(const MAutomaton& a) {
  MAutomaton out(a.theory(), a.tracks());
  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> queue;
  auto id_of = [&](std::vector<int> set) {
    auto [it, fresh] = ids.emplace(set, out.state_count());
    if (fresh) {
      const bool fin = std::any_of(set.begin(), set.end(), [&](int q) { return a.is_final(q); });
      out.add_state(false, fin);
      queue.push_back(std::move(set));
    }
    return it->second;
  };
  const int start = id_of(a.initial_states());
  out.set_initial(start);
  const auto oa = a.outgoing();
  while (!queue.empty()) {
    const auto set = std::move(queue.front());
    queue.pop_front();
    const int src = ids.at(set);
    std::vector<Formula> fs;
    std::vector<std::pair<std::size_t, int>> moves;  // (formula index, target)
    for (int q : set)
      for (int i : oa[static_cast<std::size_t>(q)]) {
        const auto& t = a.transitions()[static_cast<std::size_t>(i)];
        moves.emplace_back(intern(fs, t.label), t.to);
      }
    // Group minterms by successor set; the label is their disjunction.
    std::map<std::vector<int>, std::vector<Formula>> by_target;
    for (const auto& m : minterms(a, fs)) {
      std::set<int> succ;
      for (const auto& [fi, to] : moves)
        if (m.positive[fi]) succ.insert(to);
      by_target[std::vector<int>(succ.begin(), succ.end())].push_back(m.formula);
    }
    for (auto& [succ, labels] : by_target) {
      const int dst = id_of(succ);
      out.add_transition(src, simplify(lor(std::move(labels))), dst);
    }
  }
  return out;
}

MAutomaton complement(const MAutomaton& a) {
  MAutomaton d = determinize(a);
  for (int q = 0; q < d.state_count(); ++q) d.set_final(q, !d.is_final(q));
  return d;
}

namespace {

// exists t_i. f, with tracks above i shifted down by one.
Formula quantify_track(const Formula& f, int i, int n) {
  auto used = all_vars(f);
  for (const auto& t : track_names(n)) used.insert(t);
  const auto b = fresh_name("x", used);
  Formula g = rename_free(f, {{track_var(i), Term::var(b)}});
  g = simplify(Formula::exists(b, g));
  std::map<std::string, Term> shift;
  for (int j = i + 1; j <= n; ++j) shift.emplace(track_var(j), Term::var(track_var(j - 1)));
  return simplify(rename_free(g, shift));
}

// States that reach a final state through transitions satisfiable under `guard`.
std::vector<bool> closure_to_final(const MAutomaton& a, const Formula& guard) {
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(a.state_count()));
  for (const auto& t : a.transitions())
    if (sat(a, simplify(land(t.label, guard)))) rev[static_cast<std::size_t>(t.to)].push_back(t.from);
  std::vector<bool> reach(static_cast<std::size_t>(a.state_count()), false);
  std::deque<int> queue;
  for (int q : a.final_states()) {
    reach[static_cast<std::size_t>(q)] = true;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int p : rev[static_cast<std::size_t>(q)])
      if (!reach[static_cast<std::size_t>(p)]) {
        reach[static_cast<std::size_t>(p)] = true;
        queue.push_back(p);
      }
  }
  return reach;
}

}  // namespace

MAutomaton project(const MAutomaton& a, int track) {
  const int n = a.tracks();
  if (n < 2) throw Error("cannot project away the only track; use emptiness instead");
  if (track < 1 || track > n) throw Error("projection track out of range");
  std::vector<int> others;
  for (int j = 1; j <= n; ++j)
    if (j != track) others.push_back(j);
  const Formula ti_pad = var_pad(track_var(track));
  MAutomaton out(a.theory(), n - 1);

  if (a.theory()->mode() == PadMode::Alias) {
    for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), a.is_final(q));
    const auto tail = closure_to_final(a, all_pad(others));
    for (int q = 0; q < a.state_count(); ++q)
      if (tail[static_cast<std::size_t>(q)]) out.set_final(q);
    for (const auto& t : a.transitions()) out.add_transition(t.from, quantify_track(t.label, track, n), t.to);
    return trim(prune_unsatisfiable(out));
  }

  // Fresh padding: state (q, phase) with phase 1 once track i has ended.
  auto id = [](int q, int phase) { return 2 * q + phase; };
  for (int q = 0; q < a.state_count(); ++q) {
    out.add_state(a.is_initial(q), a.is_final(q));
    out.add_state(a.is_initial(q), a.is_final(q));
  }
  const auto tail = closure_to_final(a, land(all_pad(others), lnot(ti_pad)));
  for (int q = 0; q < a.state_count(); ++q)
    if (tail[static_cast<std::size_t>(q)]) out.set_final(id(q, 0));
  for (const auto& t : a.transitions()) {
    out.add_transition(id(t.from, 0), quantify_track(land(t.label, lnot(ti_pad)), track, n), id(t.to, 0));
    const Formula ended = quantify_track(land(t.label, ti_pad), track, n);
    out.add_transition(id(t.from, 0), ended, id(t.to, 1));
    out.add_transition(id(t.from, 1), ended, id(t.to, 1));
  }
  return trim(prune_unsatisfiable(out));
}

MAutomaton rename_tracks(const MAutomaton& a, int tracks, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.tracks()) throw Error("track map must cover every track");
  for (int m : map)
    if (m < 1 || m > tracks) throw Error("track map target out of range");
  std::map<std::string, Term> sub;
  for (int j = 1; j <= a.tracks(); ++j)
    if (map[static_cast<std::size_t>(j - 1)] != j) sub.emplace(track_var(j), Term::var(track_var(map[static_cast<std::size_t>(j - 1)])));
  MAutomaton out(a.theory(), tracks);
  for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), a.is_final(q));
  for (const auto& t : a.transitions()) out.add_transition(t.from, sub.empty() ? t.label : rename_free(t.label, sub), t.to);
  return out;
}

MAutomaton cylindrify(const MAutomaton& input, int position) {
  const int n = input.tracks();
  if (position < 1 || position > n + 1) throw Error("cylindrification position out of range");
  const MAutomaton a = input.theory()->mode() == PadMode::Alias ? pad_normalize(input) : input;
  std::vector<int> map, orig;
  for (int j = 1; j <= n; ++j) {
    map.push_back(j < position ? j : j + 1);
    orig.push_back(map.back());
  }
  MAutomaton lifted = rename_tracks(a, n + 1, map);
  if (a.theory()->mode() == PadMode::Alias) return lifted;

  MAutomaton out(a.theory(), n + 1);
  for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), a.is_final(q));
  const Formula live = lnot(all_pad(orig));
  for (const auto& t : lifted.transitions()) {
    Formula f = simplify(land(t.label, live));
    if (sat(out, f)) out.add_transition(t.from, f, t.to);
  }
  // Columns past the end of every original track.
  const auto finals = a.final_states();
  if (!finals.empty()) {
    const int absorb = out.add_state(false, true);
    const Formula f = land(all_pad(orig), lnot(var_pad(track_var(position))));
    for (int q : finals) out.add_transition(q, f, absorb);
    out.add_transition(absorb, f, absorb);
  }
  return out;
}

MAutomaton prune_unsatisfiable(const MAutomaton& a) {
  MAutomaton out(a.theory(), a.tracks());
  for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), a.is_final(q));
  for (const auto& t : a.transitions())
    if (sat(a, t.label)) out.add_transition(t.from, t.label, t.to);
  return out;
}

MAutomaton trim(const MAutomaton& a) {
  const auto n = static_cast<std::size_t>(a.state_count());
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<std::vector<int>> succ(n), pred(n);
  for (const auto& t : a.transitions()) {
    succ[static_cast<std::size_t>(t.from)].push_back(t.to);
    pred[static_cast<std::size_t>(t.to)].push_back(t.from);
  }
  auto sweep = [](std::vector<bool>& mark, const std::vector<std::vector<int>>& adj, const std::vector<int>& seeds) {
    std::deque<int> queue(seeds.begin(), seeds.end());
    for (int q : seeds) mark[static_cast<std::size_t>(q)] = true;
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      for (int r : adj[static_cast<std::size_t>(q)])
        if (!mark[static_cast<std::size_t>(r)]) {
          mark[static_cast<std::size_t>(r)] = true;
          queue.push_back(r);
        }
    }
  };
  sweep(fwd, succ, a.initial_states());
  sweep(bwd, pred, a.final_states());
  std::vector<int> id(n, -1);
  MAutomaton out(a.theory(), a.tracks());
  for (std::size_t q = 0; q < n; ++q)
    if (fwd[q] && bwd[q]) id[q] = out.add_state(a.is_initial(static_cast<int>(q)), a.is_final(static_cast<int>(q)));
  for (const auto& t : a.transitions()) {
    const int s = id[static_cast<std::size_t>(t.from)], d = id[static_cast<std::size_t>(t.to)];
    if (s >= 0 && d >= 0) out.add_transition(s, t.label, d);
  }
  return out;
}

// ---------------------------------------------------------------- emptiness

namespace {

// A path through the automaton: transition indices plus, in fresh mode, the
// set of ended tracks for each column.
struct Path {
  std::vector<int> transitions;
  std::vector<unsigned> patterns;
};

PadMask mask_for(int n, unsigned pattern) {
  PadMask m;
  for (int j = 1; j <= n; ++j) m[track_var(j)] = (pattern >> (j - 1)) & 1 ? PadStatus::Padding : PadStatus::Proper;
  return m;
}

std::optional<Path> shortest_accepting_path(const MAutomaton& a) {
  const int n = a.tracks();
  const auto& th = *a.theory();
  const auto out = a.outgoing();
  if (th.mode() == PadMode::Alias) {
    // Any letter sequence is the convolution of some tuple.
    std::vector<int> via(static_cast<std::size_t>(a.state_count()), -2);
    std::deque<int> queue;
    for (int q : a.initial_states()) {
      via[static_cast<std::size_t>(q)] = -1;
      queue.push_back(q);
    }
    std::vector<char> live(a.transitions().size(), -1);
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      if (a.is_final(q)) {
        Path p;
        for (int s = q; via[static_cast<std::size_t>(s)] >= 0;) {
          const int ti = via[static_cast<std::size_t>(s)];
          p.transitions.push_back(ti);
          s = a.transitions()[static_cast<std::size_t>(ti)].from;
        }
        std::reverse(p.transitions.begin(), p.transitions.end());
        return p;
      }
      for (int ti : out[static_cast<std::size_t>(q)]) {
        const auto& t = a.transitions()[static_cast<std::size_t>(ti)];
        if (via[static_cast<std::size_t>(t.to)] != -2) continue;
        auto& l = live[static_cast<std::size_t>(ti)];
        if (l < 0) l = sat(a, t.label);
        if (!l) continue;
        via[static_cast<std::size_t>(t.to)] = ti;
        queue.push_back(t.to);
      }
    }
    return std::nullopt;
  }

  // Fresh padding: canonical convolutions only. Track the set of ended
  // tracks; it only grows and never covers every track.
  if (n > 16) throw Error("too many tracks for emptiness check");
  const unsigned full = (1u << n) - 1;
  struct Node {
    int state;
    unsigned ended;
  };
  std::map<std::pair<int, unsigned>, std::pair<int, std::pair<int, unsigned>>> via;  // -> (transition, previous)
  std::deque<Node> queue;
  for (int q : a.initial_states()) {
    via.emplace(std::make_pair(q, 0u), std::make_pair(-1, std::make_pair(-1, 0u)));
    queue.push_back({q, 0});
  }
  std::map<std::pair<int, unsigned>, bool> feasible;
  auto ok = [&](int ti, unsigned pattern) {
    auto [it, fresh] = feasible.emplace(std::make_pair(ti, pattern), false);
    if (fresh) {
      const Formula g = eliminate_pad(a.transitions()[static_cast<std::size_t>(ti)].label, mask_for(n, pattern));
      it->second = g.kind() == Formula::Kind::True || (g.kind() != Formula::Kind::False && th.base().satisfiable(g));
    }
    return it->second;
  };
  while (!queue.empty()) {
    const Node cur = queue.front();
    queue.pop_front();
    if (a.is_final(cur.state)) {
      Path p;
      std::pair<int, unsigned> key{cur.state, cur.ended};
      for (;;) {
        const auto& [ti, prev] = via.at(key);
        if (ti < 0) break;
        p.transitions.push_back(ti);
        p.patterns.push_back(key.second);
        key = prev;
      }
      std::reverse(p.transitions.begin(), p.transitions.end());
      std::reverse(p.patterns.begin(), p.patterns.end());
      return p;
    }
    for (int ti : out[static_cast<std::size_t>(cur.state)]) {
      const auto& t = a.transitions()[static_cast<std::size_t>(ti)];
      // Supersets of cur.ended, excluding the all-ended pattern.
      const unsigned free_bits = full & ~cur.ended;
      for (unsigned sub = free_bits;; sub = (sub - 1) & free_bits) {
        const unsigned pattern = cur.ended | sub;
        if (pattern != full && !via.count({t.to, pattern}) && ok(ti, pattern)) {
          via.emplace(std::make_pair(t.to, pattern), std::make_pair(ti, std::make_pair(cur.state, cur.ended)));
          queue.push_back({t.to, pattern});
        }
        if (sub == 0) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_empty(const MAutomaton& a) { return !shortest_accepting_path(a).has_value(); }

std::optional<TupleWord> find_word(const MAutomaton& a) {
  const auto path = shortest_accepting_path(a);
  if (!path) return std::nullopt;
  const int n = a.tracks();
  const auto& th = *a.theory();
  TupleWord w(static_cast<std::size_t>(n));
  std::vector<std::string> vars;
  for (int j = 1; j <= n; ++j) vars.push_back(track_var(j));
  for (std::size_t k = 0; k < path->transitions.size(); ++k) {
    const Formula& label = a.transitions()[static_cast<std::size_t>(path->transitions[k])].label;
    if (th.mode() == PadMode::Alias) {
      auto col = th.find_witness(label, vars);
      if (!col) throw Error("internal: satisfiable transition has no witness");
      for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)].push_back(col->at(vars[static_cast<std::size_t>(j)]));
      continue;
    }
    const unsigned pattern = path->patterns[k];
    std::vector<std::string> proper;
    for (int j = 1; j <= n; ++j)
      if (!((pattern >> (j - 1)) & 1)) proper.push_back(track_var(j));
    auto col = th.base().find_witness(eliminate_pad(label, mask_for(n, pattern)), proper);
    if (!col) throw Error("internal: feasible column has no witness");
    for (int j = 1; j <= n; ++j)
      if (!((pattern >> (j - 1)) & 1)) w[static_cast<std::size_t>(j - 1)].push_back(col->at(track_var(j)));
  }
  if (th.mode() == PadMode::Alias)
    for (auto& comp : w)
      while (!comp.empty() && comp.back() == th.pad_element()) comp.pop_back();
  return w;
}

// ---------------------------------------------------------------- padding stability

namespace {

// Transitions that fire on the all-padding column.
std::vector<bool> fires_on_pad(const MAutomaton& a) {
  Assignment col;
  for (int j = 1; j <= a.tracks(); ++j) col[track_var(j)] = a.theory()->pad_element();
  std::vector<bool> out;
  for (const auto& t : a.transitions()) out.push_back(a.theory()->eval(t.label, col));
  return out;
}

}  // namespace

bool is_pad_stable(const MAutomaton& a) {
  if (a.theory()->mode() == PadMode::Fresh) return true;
  const auto fires = fires_on_pad(a);
  std::vector<bool> to_final(static_cast<std::size_t>(a.state_count()), false);
  for (std::size_t i = 0; i < fires.size(); ++i) {
    const auto& t = a.transitions()[i];
    if (fires[i] && a.is_final(t.to)) to_final[static_cast<std::size_t>(t.from)] = true;
  }
  for (int q = 0; q < a.state_count(); ++q)
    if (a.is_final(q) != to_final[static_cast<std::size_t>(q)]) return false;
  return true;
}

MAutomaton pad_normalize(const MAutomaton& a) {
  if (a.theory()->mode() == PadMode::Fresh || is_pad_stable(a)) return a;
  const auto fires = fires_on_pad(a);
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(a.state_count()));
  for (std::size_t i = 0; i < fires.size(); ++i)
    if (fires[i]) rev[static_cast<std::size_t>(a.transitions()[i].to)].push_back(a.transitions()[i].from);
  std::vector<bool> good(static_cast<std::size_t>(a.state_count()), false);
  std::deque<int> queue;
  for (int q : a.final_states()) {
    good[static_cast<std::size_t>(q)] = true;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int p : rev[static_cast<std::size_t>(q)])
      if (!good[static_cast<std::size_t>(p)]) {
        good[static_cast<std::size_t>(p)] = true;
        queue.push_back(p);
      }
  }
  MAutomaton out(a.theory(), a.tracks());
  for (int q = 0; q < a.state_count(); ++q) out.add_state(a.is_initial(q), good[static_cast<std::size_t>(q)]);
  for (const auto& t : a.transitions()) out.add_transition(t.from, t.label, t.to);
  const int sink = out.add_state(false, true);
  const Formula blank = all_pad(all_tracks(a.tracks()));
  for (int q = 0; q < a.state_count(); ++q)
    if (good[static_cast<std::size_t>(q)]) out.add_transition(q, blank, sink);
  out.add_transition(sink, blank, sink);
  return out;
}

bool is_complete_deterministic(const MAutomaton& a) {
  if (a.initial_states().size() != 1) return false;
  const auto out = a.outgoing();
  for (int q = 0; q < a.state_count(); ++q) {
    std::vector<Formula> labels;
    for (int ti : out[static_cast<std::size_t>(q)]) labels.push_back(a.transitions()[static_cast<std::size_t>(ti)].label);
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (sat(a, simplify(land(labels[i], labels[j])))) return false;
    if (sat(a, simplify(lnot(lor(labels))))) return false;
  }
  return true;
}

}  // namespace mauto
