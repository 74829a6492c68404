#include "mauto/automaton.hpp"

#include <algorithm>

namespace mauto {

std::string track_var(int i) { return "t" + std::to_string(i); }

MAutomaton::MAutomaton(TheoryPtr theory, int tracks, int states) : theory_(std::move(theory)), tracks_(tracks) {
  if (!theory_) throw Error("automaton needs a theory");
  if (tracks_ < 1) throw Error("automaton needs at least one track");
  if (states < 0) throw Error("negative state count");
  initial_.assign(static_cast<std::size_t>(states), 0);
  final_.assign(static_cast<std::size_t>(states), 0);
}

int MAutomaton::add_state(bool initial, bool final) {
  initial_.push_back(initial);
  final_.push_back(final);
  return state_count() - 1;
}

void MAutomaton::add_transition(int from, Formula label, int to) {
  if (from < 0 || from >= state_count() || to < 0 || to >= state_count()) throw Error("transition state out of range");
  for (const auto& v : free_vars(label)) {
    bool ok = v.size() > 1 && v[0] == 't' && v.find_first_not_of("0123456789", 1) == std::string::npos && v[1] != '0';
    if (ok) {
      const auto i = std::stol(v.substr(1));
      ok = i >= 1 && i <= tracks_;
    }
    if (!ok) throw Error("transition formula mentions " + v + ", which is not a track variable t1..t" + std::to_string(tracks_));
  }
  transitions_.push_back({from, std::move(label), to});
}

void MAutomaton::set_initial(int q, bool v) { initial_.at(static_cast<std::size_t>(q)) = v; }
void MAutomaton::set_final(int q, bool v) { final_.at(static_cast<std::size_t>(q)) = v; }

std::vector<int> MAutomaton::initial_states() const {
  std::vector<int> out;
  for (int q = 0; q < state_count(); ++q)
    if (is_initial(q)) out.push_back(q);
  return out;
}

std::vector<int> MAutomaton::final_states() const {
  std::vector<int> out;
  for (int q = 0; q < state_count(); ++q)
    if (is_final(q)) out.push_back(q);
  return out;
}

std::vector<std::vector<int>> MAutomaton::outgoing() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(state_count()));
  for (std::size_t i = 0; i < transitions_.size(); ++i) out[static_cast<std::size_t>(transitions_[i].from)].push_back(static_cast<int>(i));
  return out;
}

Convolution convolve(const TupleWord& w, const Element& pad) {
  std::size_t len = 0;
  for (const auto& c : w) len = std::max(len, c.size());
  Convolution out(len, Column(w.size(), pad));
  for (std::size_t j = 0; j < w.size(); ++j)
    for (std::size_t i = 0; i < w[j].size(); ++i) out[i][j] = w[j][i];
  return out;
}

void require_compatible(const MAutomaton& a, const MAutomaton& b) {
  if (!a.theory()->compatible(*b.theory())) throw Error("automata are over different theories");
  if (a.tracks() != b.tracks())
    throw Error("track counts differ: " + std::to_string(a.tracks()) + " vs " + std::to_string(b.tracks()));
}

std::optional<std::vector<int>> accepting_run(const MAutomaton& a, const TupleWord& w) {
  if (static_cast<int>(w.size()) != a.tracks())
    throw Error("expected " + std::to_string(a.tracks()) + " words, got " + std::to_string(w.size()));
  const auto& th = *a.theory();
  for (const auto& comp : w)
    for (const auto& e : comp)
      if (e.is_padding() || !th.base().contains(e)) throw Error("word letter " + to_string(e) + " is not in the alphabet");
  const Convolution conv = convolve(w, th.pad_element());
  const auto n = static_cast<std::size_t>(a.state_count());
  // pred[i][q]: predecessor of q after i columns, -1 if unreached, -2 for a start.
  std::vector<std::vector<int>> pred(conv.size() + 1, std::vector<int>(n, -1));
  for (int q : a.initial_states()) pred[0][static_cast<std::size_t>(q)] = -2;
  const auto out = a.outgoing();
  for (std::size_t i = 0; i < conv.size(); ++i) {
    Assignment col;
    for (int t = 0; t < a.tracks(); ++t) col[track_var(t + 1)] = conv[i][static_cast<std::size_t>(t)];
    bool any = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (pred[i][q] == -1) continue;
      for (int ti : out[q]) {
        const auto& tr = a.transitions()[static_cast<std::size_t>(ti)];
        auto& slot = pred[i + 1][static_cast<std::size_t>(tr.to)];
        if (slot != -1) continue;
        if (th.eval(tr.label, col)) {
          slot = static_cast<int>(q);
          any = true;
        }
      }
    }
    if (!any) return std::nullopt;
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (pred[conv.size()][q] == -1 || !a.is_final(static_cast<int>(q))) continue;
    std::vector<int> run{static_cast<int>(q)};
    for (std::size_t i = conv.size(); i > 0; --i) run.push_back(pred[i][static_cast<std::size_t>(run.back())]);
    std::reverse(run.begin(), run.end());
    return run;
  }
  return std::nullopt;
}

bool accepts(const MAutomaton& a, const TupleWord& w) { return accepting_run(a, w).has_value(); }

}  // namespace mauto
