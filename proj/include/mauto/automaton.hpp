#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mauto/padded.hpp"

namespace mauto {

/// One word per track; components may differ in length.
using TupleWord = std::vector<Word>;
using Column = std::vector<Element>;
using Convolution = std::vector<Column>;

struct Transition {
  int from = 0;
  Formula label;
  int to = 0;
};

/// Name of track i (1-based) inside transition formulas.
std::string track_var(int i);

/// n-track synchronous automaton whose transitions carry formulas over the
/// track variables t1..tn, read in a padded background structure.
class MAutomaton {
 public:
  MAutomaton(TheoryPtr theory, int tracks, int states = 0);

  const TheoryPtr& theory() const { return theory_; }
  int tracks() const { return tracks_; }
  int state_count() const { return static_cast<int>(initial_.size()); }

  int add_state(bool initial = false, bool final = false);
  void add_transition(int from, Formula label, int to);
  void set_initial(int q, bool v = true);
  void set_final(int q, bool v = true);

  bool is_initial(int q) const { return initial_.at(static_cast<std::size_t>(q)) != 0; }
  bool is_final(int q) const { return final_.at(static_cast<std::size_t>(q)) != 0; }
  std::vector<int> initial_states() const;
  std::vector<int> final_states() const;
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Transition indices leaving each state.
  std::vector<std::vector<int>> outgoing() const;

 private:
  TheoryPtr theory_;
  int tracks_;
  std::vector<char> initial_;
  std::vector<char> final_;
  std::vector<Transition> transitions_;
};

/// Columnwise superposition, exhausted tracks filled with `pad`.
Convolution convolve(const TupleWord& w, const Element& pad);

bool accepts(const MAutomaton& a, const TupleWord& w);
/// The state sequence of some accepting run, if any.
std::optional<std::vector<int>> accepting_run(const MAutomaton& a, const TupleWord& w);

/// Throws unless both automata share a theory and track count.
void require_compatible(const MAutomaton& a, const MAutomaton& b);

}  // namespace mauto
