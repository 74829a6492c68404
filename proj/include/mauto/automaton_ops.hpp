#pragma once

#include <optional>
#include <vector>

#include "mauto/automaton.hpp"

namespace mauto {

MAutomaton union_of(const MAutomaton& a, const MAutomaton& b);
MAutomaton intersect(const MAutomaton& a, const MAutomaton& b);

/// Replace labels by satisfiable minterms over the automaton's formula set.
MAutomaton mintermize(const MAutomaton& a);
/// Complete deterministic automaton; the empty macrostate is the sink.
MAutomaton determinize(const MAutomaton& a);
MAutomaton complement(const MAutomaton& a);

/// Existentially quantify track i (1-based), keeping the others in order.
MAutomaton project(const MAutomaton& a, int track);
/// Insert an unconstrained track at position k (1-based, 1..n+1).
MAutomaton cylindrify(const MAutomaton& a, int position);
/// Old track j becomes track map[j-1] of an automaton with `tracks` tracks.
/// Several old tracks may share a new one.
MAutomaton rename_tracks(const MAutomaton& a, int tracks, const std::vector<int>& map);

/// Drop transitions whose label is unsatisfiable.
MAutomaton prune_unsatisfiable(const MAutomaton& a);
/// Keep states that are reachable and co-reachable.
MAutomaton trim(const MAutomaton& a);

bool is_empty(const MAutomaton& a);
std::optional<TupleWord> find_word(const MAutomaton& a);

/// Alias mode: acceptance is insensitive to trailing all-padding columns.
/// Checked syntactically; fresh-mode automata always report true.
bool is_pad_stable(const MAutomaton& a);
/// Alias mode: accept c when some c' agreeing with c up to trailing padding
/// columns is accepted. Identity in fresh mode.
MAutomaton pad_normalize(const MAutomaton& a);

/// Exactly one initial state, and at every state the labels are pairwise
/// disjoint and cover every column.
bool is_complete_deterministic(const MAutomaton& a);

/// Conjunction of Pad(t_j) over the listed tracks.
Formula all_pad(const std::vector<int>& tracks);

}  // namespace mauto
