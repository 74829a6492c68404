#pragma once

#include <vector>

#include "mauto/automaton.hpp"

namespace mauto {

/// Membership of each tuple, in order.
std::vector<char> accepts_batch(const MAutomaton& a, const std::vector<TupleWord>& words);
/// Same result, tuples split across OpenMP threads.
std::vector<char> accepts_batch_parallel(const MAutomaton& a, const std::vector<TupleWord>& words);

}  // namespace mauto
