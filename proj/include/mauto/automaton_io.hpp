#pragma once

#include <memory>
#include <string>

#include "mauto/automaton.hpp"

namespace mauto {

/// `presburger`, or a finite-structure file (relative paths resolve against
/// `base_dir` first). The structure keeps `name` as its display name.
std::shared_ptr<const Theory> resolve_base_theory(const std::string& name, const std::string& base_dir = "");

/// `fresh` or `alias:ELEM` (also accepts `alias ELEM`).
TheoryPtr make_padded(std::shared_ptr<const Theory> base, const std::string& pad_spec);

struct AutomatonReadOptions {
  std::string base_dir;
  /// Used when the file has no theory line; must agree with it otherwise.
  TheoryPtr theory;
};

MAutomaton parse_automaton(const std::string& text, const AutomatonReadOptions& opts = {});
MAutomaton load_automaton(const std::string& path, AutomatonReadOptions opts = {});

/// States renumbered in breadth-first order from the initial states.
MAutomaton canonical(const MAutomaton& a);
/// Text form of canonical(a).
std::string print_automaton(const MAutomaton& a);
void save_automaton(const MAutomaton& a, const std::string& path);

}  // namespace mauto
