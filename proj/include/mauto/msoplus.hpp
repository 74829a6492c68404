#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mauto/mso.hpp"

namespace mauto {

/// Exists x1..xn body, where body is an MSO formula that may use theta atoms.
struct MsoPlusSentence {
  std::vector<std::string> symvars;
  MsoFormula body;

  /// The whole sentence as an MSO formula with the prefix quantifiers.
  MsoFormula closed() const;
};

/// `symvars x1 ... xn` followed by the body formula; `;` starts a comment.
MsoPlusSentence parse_msoplus(std::string_view text, const Signature* sig = nullptr);
MsoPlusSentence load_msoplus(const std::string& path, const Signature* sig = nullptr);
std::string print_msoplus(const MsoPlusSentence& s);

/// Every theta atom mentions at most one position variable outside the
/// prefix, the prefix variables are not rebound, and the body has no other
/// free variables.
bool check_fragment(const MsoPlusSentence& s);

struct MsoPlusRewrite {
  /// Closed MSO sentence whose alpha formulas range over t1 and the constants.
  MsoFormula sentence;
  /// Constant ci names the symbol at prefix position i.
  std::vector<std::string> constants;
};

/// Replace each theta atom by an alpha atom at its foreign position, reading
/// prefix positions through the constants.
MsoPlusRewrite rewrite_with_constants(const MsoPlusSentence& s);

struct ExpansionQuery {
  std::vector<std::string> constants;
  /// Minterm classes read along some accepting path.
  std::vector<int> letters;
  /// Exists c1..cn, and for each letter a symbol satisfying its minterm.
  Formula sentence;
};

/// One query per subset-minimal letter set of the compiled automaton.
std::vector<ExpansionQuery> expansion_queries(const MsoPlusSentence& s, const PaddedTheory& theory);

/// Satisfiable by some finite word over the theory's domain.
bool sat_plus(const MsoPlusSentence& s, const PaddedTheory& theory);

/// Some word of length at most `bound` satisfies s. Needs a finite base.
bool brute_force_sat(const MsoPlusSentence& s, const PaddedTheory& theory, int bound);

/// A length bound under which brute_force_sat agrees with sat_plus over
/// finite theories: the state count of the compiled automaton.
int derived_length_bound(const MsoPlusSentence& s, const PaddedTheory& theory);

}  // namespace mauto
