#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mauto/automaton.hpp"
#include "mauto/letter_dfa.hpp"
#include "mauto/sexpr.hpp"

namespace mauto {

/// Monadic second-order formula over word positions.
///
/// Alpha(F, x) holds when the column at x satisfies F over t1..tn. Theta(F,
/// p1..pm) holds when the symbols at p1..pm satisfy F over s1..sm; it is only
/// meaningful for single-track words.
struct MsoFormula {
  enum class Kind : std::uint8_t {
    True, False, Lt, In, Subset, PosEq, Alpha, Theta,
    Not, And, Or, Implies, ExistsP, ForallP, ExistsS, ForallS
  };

  Kind kind = Kind::True;
  std::vector<std::string> vars;
  Formula symbol;
  std::vector<MsoFormula> kids;

  static MsoFormula truth();
  static MsoFormula falsity();
  static MsoFormula lt(std::string x, std::string y);
  static MsoFormula in(std::string x, std::string set);
  static MsoFormula subset(std::string a, std::string b);
  static MsoFormula pos_eq(std::string x, std::string y);
  static MsoFormula alpha(Formula f, std::string x);
  static MsoFormula theta(Formula f, std::vector<std::string> positions);
  static MsoFormula negation(MsoFormula f);
  static MsoFormula conj(std::vector<MsoFormula> fs);
  static MsoFormula disj(std::vector<MsoFormula> fs);
  static MsoFormula implies(MsoFormula a, MsoFormula b);
  static MsoFormula exists_pos(std::string x, MsoFormula f);
  static MsoFormula forall_pos(std::string x, MsoFormula f);
  static MsoFormula exists_set(std::string x, MsoFormula f);
  static MsoFormula forall_set(std::string x, MsoFormula f);

  bool is_quantifier() const;
  bool binds_set() const { return kind == Kind::ExistsS || kind == Kind::ForallS; }
};

MsoFormula parse_mso(std::string_view text, const Signature* sig = nullptr);
MsoFormula mso_from_sexpr(const SExpr& e, const Signature* sig = nullptr);
std::string print_mso(const MsoFormula& f);

struct MsoFreeVars {
  std::set<std::string> positions;
  std::set<std::string> sets;
};
MsoFreeVars mso_free_vars(const MsoFormula& f);
int mso_depth(const MsoFormula& f);
bool mso_has_set_quantifier(const MsoFormula& f);

/// Direct semantics on the convolution of w. Free position and set variables
/// take their values from the maps (sets as bitmasks).
bool mso_holds(const MsoFormula& f, const TupleWord& w, const PaddedTheory& theory,
               const std::map<std::string, int>& positions = {},
               const std::map<std::string, std::uint32_t>& sets = {});

/// Word length limit for sentences with set quantifiers in mso_holds.
inline constexpr std::size_t kMsoSetQuantifierLimit = 20;

struct MsoCompilation {
  /// DFA over the letter classes 0..minterms.size()-1.
  LetterDfa dfa;
  /// Satisfiable minterms over the alpha formulas; the class of a column is
  /// the unique minterm it satisfies.
  std::vector<Formula> minterms;
};

/// Compile a sentence. Alpha formulas may mention t1..t_tracks and the given
/// parameter names, which are read existentially when pruning minterms.
MsoCompilation compile_mso_letters(const MsoFormula& sentence, int tracks, const PaddedTheory& theory,
                                   const std::set<std::string>& parameters = {});
MAutomaton compile_mso(const MsoFormula& sentence, int tracks, TheoryPtr theory);

}  // namespace mauto
