#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mauto/error.hpp"

namespace mauto {

struct RelationSymbol {
  std::string name;
  int arity = 1;
  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

/// Relational vocabulary. Constants only appear in expansions built while
/// deciding MSO+ sentences.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<RelationSymbol> relations, std::vector<std::string> constants = {});

  void add_relation(const std::string& name, int arity);
  void add_constant(const std::string& name);

  std::optional<int> arity(const std::string& relation) const;
  bool has_constant(const std::string& name) const;

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<std::string>& constants() const { return constants_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

struct Term {
  enum class Kind : std::uint8_t { Var, Const };
  Kind kind = Kind::Var;
  std::string name;

  static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }
  bool is_var() const { return kind == Kind::Var; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Immutable first-order formula over a relational signature, optionally
/// using the padding predicate. Copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, Rel, Eq, Pad, Not, And, Or, Implies, Exists, Forall };

  Formula();

  static Formula truth();
  static Formula falsity();
  static Formula rel(std::string name, std::vector<Term> args);
  static Formula eq(Term a, Term b);
  static Formula pad(Term t);
  static Formula negation(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  Kind kind() const;
  /// Relation name for Rel, bound variable for quantifiers.
  const std::string& symbol() const;
  const std::vector<Term>& terms() const;
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i = 0) const { return children()[i]; }

  bool is_atom() const;
  bool is_quantifier_free() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, std::string symbol, std::vector<Term> terms, std::vector<Formula> kids);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Light-folding constructors: these drop True/False operands.
Formula land(const Formula& a, const Formula& b);
Formula land(std::vector<Formula> fs);
Formula lor(const Formula& a, const Formula& b);
Formula lor(std::vector<Formula> fs);
Formula lnot(const Formula& f);

Formula var_rel(const std::string& name, const std::vector<std::string>& vars);
Formula var_eq(const std::string& a, const std::string& b);
Formula var_pad(const std::string& v);

std::set<std::string> free_vars(const Formula& f);
/// Every variable name occurring in f, free or bound.
std::set<std::string> all_vars(const Formula& f);
std::set<std::string> constants_of(const Formula& f);
int quantifier_depth(const Formula& f);
bool mentions_pad(const Formula& f);

/// Capture-avoiding simultaneous substitution. Every key must be free in f.
Formula substitute(const Formula& f, const std::map<std::string, Term>& mapping);
/// As substitute, but keys that do not occur free are ignored.
Formula rename_free(const Formula& f, const std::map<std::string, Term>& mapping);
/// Replace constant symbols by terms (capture-avoiding).
Formula replace_constants(const Formula& f, const std::map<std::string, Term>& mapping);

/// Smallest `base` + numeric suffix not in `used` (returns base itself when free).
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

enum class PadStatus : std::uint8_t { Proper, Padding };
using PadMask = std::map<std::string, PadStatus>;

/// Translate a formula read in the padded structure into one read in the base
/// structure, given which free variables denote the padding blank.
Formula eliminate_pad(const Formula& f, const PadMask& mask);

/// Semantics-preserving constant folding, flattening and de-duplication.
Formula simplify(const Formula& f);

/// Negation normal form: no Implies, Not only directly above atoms.
Formula to_nnf(const Formula& f);

Formula exists_closure(const Formula& f, const std::vector<std::string>& vars);
Formula exists_closure(const Formula& f);

/// Rename bound variables so that no variable is bound twice and no bound
/// name clashes with a free one or with `avoid`.
Formula rename_bound_apart(const Formula& f, std::set<std::string> avoid = {});

/// Check relation arities and constant names against a signature.
void check_signature(const Formula& f, const Signature& sig, bool allow_pad = true);

}  // namespace mauto
