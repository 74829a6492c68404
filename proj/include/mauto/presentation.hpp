#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mauto/automaton.hpp"
#include "mauto/theory.hpp"

namespace mauto {

/// A structure presented by automata over a padded background theory: the
/// domain is a 1-track automaton and each k-ary relation a k-track one.
class AutomaticPresentation {
 public:
  AutomaticPresentation(std::string name, MAutomaton domain);

  const std::string& name() const { return name_; }
  const TheoryPtr& theory() const { return domain_.theory(); }
  const Signature& signature() const { return sig_; }
  const MAutomaton& domain() const { return domain_; }
  const MAutomaton& relation(const std::string& name) const;
  const std::map<std::string, MAutomaton>& relations() const { return relations_; }

  /// Register a relation, relativized to the domain on every track.
  void add_relation(const std::string& name, const MAutomaton& a);

  /// True when every word is equivalent to a domain word. In alias mode
  /// this holds for any domain that picks one representative per class.
  bool domain_is_universal() const { return universal_; }

  /// Intersect every track of `a` with the domain (skipped when universal).
  MAutomaton relativize(const MAutomaton& a) const;

 private:
  std::string name_;
  MAutomaton domain_;
  Signature sig_;
  std::map<std::string, MAutomaton> relations_;
  bool universal_ = false;
};

/// The relation defined by `f` with free variables listed in `vars` (which
/// must contain free_vars(f)); track i carries vars[i-1].
MAutomaton compile_fo(const AutomaticPresentation& p, const Formula& f, const std::vector<std::string>& vars);
bool decide_fo(const AutomaticPresentation& p, const Formula& sentence);

/// Words over a fresh-padded theory with eqlen, prefix, eqlast and one
/// last-letter relation per base relation (same name and arity).
AutomaticPresentation ees_presentation(TheoryPtr theory);

/// (omega \ {0}; times) with n encoded by its prime exponents, over
/// Presburger arithmetic padded by 0.
AutomaticPresentation skolem_presentation();
Word skolem_encode(std::uint64_t n);
/// Inverse of skolem_encode; empty if the value overflows 64 bits.
std::optional<std::uint64_t> skolem_decode(const Word& w);

/// (omega^omega; plusO) with ordinals encoded by their coefficient words.
AutomaticPresentation ordinal_presentation();

/// `ees:FILE`, `skolem`, `ordinal-omega-omega`, or a presentation file with
/// lines `theory NAME [pad fresh|alias E]`, `domain FILE`, `rel NAME/k FILE`.
AutomaticPresentation load_presentation(const std::string& spec, const std::string& base_dir = "");

/// The presented structure as a background theory; elements are words.
std::shared_ptr<const Theory> oracle_from_presentation(std::shared_ptr<const AutomaticPresentation> p);

}  // namespace mauto
