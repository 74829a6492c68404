#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mauto/element.hpp"
#include "mauto/logic.hpp"

namespace mauto {

using Assignment = std::map<std::string, Element>;

/// Decision interface for a background structure.
///
/// Implementations must be safe for concurrent calls.
class Theory {
 public:
  virtual ~Theory() = default;

  virtual std::string name() const = 0;
  virtual const Signature& signature() const = 0;

  /// Truth of a sentence.
  virtual bool decide(const Formula& sentence) const = 0;
  /// Truth of `f` under `a`; `a` must cover the free variables of f.
  virtual bool eval(const Formula& f, const Assignment& a) const = 0;
  virtual bool satisfiable(const Formula& f) const { return decide(exists_closure(f)); }
  /// An assignment of `vars` (which must contain free_vars(f)) satisfying f.
  virtual std::optional<Assignment> find_witness(const Formula& f, const std::vector<std::string>& vars) const = 0;

  virtual bool contains(const Element& e) const = 0;
  virtual Element parse_element(const std::string& text) const = 0;
  virtual std::string format_element(const Element& e) const = 0;
  /// A formula with single free variable `var` true exactly of `e`, if any.
  virtual std::optional<Formula> define_element(const Element& e, const std::string& var) const {
    (void)e;
    (void)var;
    return std::nullopt;
  }
  /// The whole domain, for finite structures.
  virtual std::optional<std::vector<Element>> finite_domain() const { return std::nullopt; }
};

/// Throws unless `sentence` is closed.
void require_sentence(const Formula& sentence);

/// Throws unless every free variable of f is assigned.
void require_assigned(const Formula& f, const Assignment& a);

}  // namespace mauto
