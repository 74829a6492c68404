#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mauto/theory.hpp"

namespace mauto {

/// Explicit finite relational structure decided by enumeration. Elements are
/// atoms indexing `domain_names()`.
class FiniteStructure : public Theory {
 public:
  FiniteStructure(std::vector<std::string> domain, Signature sig,
                  std::map<std::string, std::set<std::vector<int>>> tables, std::string name = "finite");

  /// Parse `domain a b`, `rel P/1 = {a}`, `rel E/2 = {(a,a) (b,b)}`.
  static std::shared_ptr<FiniteStructure> parse(const std::string& text, std::string name = "finite");
  static std::shared_ptr<FiniteStructure> load(const std::string& path);

  /// The literal structure with one extra element `#` interpreting Pad.
  std::shared_ptr<FiniteStructure> with_padding_element() const;

  std::string name() const override { return name_; }
  const Signature& signature() const override { return sig_; }
  bool decide(const Formula& sentence) const override;
  bool eval(const Formula& f, const Assignment& a) const override;
  bool satisfiable(const Formula& f) const override;
  std::optional<Assignment> find_witness(const Formula& f, const std::vector<std::string>& vars) const override;
  bool contains(const Element& e) const override;
  Element parse_element(const std::string& text) const override;
  std::string format_element(const Element& e) const override;
  std::optional<std::vector<Element>> finite_domain() const override;

  int size() const { return static_cast<int>(domain_.size()); }
  const std::vector<std::string>& domain_names() const { return domain_; }
  bool holds(const std::string& rel, const std::vector<int>& tuple) const;
  std::string to_text() const;

 private:
  bool eval_idx(const Formula& f, std::map<std::string, int>& env) const;

  std::vector<std::string> domain_;
  Signature sig_;
  std::map<std::string, std::set<std::vector<int>>> tables_;
  std::string name_;
  int pad_index_ = -1;
};

}  // namespace mauto
