#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "mauto/theory.hpp"

namespace mauto {

enum class PadMode : std::uint8_t { Fresh, Alias };

/// A base structure extended with the padding blank and the Pad predicate.
///
/// Fresh mode adds a new element #. Alias mode reads Pad(x) as x = e for a
/// definable base element e.
class PaddedTheory : public Theory {
 public:
  static std::shared_ptr<const PaddedTheory> fresh(std::shared_ptr<const Theory> base);
  static std::shared_ptr<const PaddedTheory> alias(std::shared_ptr<const Theory> base, Element e);

  const Theory& base() const { return *base_; }
  const std::shared_ptr<const Theory>& base_ptr() const { return base_; }
  PadMode mode() const { return mode_; }
  /// The element written into exhausted tracks of a convolution.
  const Element& pad_element() const { return pad_; }

  std::string name() const override { return base_->name(); }
  const Signature& signature() const override { return base_->signature(); }
  bool decide(const Formula& sentence) const override;
  bool eval(const Formula& f, const Assignment& a) const override;
  bool satisfiable(const Formula& f) const override;
  std::optional<Assignment> find_witness(const Formula& f, const std::vector<std::string>& vars) const override;
  bool contains(const Element& e) const override;
  Element parse_element(const std::string& text) const override;
  std::string format_element(const Element& e) const override;

  /// Alias mode: Pad(t) replaced by the definition of e. Fresh mode: identity.
  Formula rewrite_alias(const Formula& f) const;
  /// `pad fresh` or `pad alias E`.
  std::string pad_spec() const;
  /// Same base (by name and signature) and same padding.
  bool compatible(const PaddedTheory& other) const;

 private:
  PaddedTheory(std::shared_ptr<const Theory> base, PadMode mode, Element pad, Formula pad_def);
  bool eval_uncached(const Formula& f, const Assignment& a) const;

  std::shared_ptr<const Theory> base_;
  PadMode mode_;
  Element pad_;
  Formula pad_def_;  // alias mode, free variable kPadVar

  struct EvalKey {
    Formula f;
    std::vector<Element> values;
    friend bool operator==(const EvalKey&, const EvalKey&) = default;
  };
  struct EvalKeyHash {
    std::size_t operator()(const EvalKey& k) const;
  };

  mutable std::mutex mu_;
  mutable std::unordered_map<Formula, bool, FormulaHash> sat_cache_;
  mutable std::unordered_map<EvalKey, bool, EvalKeyHash> eval_cache_;
};

using TheoryPtr = std::shared_ptr<const PaddedTheory>;

}  // namespace mauto
