#pragma once

#include <cstdint>

#include "mauto/theory.hpp"

namespace mauto {

/// (ω;+) with the single relation plus(x,y,z) meaning x+y=z.
class PresburgerArithmetic : public Theory {
 public:
  /// Largest element accepted by eval.
  static constexpr std::int64_t kEvalLimit = std::int64_t{1} << 16;

  PresburgerArithmetic();

  std::string name() const override { return "presburger"; }
  const Signature& signature() const override { return sig_; }
  bool decide(const Formula& sentence) const override;
  bool eval(const Formula& f, const Assignment& a) const override;
  std::optional<Assignment> find_witness(const Formula& f, const std::vector<std::string>& vars) const override;
  bool contains(const Element& e) const override { return e.is_atom() && e.value() >= 0; }
  Element parse_element(const std::string& text) const override;
  std::string format_element(const Element& e) const override;
  std::optional<Formula> define_element(const Element& e, const std::string& var) const override;

 private:
  Signature sig_;
};

/// x = 0, written plus(x,x,x).
Formula zero_formula(const std::string& x);
/// x = 1, via "nonzero and every decomposition has a zero summand".
Formula one_formula(const std::string& x);
/// x = n using only plus and equality.
Formula numeral_formula(std::int64_t n, const std::string& x);

}  // namespace mauto
