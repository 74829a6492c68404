#pragma once

// Curated Presburger sentences with known truth values. `(zero v)` and
// `(one v)` abbreviate the definitions of 0 and 1 from addition.

#include <functional>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "mauto/formula_io.hpp"
#include "mauto/presburger.hpp"

namespace cases {

struct PresburgerCase {
  const char* text;
  bool truth;
};

inline const std::vector<PresburgerCase>& presburger() {
  static const std::vector<PresburgerCase> cs{
      {"(exists x (rel plus x x x))", true},
      {"(forall x (forall y (implies (rel plus x y y) (rel plus x x x))))", true},
      {"(forall x (exists y (or (rel plus y y x) (exists u (and (rel plus y y u) (exists o (and (one o) (rel plus u o x))))))))", true},
      {"(exists x (and (zero x) (forall y (rel plus x y y))))", true},
      {"(forall x (forall y (implies (and (zero x) (zero y)) (= x y))))", true},
      {"(exists x (one x))", true},
      {"(forall x (forall y (implies (and (one x) (one y)) (= x y))))", true},
      {"(forall x (exists y (rel plus x y x)))", true},
      {"(forall x (forall y (exists z (rel plus x y z))))", true},
      {"(forall x (forall y (forall z (forall w (implies (and (rel plus x y z) (rel plus x y w)) (= z w))))))", true},
      {"(forall x (forall y (forall z (implies (rel plus x y z) (rel plus y x z)))))", true},
      {"(forall z (exists x (exists y (and (rel plus x y z) (not (= x y))))))", false},
      {"(forall x (exists y (rel plus y y x)))", false},
      {"(exists x (forall y (rel plus x y y)))", true},
      {"(exists x (forall y (rel plus y x x)))", false},
      {"(forall x (forall y (implies (rel plus x x y) (exists z (rel plus z z y)))))", true},
      {"(forall x (exists y (and (not (= x y)) (rel plus x x y))))", false},
      {"(exists x (exists y (and (rel plus x x y) (not (= x y)))))", true},
      {"(forall x (forall y (implies (and (rel plus x x y) (rel plus y y x)) (zero x))))", true},
      {"(exists x (exists y (exists z (and (rel plus x y z) (rel plus z z x) (not (zero y))))))", false},
      {"(forall x (exists y (exists z (and (rel plus y y z) (rel plus z y x)))))", false},
      {"(forall x (or (exists y (exists z (and (rel plus y y z) (rel plus z y x)))) (exists y (exists z (exists u (and (rel plus y y z) (rel plus z y u) (exists o (and (one o) (rel plus u o x))))))) (exists y (exists z (exists u (and (rel plus y y z) (rel plus z y u) (exists o (exists t (and (one o) (rel plus o o t) (rel plus u t x))))))))))", true},
      {"(exists x (exists y (and (rel plus x y x) (not (zero y)))))", false},
      {"(forall x (forall y (or (exists z (rel plus x z y)) (exists z (rel plus y z x)))))", true},
      {"(forall x (forall y (implies (and (exists z (rel plus x z y)) (exists z (rel plus y z x))) (= x y))))", true},
      {"(exists x (forall y (exists z (rel plus y z x))))", false},
      {"(forall x (exists y (exists z (and (rel plus x z y) (not (zero z))))))", true},
      {"(forall x (forall o (implies (one o) (not (rel plus x o x)))))", true},
      {"(exists x (exists o (and (one o) (rel plus o o x) (rel plus x x x))))", false},
      {"(forall x (implies (not (zero x)) (exists y (exists o (and (one o) (rel plus y o x))))))", true},
      {"(forall x (exists y (exists o (and (one o) (rel plus y o x)))))", false},
      {"(exists x (exists y (and (rel plus x x y) (rel plus y y x) (not (= x y)))))", false},
      {"(forall x (forall y (forall z (implies (and (rel plus x z y) (rel plus y z x)) (= x y)))))", true},
      {"(exists x (exists y (exists z (and (rel plus x y z) (rel plus y x z) (not (= x y))))))", true},
      {"(forall x (forall y (forall z (implies (and (rel plus x x z) (rel plus y y z)) (= x y)))))", true},
      {"(exists x (and (exists y (rel plus y y x)) (exists y (exists z (exists o (and (one o) (rel plus y y z) (rel plus z o x)))))))", false},
      {"(exists x (exists y (exists z (and (rel plus x x y) (rel plus y x z) (rel plus z z x) (not (zero x))))))", false},
      {"(forall x (forall y (implies (not (= x y)) (exists z (and (not (zero z)) (or (rel plus x z y) (rel plus y z x)))))))", true},
      {"(exists x (forall y (or (rel plus x y y) (exists z (rel plus x z y)))))", true},
      {"(forall x (exists y (forall z (implies (rel plus x z y) (zero z)))))", true},
      {"(exists x (forall y (forall z (implies (rel plus y z x) (or (zero y) (zero z))))))", true},
      {"(exists x (and (not (zero x)) (not (one x)) (forall y (forall z (implies (rel plus y z x) (or (zero y) (zero z)))))))", false},
      {"(forall x (forall y (implies (and (one x) (rel plus x x y)) (not (one y)))))", true},
      {"(exists x (exists y (exists z (and (rel plus x y z) (zero z) (not (zero x))))))", false},
      {"(forall x (exists y (exists z (and (rel plus x y z) (rel plus z z y)))))", false},
      {"(exists x (exists y (and (rel plus x y x) (rel plus y x y) (not (= x y)))))", false},
      {"(forall x (forall y (forall z (forall w (implies (and (rel plus x y z) (rel plus z w x)) (zero y))))))", true},
      {"(exists x (forall y (not (rel plus y y x))))", true},
      {"(forall x (implies (exists y (rel plus y y x)) (exists z (exists w (and (rel plus z z w) (rel plus w w x))))))", false},
      {"(exists x (and (exists y (rel plus y y x)) (not (exists z (exists w (and (rel plus z z w) (rel plus w w x)))))))", true},
      {"(exists x (exists y (exists z (and (rel plus x x y) (rel plus y x z) (rel plus z y x)))))", true},
  };
  return cs;
}

/// Expand the (zero v) and (one v) abbreviations.
inline mauto::Formula expand(const std::string& text) {
  std::string s = std::regex_replace(text, std::regex(R"(\(zero (\w+)\))"), "(rel plus $1 $1 $1)");
  static const std::regex one(R"(\(one (\w+)\))");
  std::smatch m;
  while (std::regex_search(s, m, one)) s.replace(static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.length(0)), mauto::print_formula(mauto::one_formula(m[1].str())));
  return mauto::parse_formula(s);
}

/// Leading existential block of a sentence and its matrix.
inline std::pair<std::vector<std::string>, mauto::Formula> existential_prefix(mauto::Formula f) {
  std::vector<std::string> vars;
  while (f.kind() == mauto::Formula::Kind::Exists) {
    vars.push_back(f.symbol());
    f = f.child();
  }
  return {vars, f};
}

/// Search N^k in order of increasing coordinate sum up to `max_sum` for values
/// of the leading existential variables that make the matrix true.
inline std::optional<mauto::Assignment> diagonal_witness(const mauto::Theory& pa, const mauto::Formula& sentence,
                                                          int max_sum = 64) {
  const auto [vars, matrix] = existential_prefix(sentence);
  const std::size_t k = vars.size();
  std::vector<int> v(k, 0);
  std::function<std::optional<mauto::Assignment>(std::size_t, int)> fill = [&](std::size_t i, int left) -> std::optional<mauto::Assignment> {
    if (i + 1 == k) {
      v[i] = left;
      mauto::Assignment a;
      for (std::size_t j = 0; j < k; ++j) a[vars[j]] = mauto::Element::atom(v[j]);
      if (pa.eval(matrix, a)) return a;
      return std::nullopt;
    }
    for (int x = 0; x <= left; ++x) {
      v[i] = x;
      if (auto r = fill(i + 1, left - x)) return r;
    }
    return std::nullopt;
  };
  if (k == 0) return std::nullopt;
  for (int sum = 0; sum <= max_sum; ++sum)
    if (auto r = fill(0, sum)) return r;
  return std::nullopt;
}

}  // namespace cases
