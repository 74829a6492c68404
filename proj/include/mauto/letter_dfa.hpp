#pragma once

#include <vector>

namespace mauto {

/// Complete DFA over the letters 0..alphabet-1.
struct LetterDfa {
  int alphabet = 1;
  int start = 0;
  std::vector<int> delta;  // state * alphabet + letter
  std::vector<char> final;

  LetterDfa() = default;
  LetterDfa(int alphabet, int states);

  int states() const { return static_cast<int>(final.size()); }
  int next(int s, int letter) const { return delta[static_cast<std::size_t>(s * alphabet + letter)]; }
  void set(int s, int letter, int t) { delta[static_cast<std::size_t>(s * alphabet + letter)] = t; }
  bool accepts(const std::vector<int>& word) const;

  static LetterDfa constant(int alphabet, bool accept);
  LetterDfa complemented() const;
  /// Conjunction or disjunction of the two languages.
  static LetterDfa product(const LetterDfa& a, const LetterDfa& b, bool conj);
  /// Letters differing only in bit `bit` are merged: the result accepts a
  /// word when some choice of that bit at each position is accepted.
  LetterDfa project_bit(int bit) const;
  /// Minimal equivalent DFA restricted to reachable states.
  LetterDfa minimized() const;
};

}  // namespace mauto
