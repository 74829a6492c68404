#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mauto {

/// Parenthesized token tree. Atoms carry `text`; lists carry `items`.
struct SExpr {
  bool is_atom = true;
  std::string text;
  std::vector<SExpr> items;

  bool is_list() const { return !is_atom; }
  /// True for a list whose first item is the atom `head`.
  bool headed(std::string_view head) const;
};

/// Parse exactly one expression; `;` starts a line comment.
SExpr parse_sexpr(std::string_view text);
std::vector<SExpr> parse_sexprs(std::string_view text);
std::string to_string(const SExpr& e);

}  // namespace mauto
