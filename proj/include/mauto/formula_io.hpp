#pragma once

#include <string>
#include <string_view>

#include "mauto/logic.hpp"
#include "mauto/sexpr.hpp"

namespace mauto {

/// Parse the prefix syntax. Identifiers declared as constants in `sig` become
/// constant terms. With a signature, relation arities are checked.
Formula parse_formula(std::string_view text, const Signature* sig = nullptr);
Formula formula_from_sexpr(const SExpr& e, const Signature* sig = nullptr);

std::string print_formula(const Formula& f);

}  // namespace mauto
