#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mauto/element.hpp"

namespace mauto {

/// Ordinal below omega^omega as its coefficient word a0 a1 ... am, where ai is
/// the coefficient of omega^i. Empty means 0; otherwise am != 0.
using Cnf = std::vector<std::uint64_t>;

bool cnf_valid(const Cnf& a);
Cnf cnf_add(const Cnf& a, const Cnf& b);
std::strong_ordering cnf_compare(const Cnf& a, const Cnf& b);

/// Comma-separated coefficients; the empty string is 0.
Cnf parse_cnf(std::string_view text);
std::string format_cnf(const Cnf& a);
/// Polynomial form, e.g. `w^3*20 + w*2 + 1`.
std::string pretty_cnf(const Cnf& a);

Word cnf_to_word(const Cnf& a);
/// Trailing zeros are dropped.
Cnf word_to_cnf(const Word& w);

}  // namespace mauto
