#include "mauto/ordinal.hpp"

#include <charconv>

#include "mauto/error.hpp"

namespace mauto {

bool cnf_valid(const Cnf& a) { return a.empty() || a.back() != 0; }

Cnf cnf_add(const Cnf& a, const Cnf& b) {
  if (b.empty()) return a;
  const std::size_t d = b.size() - 1;
  if (a.size() <= d) return b;
  Cnf r = a;
  for (std::size_t i = 0; i < d; ++i) r[i] = b[i];
  r[d] = a[d] + b[d];
  return r;
}

std::strong_ordering cnf_compare(const Cnf& a, const Cnf& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

Cnf parse_cnf(std::string_view text) {
  Cnf out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty())
      throw Error("bad coefficient '" + std::string(tok) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (!cnf_valid(out)) throw Error("leading coefficient must be nonzero: " + std::string(text));
  return out;
}

std::string format_cnf(const Cnf& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a[i]);
  }
  return s;
}

std::string pretty_cnf(const Cnf& a) {
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += " + ";
    std::string term;
    if (i == 0) {
      term = std::to_string(a[i]);
    } else {
      term = i == 1 ? "w" : "w^" + std::to_string(i);
      if (a[i] != 1) term += "*" + std::to_string(a[i]);
    }
    s += term;
  }
  return s.empty() ? "0" : s;
}

Word cnf_to_word(const Cnf& a) {
  Word w;
  for (auto c : a) w.push_back(Element::atom(static_cast<std::int64_t>(c)));
  return w;
}

Cnf word_to_cnf(const Word& w) {
  Cnf a;
  for (const auto& e : w) {
    if (!e.is_atom() || e.value() < 0) throw Error("ordinal coefficients are naturals");
    a.push_back(static_cast<std::uint64_t>(e.value()));
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

}  // namespace mauto
