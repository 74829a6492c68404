#include "mauto/element.hpp"

#include <stdexcept>

namespace mauto {

std::int64_t Element::value() const {
  if (kind_ != Kind::Atom) throw std::logic_error("element is not an atom");
  return atom_;
}

const std::vector<Element>& Element::letters() const {
  if (kind_ != Kind::Word) throw std::logic_error("element is not a word");
  return letters_;
}

bool operator==(const Element& a, const Element& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Element::Kind::Padding: return true;
    case Element::Kind::Atom: return a.atom_ == b.atom_;
    case Element::Kind::Word: return a.letters_ == b.letters_;
  }
  return false;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Element::Kind::Padding: return std::strong_ordering::equal;
    case Element::Kind::Atom: return a.atom_ <=> b.atom_;
    case Element::Kind::Word: {
      const auto n = std::min(a.letters_.size(), b.letters_.size());
      for (std::size_t i = 0; i < n; ++i) {
        auto c = a.letters_[i] <=> b.letters_[i];
        if (c != 0) return c;
      }
      return a.letters_.size() <=> b.letters_.size();
    }
  }
  return std::strong_ordering::equal;
}

std::size_t Element::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
  if (kind_ == Kind::Atom) {
    h ^= std::hash<std::int64_t>{}(atom_) + 0x9e3779b9 + (h << 6) + (h >> 2);
  } else if (kind_ == Kind::Word) {
    for (const auto& l : letters_) h ^= l.hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

std::string to_string(const Element& e) {
  switch (e.kind()) {
    case Element::Kind::Padding: return "#";
    case Element::Kind::Atom: return std::to_string(e.value());
    case Element::Kind::Word: {
      std::string s = "[";
      for (std::size_t i = 0; i < e.letters().size(); ++i) {
        if (i) s += ',';
        s += to_string(e.letters()[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

}  // namespace mauto
