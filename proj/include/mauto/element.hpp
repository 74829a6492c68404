#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mauto {

/// A letter of some background structure's domain, or the padding blank.
///
/// Atoms cover naturals (Presburger) and indices into a finite domain. Words
/// cover structures whose domain is itself a set of words, e.g. the alphabet
/// obtained from an automatic presentation.
class Element {
 public:
  enum class Kind : std::uint8_t { Padding, Atom, Word };

  Element() = default;

  static Element padding() { return Element(); }
  static Element atom(std::int64_t v) {
    Element e;
    e.kind_ = Kind::Atom;
    e.atom_ = v;
    return e;
  }
  static Element word(std::vector<Element> letters) {
    Element e;
    e.kind_ = Kind::Word;
    e.letters_ = std::move(letters);
    return e;
  }

  Kind kind() const { return kind_; }
  bool is_padding() const { return kind_ == Kind::Padding; }
  bool is_atom() const { return kind_ == Kind::Atom; }
  bool is_word() const { return kind_ == Kind::Word; }

  std::int64_t value() const;
  const std::vector<Element>& letters() const;

  friend bool operator==(const Element& a, const Element& b);
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

  std::size_t hash() const;

 private:
  Kind kind_ = Kind::Padding;
  std::int64_t atom_ = 0;
  std::vector<Element> letters_;
};

using Word = std::vector<Element>;

/// Debug rendering: `#`, the atom value, or `[a,b,...]`.
std::string to_string(const Element& e);

}  // namespace mauto

template <>
struct std::hash<mauto::Element> {
  std::size_t operator()(const mauto::Element& e) const { return e.hash(); }
};
