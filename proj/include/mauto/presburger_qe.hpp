#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mauto::presburger {

/// Sum of coefficient * variable plus a constant; coefficients nonzero,
/// sorted by variable index.
struct LinTerm {
  std::vector<std::pair<int, std::int64_t>> coeffs;
  std::int64_t constant = 0;

  static LinTerm var(int v, std::int64_t k = 1);
  static LinTerm num(std::int64_t c);

  std::int64_t coef(int v) const;
  bool is_constant() const { return coeffs.empty(); }
  /// This term with the variable removed.
  LinTerm without(int v) const;

  friend bool operator==(const LinTerm&, const LinTerm&) = default;
  friend auto operator<=>(const LinTerm&, const LinTerm&) = default;
};

LinTerm operator+(const LinTerm& a, const LinTerm& b);
LinTerm operator-(const LinTerm& a, const LinTerm& b);
LinTerm operator*(std::int64_t k, const LinTerm& a);
/// Replace variable v by s.
LinTerm substitute(const LinTerm& t, int v, const LinTerm& s);

struct Atom {
  /// Lt: t < 0, Eq: t = 0, Ne: t != 0, Dvd: m | t, Ndvd: not m | t.
  enum class Kind : std::uint8_t { Lt, Eq, Ne, Dvd, Ndvd };
  Kind kind = Kind::Eq;
  std::int64_t modulus = 0;
  LinTerm term;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

Atom negate(const Atom& a);

struct QfNode;
/// Quantifier-free formula over linear atoms; negation lives in the atoms.
using Qf = std::shared_ptr<const QfNode>;

struct QfNode {
  enum class Kind : std::uint8_t { True, False, Atom, And, Or };
  Kind kind = Kind::True;
  Atom atom;
  std::vector<Qf> kids;
};

Qf qtrue();
Qf qfalse();
/// Normalizes the atom; variable-free atoms fold to true/false.
Qf qatom(const Atom& a);
Qf qand(std::vector<Qf> kids);
Qf qor(std::vector<Qf> kids);
Qf qnot(const Qf& f);
Qf substitute(const Qf& f, int v, const LinTerm& s);

bool is_true(const Qf& f);
bool is_false(const Qf& f);
bool mentions(const Qf& f, int v);

/// An equivalent quantifier-free formula for (exists v. f) over the integers.
Qf eliminate_exists(const Qf& f, int v);

std::string to_string(const Qf& f);

}  // namespace mauto::presburger
