#include "mauto/presburger_qe.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "mauto/error.hpp"

namespace mauto::presburger {

namespace {

[[noreturn]] void overflow() { throw Error("integer overflow during Presburger elimination"); }

std::int64_t cadd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}
std::int64_t cmul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}
std::int64_t clcm(std::int64_t a, std::int64_t b) {
  a = std::abs(a);
  b = std::abs(b);
  if (a == 0 || b == 0) return 0;
  return cmul(a / std::gcd(a, b), b);
}
std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
std::int64_t posmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------- terms

LinTerm LinTerm::var(int v, std::int64_t k) {
  LinTerm t;
  if (k != 0) t.coeffs.emplace_back(v, k);
  return t;
}

LinTerm LinTerm::num(std::int64_t c) {
  LinTerm t;
  t.constant = c;
  return t;
}

std::int64_t LinTerm::coef(int v) const {
  for (const auto& [x, k] : coeffs)
    if (x == v) return k;
  return 0;
}

LinTerm LinTerm::without(int v) const {
  LinTerm t = *this;
  std::erase_if(t.coeffs, [v](const auto& p) { return p.first == v; });
  return t;
}

LinTerm operator+(const LinTerm& a, const LinTerm& b) {
  LinTerm r;
  r.constant = cadd(a.constant, b.constant);
  std::size_t i = 0, j = 0;
  while (i < a.coeffs.size() || j < b.coeffs.size()) {
    if (j == b.coeffs.size() || (i < a.coeffs.size() && a.coeffs[i].first < b.coeffs[j].first)) {
      r.coeffs.push_back(a.coeffs[i++]);
    } else if (i == a.coeffs.size() || b.coeffs[j].first < a.coeffs[i].first) {
      r.coeffs.push_back(b.coeffs[j++]);
    } else {
      const auto k = cadd(a.coeffs[i].second, b.coeffs[j].second);
      if (k != 0) r.coeffs.emplace_back(a.coeffs[i].first, k);
      ++i;
      ++j;
    }
  }
  return r;
}

LinTerm operator*(std::int64_t k, const LinTerm& a) {
  if (k == 0) return {};
  LinTerm r;
  r.constant = cmul(k, a.constant);
  for (const auto& [x, c] : a.coeffs) r.coeffs.emplace_back(x, cmul(k, c));
  return r;
}

LinTerm operator-(const LinTerm& a, const LinTerm& b) { return a + (-1) * b; }

LinTerm substitute(const LinTerm& t, int v, const LinTerm& s) {
  const auto c = t.coef(v);
  if (c == 0) return t;
  return t.without(v) + c * s;
}

// ---------------------------------------------------------------- atoms

Atom negate(const Atom& a) {
  Atom r = a;
  switch (a.kind) {
    case Atom::Kind::Lt: r.term = (-1) * a.term - LinTerm::num(1); break;
    case Atom::Kind::Eq: r.kind = Atom::Kind::Ne; break;
    case Atom::Kind::Ne: r.kind = Atom::Kind::Eq; break;
    case Atom::Kind::Dvd: r.kind = Atom::Kind::Ndvd; break;
    case Atom::Kind::Ndvd: r.kind = Atom::Kind::Dvd; break;
  }
  return r;
}

namespace {

Qf make_const(bool b) {
  static const Qf t = std::make_shared<const QfNode>(QfNode{QfNode::Kind::True, {}, {}});
  static const Qf f = std::make_shared<const QfNode>(QfNode{QfNode::Kind::False, {}, {}});
  return b ? t : f;
}

std::int64_t coeff_gcd(const LinTerm& t) {
  std::int64_t g = 0;
  for (const auto& [_, k] : t.coeffs) g = std::gcd(g, std::abs(k));
  return g;
}

// Canonical form in place; a truth value when the atom is variable-free or trivial.
std::optional<bool> normalize(Atom& a) {
  using K = Atom::Kind;
  auto& t = a.term;
  switch (a.kind) {
    case K::Lt: {
      if (t.is_constant()) return t.constant < 0;
      const auto g = coeff_gcd(t);
      if (g > 1) {
        for (auto& [_, k] : t.coeffs) k /= g;
        t.constant = floordiv(t.constant, g);
      }
      return std::nullopt;
    }
    case K::Eq:
    case K::Ne: {
      const bool eq = a.kind == K::Eq;
      if (t.is_constant()) return (t.constant == 0) == eq;
      const auto g = coeff_gcd(t);
      if (t.constant % g != 0) return !eq;
      if (g > 1) {
        for (auto& [_, k] : t.coeffs) k /= g;
        t.constant /= g;
      }
      if (t.coeffs.front().second < 0) t = (-1) * t;
      return std::nullopt;
    }
    case K::Dvd:
    case K::Ndvd: {
      const bool dvd = a.kind == K::Dvd;
      auto d = std::abs(a.modulus);
      if (d == 0) {
        a.kind = dvd ? K::Eq : K::Ne;
        return normalize(a);
      }
      LinTerm r;
      for (const auto& [x, k] : t.coeffs) {
        const auto m = posmod(k, d);
        if (m != 0) r.coeffs.emplace_back(x, m);
      }
      r.constant = posmod(t.constant, d);
      if (r.is_constant()) return (r.constant == 0) == dvd;
      const auto gc = std::gcd(coeff_gcd(r), d);
      if (r.constant % gc != 0) return !dvd;
      const auto g = std::gcd(gc, r.constant);
      if (g > 1) {
        for (auto& [_, k] : r.coeffs) k /= g;
        r.constant /= g;
        d /= g;
      }
      if (d == 1) return dvd;
      a.modulus = d;
      t = std::move(r);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Qf qtrue() { return make_const(true); }
Qf qfalse() { return make_const(false); }

Qf qatom(const Atom& a) {
  Atom n = a;
  if (auto folded = normalize(n)) return make_const(*folded);
  return std::make_shared<const QfNode>(QfNode{QfNode::Kind::Atom, std::move(n), {}});
}

bool is_true(const Qf& f) { return f->kind == QfNode::Kind::True; }
bool is_false(const Qf& f) { return f->kind == QfNode::Kind::False; }

namespace {

Qf junction(std::vector<Qf> kids, bool conj) {
  using K = QfNode::Kind;
  const K self = conj ? K::And : K::Or;
  std::vector<Qf> out;
  std::set<Atom> atoms;
  std::function<bool(const Qf&)> add = [&](const Qf& k) {
    if (k->kind == self) {
      for (const auto& c : k->kids)
        if (!add(c)) return false;
      return true;
    }
    if (conj ? is_true(k) : is_false(k)) return true;
    if (conj ? is_false(k) : is_true(k)) return false;
    if (k->kind == K::Atom) {
      if (atoms.count(negate(k->atom))) return false;
      if (!atoms.insert(k->atom).second) return true;
    }
    out.push_back(k);
    return true;
  };
  for (const auto& k : kids)
    if (!add(k)) return make_const(!conj);
  if (out.empty()) return make_const(conj);
  if (out.size() == 1) return out.front();
  return std::make_shared<const QfNode>(QfNode{self, {}, std::move(out)});
}

}  // namespace

Qf qand(std::vector<Qf> kids) { return junction(std::move(kids), true); }
Qf qor(std::vector<Qf> kids) { return junction(std::move(kids), false); }

Qf qnot(const Qf& f) {
  using K = QfNode::Kind;
  switch (f->kind) {
    case K::True: return qfalse();
    case K::False: return qtrue();
    case K::Atom: return qatom(negate(f->atom));
    case K::And:
    case K::Or: {
      std::vector<Qf> kids;
      for (const auto& c : f->kids) kids.push_back(qnot(c));
      return f->kind == K::And ? qor(std::move(kids)) : qand(std::move(kids));
    }
  }
  return f;
}

namespace {

template <class F>
Qf map_atoms(const Qf& f, const F& fn) {
  using K = QfNode::Kind;
  switch (f->kind) {
    case K::True:
    case K::False: return f;
    case K::Atom: return fn(f->atom);
    case K::And:
    case K::Or: {
      std::vector<Qf> kids;
      kids.reserve(f->kids.size());
      for (const auto& c : f->kids) {
        kids.push_back(map_atoms(c, fn));
        // Early exit on an absorbing child.
        if (f->kind == K::And && is_false(kids.back())) return qfalse();
        if (f->kind == K::Or && is_true(kids.back())) return qtrue();
      }
      return f->kind == K::And ? qand(std::move(kids)) : qor(std::move(kids));
    }
  }
  return f;
}

template <class F>
void for_atoms(const Qf& f, const F& fn) {
  if (f->kind == QfNode::Kind::Atom) fn(f->atom);
  for (const auto& c : f->kids) for_atoms(c, fn);
}

}  // namespace

Qf substitute(const Qf& f, int v, const LinTerm& s) {
  return map_atoms(f, [&](const Atom& a) {
    if (a.term.coef(v) == 0) return std::make_shared<const QfNode>(QfNode{QfNode::Kind::Atom, a, {}});
    Atom b = a;
    b.term = substitute(a.term, v, s);
    return qatom(b);
  });
}

bool mentions(const Qf& f, int v) {
  if (f->kind == QfNode::Kind::Atom) return f->atom.term.coef(v) != 0;
  for (const auto& c : f->kids)
    if (mentions(c, v)) return true;
  return false;
}

// ---------------------------------------------------------------- Cooper

namespace {

Qf cooper(const Qf& input, int x) {
  using AK = Atom::Kind;
  // Unit equality among the top-level conjuncts: substitute it away.
  {
    std::vector<Qf> conjuncts =
        input->kind == QfNode::Kind::And ? input->kids : std::vector<Qf>{input};
    for (const auto& c : conjuncts) {
      if (c->kind != QfNode::Kind::Atom || c->atom.kind != AK::Eq) continue;
      const auto k = c->atom.term.coef(x);
      if (k != 1 && k != -1) continue;
      // k*x + r = 0  =>  x = -k*r
      const LinTerm s = (-k) * c->atom.term.without(x);
      return substitute(input, x, s);
    }
  }

  // Scale so every coefficient of x is +-1 (x' = l*x, with l | x').
  std::int64_t l = 1;
  for_atoms(input, [&](const Atom& a) {
    if (auto k = a.term.coef(x)) l = clcm(l, k);
  });
  Qf f = input;
  if (l > 1) {
    f = map_atoms(input, [&](const Atom& a) {
      const auto k = a.term.coef(x);
      if (k == 0) return std::make_shared<const QfNode>(QfNode{QfNode::Kind::Atom, a, {}});
      const auto m = l / std::abs(k);
      Atom b = a;
      b.term = m * a.term.without(x) + LinTerm::var(x, k > 0 ? 1 : -1);
      if (a.kind == AK::Dvd || a.kind == AK::Ndvd) b.modulus = cmul(a.modulus, m);
      return qatom(b);
    });
    f = qand({f, qatom(Atom{AK::Dvd, l, LinTerm::var(x)})});
  }

  std::int64_t delta = 1;
  std::set<LinTerm> lower, upper;
  for_atoms(f, [&](const Atom& a) {
    const auto k = a.term.coef(x);
    if (k == 0) return;
    const LinTerm r = a.term.without(x);
    switch (a.kind) {
      case AK::Dvd:
      case AK::Ndvd: delta = clcm(delta, a.modulus); break;
      case AK::Lt:
        if (k == 1) upper.insert((-1) * r);  // x < -r
        else lower.insert(r);                // x > r
        break;
      case AK::Eq: {
        const LinTerm t = k == 1 ? (-1) * r : r;  // x = t
        lower.insert(t - LinTerm::num(1));
        upper.insert(t + LinTerm::num(1));
        break;
      }
      case AK::Ne: {
        const LinTerm t = k == 1 ? (-1) * r : r;  // x != t
        lower.insert(t);
        upper.insert(t);
        break;
      }
    }
  });

  const bool use_lower = lower.size() <= upper.size();
  // Behaviour of f as x tends to -inf (use_lower) or +inf.
  const Qf inf = map_atoms(f, [&](const Atom& a) -> Qf {
    const auto k = a.term.coef(x);
    if (k == 0 || a.kind == AK::Dvd || a.kind == AK::Ndvd)
      return std::make_shared<const QfNode>(QfNode{QfNode::Kind::Atom, a, {}});
    switch (a.kind) {
      case AK::Lt: return (k == 1) == use_lower ? qtrue() : qfalse();
      case AK::Eq: return qfalse();
      case AK::Ne: return qtrue();
      default: return qfalse();
    }
  });

  std::vector<Qf> disjuncts;
  for (std::int64_t j = 1; j <= delta; ++j) {
    auto d = substitute(inf, x, LinTerm::num(use_lower ? j : -j));
    if (is_true(d)) return qtrue();
    disjuncts.push_back(d);
  }
  for (const auto& b : use_lower ? lower : upper) {
    for (std::int64_t j = 1; j <= delta; ++j) {
      auto d = substitute(f, x, b + LinTerm::num(use_lower ? j : -j));
      if (is_true(d)) return qtrue();
      disjuncts.push_back(d);
    }
  }
  return qor(std::move(disjuncts));
}

}  // namespace

Qf eliminate_exists(const Qf& f, int v) {
  using K = QfNode::Kind;
  if (!mentions(f, v)) return f;
  if (f->kind == K::Or) {
    std::vector<Qf> kids;
    for (const auto& c : f->kids) {
      kids.push_back(eliminate_exists(c, v));
      if (is_true(kids.back())) return qtrue();
    }
    return qor(std::move(kids));
  }
  if (f->kind == K::And) {
    std::vector<Qf> keep, inner;
    for (const auto& c : f->kids) (mentions(c, v) ? inner : keep).push_back(c);
    if (!keep.empty()) {
      Qf q = inner.size() == 1 ? eliminate_exists(inner.front(), v) : cooper(qand(std::move(inner)), v);
      keep.push_back(q);
      return qand(std::move(keep));
    }
  }
  return cooper(f, v);
}

// ---------------------------------------------------------------- printing

namespace {

std::string term_string(const LinTerm& t) {
  std::string s;
  for (const auto& [x, k] : t.coeffs) {
    if (!s.empty()) s += " + ";
    s += std::to_string(k) + "*v" + std::to_string(x);
  }
  if (s.empty() || t.constant != 0) s += (s.empty() ? "" : " + ") + std::to_string(t.constant);
  return s;
}

}  // namespace

std::string to_string(const Qf& f) {
  using K = QfNode::Kind;
  switch (f->kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: {
      const auto t = term_string(f->atom.term);
      switch (f->atom.kind) {
        case Atom::Kind::Lt: return t + " < 0";
        case Atom::Kind::Eq: return t + " = 0";
        case Atom::Kind::Ne: return t + " != 0";
        case Atom::Kind::Dvd: return std::to_string(f->atom.modulus) + " | " + t;
        case Atom::Kind::Ndvd: return "not " + std::to_string(f->atom.modulus) + " | " + t;
      }
      return "?";
    }
    case K::And:
    case K::Or: {
      std::string s = "(";
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) s += f->kind == K::And ? " & " : " | ";
        s += to_string(f->kids[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

}  // namespace mauto::presburger
