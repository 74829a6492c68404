#include "mauto/logic.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace mauto {

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<RelationSymbol> relations, std::vector<std::string> constants) {
  for (auto& r : relations) add_relation(r.name, r.arity);
  for (auto& c : constants) add_constant(c);
}

void Signature::add_relation(const std::string& name, int arity) {
  if (arity < 1) throw Error("relation " + name + " must have positive arity");
  if (this->arity(name) || has_constant(name)) throw Error("duplicate symbol " + name);
  relations_.push_back({name, arity});
}

void Signature::add_constant(const std::string& name) {
  if (arity(name) || has_constant(name)) throw Error("duplicate symbol " + name);
  constants_.push_back(name);
}

std::optional<int> Signature::arity(const std::string& relation) const {
  for (const auto& r : relations_)
    if (r.name == relation) return r.arity;
  return std::nullopt;
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
}

// ---------------------------------------------------------------- Formula

struct Formula::Node {
  Kind kind;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> kids;
  std::size_t hash;
  bool quantifier_free;
};

namespace {

inline void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

}  // namespace

Formula Formula::make(Kind k, std::string symbol, std::vector<Term> terms, std::vector<Formula> kids) {
  std::size_t h = static_cast<std::size_t>(k) + 1;
  mix(h, std::hash<std::string>{}(symbol));
  for (const auto& t : terms) {
    mix(h, static_cast<std::size_t>(t.kind));
    mix(h, std::hash<std::string>{}(t.name));
  }
  bool qf = k != Kind::Exists && k != Kind::Forall;
  for (const auto& c : kids) {
    mix(h, c.hash());
    qf = qf && c.is_quantifier_free();
  }
  auto n = std::make_shared<const Node>(Node{k, std::move(symbol), std::move(terms), std::move(kids), h, qf});
  return Formula(std::move(n));
}

Formula::Formula() : Formula(truth()) {}

Formula Formula::truth() {
  static const Formula t = make(Kind::True, {}, {}, {});
  return t;
}
Formula Formula::falsity() {
  static const Formula f = make(Kind::False, {}, {}, {});
  return f;
}
Formula Formula::rel(std::string name, std::vector<Term> args) {
  return make(Kind::Rel, std::move(name), std::move(args), {});
}
Formula Formula::eq(Term a, Term b) { return make(Kind::Eq, {}, {std::move(a), std::move(b)}, {}); }
Formula Formula::pad(Term t) { return make(Kind::Pad, {}, {std::move(t)}, {}); }
Formula Formula::negation(Formula f) { return make(Kind::Not, {}, {}, {std::move(f)}); }
Formula Formula::conj(std::vector<Formula> fs) { return make(Kind::And, {}, {}, std::move(fs)); }
Formula Formula::disj(std::vector<Formula> fs) { return make(Kind::Or, {}, {}, std::move(fs)); }
Formula Formula::implies(Formula a, Formula b) {
  return make(Kind::Implies, {}, {}, {std::move(a), std::move(b)});
}
Formula Formula::exists(std::string var, Formula body) {
  return make(Kind::Exists, std::move(var), {}, {std::move(body)});
}
Formula Formula::forall(std::string var, Formula body) {
  return make(Kind::Forall, std::move(var), {}, {std::move(body)});
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::vector<Formula>& Formula::children() const { return node_->kids; }
std::size_t Formula::hash() const { return node_->hash; }
bool Formula::is_quantifier_free() const { return node_->quantifier_free; }

bool Formula::is_atom() const {
  switch (kind()) {
    case Kind::Rel:
    case Kind::Eq:
    case Kind::Pad:
    case Kind::True:
    case Kind::False: return true;
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  return a.node_->symbol == b.node_->symbol && a.node_->terms == b.node_->terms &&
         a.node_->kids == b.node_->kids;
}

// ---------------------------------------------------------------- builders

Formula land(std::vector<Formula> fs) {
  std::vector<Formula> out;
  for (auto& f : fs) {
    if (f.kind() == Formula::Kind::True) continue;
    if (f.kind() == Formula::Kind::False) return Formula::falsity();
    out.push_back(std::move(f));
  }
  if (out.empty()) return Formula::truth();
  if (out.size() == 1) return out.front();
  return Formula::conj(std::move(out));
}
Formula land(const Formula& a, const Formula& b) { return land(std::vector<Formula>{a, b}); }

Formula lor(std::vector<Formula> fs) {
  std::vector<Formula> out;
  for (auto& f : fs) {
    if (f.kind() == Formula::Kind::False) continue;
    if (f.kind() == Formula::Kind::True) return Formula::truth();
    out.push_back(std::move(f));
  }
  if (out.empty()) return Formula::falsity();
  if (out.size() == 1) return out.front();
  return Formula::disj(std::move(out));
}
Formula lor(const Formula& a, const Formula& b) { return lor(std::vector<Formula>{a, b}); }

Formula lnot(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return Formula::falsity();
    case Formula::Kind::False: return Formula::truth();
    case Formula::Kind::Not: return f.child();
    default: return Formula::negation(f);
  }
}

Formula var_rel(const std::string& name, const std::vector<std::string>& vars) {
  std::vector<Term> ts;
  for (const auto& v : vars) ts.push_back(Term::var(v));
  return Formula::rel(name, std::move(ts));
}
Formula var_eq(const std::string& a, const std::string& b) { return Formula::eq(Term::var(a), Term::var(b)); }
Formula var_pad(const std::string& v) { return Formula::pad(Term::var(v)); }

// ---------------------------------------------------------------- queries

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Rel:
    case K::Eq:
    case K::Pad:
      for (const auto& t : f.terms())
        if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
      return;
    case K::Exists:
    case K::Forall: {
      const bool fresh = bound.insert(f.symbol()).second;
      collect_free(f.child(), bound, out);
      if (fresh) bound.erase(f.symbol());
      return;
    }
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out);
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Formula::Kind::Exists || f.kind() == Formula::Kind::Forall) out.insert(f.symbol());
  for (const auto& t : f.terms())
    if (t.is_var()) out.insert(t.name);
  for (const auto& c : f.children()) collect_all(c, out);
}

void collect_consts(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms())
    if (!t.is_var()) out.insert(t.name);
  for (const auto& c : f.children()) collect_consts(c, out);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  collect_consts(f, out);
  return out;
}

int quantifier_depth(const Formula& f) {
  int d = 0;
  for (const auto& c : f.children()) d = std::max(d, quantifier_depth(c));
  if (f.kind() == Formula::Kind::Exists || f.kind() == Formula::Kind::Forall) ++d;
  return d;
}

bool mentions_pad(const Formula& f) {
  if (f.kind() == Formula::Kind::Pad) return true;
  for (const auto& c : f.children())
    if (mentions_pad(c)) return true;
  return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------- substitution

namespace {

struct Substitution {
  std::map<std::string, Term> vars;
  std::map<std::string, Term> consts;
};

Formula subst_impl(const Formula& f, const Substitution& s, std::set<std::string>& used) {
  using K = Formula::Kind;
  if (s.vars.empty() && s.consts.empty()) return f;
  switch (f.kind()) {
    case K::True:
    case K::False: return f;
    case K::Rel:
    case K::Eq:
    case K::Pad: {
      std::vector<Term> ts = f.terms();
      bool changed = false;
      for (auto& t : ts) {
        const auto& table = t.is_var() ? s.vars : s.consts;
        auto it = table.find(t.name);
        if (it != table.end()) {
          t = it->second;
          changed = true;
        }
      }
      if (!changed) return f;
      if (f.kind() == K::Rel) return Formula::rel(f.symbol(), std::move(ts));
      if (f.kind() == K::Eq) return Formula::eq(ts[0], ts[1]);
      return Formula::pad(ts[0]);
    }
    case K::Exists:
    case K::Forall: {
      Substitution inner = s;
      inner.vars.erase(f.symbol());
      // Only bindings whose key is actually free below matter for capture.
      const auto fv = free_vars(f.child());
      bool captures = false;
      for (const auto& [k, t] : inner.vars)
        if (fv.count(k) && t.is_var() && t.name == f.symbol()) captures = true;
      for (const auto& [k, t] : inner.consts)
        if (t.is_var() && t.name == f.symbol()) captures = true;
      std::string bound = f.symbol();
      Formula body = f.child();
      if (captures) {
        std::string renamed = fresh_name(bound, used);
        used.insert(renamed);
        Substitution r;
        r.vars.emplace(bound, Term::var(renamed));
        body = subst_impl(body, r, used);
        bound = renamed;
      }
      Formula nb = subst_impl(body, inner, used);
      if (f.kind() == K::Exists) return Formula::exists(bound, nb);
      return Formula::forall(bound, nb);
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(subst_impl(c, s, used));
      switch (f.kind()) {
        case K::Not: return Formula::negation(kids[0]);
        case K::And: return Formula::conj(std::move(kids));
        case K::Or: return Formula::disj(std::move(kids));
        case K::Implies: return Formula::implies(kids[0], kids[1]);
        default: return f;
      }
    }
  }
}

std::set<std::string> used_names(const Formula& f, const Substitution& s) {
  auto used = all_vars(f);
  for (const auto& [k, t] : s.vars) {
    used.insert(k);
    if (t.is_var()) used.insert(t.name);
  }
  for (const auto& [k, t] : s.consts)
    if (t.is_var()) used.insert(t.name);
  return used;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& mapping) {
  const auto fv = free_vars(f);
  for (const auto& [k, _] : mapping)
    if (!fv.count(k)) throw Error("substitute: variable " + k + " is not free in the formula");
  return rename_free(f, mapping);
}

Formula rename_free(const Formula& f, const std::map<std::string, Term>& mapping) {
  Substitution s;
  s.vars = mapping;
  auto used = used_names(f, s);
  return subst_impl(f, s, used);
}

Formula replace_constants(const Formula& f, const std::map<std::string, Term>& mapping) {
  Substitution s;
  s.consts = mapping;
  auto used = used_names(f, s);
  return subst_impl(f, s, used);
}

// ---------------------------------------------------------------- padding

namespace {

bool is_padding(const Term& t, const PadMask& mask) {
  if (!t.is_var()) return false;  // constants name base elements
  auto it = mask.find(t.name);
  if (it == mask.end()) throw Error("eliminate_pad: no padding status for variable " + t.name);
  return it->second == PadStatus::Padding;
}

Formula elim_impl(const Formula& f, PadMask& mask) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False: return f;
    case K::Pad: return is_padding(f.terms()[0], mask) ? Formula::truth() : Formula::falsity();
    case K::Rel:
      for (const auto& t : f.terms())
        if (is_padding(t, mask)) return Formula::falsity();
      return f;
    case K::Eq: {
      const bool a = is_padding(f.terms()[0], mask), b = is_padding(f.terms()[1], mask);
      if (a && b) return Formula::truth();
      if (a || b) return Formula::falsity();
      return f;
    }
    case K::Not: return lnot(elim_impl(f.child(), mask));
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(elim_impl(c, mask));
      return f.kind() == K::And ? land(std::move(kids)) : lor(std::move(kids));
    }
    case K::Implies: {
      auto a = elim_impl(f.child(0), mask);
      auto b = elim_impl(f.child(1), mask);
      if (a.kind() == K::False || b.kind() == K::True) return Formula::truth();
      if (a.kind() == K::True) return b;
      if (b.kind() == K::False) return lnot(a);
      return Formula::implies(a, b);
    }
    case K::Exists:
    case K::Forall: {
      const std::string& x = f.symbol();
      std::optional<PadStatus> saved;
      if (auto it = mask.find(x); it != mask.end()) saved = it->second;
      mask[x] = PadStatus::Padding;
      Formula as_pad = elim_impl(f.child(), mask);
      mask[x] = PadStatus::Proper;
      Formula proper_body = elim_impl(f.child(), mask);
      if (saved) mask[x] = *saved; else mask.erase(x);
      if (f.kind() == K::Exists) {
        Formula q = proper_body.kind() == K::False ? Formula::falsity()
                    : proper_body.kind() == K::True ? Formula::truth()
                                                    : Formula::exists(x, proper_body);
        return lor(as_pad, q);
      }
      Formula q = proper_body.kind() == K::True ? Formula::truth()
                  : proper_body.kind() == K::False ? Formula::falsity()
                                                   : Formula::forall(x, proper_body);
      return land(as_pad, q);
    }
  }
  return f;
}

}  // namespace

Formula eliminate_pad(const Formula& f, const PadMask& mask) {
  PadMask m = mask;
  return simplify(elim_impl(f, m));
}

// ---------------------------------------------------------------- simplify / nnf

Formula simplify(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
      if (f.terms()[0] == f.terms()[1]) return Formula::truth();
      return f;
    case K::Not: {
      auto c = simplify(f.child());
      return lnot(c);
    }
    case K::And:
    case K::Or: {
      const K self = f.kind();
      const K absorbing = self == K::And ? K::False : K::True;
      const K neutral = self == K::And ? K::True : K::False;
      std::vector<Formula> out;
      std::unordered_set<Formula, FormulaHash> seen;
      std::function<void(const Formula&)> add = [&](const Formula& g) {
        if (g.kind() == self) {
          for (const auto& c : g.children()) add(c);
          return;
        }
        if (seen.insert(g).second) out.push_back(g);
      };
      for (const auto& c : f.children()) {
        auto s = simplify(c);
        if (s.kind() == absorbing) return s;
        if (s.kind() == neutral) continue;
        add(s);
      }
      // x and (not x) together.
      for (const auto& g : out)
        if (g.kind() == K::Not && seen.count(g.child()))
          return absorbing == K::False ? Formula::falsity() : Formula::truth();
      if (out.empty()) return neutral == K::True ? Formula::truth() : Formula::falsity();
      if (out.size() == 1) return out.front();
      return self == K::And ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
    }
    case K::Implies: {
      auto a = simplify(f.child(0));
      auto b = simplify(f.child(1));
      if (a.kind() == K::False || b.kind() == K::True) return Formula::truth();
      if (a.kind() == K::True) return b;
      if (b.kind() == K::False) return lnot(a);
      if (a == b) return Formula::truth();
      return Formula::implies(a, b);
    }
    case K::Exists:
    case K::Forall: {
      auto b = simplify(f.child());
      if (b.kind() == K::True || b.kind() == K::False) return b;
      if (!free_vars(b).count(f.symbol())) return b;
      // Miniscoping: exists over a conjunction (forall over a disjunction)
      // only needs the parts that mention the bound variable.
      const K spread = f.kind() == K::Exists ? K::And : K::Or;
      if (b.kind() == spread) {
        std::vector<Formula> inside, outside;
        for (const auto& c : b.children()) (free_vars(c).count(f.symbol()) ? inside : outside).push_back(c);
        if (!outside.empty()) {
          Formula in = inside.size() == 1 ? inside.front()
                       : spread == K::And ? Formula::conj(std::move(inside))
                                          : Formula::disj(std::move(inside));
          outside.push_back(f.kind() == K::Exists ? Formula::exists(f.symbol(), in) : Formula::forall(f.symbol(), in));
          return spread == K::And ? Formula::conj(std::move(outside)) : Formula::disj(std::move(outside));
        }
      }
      return f.kind() == K::Exists ? Formula::exists(f.symbol(), b) : Formula::forall(f.symbol(), b);
    }
    default: return f;
  }
}

namespace {

Formula nnf_impl(const Formula& f, bool neg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return neg ? Formula::falsity() : f;
    case K::False: return neg ? Formula::truth() : f;
    case K::Rel:
    case K::Eq:
    case K::Pad: return neg ? Formula::negation(f) : f;
    case K::Not: return nnf_impl(f.child(), !neg);
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf_impl(c, neg));
      const bool conj = (f.kind() == K::And) != neg;
      return conj ? land(std::move(kids)) : lor(std::move(kids));
    }
    case K::Implies:
      if (neg) return land(nnf_impl(f.child(0), false), nnf_impl(f.child(1), true));
      return lor(nnf_impl(f.child(0), true), nnf_impl(f.child(1), false));
    case K::Exists:
    case K::Forall: {
      const bool ex = (f.kind() == K::Exists) != neg;
      auto b = nnf_impl(f.child(), neg);
      return ex ? Formula::exists(f.symbol(), b) : Formula::forall(f.symbol(), b);
    }
  }
  return f;
}

Formula apart_impl(const Formula& f, std::set<std::string>& used) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Exists:
    case K::Forall: {
      std::string x = f.symbol();
      Formula body = f.child();
      if (used.count(x)) {
        std::string y = fresh_name(x, used);
        body = rename_free(body, {{x, Term::var(y)}});
        x = y;
      }
      used.insert(x);
      auto nb = apart_impl(body, used);
      return f.kind() == K::Exists ? Formula::exists(x, nb) : Formula::forall(x, nb);
    }
    case K::Not: return Formula::negation(apart_impl(f.child(), used));
    case K::And:
    case K::Or:
    case K::Implies: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(apart_impl(c, used));
      if (f.kind() == K::And) return Formula::conj(std::move(kids));
      if (f.kind() == K::Or) return Formula::disj(std::move(kids));
      return Formula::implies(kids[0], kids[1]);
    }
    default: return f;
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_impl(f, false); }

Formula rename_bound_apart(const Formula& f, std::set<std::string> avoid) {
  for (const auto& v : free_vars(f)) avoid.insert(v);
  return apart_impl(f, avoid);
}

Formula exists_closure(const Formula& f, const std::vector<std::string>& vars) {
  Formula out = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::exists(*it, out);
  return out;
}

Formula exists_closure(const Formula& f) {
  const auto fv = free_vars(f);
  return exists_closure(f, std::vector<std::string>(fv.begin(), fv.end()));
}

void check_signature(const Formula& f, const Signature& sig, bool allow_pad) {
  using K = Formula::Kind;
  if (f.kind() == K::Rel) {
    auto a = sig.arity(f.symbol());
    if (!a) throw Error("unknown relation " + f.symbol());
    if (*a != static_cast<int>(f.terms().size()))
      throw Error("relation " + f.symbol() + " expects " + std::to_string(*a) + " arguments, got " +
                  std::to_string(f.terms().size()));
  }
  if (f.kind() == K::Pad && !allow_pad) throw Error("padding predicate not allowed here");
  for (const auto& t : f.terms())
    if (!t.is_var() && !sig.has_constant(t.name)) throw Error("unknown constant " + t.name);
  for (const auto& c : f.children()) check_signature(c, sig, allow_pad);
}

}  // namespace mauto
