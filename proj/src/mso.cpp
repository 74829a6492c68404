#include "mauto/mso.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "mauto/automaton_ops.hpp"
#include "mauto/formula_io.hpp"

namespace mauto {

using K = MsoFormula::Kind;

namespace {

MsoFormula node(K k, std::vector<std::string> vars = {}, std::vector<MsoFormula> kids = {}) {
  MsoFormula f;
  f.kind = k;
  f.vars = std::move(vars);
  f.kids = std::move(kids);
  return f;
}

}  // namespace

MsoFormula MsoFormula::truth() { return node(K::True); }
MsoFormula MsoFormula::falsity() { return node(K::False); }
MsoFormula MsoFormula::lt(std::string x, std::string y) { return node(K::Lt, {std::move(x), std::move(y)}); }
MsoFormula MsoFormula::in(std::string x, std::string set) { return node(K::In, {std::move(x), std::move(set)}); }
MsoFormula MsoFormula::subset(std::string a, std::string b) { return node(K::Subset, {std::move(a), std::move(b)}); }
MsoFormula MsoFormula::pos_eq(std::string x, std::string y) { return node(K::PosEq, {std::move(x), std::move(y)}); }
MsoFormula MsoFormula::alpha(Formula f, std::string x) {
  auto n = node(K::Alpha, {std::move(x)});
  n.symbol = std::move(f);
  return n;
}
MsoFormula MsoFormula::theta(Formula f, std::vector<std::string> positions) {
  auto n = node(K::Theta, std::move(positions));
  n.symbol = std::move(f);
  return n;
}
MsoFormula MsoFormula::negation(MsoFormula f) { return node(K::Not, {}, {std::move(f)}); }
MsoFormula MsoFormula::conj(std::vector<MsoFormula> fs) { return node(K::And, {}, std::move(fs)); }
MsoFormula MsoFormula::disj(std::vector<MsoFormula> fs) { return node(K::Or, {}, std::move(fs)); }
MsoFormula MsoFormula::implies(MsoFormula a, MsoFormula b) { return node(K::Implies, {}, {std::move(a), std::move(b)}); }
MsoFormula MsoFormula::exists_pos(std::string x, MsoFormula f) { return node(K::ExistsP, {std::move(x)}, {std::move(f)}); }
MsoFormula MsoFormula::forall_pos(std::string x, MsoFormula f) { return node(K::ForallP, {std::move(x)}, {std::move(f)}); }
MsoFormula MsoFormula::exists_set(std::string x, MsoFormula f) { return node(K::ExistsS, {std::move(x)}, {std::move(f)}); }
MsoFormula MsoFormula::forall_set(std::string x, MsoFormula f) { return node(K::ForallS, {std::move(x)}, {std::move(f)}); }

bool MsoFormula::is_quantifier() const {
  return kind == K::ExistsP || kind == K::ForallP || kind == K::ExistsS || kind == K::ForallS;
}

// ---------------------------------------------------------------- text

namespace {

std::string ident(const SExpr& e) {
  if (!e.is_atom || e.text.empty() || e.text == "(" || e.text == ")") throw Error("expected a variable, got " + to_string(e));
  return e.text;
}

}  // namespace

MsoFormula mso_from_sexpr(const SExpr& e, const Signature* sig) {
  if (e.is_atom) {
    if (e.text == "true") return MsoFormula::truth();
    if (e.text == "false") return MsoFormula::falsity();
    throw Error("expected an MSO formula, got " + e.text);
  }
  if (e.items.empty() || !e.items[0].is_atom) throw Error("malformed MSO formula " + to_string(e));
  const std::string& head = e.items[0].text;
  const auto n = e.items.size();
  auto arity = [&](std::size_t k) {
    if (n != k + 1) throw Error("wrong number of operands in " + to_string(e));
  };
  if (head == "lt" || head == "in" || head == "subset" || head == "=") {
    arity(2);
    auto a = ident(e.items[1]), b = ident(e.items[2]);
    if (head == "lt") return MsoFormula::lt(a, b);
    if (head == "in") return MsoFormula::in(a, b);
    if (head == "subset") return MsoFormula::subset(a, b);
    return MsoFormula::pos_eq(a, b);
  }
  if (head == "alpha") {
    arity(2);
    return MsoFormula::alpha(formula_from_sexpr(e.items[1], sig), ident(e.items[2]));
  }
  if (head == "theta") {
    if (n < 3) throw Error("theta needs a formula and at least one position: " + to_string(e));
    std::vector<std::string> ps;
    for (std::size_t i = 2; i < n; ++i) ps.push_back(ident(e.items[i]));
    return MsoFormula::theta(formula_from_sexpr(e.items[1], sig), std::move(ps));
  }
  if (head == "not") {
    arity(1);
    return MsoFormula::negation(mso_from_sexpr(e.items[1], sig));
  }
  if (head == "and" || head == "or") {
    std::vector<MsoFormula> kids;
    for (std::size_t i = 1; i < n; ++i) kids.push_back(mso_from_sexpr(e.items[i], sig));
    return head == "and" ? MsoFormula::conj(std::move(kids)) : MsoFormula::disj(std::move(kids));
  }
  if (head == "implies") {
    arity(2);
    return MsoFormula::implies(mso_from_sexpr(e.items[1], sig), mso_from_sexpr(e.items[2], sig));
  }
  static const std::map<std::string, K> quantifiers{
      {"existsP", K::ExistsP}, {"forallP", K::ForallP}, {"existsS", K::ExistsS}, {"forallS", K::ForallS}};
  if (auto it = quantifiers.find(head); it != quantifiers.end()) {
    arity(2);
    return node(it->second, {ident(e.items[1])}, {mso_from_sexpr(e.items[2], sig)});
  }
  throw Error("unknown MSO connective " + head);
}

MsoFormula parse_mso(std::string_view text, const Signature* sig) { return mso_from_sexpr(parse_sexpr(text), sig); }

namespace {

void print_into(const MsoFormula& f, std::string& out) {
  auto list = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& v : f.vars) out += ' ' + v;
    for (const auto& c : f.kids) {
      out += ' ';
      print_into(c, out);
    }
    out += ')';
  };
  switch (f.kind) {
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Lt: list("lt"); return;
    case K::In: list("in"); return;
    case K::Subset: list("subset"); return;
    case K::PosEq: list("="); return;
    case K::Alpha:
    case K::Theta:
      out += f.kind == K::Alpha ? "(alpha " : "(theta ";
      out += print_formula(f.symbol);
      for (const auto& v : f.vars) out += ' ' + v;
      out += ')';
      return;
    case K::Not: list("not"); return;
    case K::And: list("and"); return;
    case K::Or: list("or"); return;
    case K::Implies: list("implies"); return;
    case K::ExistsP: list("existsP"); return;
    case K::ForallP: list("forallP"); return;
    case K::ExistsS: list("existsS"); return;
    case K::ForallS: list("forallS"); return;
  }
}

void free_into(const MsoFormula& f, std::set<std::string>& bound, MsoFreeVars& out) {
  auto pos = [&](const std::string& v) {
    if (!bound.count(v)) out.positions.insert(v);
  };
  auto set = [&](const std::string& v) {
    if (!bound.count(v)) out.sets.insert(v);
  };
  switch (f.kind) {
    case K::Lt:
    case K::PosEq:
    case K::Alpha:
    case K::Theta:
      for (const auto& v : f.vars) pos(v);
      return;
    case K::In:
      pos(f.vars[0]);
      set(f.vars[1]);
      return;
    case K::Subset:
      set(f.vars[0]);
      set(f.vars[1]);
      return;
    default: break;
  }
  if (f.is_quantifier()) {
    const bool fresh = bound.insert(f.vars[0]).second;
    free_into(f.kids[0], bound, out);
    if (fresh) bound.erase(f.vars[0]);
    return;
  }
  for (const auto& c : f.kids) free_into(c, bound, out);
}

}  // namespace

std::string print_mso(const MsoFormula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

MsoFreeVars mso_free_vars(const MsoFormula& f) {
  std::set<std::string> bound;
  MsoFreeVars out;
  free_into(f, bound, out);
  return out;
}

int mso_depth(const MsoFormula& f) {
  int d = 0;
  for (const auto& c : f.kids) d = std::max(d, mso_depth(c));
  return f.kids.empty() ? 0 : d + 1;
}

bool mso_has_set_quantifier(const MsoFormula& f) {
  if (f.binds_set()) return true;
  return std::any_of(f.kids.begin(), f.kids.end(), mso_has_set_quantifier);
}

// ---------------------------------------------------------------- semantics

namespace {

struct Holds {
  const Convolution& conv;
  const PaddedTheory& th;
  int tracks;
  std::map<std::string, int> pos;
  std::map<std::string, std::uint32_t> sets;

  int position(const std::string& v) const {
    auto it = pos.find(v);
    if (it == pos.end()) throw Error("unbound position variable " + v);
    return it->second;
  }
  std::uint32_t set(const std::string& v) const {
    auto it = sets.find(v);
    if (it == sets.end()) throw Error("unbound set variable " + v);
    return it->second;
  }

  bool alpha(const Formula& f, int x) const {
    Assignment a;
    for (int t = 0; t < tracks; ++t) a[track_var(t + 1)] = conv[static_cast<std::size_t>(x)][static_cast<std::size_t>(t)];
    return th.eval(f, a);
  }

  bool theta(const Formula& f, const std::vector<std::string>& ps) const {
    if (tracks != 1) throw Error("theta atoms need single-track words");
    Assignment a;
    for (std::size_t i = 0; i < ps.size(); ++i)
      a["s" + std::to_string(i + 1)] = conv[static_cast<std::size_t>(position(ps[i]))][0];
    return th.eval(f, a);
  }

  bool operator()(const MsoFormula& f) {
    const int m = static_cast<int>(conv.size());
    switch (f.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Lt: return position(f.vars[0]) < position(f.vars[1]);
      case K::PosEq: return position(f.vars[0]) == position(f.vars[1]);
      case K::In: return (set(f.vars[1]) >> position(f.vars[0])) & 1u;
      case K::Subset: return (set(f.vars[0]) & ~set(f.vars[1])) == 0;
      case K::Alpha: return alpha(f.symbol, position(f.vars[0]));
      case K::Theta: return theta(f.symbol, f.vars);
      case K::Not: return !(*this)(f.kids[0]);
      case K::And:
        for (const auto& c : f.kids)
          if (!(*this)(c)) return false;
        return true;
      case K::Or:
        for (const auto& c : f.kids)
          if ((*this)(c)) return true;
        return false;
      case K::Implies: return !(*this)(f.kids[0]) || (*this)(f.kids[1]);
      case K::ExistsP:
      case K::ForallP: {
        const bool want = f.kind == K::ExistsP;
        const std::string& x = f.vars[0];
        const auto saved = pos;
        bool result = !want;
        for (int i = 0; i < m; ++i) {
          pos[x] = i;
          if ((*this)(f.kids[0]) == want) {
            result = want;
            break;
          }
        }
        pos = saved;
        return result;
      }
      case K::ExistsS:
      case K::ForallS: {
        const bool want = f.kind == K::ExistsS;
        const std::string& x = f.vars[0];
        const auto saved = sets;
        bool result = !want;
        const std::uint64_t count = std::uint64_t{1} << m;
        for (std::uint64_t s = 0; s < count; ++s) {
          sets[x] = static_cast<std::uint32_t>(s);
          if ((*this)(f.kids[0]) == want) {
            result = want;
            break;
          }
        }
        sets = saved;
        return result;
      }
    }
    return false;
  }
};

}  // namespace

bool mso_holds(const MsoFormula& f, const TupleWord& w, const PaddedTheory& theory,
               const std::map<std::string, int>& positions, const std::map<std::string, std::uint32_t>& sets) {
  const auto conv = convolve(w, theory.pad_element());
  if (mso_has_set_quantifier(f) && conv.size() > kMsoSetQuantifierLimit)
    throw Error("word too long for set quantification (limit " + std::to_string(kMsoSetQuantifierLimit) + ")");
  const auto fv = mso_free_vars(f);
  for (const auto& v : fv.positions)
    if (!positions.count(v)) throw Error("no value for free position variable " + v);
  for (const auto& v : fv.sets)
    if (!sets.count(v)) throw Error("no value for free set variable " + v);
  for (const auto& [v, p] : positions)
    if (p < 0 || static_cast<std::size_t>(p) >= conv.size()) throw Error("position " + v + " out of range");
  Holds h{conv, theory, static_cast<int>(w.size()), positions, sets};
  return h(f);
}

// ---------------------------------------------------------------- compilation

namespace {

// Rename bound variables so each binder has a distinct name.
MsoFormula apart(const MsoFormula& f, std::map<std::string, std::string>& env, std::set<std::string>& used) {
  MsoFormula g = f;
  auto sub = [&](const std::string& v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  if (f.is_quantifier()) {
    const std::string& x = f.vars[0];
    std::string y = x;
    for (int k = 1; used.count(y); ++k) y = x + std::to_string(k);
    used.insert(y);
    auto saved = env.find(x) != env.end() ? std::optional<std::string>(env[x]) : std::nullopt;
    env[x] = y;
    g.vars[0] = y;
    g.kids[0] = apart(f.kids[0], env, used);
    if (saved) env[x] = *saved; else env.erase(x);
    return g;
  }
  for (auto& v : g.vars) v = sub(v);
  for (auto& c : g.kids) c = apart(c, env, used);
  return g;
}

void collect_alpha(const MsoFormula& f, std::vector<Formula>& out) {
  if (f.kind == K::Theta) throw Error("theta atoms belong to the extended logic; rewrite them first");
  if (f.kind == K::Alpha && std::find(out.begin(), out.end(), f.symbol) == out.end()) out.push_back(f.symbol);
  for (const auto& c : f.kids) collect_alpha(c, out);
}

void collect_binders(const MsoFormula& f, std::vector<std::string>& out) {
  if (f.is_quantifier()) out.push_back(f.vars[0]);
  for (const auto& c : f.kids) collect_binders(c, out);
}


struct Compiler {
  int classes = 1;
  int nbits = 0;
  std::map<std::string, int> bit;
  std::vector<Formula> alphas;
  std::vector<std::vector<char>> holds;  // class -> alpha index -> holds

  int alphabet() const { return classes << nbits; }
  int cls(int letter) const { return letter >> nbits; }
  bool has(int letter, const std::string& v) const { return (letter >> bit.at(v)) & 1; }

  // One accepting state that dies on any letter violating `ok`.
  LetterDfa invariant(const std::function<bool(int)>& ok) const {
    LetterDfa d(alphabet(), 2);
    d.final[0] = 1;
    for (int l = 0; l < alphabet(); ++l) {
      d.set(0, l, ok(l) ? 0 : 1);
      d.set(1, l, 1);
    }
    return d;
  }

  LetterDfa singleton(const std::string& x) const {
    LetterDfa d(alphabet(), 3);
    d.final[1] = 1;
    for (int l = 0; l < alphabet(); ++l) {
      const bool h = has(l, x);
      d.set(0, l, h ? 1 : 0);
      d.set(1, l, h ? 2 : 1);
      d.set(2, l, 2);
    }
    return d;
  }

  LetterDfa less(const std::string& x, const std::string& y) const {
    // 0: neither seen, 1: x seen, 2: both seen, 3: dead
    LetterDfa d(alphabet(), 4);
    d.final[2] = 1;
    for (int l = 0; l < alphabet(); ++l) {
      const bool hx = has(l, x), hy = has(l, y);
      d.set(0, l, hx && !hy ? 1 : (!hx && !hy ? 0 : 3));
      d.set(1, l, !hx && hy ? 2 : (!hx && !hy ? 1 : 3));
      d.set(2, l, !hx && !hy ? 2 : 3);
      d.set(3, l, 3);
    }
    return d;
  }

  LetterDfa exists_bit(const std::string& v, const LetterDfa& body) const {
    return body.project_bit(bit.at(v));
  }

  LetterDfa operator()(const MsoFormula& f) const {
    switch (f.kind) {
      case K::True: return LetterDfa::constant(alphabet(), true);
      case K::False: return LetterDfa::constant(alphabet(), false);
      case K::Lt: return less(f.vars[0], f.vars[1]);
      case K::In:
      case K::Subset:
        return invariant([&](int l) { return !has(l, f.vars[0]) || has(l, f.vars[1]); });
      case K::PosEq:
        return invariant([&](int l) { return has(l, f.vars[0]) == has(l, f.vars[1]); });
      case K::Alpha: {
        const auto idx = static_cast<std::size_t>(std::find(alphas.begin(), alphas.end(), f.symbol) - alphas.begin());
        return invariant([&, idx](int l) { return !has(l, f.vars[0]) || holds[static_cast<std::size_t>(cls(l))][idx]; });
      }
      case K::Theta: throw Error("theta atoms cannot be compiled directly");
      case K::Not: return (*this)(f.kids[0]).complemented();
      case K::And:
      case K::Or: {
        const bool conj = f.kind == K::And;
        LetterDfa acc = LetterDfa::constant(alphabet(), conj);
        for (const auto& c : f.kids) acc = LetterDfa::product(acc, (*this)(c), conj);
        return acc;
      }
      case K::Implies:
        return LetterDfa::product((*this)(f.kids[0]).complemented(), (*this)(f.kids[1]), false);
      case K::ExistsP:
        return exists_bit(f.vars[0], LetterDfa::product((*this)(f.kids[0]), singleton(f.vars[0]), true));
      case K::ForallP: {
        auto bad = LetterDfa::product((*this)(f.kids[0]).complemented(), singleton(f.vars[0]), true);
        return exists_bit(f.vars[0], bad).complemented();
      }
      case K::ExistsS: return exists_bit(f.vars[0], (*this)(f.kids[0]));
      case K::ForallS: return exists_bit(f.vars[0], (*this)(f.kids[0]).complemented()).complemented();
    }
    return LetterDfa::constant(alphabet(), false);
  }
};

}  // namespace

MsoCompilation compile_mso_letters(const MsoFormula& sentence, int tracks, const PaddedTheory& theory,
                                   const std::set<std::string>& parameters) {
  const auto fv = mso_free_vars(sentence);
  if (!fv.positions.empty() || !fv.sets.empty()) throw Error("compile_mso expects a sentence");
  std::set<std::string> allowed = parameters;
  for (int t = 1; t <= tracks; ++t) allowed.insert(track_var(t));

  std::map<std::string, std::string> env;
  std::set<std::string> used;
  const MsoFormula f = apart(sentence, env, used);

  Compiler c;
  collect_alpha(f, c.alphas);
  for (const auto& a : c.alphas) {
    for (const auto& v : free_vars(a))
      if (!allowed.count(v)) throw Error("alpha formula mentions " + v + " outside t1..t" + std::to_string(tracks));
    check_signature(a, theory.signature());
  }
  std::vector<std::string> binders;
  collect_binders(f, binders);
  c.nbits = static_cast<int>(binders.size());
  if (c.nbits > 16) throw Error("too many bound variables to compile");
  for (int i = 0; i < c.nbits; ++i) c.bit[binders[static_cast<std::size_t>(i)]] = i;

  // Incremental minterms over the alpha formulas, unsatisfiable ones dropped.
  std::vector<Formula> minterms{Formula::truth()};
  std::vector<std::vector<char>> signs{{}};
  for (const auto& a : c.alphas) {
    std::vector<Formula> next;
    std::vector<std::vector<char>> next_signs;
    for (std::size_t i = 0; i < minterms.size(); ++i) {
      for (bool pos : {true, false}) {
        Formula m = simplify(land(minterms[i], pos ? a : lnot(a)));
        if (!theory.satisfiable(m)) continue;
        next.push_back(m);
        next_signs.push_back(signs[i]);
        next_signs.back().push_back(pos);
      }
    }
    minterms = std::move(next);
    signs = std::move(next_signs);
  }
  if (minterms.empty()) throw Error("no column satisfies any minterm");
  c.classes = static_cast<int>(minterms.size());
  c.holds = signs;
  if (static_cast<long long>(c.classes) << c.nbits > (1LL << 20)) throw Error("letter alphabet too large");

  const LetterDfa big = c(f);
  LetterDfa d(c.classes, big.states());
  d.start = big.start;
  d.final = big.final;
  for (int s = 0; s < big.states(); ++s)
    for (int k = 0; k < c.classes; ++k) d.set(s, k, big.next(s, k << c.nbits));
  return {d.minimized(), std::move(minterms)};
}

MAutomaton compile_mso(const MsoFormula& sentence, int tracks, TheoryPtr theory) {
  const auto comp = compile_mso_letters(sentence, tracks, *theory);
  const LetterDfa& d = comp.dfa;
  MAutomaton a(theory, tracks);
  for (int s = 0; s < d.states(); ++s) a.add_state(s == d.start, d.final[static_cast<std::size_t>(s)] != 0);
  for (int s = 0; s < d.states(); ++s) {
    std::map<int, std::vector<Formula>> by_target;
    for (int k = 0; k < d.alphabet; ++k) by_target[d.next(s, k)].push_back(comp.minterms[static_cast<std::size_t>(k)]);
    for (auto& [t, fs] : by_target) {
      Formula label = fs.size() == comp.minterms.size() ? Formula::truth() : simplify(lor(std::move(fs)));
      a.add_transition(s, label, t);
    }
  }
  return trim(a);
}

}  // namespace mauto
