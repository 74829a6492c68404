#include "mauto/presentation.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>

#include "mauto/automaton_io.hpp"
#include "mauto/automaton_ops.hpp"
#include "mauto/formula_io.hpp"
#include "mauto/presburger.hpp"

namespace mauto {

namespace {

MAutomaton universal(const TheoryPtr& th, int k) {
  MAutomaton a(th, k);
  a.add_state(true, true);
  a.add_transition(0, Formula::truth(), 0);
  return a;
}

MAutomaton nothing(const TheoryPtr& th, int k) {
  MAutomaton a(th, k);
  a.add_state(true, false);
  return a;
}

Formula label(const std::string& text) { return parse_formula(text); }

}  // namespace

AutomaticPresentation::AutomaticPresentation(std::string name, MAutomaton domain)
    : name_(std::move(name)), domain_(std::move(domain)) {
  if (domain_.tracks() != 1) throw Error("a domain automaton has exactly one track");
  universal_ = is_empty(complement(pad_normalize(domain_)));
}

const MAutomaton& AutomaticPresentation::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error("presentation " + name_ + " has no relation " + name);
  return it->second;
}

void AutomaticPresentation::add_relation(const std::string& name, const MAutomaton& a) {
  require_compatible(a, universal(theory(), a.tracks()));
  if (sig_.arity(name)) throw Error("relation " + name + " declared twice");
  sig_.add_relation(name, a.tracks());
  relations_.emplace(name, relativize(pad_normalize(a)));
}

MAutomaton AutomaticPresentation::relativize(const MAutomaton& a) const {
  if (universal_) return a;
  const int n = a.tracks();
  MAutomaton out = a;
  for (int k = 1; k <= n; ++k) {
    MAutomaton d = domain_;
    for (int j = 1; j <= n; ++j)
      if (j != k) d = cylindrify(d, j);
    out = trim(intersect(out, d));
  }
  return out;
}

// ---------------------------------------------------------------- compile_fo

namespace {

struct Compiled {
  std::optional<bool> constant;
  std::vector<std::string> vars;  // sorted
  std::optional<MAutomaton> a;
};

struct FoCompiler {
  const AutomaticPresentation& p;

  Compiled constant(bool v) const { return {v, {}, std::nullopt}; }
  Compiled automaton(std::vector<std::string> vars, MAutomaton a) const {
    return {std::nullopt, std::move(vars), trim(std::move(a))};
  }

  static int index_of(const std::vector<std::string>& vars, const std::string& v) {
    return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  }

  // Extend c to the sorted variable list `target` (a superset of c.vars).
  MAutomaton align(const Compiled& c, const std::vector<std::string>& target) const {
    const int k = static_cast<int>(target.size());
    if (c.constant) return *c.constant ? p.relativize(universal(p.theory(), k)) : nothing(p.theory(), k);
    MAutomaton a = *c.a;
    std::vector<std::string> have = c.vars;
    for (const auto& v : target) {
      if (std::binary_search(have.begin(), have.end(), v)) continue;
      const int pos = index_of(have, v) + 1;
      a = cylindrify(a, pos);
      have.insert(have.begin() + (pos - 1), v);
      if (!p.domain_is_universal()) {
        MAutomaton d = p.domain();
        for (int j = 1; j <= a.tracks(); ++j)
          if (j != pos) d = cylindrify(d, j);
        a = trim(intersect(a, d));
      }
    }
    return a;
  }

  Compiled atom(const Formula& f) const {
    const auto fv = free_vars(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    const int k = static_cast<int>(vars.size());
    for (const auto& t : f.terms())
      if (!t.is_var()) throw Error("constant " + t.name + " is not part of the presented signature");
    if (f.kind() == Formula::Kind::Eq) {
      if (k == 1) return automaton(vars, p.domain());
      MAutomaton a(p.theory(), 2);
      a.add_state(true, true);
      a.add_transition(0, var_eq(track_var(1), track_var(2)), 0);
      return automaton(vars, p.relativize(a));
    }
    if (f.kind() != Formula::Kind::Rel) throw Error("unsupported atom in presented formula");
    const MAutomaton& r = p.relation(f.symbol());
    if (static_cast<int>(f.terms().size()) != r.tracks()) throw Error("wrong arity for " + f.symbol());
    std::vector<int> map;
    for (const auto& t : f.terms()) map.push_back(index_of(vars, t.name) + 1);
    return automaton(vars, rename_tracks(r, k, map));
  }

  Compiled operator()(const Formula& f) const {
    using FK = Formula::Kind;
    const auto fv = free_vars(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    switch (f.kind()) {
      case FK::True: return constant(true);
      case FK::False: return constant(false);
      case FK::Pad: throw Error("Pad is not part of a presented signature");
      case FK::Rel:
      case FK::Eq:
        if (vars.empty()) throw Error("closed atom in presented formula");
        return atom(f);
      case FK::Not: {
        const Compiled c = atom(f.child());
        return automaton(c.vars, p.relativize(complement(*c.a)));
      }
      case FK::And:
      case FK::Or: {
        const bool conj = f.kind() == FK::And;
        std::vector<Compiled> parts;
        for (const auto& g : f.children()) {
          Compiled c = (*this)(g);
          if (c.constant) {
            if (*c.constant != conj) return vars.empty() ? constant(!conj) : (conj ? automaton(vars, nothing(p.theory(), static_cast<int>(vars.size()))) : automaton(vars, align(constant(true), vars)));
            continue;
          }
          parts.push_back(std::move(c));
        }
        if (parts.empty()) return constant(conj);
        MAutomaton acc = align(parts[0], vars);
        for (std::size_t i = 1; i < parts.size(); ++i) {
          const MAutomaton b = align(parts[i], vars);
          acc = conj ? trim(intersect(acc, b)) : union_of(acc, b);
        }
        return automaton(vars, acc);
      }
      case FK::Exists:
      case FK::Forall: {
        const std::string& x = f.symbol();
        const Formula& body = f.child();
        if (!free_vars(body).count(x)) return (*this)(body);
        const bool ex = f.kind() == FK::Exists;
        const Compiled c = (*this)(ex ? body : to_nnf(lnot(body)));
        if (c.constant) return constant(ex ? *c.constant : !*c.constant);
        if (vars.empty()) {
          const bool empty = is_empty(*c.a);
          return constant(ex ? !empty : empty);
        }
        MAutomaton proj = project(*c.a, index_of(c.vars, x) + 1);
        if (!ex) proj = p.relativize(complement(proj));
        return automaton(vars, proj);
      }
      case FK::Implies: break;
    }
    throw Error("formula is not in negation normal form");
  }
};

}  // namespace

MAutomaton compile_fo(const AutomaticPresentation& p, const Formula& f, const std::vector<std::string>& vars) {
  if (vars.empty()) throw Error("compile_fo needs at least one free variable; use decide_fo for sentences");
  std::vector<std::string> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate variable in track list");
  for (const auto& v : free_vars(f))
    if (!std::binary_search(sorted.begin(), sorted.end(), v)) throw Error("free variable " + v + " has no track");
  check_signature(f, p.signature(), false);
  FoCompiler c{p};
  const MAutomaton a = c.align(c(to_nnf(f)), sorted);
  std::vector<int> map;
  for (const auto& v : sorted)
    map.push_back(static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin()) + 1);
  return rename_tracks(a, a.tracks(), map);
}

bool decide_fo(const AutomaticPresentation& p, const Formula& sentence) {
  require_sentence(sentence);
  check_signature(sentence, p.signature(), false);
  const auto c = FoCompiler{p}(to_nnf(sentence));
  if (!c.constant) throw Error("sentence did not reduce to a truth value");
  return *c.constant;
}

// ---------------------------------------------------------------- built-ins

AutomaticPresentation ees_presentation(TheoryPtr theory) {
  if (theory->mode() != PadMode::Fresh) throw Error("the EES presentation needs fresh padding");
  MAutomaton dom(theory, 1);
  dom.add_state(true, true);
  dom.add_transition(0, label("(not (pad t1))"), 0);
  AutomaticPresentation p("ees", dom);

  MAutomaton eqlen(theory, 2);
  eqlen.add_state(true, true);
  eqlen.add_transition(0, label("(and (not (pad t1)) (not (pad t2)))"), 0);
  p.add_relation("eqlen", eqlen);

  MAutomaton prefix(theory, 2);
  prefix.add_state(true, true);
  prefix.add_state(false, true);
  prefix.add_transition(0, label("(and (not (pad t1)) (= t1 t2))"), 0);
  const Formula tail = label("(and (pad t1) (not (pad t2)))");
  prefix.add_transition(0, tail, 1);
  prefix.add_transition(1, tail, 1);
  p.add_relation("prefix", prefix);

  auto last_letter = [&](const std::string& name, int k, const Formula& last) {
    std::vector<Formula> proper;
    for (int j = 1; j <= k; ++j) proper.push_back(lnot(var_pad(track_var(j))));
    MAutomaton a(theory, k);
    a.add_state(true, false);
    a.add_state(false, true);
    a.add_transition(0, land(proper), 0);
    a.add_transition(0, simplify(land(land(proper), last)), 1);
    p.add_relation(name, a);
  };
  for (const auto& r : theory->signature().relations()) {
    std::vector<std::string> ts;
    for (int j = 1; j <= r.arity; ++j) ts.push_back(track_var(j));
    last_letter(r.name, r.arity, var_rel(r.name, ts));
  }
  last_letter("eqlast", 2, var_eq(track_var(1), track_var(2)));
  return p;
}

namespace {

TheoryPtr zero_padded_presburger() {
  static const TheoryPtr th = make_padded(resolve_base_theory("presburger"), "alias:0");
  return th;
}

// Words whose last letter is not the padding symbol, plus the empty word.
MAutomaton last_nonzero(const TheoryPtr& th) {
  MAutomaton d(th, 1);
  d.add_state(true, true);
  d.add_state(false, false);
  const Formula z = var_pad("t1");
  d.add_transition(0, lnot(z), 0);
  d.add_transition(0, z, 1);
  d.add_transition(1, z, 1);
  d.add_transition(1, lnot(z), 0);
  return d;
}

const std::vector<std::uint64_t>& primes_upto(std::size_t count) {
  static std::vector<std::uint64_t> ps{2};
  static std::mutex mu;
  std::lock_guard lock(mu);
  for (std::uint64_t c = ps.back() + 1; ps.size() < count; ++c) {
    bool prime = true;
    for (auto q : ps) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(c);
  }
  return ps;
}

}  // namespace

AutomaticPresentation skolem_presentation() {
  const auto th = zero_padded_presburger();
  AutomaticPresentation p("skolem", last_nonzero(th));
  MAutomaton times(th, 3);
  times.add_state(true, true);
  times.add_transition(0, label("(rel plus t1 t2 t3)"), 0);
  p.add_relation("times", times);
  return p;
}

Word skolem_encode(std::uint64_t n) {
  if (n == 0) throw Error("0 is not in the Skolem domain");
  Word w;
  for (std::size_t i = 0; n > 1; ++i) {
    const auto q = primes_upto(i + 1)[i];
    std::int64_t e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    w.push_back(Element::atom(e));
  }
  return w;
}

std::optional<std::uint64_t> skolem_decode(const Word& w) {
  const auto& ps = primes_upto(w.size() + 1);
  unsigned __int128 n = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_atom() || w[i].value() < 0) throw Error("Skolem words hold naturals");
    for (std::int64_t e = 0; e < w[i].value(); ++e) {
      n *= ps[i];
      if (n > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    }
  }
  return static_cast<std::uint64_t>(n);
}

AutomaticPresentation ordinal_presentation() {
  const auto th = zero_padded_presburger();
  AutomaticPresentation p("ordinal-omega-omega", last_nonzero(th));
  MAutomaton plus(th, 3);
  plus.add_state(true, false);
  plus.add_state(true, true);
  plus.add_transition(0, label("(= t3 t2)"), 0);
  plus.add_transition(0, label("(and (not (pad t2)) (rel plus t1 t2 t3))"), 1);
  plus.add_transition(1, label("(and (pad t2) (= t3 t1))"), 1);
  p.add_relation("plusO", plus);
  return p;
}

AutomaticPresentation load_presentation(const std::string& spec, const std::string& base_dir) {
  if (spec == "skolem") return skolem_presentation();
  if (spec == "ordinal-omega-omega" || spec == "ordinal") return ordinal_presentation();
  if (spec.rfind("ees:", 0) == 0)
    return ees_presentation(make_padded(resolve_base_theory(spec.substr(4), base_dir), "fresh"));

  namespace fs = std::filesystem;
  fs::path path(spec);
  if (path.is_relative() && !base_dir.empty() && fs::exists(fs::path(base_dir) / path)) path = fs::path(base_dir) / path;
  std::ifstream in(path);
  if (!in) throw Error("cannot open presentation " + spec);
  const std::string dir = path.parent_path().string();
  TheoryPtr theory;
  std::optional<AutomaticPresentation> p;
  auto local = [&](const std::string& file) {
    const fs::path f(file);
    return (f.is_relative() ? path.parent_path() / f : f).string();
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find(';'); c != std::string::npos) line.resize(c);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    auto fail = [&](const std::string& msg) { return Error(spec + ":" + std::to_string(lineno) + ": " + msg); };
    if (w[0] == "theory") {
      if (w.size() == 2) theory = make_padded(resolve_base_theory(w[1], dir), "fresh");
      else if (w.size() == 4 && w[2] == "pad" && w[3] == "fresh") theory = make_padded(resolve_base_theory(w[1], dir), "fresh");
      else if (w.size() == 5 && w[2] == "pad" && w[3] == "alias") theory = make_padded(resolve_base_theory(w[1], dir), "alias:" + w[4]);
      else throw fail("expected 'theory NAME [pad fresh|alias ELEM]'");
    } else if (w[0] == "domain") {
      if (!theory || w.size() != 2 || p) throw fail("expected one 'domain FILE' after the theory line");
      p.emplace(path.stem().string(), load_automaton(local(w[1]), {dir, theory}));
    } else if (w[0] == "rel") {
      if (!p || w.size() != 3) throw fail("expected 'rel NAME/k FILE' after the domain line");
      const auto slash = w[1].find('/');
      if (slash == std::string::npos) throw fail("relation needs NAME/k");
      const int k = std::stoi(w[1].substr(slash + 1));
      auto a = load_automaton(local(w[2]), {dir, theory});
      if (a.tracks() != k) throw fail("relation " + w[1] + " automaton has " + std::to_string(a.tracks()) + " tracks");
      p->add_relation(w[1].substr(0, slash), a);
    } else {
      throw fail("unknown directive " + w[0]);
    }
  }
  if (!p) throw Error(spec + ": no domain line");
  return std::move(*p);
}

// ---------------------------------------------------------------- oracle

namespace {

class PresentedTheory : public Theory {
 public:
  explicit PresentedTheory(std::shared_ptr<const AutomaticPresentation> p) : p_(std::move(p)) {}

  std::string name() const override { return p_->name(); }
  const Signature& signature() const override { return p_->signature(); }
  bool decide(const Formula& sentence) const override { return decide_fo(*p_, sentence); }

  bool eval(const Formula& f, const Assignment& a) const override {
    require_assigned(f, a);
    const auto fv = free_vars(f);
    if (fv.empty()) return decide(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    TupleWord w;
    for (const auto& v : vars) {
      const Element& e = a.at(v);
      if (!contains(e)) throw Error("element " + to_string(e) + " is not in the presented domain");
      w.push_back(e.letters());
    }
    return accepts(compiled(f, vars), w);
  }

  std::optional<Assignment> find_witness(const Formula& f, const std::vector<std::string>& vars) const override {
    if (vars.empty()) {
      if (decide(f)) return Assignment{};
      return std::nullopt;
    }
    const auto w = find_word(compiled(f, vars));
    if (!w) return std::nullopt;
    Assignment out;
    for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = Element::word((*w)[i]);
    return out;
  }

  bool contains(const Element& e) const override {
    if (!e.is_word()) return false;
    for (const auto& l : e.letters())
      if (!p_->theory()->base().contains(l)) return false;
    return accepts(p_->domain(), {e.letters()});
  }

  Element parse_element(const std::string& text) const override {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw Error("words are written [a,b,...]");
    Word w;
    const std::string body = text.substr(1, text.size() - 2);
    std::istringstream in(body);
    for (std::string tok; std::getline(in, tok, ',');) w.push_back(p_->theory()->base().parse_element(tok));
    return Element::word(std::move(w));
  }

  std::string format_element(const Element& e) const override {
    std::string s = "[";
    for (std::size_t i = 0; i < e.letters().size(); ++i) {
      if (i) s += ',';
      s += p_->theory()->base().format_element(e.letters()[i]);
    }
    return s + "]";
  }

 private:
  const MAutomaton& compiled(const Formula& f, const std::vector<std::string>& vars) const {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(f, vars);
    for (const auto& [k, a] : cache_)
      if (k == key) return a;
    cache_.emplace_back(key, compile_fo(*p_, f, vars));
    return cache_.back().second;
  }

  std::shared_ptr<const AutomaticPresentation> p_;
  mutable std::mutex mu_;
  mutable std::deque<std::pair<std::pair<Formula, std::vector<std::string>>, MAutomaton>> cache_;
};

}  // namespace

std::shared_ptr<const Theory> oracle_from_presentation(std::shared_ptr<const AutomaticPresentation> p) {
  return std::make_shared<const PresentedTheory>(std::move(p));
}

}  // namespace mauto
