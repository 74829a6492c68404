#include "mauto/presburger.hpp"

#include <algorithm>
#include <cctype>
#include <variant>

#include "mauto/presburger_qe.hpp"

namespace mauto {

namespace pb = presburger;

namespace {

struct Translator {
  // A variable is either bound to an elimination index or fixed to a value.
  std::map<std::string, std::variant<int, std::int64_t>> env;
  int next = 0;

  pb::LinTerm term(const Term& t) const {
    if (!t.is_var()) throw Error("Presburger arithmetic has no constant " + t.name);
    auto it = env.find(t.name);
    if (it == env.end()) throw Error("no value for free variable " + t.name);
    if (auto* idx = std::get_if<int>(&it->second)) return pb::LinTerm::var(*idx);
    return pb::LinTerm::num(std::get<std::int64_t>(it->second));
  }

  pb::Qf operator()(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True: return pb::qtrue();
      case K::False: return pb::qfalse();
      case K::Rel: {
        if (f.symbol() != "plus" || f.terms().size() != 3)
          throw Error("Presburger arithmetic has only plus/3, got " + f.symbol());
        const auto& ts = f.terms();
        return pb::qatom({pb::Atom::Kind::Eq, 0, term(ts[0]) + term(ts[1]) - term(ts[2])});
      }
      case K::Eq: return pb::qatom({pb::Atom::Kind::Eq, 0, term(f.terms()[0]) - term(f.terms()[1])});
      case K::Pad: throw Error("padding predicate is not part of Presburger arithmetic");
      case K::Not: return pb::qnot((*this)(f.child()));
      case K::And:
      case K::Or: {
        std::vector<pb::Qf> kids;
        for (const auto& c : f.children()) kids.push_back((*this)(c));
        return f.kind() == K::And ? pb::qand(std::move(kids)) : pb::qor(std::move(kids));
      }
      case K::Implies: return pb::qor({pb::qnot((*this)(f.child(0))), (*this)(f.child(1))});
      case K::Exists:
      case K::Forall: {
        const int idx = next++;
        std::optional<std::variant<int, std::int64_t>> saved;
        if (auto it = env.find(f.symbol()); it != env.end()) saved = it->second;
        env[f.symbol()] = idx;
        pb::Qf body = (*this)(f.child());
        if (saved) env[f.symbol()] = *saved; else env.erase(f.symbol());
        // x >= 0, i.e. -x - 1 < 0
        const pb::Qf natural = pb::qatom({pb::Atom::Kind::Lt, 0, pb::LinTerm::var(idx, -1) - pb::LinTerm::num(1)});
        if (f.kind() == K::Exists) return pb::eliminate_exists(pb::qand({body, natural}), idx);
        return pb::qnot(pb::eliminate_exists(pb::qand({pb::qnot(body), natural}), idx));
      }
    }
    return pb::qfalse();
  }
};

bool closed_truth(const pb::Qf& q) {
  if (pb::is_true(q)) return true;
  if (pb::is_false(q)) return false;
  throw Error("internal: elimination left a non-ground formula " + pb::to_string(q));
}

bool decide_with(const Formula& f, const std::map<std::string, std::int64_t>& values) {
  Translator tr;
  for (const auto& [k, v] : values) tr.env[k] = v;
  return closed_truth(tr(f));
}

}  // namespace

PresburgerArithmetic::PresburgerArithmetic() { sig_.add_relation("plus", 3); }

bool PresburgerArithmetic::decide(const Formula& sentence) const {
  require_sentence(sentence);
  return decide_with(sentence, {});
}

bool PresburgerArithmetic::eval(const Formula& f, const Assignment& a) const {
  std::map<std::string, std::int64_t> values;
  for (const auto& v : free_vars(f)) {
    auto it = a.find(v);
    if (it == a.end()) throw Error("no value for free variable " + v);
    if (!contains(it->second)) throw Error("element " + to_string(it->second) + " is not a natural number");
    if (it->second.value() > kEvalLimit) throw Error("value " + to_string(it->second) + " exceeds the evaluation limit");
    values[v] = it->second.value();
  }
  return decide_with(f, values);
}

std::optional<Assignment> PresburgerArithmetic::find_witness(const Formula& f,
                                                             const std::vector<std::string>& vars) const {
  for (const auto& v : free_vars(f))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) throw Error("find_witness: free variable " + v + " not listed");
  std::map<std::string, std::int64_t> fixed;
  auto rest_closed = [&](std::size_t from) {
    return exists_closure(f, std::vector<std::string>(vars.begin() + static_cast<std::ptrdiff_t>(from), vars.end()));
  };
  if (!decide_with(rest_closed(0), fixed)) return std::nullopt;
  // Smallest value for each variable in turn; each step keeps the remainder satisfiable.
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const Formula g = rest_closed(i + 1);
    for (std::int64_t v = 0;; ++v) {
      fixed[vars[i]] = v;
      if (decide_with(g, fixed)) break;
    }
  }
  Assignment out;
  for (const auto& [k, v] : fixed) out[k] = Element::atom(v);
  return out;
}

Element PresburgerArithmetic::parse_element(const std::string& text) const {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error("expected a natural number, got '" + text + "'");
  try {
    return Element::atom(std::stoll(text));
  } catch (const std::exception&) {
    throw Error("number out of range: " + text);
  }
}

std::string PresburgerArithmetic::format_element(const Element& e) const {
  if (e.is_padding()) return "#";
  if (!contains(e)) throw Error("element " + to_string(e) + " is not a natural number");
  return std::to_string(e.value());
}

std::optional<Formula> PresburgerArithmetic::define_element(const Element& e, const std::string& var) const {
  if (!contains(e)) return std::nullopt;
  if (e.value() > kEvalLimit) throw Error("numeral too large to define");
  return numeral_formula(e.value(), var);
}

Formula zero_formula(const std::string& x) { return var_rel("plus", {x, x, x}); }

Formula one_formula(const std::string& x) {
  const std::set<std::string> used{x};
  const auto y = fresh_name("y", used);
  const auto z = fresh_name("z", {x, y});
  return land(lnot(zero_formula(x)),
              Formula::forall(y, Formula::forall(z, Formula::implies(var_rel("plus", {y, z, x}),
                                                                     lor(zero_formula(y), zero_formula(z))))));
}

Formula numeral_formula(std::int64_t n, const std::string& x) {
  if (n < 0) throw Error("numerals are natural numbers");
  if (n == 0) return zero_formula(x);
  if (n == 1) return one_formula(x);
  const auto u = fresh_name("u", {x});
  const auto o = fresh_name("o", {x, u});
  return Formula::exists(u, Formula::exists(o, land({numeral_formula(n - 1, u), one_formula(o),
                                                     var_rel("plus", {u, o, x})})));
}

}  // namespace mauto
