#include "mauto/formula_io.hpp"

#include <cctype>

namespace mauto {

namespace {

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '-'))
      return false;
  return true;
}

Term term_of(const SExpr& e, const Signature* sig) {
  if (!e.is_atom || !is_ident(e.text)) throw Error("expected a term, got " + to_string(e));
  if (sig && sig->has_constant(e.text)) return Term::constant(e.text);
  return Term::var(e.text);
}

void expect_size(const SExpr& e, std::size_t n) {
  if (e.items.size() != n) throw Error("wrong number of operands in " + to_string(e));
}

}  // namespace

Formula formula_from_sexpr(const SExpr& e, const Signature* sig) {
  if (e.is_atom) {
    if (e.text == "true") return Formula::truth();
    if (e.text == "false") return Formula::falsity();
    throw Error("expected a formula, got " + e.text);
  }
  if (e.items.empty() || !e.items[0].is_atom) throw Error("malformed formula " + to_string(e));
  const std::string& head = e.items[0].text;
  if (head == "rel") {
    if (e.items.size() < 3 || !e.items[1].is_atom) throw Error("malformed relation atom " + to_string(e));
    const std::string& name = e.items[1].text;
    std::vector<Term> ts;
    for (std::size_t i = 2; i < e.items.size(); ++i) ts.push_back(term_of(e.items[i], sig));
    if (sig) {
      auto a = sig->arity(name);
      if (!a) throw Error("unknown relation " + name);
      if (*a != static_cast<int>(ts.size()))
        throw Error("relation " + name + " expects " + std::to_string(*a) + " arguments, got " +
                    std::to_string(ts.size()));
    }
    return Formula::rel(name, std::move(ts));
  }
  if (head == "=") {
    expect_size(e, 3);
    return Formula::eq(term_of(e.items[1], sig), term_of(e.items[2], sig));
  }
  if (head == "pad") {
    expect_size(e, 2);
    return Formula::pad(term_of(e.items[1], sig));
  }
  if (head == "not") {
    expect_size(e, 2);
    return Formula::negation(formula_from_sexpr(e.items[1], sig));
  }
  if (head == "and" || head == "or") {
    std::vector<Formula> kids;
    for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(formula_from_sexpr(e.items[i], sig));
    return head == "and" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
  }
  if (head == "implies") {
    expect_size(e, 3);
    return Formula::implies(formula_from_sexpr(e.items[1], sig), formula_from_sexpr(e.items[2], sig));
  }
  if (head == "exists" || head == "forall") {
    expect_size(e, 3);
    if (!e.items[1].is_atom || !is_ident(e.items[1].text)) throw Error("expected a variable in " + to_string(e));
    if (sig && sig->has_constant(e.items[1].text)) throw Error("cannot bind constant " + e.items[1].text);
    auto body = formula_from_sexpr(e.items[2], sig);
    return head == "exists" ? Formula::exists(e.items[1].text, body) : Formula::forall(e.items[1].text, body);
  }
  throw Error("unknown connective " + head);
}

Formula parse_formula(std::string_view text, const Signature* sig) {
  return formula_from_sexpr(parse_sexpr(text), sig);
}

namespace {

void print_into(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  auto list = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& c : f.children()) {
      out += ' ';
      print_into(c, out);
    }
    out += ')';
  };
  switch (f.kind()) {
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Rel:
      out += "(rel " + f.symbol();
      for (const auto& t : f.terms()) out += ' ' + t.name;
      out += ')';
      return;
    case K::Eq: out += "(= " + f.terms()[0].name + ' ' + f.terms()[1].name + ')'; return;
    case K::Pad: out += "(pad " + f.terms()[0].name + ')'; return;
    case K::Not: list("not"); return;
    case K::And: list("and"); return;
    case K::Or: list("or"); return;
    case K::Implies: list("implies"); return;
    case K::Exists:
    case K::Forall:
      out += f.kind() == K::Exists ? "(exists " : "(forall ";
      out += f.symbol() + ' ';
      print_into(f.child(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace mauto
