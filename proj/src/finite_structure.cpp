#include "mauto/finite_structure.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mauto {

FiniteStructure::FiniteStructure(std::vector<std::string> domain, Signature sig,
                                 std::map<std::string, std::set<std::vector<int>>> tables, std::string name)
    : domain_(std::move(domain)), sig_(std::move(sig)), tables_(std::move(tables)), name_(std::move(name)) {
  if (domain_.empty()) throw Error("finite structure needs a nonempty domain");
  std::set<std::string> seen(domain_.begin(), domain_.end());
  if (seen.size() != domain_.size()) throw Error("duplicate domain element");
  for (const auto& r : sig_.relations()) {
    auto& t = tables_[r.name];
    for (const auto& tuple : t) {
      if (static_cast<int>(tuple.size()) != r.arity) throw Error("tuple arity mismatch in relation " + r.name);
      for (int v : tuple)
        if (v < 0 || v >= size()) throw Error("tuple outside the domain in relation " + r.name);
    }
  }
  for (const auto& [rel, _] : tables_)
    if (!sig_.arity(rel)) throw Error("table for undeclared relation " + rel);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '(' || c == ')') c = ' ';
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

std::shared_ptr<FiniteStructure> FiniteStructure::parse(const std::string& text, std::string name) {
  std::vector<std::string> domain;
  Signature sig;
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) { return Error("line " + std::to_string(lineno) + ": " + msg); };
    if (line.rfind("domain", 0) == 0) {
      if (!domain.empty()) throw fail("domain declared twice");
      domain = split_names(line.substr(6));
      continue;
    }
    if (line.rfind("rel", 0) != 0) throw fail("expected 'domain' or 'rel'");
    const auto eq = line.find('=');
    const auto open = line.find('{');
    const auto close = line.rfind('}');
    if (eq == std::string::npos || open == std::string::npos || close == std::string::npos || close < open)
      throw fail("expected rel NAME/k = {...}");
    const std::string head = trim(line.substr(3, eq - 3));
    const auto slash = head.find('/');
    if (slash == std::string::npos) throw fail("relation needs NAME/arity");
    const std::string rname = head.substr(0, slash);
    int arity = 0;
    try {
      arity = std::stoi(head.substr(slash + 1));
    } catch (const std::exception&) {
      throw fail("bad arity");
    }
    sig.add_relation(rname, arity);
    const std::string body = line.substr(open + 1, close - open - 1);
    std::vector<std::vector<std::string>> tuples;
    if (body.find('(') == std::string::npos) {
      for (auto& w : split_names(body)) tuples.push_back({w});
    } else {
      std::size_t p = 0;
      while ((p = body.find('(', p)) != std::string::npos) {
        const auto q = body.find(')', p);
        if (q == std::string::npos) throw fail("unbalanced tuple");
        tuples.push_back(split_names(body.substr(p + 1, q - p - 1)));
        p = q + 1;
      }
    }
    raw.emplace_back(rname, std::move(tuples));
  }
  if (domain.empty()) throw Error("finite structure file has no domain line");
  std::map<std::string, std::set<std::vector<int>>> tables;
  for (const auto& [rname, tuples] : raw) {
    auto& t = tables[rname];
    for (const auto& tup : tuples) {
      std::vector<int> idx;
      for (const auto& w : tup) {
        auto it = std::find(domain.begin(), domain.end(), w);
        if (it == domain.end()) throw Error("relation " + rname + " mentions unknown element " + w);
        idx.push_back(static_cast<int>(it - domain.begin()));
      }
      if (static_cast<int>(idx.size()) != *sig.arity(rname)) throw Error("tuple arity mismatch in relation " + rname);
      t.insert(std::move(idx));
    }
  }
  return std::make_shared<FiniteStructure>(std::move(domain), std::move(sig), std::move(tables), std::move(name));
}

std::shared_ptr<FiniteStructure> FiniteStructure::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::shared_ptr<FiniteStructure> FiniteStructure::with_padding_element() const {
  if (pad_index_ >= 0) throw Error("structure already has a padding element");
  auto domain = domain_;
  domain.push_back("#");
  auto out = std::make_shared<FiniteStructure>(std::move(domain), sig_, tables_, name_ + "#");
  out->pad_index_ = size();
  return out;
}

bool FiniteStructure::holds(const std::string& rel, const std::vector<int>& tuple) const {
  auto it = tables_.find(rel);
  return it != tables_.end() && it->second.count(tuple);
}

bool FiniteStructure::eval_idx(const Formula& f, std::map<std::string, int>& env) const {
  using K = Formula::Kind;
  auto value = [&](const Term& t) {
    if (!t.is_var()) throw Error("finite structure has no constant " + t.name);
    auto it = env.find(t.name);
    if (it == env.end()) throw Error("no value for free variable " + t.name);
    return it->second;
  };
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Rel: {
      std::vector<int> tuple;
      for (const auto& t : f.terms()) tuple.push_back(value(t));
      if (!sig_.arity(f.symbol())) throw Error("unknown relation " + f.symbol());
      return holds(f.symbol(), tuple);
    }
    case K::Eq: return value(f.terms()[0]) == value(f.terms()[1]);
    case K::Pad: return value(f.terms()[0]) == pad_index_;
    case K::Not: return !eval_idx(f.child(), env);
    case K::And:
      for (const auto& c : f.children())
        if (!eval_idx(c, env)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (eval_idx(c, env)) return true;
      return false;
    case K::Implies: return !eval_idx(f.child(0), env) || eval_idx(f.child(1), env);
    case K::Exists:
    case K::Forall: {
      const bool want = f.kind() == K::Exists;
      std::optional<int> saved;
      if (auto it = env.find(f.symbol()); it != env.end()) saved = it->second;
      bool result = !want;
      for (int v = 0; v < size(); ++v) {
        env[f.symbol()] = v;
        if (eval_idx(f.child(), env) == want) {
          result = want;
          break;
        }
      }
      if (saved) env[f.symbol()] = *saved; else env.erase(f.symbol());
      return result;
    }
  }
  return false;
}

bool FiniteStructure::decide(const Formula& sentence) const {
  require_sentence(sentence);
  std::map<std::string, int> env;
  return eval_idx(sentence, env);
}

bool FiniteStructure::eval(const Formula& f, const Assignment& a) const {
  std::map<std::string, int> env;
  for (const auto& v : free_vars(f)) {
    auto it = a.find(v);
    if (it == a.end()) throw Error("no value for free variable " + v);
    if (!contains(it->second)) throw Error("element " + to_string(it->second) + " is outside the domain");
    env[v] = static_cast<int>(it->second.value());
  }
  return eval_idx(f, env);
}

std::optional<Assignment> FiniteStructure::find_witness(const Formula& f, const std::vector<std::string>& vars) const {
  for (const auto& v : free_vars(f))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) throw Error("find_witness: free variable " + v + " not listed");
  std::map<std::string, int> env;
  std::vector<int> digits(vars.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = digits[i];
    if (eval_idx(f, env)) {
      Assignment out;
      for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = Element::atom(digits[i]);
      return out;
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == size()) digits[i++] = 0;
    if (i == digits.size()) return std::nullopt;
  }
}

bool FiniteStructure::satisfiable(const Formula& f) const {
  const auto fv = free_vars(f);
  return find_witness(f, std::vector<std::string>(fv.begin(), fv.end())).has_value();
}

bool FiniteStructure::contains(const Element& e) const {
  return e.is_atom() && e.value() >= 0 && e.value() < size();
}

Element FiniteStructure::parse_element(const std::string& text) const {
  auto it = std::find(domain_.begin(), domain_.end(), text);
  if (it == domain_.end()) throw Error("unknown element " + text + " of " + name_);
  return Element::atom(it - domain_.begin());
}

std::string FiniteStructure::format_element(const Element& e) const {
  if (e.is_padding()) return "#";
  if (!contains(e)) throw Error("element " + to_string(e) + " is outside the domain");
  return domain_[static_cast<std::size_t>(e.value())];
}

std::optional<std::vector<Element>> FiniteStructure::finite_domain() const {
  std::vector<Element> out;
  for (int i = 0; i < size(); ++i) out.push_back(Element::atom(i));
  return out;
}

std::string FiniteStructure::to_text() const {
  std::string s = "domain";
  for (const auto& d : domain_) s += ' ' + d;
  s += '\n';
  for (const auto& r : sig_.relations()) {
    s += "rel " + r.name + '/' + std::to_string(r.arity) + " = {";
    bool first = true;
    for (const auto& tup : tables_.at(r.name)) {
      if (!first) s += ' ';
      first = false;
      if (r.arity == 1) {
        s += domain_[tup[0]];
      } else {
        s += '(';
        for (std::size_t i = 0; i < tup.size(); ++i) s += (i ? "," : "") + domain_[tup[i]];
        s += ')';
      }
    }
    s += "}\n";
  }
  return s;
}

}  // namespace mauto
