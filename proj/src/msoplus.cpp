#include "mauto/msoplus.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <sstream>

#include "mauto/automaton_ops.hpp"
#include "mauto/formula_io.hpp"

namespace mauto {

using K = MsoFormula::Kind;

MsoFormula MsoPlusSentence::closed() const {
  MsoFormula f = body;
  for (auto it = symvars.rbegin(); it != symvars.rend(); ++it) f = MsoFormula::exists_pos(*it, std::move(f));
  return f;
}

MsoPlusSentence parse_msoplus(std::string_view text, const Signature* sig) {
  std::istringstream in{std::string(text)};
  std::string line, rest;
  MsoPlusSentence s;
  bool header = false;
  while (std::getline(in, line)) {
    if (!header) {
      std::string code = line.substr(0, line.find(';'));
      std::istringstream ls(code);
      std::string word;
      if (!(ls >> word)) continue;
      if (word != "symvars") throw Error("MSO+ input must start with 'symvars x1 ... xn'");
      for (std::string v; ls >> v;) s.symvars.push_back(v);
      header = true;
      continue;
    }
    rest += line;
    rest += '\n';
  }
  if (!header) throw Error("missing 'symvars' header");
  s.body = parse_mso(rest, sig);
  return s;
}

MsoPlusSentence load_msoplus(const std::string& path, const Signature* sig) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_msoplus(ss.str(), sig);
}

std::string print_msoplus(const MsoPlusSentence& s) {
  std::string out = "symvars";
  for (const auto& v : s.symvars) out += ' ' + v;
  return out + '\n' + print_mso(s.body) + '\n';
}

namespace {

std::string symbol_var(std::size_t j) { return "s" + std::to_string(j + 1); }

bool fragment_ok(const MsoFormula& f, const std::set<std::string>& prefix) {
  if (f.is_quantifier() && prefix.count(f.vars[0])) return false;
  if (f.kind == K::Theta) {
    std::set<std::string> foreign;
    for (const auto& v : f.vars)
      if (!prefix.count(v)) foreign.insert(v);
    if (foreign.size() > 1) return false;
    std::set<std::string> allowed;
    for (std::size_t j = 0; j < f.vars.size(); ++j) allowed.insert(symbol_var(j));
    for (const auto& v : free_vars(f.symbol))
      if (!allowed.count(v)) return false;
  }
  if (f.kind == K::Alpha) {
    for (const auto& v : free_vars(f.symbol))
      if (v != track_var(1)) return false;
  }
  return std::all_of(f.kids.begin(), f.kids.end(), [&](const MsoFormula& k) { return fragment_ok(k, prefix); });
}

MsoFormula rewrite(const MsoFormula& f, const std::map<std::string, std::string>& constant_of) {
  if (f.kind == K::Theta) {
    std::string y = f.vars.back();
    for (const auto& v : f.vars)
      if (!constant_of.count(v)) y = v;
    std::map<std::string, Term> sub;
    for (std::size_t j = 0; j < f.vars.size(); ++j) {
      const auto& v = f.vars[j];
      sub.emplace(symbol_var(j), Term::var(v == y ? track_var(1) : constant_of.at(v)));
    }
    return MsoFormula::alpha(simplify(rename_free(f.symbol, sub)), y);
  }
  MsoFormula g = f;
  for (auto& k : g.kids) k = rewrite(k, constant_of);
  return g;
}

struct LetterSetSearch {
  const LetterDfa& d;
  std::vector<std::uint64_t> found;

  static bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

  static void add_minimal(std::vector<std::uint64_t>& sets, std::uint64_t s) {
    for (auto t : sets)
      if (subset(t, s)) return;
    std::erase_if(sets, [&](std::uint64_t t) { return subset(s, t); });
    sets.push_back(s);
  }

  void run() {
    const int n = d.states();
    // States from which a final state is reachable.
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
      for (int l = 0; l < d.alphabet; ++l) rev[static_cast<std::size_t>(d.next(q, l))].push_back(q);
    std::vector<char> live(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    for (int q = 0; q < n; ++q)
      if (d.final[static_cast<std::size_t>(q)]) {
        live[static_cast<std::size_t>(q)] = 1;
        queue.push_back(q);
      }
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      for (int p : rev[static_cast<std::size_t>(q)])
        if (!live[static_cast<std::size_t>(p)]) {
          live[static_cast<std::size_t>(p)] = 1;
          queue.push_back(p);
        }
    }
    if (!live[static_cast<std::size_t>(d.start)]) return;

    std::vector<std::vector<std::uint64_t>> seen(static_cast<std::size_t>(n));
    std::deque<std::pair<int, std::uint64_t>> work{{d.start, 0}};
    seen[static_cast<std::size_t>(d.start)].push_back(0);
    while (!work.empty()) {
      auto [q, s] = work.front();
      work.pop_front();
      if (d.final[static_cast<std::size_t>(q)]) add_minimal(found, s);
      for (int l = 0; l < d.alphabet; ++l) {
        const int r = d.next(q, l);
        if (!live[static_cast<std::size_t>(r)]) continue;
        const std::uint64_t t = s | (std::uint64_t{1} << l);
        auto& at = seen[static_cast<std::size_t>(r)];
        if (std::any_of(at.begin(), at.end(), [&](std::uint64_t u) { return subset(u, t); })) continue;
        std::erase_if(at, [&](std::uint64_t u) { return subset(t, u); });
        at.push_back(t);
        work.emplace_back(r, t);
      }
    }
    std::sort(found.begin(), found.end(), [](std::uint64_t a, std::uint64_t b) {
      return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
  }
};

}  // namespace

bool check_fragment(const MsoPlusSentence& s) {
  std::set<std::string> prefix(s.symvars.begin(), s.symvars.end());
  if (prefix.size() != s.symvars.size()) return false;
  const auto fv = mso_free_vars(s.body);
  if (!fv.sets.empty()) return false;
  for (const auto& v : fv.positions)
    if (!prefix.count(v)) return false;
  return fragment_ok(s.body, prefix);
}

MsoPlusRewrite rewrite_with_constants(const MsoPlusSentence& s) {
  if (!check_fragment(s)) throw Error("sentence is outside the restricted MSO+ fragment");
  MsoPlusRewrite out;
  std::map<std::string, std::string> constant_of;
  for (std::size_t i = 0; i < s.symvars.size(); ++i) {
    out.constants.push_back("c" + std::to_string(i + 1));
    constant_of[s.symvars[i]] = out.constants.back();
  }
  std::vector<MsoFormula> parts;
  for (std::size_t i = 0; i < s.symvars.size(); ++i)
    parts.push_back(MsoFormula::alpha(var_eq(track_var(1), out.constants[i]), s.symvars[i]));
  parts.push_back(rewrite(s.body, constant_of));
  MsoPlusSentence r{s.symvars, parts.size() == 1 ? parts[0] : MsoFormula::conj(std::move(parts))};
  out.sentence = r.closed();
  return out;
}

namespace {

MsoCompilation compile_plus(const MsoPlusRewrite& rw, const PaddedTheory& theory) {
  return compile_mso_letters(rw.sentence, 1, theory, {rw.constants.begin(), rw.constants.end()});
}

}  // namespace

std::vector<ExpansionQuery> expansion_queries(const MsoPlusSentence& s, const PaddedTheory& theory) {
  const auto rw = rewrite_with_constants(s);
  const auto comp = compile_plus(rw, theory);
  if (comp.minterms.size() > 64) throw Error("too many letter classes for the letter-set search");
  LetterSetSearch search{comp.dfa, {}};
  search.run();

  const bool fresh = theory.mode() == PadMode::Fresh;
  std::vector<ExpansionQuery> out;
  for (auto set : search.found) {
    ExpansionQuery q;
    q.constants = rw.constants;
    std::vector<Formula> conj;
    if (fresh)
      for (const auto& c : rw.constants) conj.push_back(lnot(var_pad(c)));
    for (int l = 0; l < static_cast<int>(comp.minterms.size()); ++l) {
      if (!((set >> l) & 1)) continue;
      q.letters.push_back(l);
      const Formula& m = comp.minterms[static_cast<std::size_t>(l)];
      auto used = all_vars(m);
      used.insert(rw.constants.begin(), rw.constants.end());
      const std::string a = fresh_name("a", used);
      Formula body = rename_free(m, {{track_var(1), Term::var(a)}});
      if (fresh) body = land(lnot(var_pad(a)), body);
      conj.push_back(Formula::exists(a, body));
    }
    q.sentence = exists_closure(land(std::move(conj)), rw.constants);
    out.push_back(std::move(q));
  }
  return out;
}

bool sat_plus(const MsoPlusSentence& s, const PaddedTheory& theory) {
  const auto queries = expansion_queries(s, theory);
  const auto n = static_cast<long>(queries.size());
  bool any = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : any)
  for (long i = 0; i < n; ++i) {
    if (!any) any = theory.decide(queries[static_cast<std::size_t>(i)].sentence);
  }
  return any;
}

int derived_length_bound(const MsoPlusSentence& s, const PaddedTheory& theory) {
  return compile_plus(rewrite_with_constants(s), theory).dfa.states();
}

bool brute_force_sat(const MsoPlusSentence& s, const PaddedTheory& theory, int bound) {
  const auto dom = theory.base().finite_domain();
  if (!dom) throw Error("brute force needs a finite base structure");
  const MsoFormula f = s.closed();
  const auto k = static_cast<long>(dom->size());
  for (int len = 0; len <= bound; ++len) {
    long total = 1;
    for (int i = 0; i < len; ++i) {
      if (total > (1L << 24) / k) throw Error("brute force search space too large");
      total *= k;
    }
    bool hit = false;
#pragma omp parallel for schedule(dynamic, 64) reduction(|| : hit)
    for (long code = 0; code < total; ++code) {
      if (hit) continue;
      Word w;
      long c = code;
      for (int i = 0; i < len; ++i) {
        w.push_back((*dom)[static_cast<std::size_t>(c % k)]);
        c /= k;
      }
      if (mso_holds(f, {w}, theory)) hit = true;
    }
    if (hit) return true;
  }
  return false;
}

}  // namespace mauto
