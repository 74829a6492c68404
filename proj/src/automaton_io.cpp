#include "mauto/automaton_io.hpp"

#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mauto/finite_structure.hpp"
#include "mauto/formula_io.hpp"
#include "mauto/presburger.hpp"

namespace mauto {

namespace fs = std::filesystem;

std::shared_ptr<const Theory> resolve_base_theory(const std::string& name, const std::string& base_dir) {
  if (name == "presburger") {
    static const auto pa = std::make_shared<const PresburgerArithmetic>();
    return pa;
  }
  fs::path p(name);
  if (p.is_relative() && !base_dir.empty() && fs::exists(fs::path(base_dir) / p)) p = fs::path(base_dir) / p;
  if (!fs::exists(p)) throw Error("unknown theory '" + name + "' (not 'presburger' and no such file)");
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return FiniteStructure::parse(ss.str(), name);
}

TheoryPtr make_padded(std::shared_ptr<const Theory> base, const std::string& pad_spec) {
  if (pad_spec.empty() || pad_spec == "fresh") return PaddedTheory::fresh(std::move(base));
  for (const char* prefix : {"alias:", "alias "}) {
    const std::string pre(prefix);
    if (pad_spec.rfind(pre, 0) == 0) {
      const auto elem = base->parse_element(pad_spec.substr(pre.size()));
      return PaddedTheory::alias(std::move(base), elem);
    }
  }
  throw Error("padding must be 'fresh' or 'alias:ELEM', got '" + pad_spec + "'");
}

namespace {

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

MAutomaton parse_automaton(const std::string& text, const AutomatonReadOptions& opts) {
  int tracks = -1;
  TheoryPtr theory;
  std::vector<std::string> states;
  std::map<std::string, int> index;
  std::vector<std::string> initial, final;
  struct RawTransition {
    std::string from, to, label;
    int line;
  };
  std::vector<RawTransition> raw;
  bool seen_states = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& msg) { return Error("line " + std::to_string(lineno) + ": " + msg); };
    const auto w = words(line);
    if (w.empty() || w[0][0] == ';') continue;
    if (w[0] == "tracks") {
      if (w.size() != 2) throw fail("expected 'tracks n'");
      try {
        tracks = std::stoi(w[1]);
      } catch (const std::exception&) {
        throw fail("bad track count");
      }
    } else if (w[0] == "theory") {
      if (w.size() != 2 && !(w.size() == 4 && w[2] == "pad" && w[3] == "fresh") &&
          !(w.size() == 5 && w[2] == "pad" && w[3] == "alias"))
        throw fail("expected 'theory NAME [pad fresh|alias ELEM]'");
      const std::string pad = w.size() == 5 ? "pad alias " + w[4] : "pad fresh";
      if (opts.theory && opts.theory->name() == w[1]) {
        if (opts.theory->pad_spec() != pad)
          throw fail("theory override uses " + opts.theory->pad_spec() + ", file says " + pad);
        theory = opts.theory;
      } else {
        auto base = resolve_base_theory(w[1], opts.base_dir);
        theory = make_padded(base, w.size() == 5 ? "alias:" + w[4] : "fresh");
      }
    } else if (w[0] == "states") {
      seen_states = true;
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (!index.emplace(w[i], static_cast<int>(states.size())).second) throw fail("duplicate state " + w[i]);
        states.push_back(w[i]);
      }
    } else if (w[0] == "initial") {
      initial.insert(initial.end(), w.begin() + 1, w.end());
    } else if (w[0] == "final") {
      final.insert(final.end(), w.begin() + 1, w.end());
    } else if (w.size() >= 4 && w[1] == "->") {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw fail("expected 'q -> q2 : FORMULA'");
      std::string to = w[2];
      if (!to.empty() && to.back() == ':') to.pop_back();
      raw.push_back({w[0], to, line.substr(colon + 1), lineno});
    } else {
      throw fail("unrecognized line");
    }
  }
  if (tracks < 1) throw Error("automaton needs a 'tracks n' line with n >= 1");
  if (opts.theory) {
    if (theory && !theory->compatible(*opts.theory))
      throw Error("theory override " + opts.theory->name() + " (" + opts.theory->pad_spec() +
                  ") does not match the file's theory " + theory->name() + " (" + theory->pad_spec() + ")");
    theory = opts.theory;
  }
  if (!theory) throw Error("automaton has no theory line and no theory was given");
  if (!seen_states) throw Error("automaton needs a 'states' line");

  MAutomaton a(theory, tracks, static_cast<int>(states.size()));
  auto state = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw Error("unknown state " + s);
    return it->second;
  };
  for (const auto& s : initial) a.set_initial(state(s));
  for (const auto& s : final) a.set_final(state(s));
  for (const auto& t : raw) {
    try {
      a.add_transition(state(t.from), parse_formula(t.label, &theory->signature()), state(t.to));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(t.line) + ": " + e.what());
    }
  }
  return a;
}

MAutomaton load_automaton(const std::string& path, AutomatonReadOptions opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (opts.base_dir.empty()) opts.base_dir = fs::path(path).parent_path().string();
  return parse_automaton(ss.str(), opts);
}

MAutomaton canonical(const MAutomaton& a) {
  const auto n = static_cast<std::size_t>(a.state_count());
  std::vector<int> id(n, -1);
  std::vector<int> order;
  std::deque<int> queue;
  auto visit = [&](int q) {
    if (id[static_cast<std::size_t>(q)] >= 0) return;
    id[static_cast<std::size_t>(q)] = static_cast<int>(order.size());
    order.push_back(q);
    queue.push_back(q);
  };
  const auto out = a.outgoing();
  for (int q : a.initial_states()) visit(q);
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int ti : out[static_cast<std::size_t>(q)]) visit(a.transitions()[static_cast<std::size_t>(ti)].to);
  }
  for (int q = 0; q < a.state_count(); ++q) visit(q);
  MAutomaton c(a.theory(), a.tracks());
  for (int q : order) c.add_state(a.is_initial(q), a.is_final(q));
  for (int q : order)
    for (int ti : out[static_cast<std::size_t>(q)]) {
      const auto& t = a.transitions()[static_cast<std::size_t>(ti)];
      c.add_transition(id[static_cast<std::size_t>(q)], t.label, id[static_cast<std::size_t>(t.to)]);
    }
  return c;
}

std::string print_automaton(const MAutomaton& input) {
  const MAutomaton a = canonical(input);
  auto name = [](int q) { return "q" + std::to_string(q); };
  std::ostringstream out;
  out << "tracks " << a.tracks() << '\n';
  out << "theory " << a.theory()->name() << ' ' << a.theory()->pad_spec() << '\n';
  out << "states";
  for (int q = 0; q < a.state_count(); ++q) out << ' ' << name(q);
  out << "\ninitial";
  for (int q : a.initial_states()) out << ' ' << name(q);
  out << "\nfinal";
  for (int q : a.final_states()) out << ' ' << name(q);
  out << '\n';
  for (const auto& t : a.transitions()) out << name(t.from) << " -> " << name(t.to) << " : " << print_formula(t.label) << '\n';
  return out.str();
}

void save_automaton(const MAutomaton& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << print_automaton(a);
}

}  // namespace mauto
