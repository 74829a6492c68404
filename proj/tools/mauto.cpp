#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mauto/automaton_io.hpp"
#include "mauto/automaton_ops.hpp"
#include "mauto/formula_io.hpp"
#include "mauto/mso.hpp"
#include "mauto/msoplus.hpp"
#include "mauto/ordinal.hpp"
#include "mauto/presentation.hpp"

using namespace mauto;

namespace {

struct TheoryOptions {
  std::string theory;
  std::string pad;

  void attach(CLI::App* cmd) {
    cmd->add_option("--theory", theory, "Background theory: presburger, a finite-structure file, ees:FILE, skolem, ordinal-omega-omega");
    cmd->add_option("--pad", pad, "Padding: fresh or alias:ELEM");
  }

  std::shared_ptr<const Theory> base() const {
    if (theory.rfind("ees:", 0) == 0 || theory == "skolem" || theory == "ordinal-omega-omega")
      return oracle_from_presentation(std::make_shared<const AutomaticPresentation>(load_presentation(theory)));
    return resolve_base_theory(theory);
  }

  TheoryPtr padded() const {
    if (theory.empty()) {
      if (!pad.empty()) throw Error("--pad needs --theory");
      return nullptr;
    }
    return make_padded(base(), pad.empty() ? "fresh" : pad);
  }

  MAutomaton load(const std::string& path) const { return load_automaton(path, {"", padded()}); }
};

std::string read_text(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

Word parse_word(const std::string& text, const Theory& th) {
  Word w;
  if (text.empty()) return w;
  std::istringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    const Element e = th.parse_element(tok);
    if (e.is_padding() || !th.contains(e)) throw Error("'" + tok + "' is not an element of " + th.name());
    w.push_back(e);
  }
  return w;
}

std::string format_word(const Word& w, const Theory& th) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += th.format_element(w[i]);
  }
  return s;
}

std::string format_tuple(const TupleWord& t, const Theory& th) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ' ';
    const std::string w = format_word(t[i], th);
    s += w.empty() ? "\"\"" : w;
  }
  return s;
}

void emit(const MAutomaton& a, const std::string& out) {
  const std::string text = print_automaton(a);
  if (print_automaton(parse_automaton(text, {"", a.theory()})) != text) throw Error("serialization round-trip failed");
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automata over infinite alphabets with formula-labelled transitions"};
  app.require_subcommand(1);
  TheoryOptions topt;
  std::string out;
  std::function<int()> run;

  // member
  std::string member_file;
  std::vector<std::string> member_words;
  auto* member = app.add_subcommand("member", "Test whether an automaton accepts a tuple of words");
  member->add_option("automaton", member_file)->required();
  member->add_option("words", member_words, "One comma-separated word per track (\"\" for the empty word)");
  topt.attach(member);
  member->callback([&] {
    run = [&] {
      const MAutomaton a = canonical(topt.load(member_file));
      if (static_cast<int>(member_words.size()) != a.tracks())
        throw Error("automaton has " + std::to_string(a.tracks()) + " tracks, got " + std::to_string(member_words.size()) + " words");
      TupleWord w;
      for (const auto& s : member_words) w.push_back(parse_word(s, a.theory()->base()));
      const auto run_states = accepting_run(a, w);
      if (!run_states) {
        std::cout << "reject\n";
        return 1;
      }
      std::cout << "accept";
      for (int q : *run_states) std::cout << " q" << q;
      std::cout << '\n';
      return 0;
    };
  });

  // empty
  std::string empty_file;
  auto* empty = app.add_subcommand("empty", "Emptiness check; prints a witness when nonempty");
  empty->add_option("automaton", empty_file)->required();
  topt.attach(empty);
  empty->callback([&] {
    run = [&] {
      const MAutomaton a = topt.load(empty_file);
      const auto w = find_word(a);
      if (!w) {
        std::cout << "empty\n";
        return 0;
      }
      std::cout << format_tuple(*w, a.theory()->base()) << '\n';
      return 1;
    };
  });

  // unary closure operations
  std::string unary_file;
  int track = 0;
  auto* comp = app.add_subcommand("complement", "Complement an automaton");
  auto* proj = app.add_subcommand("project", "Existentially quantify one track");
  auto* cyl = app.add_subcommand("cylindrify", "Insert an unconstrained track");
  for (auto* cmd : {comp, proj, cyl}) {
    cmd->add_option("automaton", unary_file)->required();
    cmd->add_option("-o,--output", out, "Output file (default stdout)");
    topt.attach(cmd);
  }
  proj->add_option("--track", track, "Track to remove (1-based)")->required();
  cyl->add_option("--position", track, "Position of the new track (1-based)")->required();
  comp->callback([&] { run = [&] { emit(complement(topt.load(unary_file)), out); return 0; }; });
  proj->callback([&] { run = [&] { emit(project(topt.load(unary_file), track), out); return 0; }; });
  cyl->callback([&] { run = [&] { emit(cylindrify(topt.load(unary_file), track), out); return 0; }; });

  // binary closure operations
  std::string left, right;
  auto* prod = app.add_subcommand("product", "Intersection of two automata");
  auto* uni = app.add_subcommand("union", "Union of two automata");
  for (auto* cmd : {prod, uni}) {
    cmd->add_option("left", left)->required();
    cmd->add_option("right", right)->required();
    cmd->add_option("-o,--output", out, "Output file (default stdout)");
    topt.attach(cmd);
  }
  prod->callback([&] { run = [&] { emit(trim(intersect(topt.load(left), topt.load(right))), out); return 0; }; });
  uni->callback([&] { run = [&] { emit(union_of(topt.load(left), topt.load(right)), out); return 0; }; });

  // compile-mso
  std::string mso_input;
  int mso_tracks = 1;
  auto* cmso = app.add_subcommand("compile-mso", "Compile an MSO sentence to an automaton");
  cmso->add_option("sentence", mso_input, "Sentence text or file")->required();
  cmso->add_option("--tracks", mso_tracks, "Track count");
  cmso->add_option("-o,--output", out, "Output file (default stdout)");
  topt.attach(cmso);
  cmso->callback([&] {
    run = [&] {
      TheoryPtr th = topt.padded();
      if (!th) throw Error("compile-mso needs --theory");
      emit(compile_mso(parse_mso(read_text(mso_input), &th->signature()), mso_tracks, th), out);
      return 0;
    };
  });

  // decide
  std::string kind;
  std::vector<std::string> decide_args;
  auto* dec = app.add_subcommand("decide", "Decide a sentence: presburger SENTENCE | fo PRESENTATION SENTENCE | mso SENTENCE | satplus FILE");
  dec->add_option("kind", kind)->required()->check(CLI::IsMember({"presburger", "fo", "mso", "satplus"}));
  dec->add_option("inputs", decide_args)->required();
  topt.attach(dec);
  dec->callback([&] {
    run = [&] {
      auto need = [&](std::size_t n) {
        if (decide_args.size() != n) throw Error("decide " + kind + " takes " + std::to_string(n) + " argument(s)");
      };
      bool result = false;
      if (kind == "presburger") {
        need(1);
        const auto pa = resolve_base_theory("presburger");
        const Formula f = parse_formula(read_text(decide_args[0]), &pa->signature());
        require_sentence(f);
        result = pa->decide(f);
      } else if (kind == "fo") {
        need(2);
        const auto p = load_presentation(decide_args[0]);
        result = decide_fo(p, parse_formula(read_text(decide_args[1]), &p.signature()));
      } else if (kind == "mso") {
        need(1);
        TheoryPtr th = topt.padded();
        if (!th) throw Error("decide mso needs --theory");
        result = !is_empty(compile_mso(parse_mso(read_text(decide_args[0]), &th->signature()), 1, th));
      } else {
        need(1);
        TheoryPtr th = topt.padded();
        if (!th) throw Error("decide satplus needs --theory");
        const auto s = parse_msoplus(read_text(decide_args[0]), &th->signature());
        if (!check_fragment(s)) throw Error("sentence is outside the restricted MSO+ fragment");
        result = sat_plus(s, *th);
      }
      std::cout << (result ? "true" : "false") << '\n';
      return result ? 0 : 1;
    };
  });

  // ordinal
  std::string op, oa, ob;
  auto* ord = app.add_subcommand("ordinal", "Ordinal arithmetic below omega^omega on coefficient lists");
  ord->add_option("op", op)->required()->check(CLI::IsMember({"add", "cmp"}));
  ord->add_option("alpha", oa)->required();
  ord->add_option("beta", ob)->required();
  ord->callback([&] {
    run = [&] {
      const Cnf a = parse_cnf(oa), b = parse_cnf(ob);
      if (op == "add") {
        const Cnf r = cnf_add(a, b);
        std::cout << format_cnf(r) << '\n' << pretty_cnf(r) << '\n';
      } else {
        const auto c = cnf_compare(a, b);
        std::cout << pretty_cnf(a) << (c < 0 ? " < " : c > 0 ? " > " : " = ") << pretty_cnf(b) << '\n';
      }
      return 0;
    };
  });

  // skolem-encode
  std::uint64_t skolem_n = 0;
  auto* sk = app.add_subcommand("skolem-encode", "Prime-exponent word of a positive integer");
  sk->add_option("n", skolem_n)->required();
  sk->callback([&] {
    run = [&] {
      const Word w = skolem_encode(skolem_n);
      std::cout << format_word(w, *resolve_base_theory("presburger")) << '\n';
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
