#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mauto/automaton_ops.hpp"
#include "mauto/formula_io.hpp"
#include "mauto/mso.hpp"
#include "mauto/presburger.hpp"
#include "support/gen.hpp"

using namespace mauto;

namespace {

TheoryPtr presburger_fresh() {
  static const TheoryPtr t = PaddedTheory::fresh(std::make_shared<PresburgerArithmetic>());
  return t;
}

Word W(std::initializer_list<std::int64_t> xs) {
  Word w;
  for (auto x : xs) w.push_back(Element::atom(x));
  return w;
}

MsoFormula M(const std::string& text) { return parse_mso(text); }

const char* kEven = "(forallP y (alpha (exists z (rel plus z z t1)) y))";
const char* kAlternate =
    "(forallP x (forallP y (implies (and (lt x y) (not (existsP z (and (lt x z) (lt z y))))) "
    "(or (and (alpha (exists z (rel plus z z t1)) x) (not (alpha (exists z (rel plus z z t1)) y))) "
    "(and (not (alpha (exists z (rel plus z z t1)) x)) (alpha (exists z (rel plus z z t1)) y))))))";

MsoFormula successor(const std::string& x, const std::string& y, const std::string& z) {
  return MsoFormula::conj({MsoFormula::lt(x, y), MsoFormula::negation(MsoFormula::exists_pos(
                                                     z, MsoFormula::conj({MsoFormula::lt(x, z), MsoFormula::lt(z, y)})))});
}

// Sentence saying "some labelling of positions by states is an accepting run of a".
MsoFormula run_encoding(const MAutomaton& a) {
  const int n = a.state_count();
  auto X = [](int q) { return "X" + std::to_string(q); };
  std::vector<MsoFormula> parts;

  std::vector<MsoFormula> one_state;
  for (int q = 0; q < n; ++q) {
    std::vector<MsoFormula> c{MsoFormula::in("x", X(q))};
    for (int p = 0; p < n; ++p)
      if (p != q) c.push_back(MsoFormula::negation(MsoFormula::in("x", X(p))));
    one_state.push_back(MsoFormula::conj(c));
  }
  parts.push_back(MsoFormula::forall_pos("x", MsoFormula::disj(one_state)));

  std::vector<MsoFormula> start;
  for (int q : a.initial_states()) start.push_back(MsoFormula::in("x", X(q)));
  const MsoFormula first = MsoFormula::negation(MsoFormula::exists_pos("y", MsoFormula::lt("y", "x")));
  parts.push_back(MsoFormula::forall_pos("x", MsoFormula::implies(first, start.empty() ? MsoFormula::falsity() : MsoFormula::disj(start))));

  std::vector<MsoFormula> step, finish;
  for (const auto& t : a.transitions()) {
    step.push_back(MsoFormula::conj({MsoFormula::in("x", X(t.from)), MsoFormula::alpha(t.label, "x"), MsoFormula::in("y", X(t.to))}));
    if (a.is_final(t.to)) finish.push_back(MsoFormula::conj({MsoFormula::in("x", X(t.from)), MsoFormula::alpha(t.label, "x")}));
  }
  auto any = [](std::vector<MsoFormula> v) { return v.empty() ? MsoFormula::falsity() : MsoFormula::disj(std::move(v)); };
  parts.push_back(MsoFormula::forall_pos("x", MsoFormula::forall_pos("y", MsoFormula::implies(successor("x", "y", "z"), any(step)))));
  const MsoFormula last = MsoFormula::negation(MsoFormula::exists_pos("y", MsoFormula::lt("x", "y")));
  parts.push_back(MsoFormula::forall_pos("x", MsoFormula::implies(last, any(finish))));

  bool eps = false;
  for (int q : a.initial_states()) eps = eps || a.is_final(q);
  parts.push_back(MsoFormula::disj({MsoFormula::exists_pos("x", MsoFormula::truth()), eps ? MsoFormula::truth() : MsoFormula::falsity()}));

  MsoFormula f = MsoFormula::conj(parts);
  for (int q = n - 1; q >= 0; --q) f = MsoFormula::exists_set(X(q), f);
  return f;
}

}  // namespace

TEST_CASE("direct semantics examples") {
  const auto& th = *presburger_fresh();
  CHECK(mso_holds(M(kEven), {W({2, 4, 6})}, th));
  CHECK_FALSE(mso_holds(M(kEven), {W({2, 3})}, th));
  CHECK(mso_holds(M(kAlternate), {W({0, 1, 2})}, th));
  CHECK_FALSE(mso_holds(M(kAlternate), {W({0, 2})}, th));
  CHECK(mso_holds(M(kEven), {W({})}, th));
  CHECK(mso_holds(M("(forallS X (forallP x (in x X)))"), {W({})}, th));
  CHECK_FALSE(mso_holds(M("(existsP x true)"), {W({})}, th));
}

TEST_CASE("direct semantics with free variables") {
  const auto& th = *presburger_fresh();
  const MsoFormula f = M("(and (lt x y) (in y X))");
  CHECK(mso_holds(f, {W({5, 6, 7})}, th, {{"x", 0}, {"y", 2}}, {{"X", 0b100u}}));
  CHECK_FALSE(mso_holds(f, {W({5, 6, 7})}, th, {{"x", 0}, {"y", 2}}, {{"X", 0b010u}}));
  CHECK_THROWS_AS(mso_holds(f, {W({5, 6, 7})}, th), Error);
}

TEST_CASE("set quantifier guard") {
  const auto& th = *presburger_fresh();
  Word w(kMsoSetQuantifierLimit + 1, Element::atom(0));
  CHECK_THROWS_AS(mso_holds(M("(existsS X (subset X X))"), {w}, th), Error);
  CHECK(mso_holds(M(kEven), {w}, th));
}

TEST_CASE("compile examples") {
  const auto even = compile_mso(M(kEven), 1, presburger_fresh());
  CHECK(accepts(even, {W({2, 4})}));
  CHECK_FALSE(accepts(even, {W({3})}));
  CHECK(accepts(even, {W({})}));

  const auto alt = compile_mso(M(kAlternate), 1, presburger_fresh());
  CHECK(accepts(alt, {W({0, 1, 2})}));
  CHECK_FALSE(accepts(alt, {W({0, 2})}));

  const auto all = compile_mso(MsoFormula::truth(), 1, gen::two_fresh());
  for (const auto& w : gen::words(gen::two_letters(), 3)) CHECK(accepts(all, {w}));

  const auto two = compile_mso(M("(forallP x (alpha (= t1 t2) x))"), 2, gen::two_fresh());
  for (const auto& t : gen::tuples(2, 2)) CHECK(accepts(two, t) == (t[0] == t[1]));
}

TEST_CASE("compile rejects open formulas") {
  CHECK_THROWS_AS(compile_mso(M("(lt x y)"), 1, gen::two_fresh()), Error);
  CHECK_THROWS_AS(compile_mso(M("(existsP x (alpha (= t1 t3) x))"), 2, gen::two_fresh()), Error);
}

TEST_CASE("mso text round trip") {
  gen::Rng r(41);
  gen::MsoGen g{r, 2};
  for (int i = 0; i < 100; ++i) {
    const MsoFormula f = g(3);
    CHECK(print_mso(parse_mso(print_mso(f))) == print_mso(f));
  }
  CHECK(print_mso(M(kEven)) == kEven);
}

TEST_CASE("property: compile agrees with direct semantics") {
  gen::Rng r(42);
  const auto th = gen::two_fresh();
  const auto ws = gen::words(gen::two_letters(), 4);
  for (int round = 0; round < 200; ++round) {
    gen::MsoGen g{r, 1};
    const MsoFormula f = g(3);
    const auto a = compile_mso(f, 1, th);
    for (const auto& w : ws) CHECK_MESSAGE(accepts(a, {w}) == mso_holds(f, {w}, *th), print_mso(f));
  }
}

TEST_CASE("property: two-track compile agrees with direct semantics") {
  gen::Rng r(43);
  const auto th = gen::two_fresh();
  const auto ts = gen::tuples(2, 2);
  for (int round = 0; round < 60; ++round) {
    gen::MsoGen g{r, 2};
    const MsoFormula f = g(3);
    const auto a = compile_mso(f, 2, th);
    for (const auto& t : ts) CHECK_MESSAGE(accepts(a, t) == mso_holds(f, t, *th), print_mso(f));
  }
}

TEST_CASE("property: run encoding recovers the automaton language") {
  gen::Rng r(44);
  const auto ws = gen::words(gen::two_letters(), 3);
  for (int round = 0; round < 30; ++round) {
    const auto a = gen::automaton(r, 1, 3);
    const MsoFormula f = run_encoding(a);
    const auto c = compile_mso(f, 1, a.theory());
    for (const auto& w : ws) {
      CHECK(accepts(c, {w}) == accepts(a, {w}));
      CHECK(mso_holds(f, {w}, *a.theory()) == accepts(a, {w}));
    }
  }
}

TEST_CASE("property: letter classes are exclusive and exhaustive") {
  gen::Rng r(45);
  const auto th = gen::two_fresh();
  std::vector<Column> columns;
  const std::vector<Element> cells{Element::atom(0), Element::atom(1), Element::padding()};
  for (const auto& x : cells)
    for (const auto& y : cells)
      if (!(x.is_padding() && y.is_padding())) columns.push_back({x, y});
  for (int round = 0; round < 60; ++round) {
    gen::MsoGen g{r, 2};
    const auto comp = compile_mso_letters(g(3), 2, *th);
    CHECK(comp.dfa.alphabet == static_cast<int>(comp.minterms.size()));
    for (const auto& col : columns) {
      const Assignment a{{track_var(1), col[0]}, {track_var(2), col[1]}};
      int hits = 0;
      for (const auto& m : comp.minterms) hits += th->eval(m, a);
      CHECK(hits == 1);
    }
  }
}
