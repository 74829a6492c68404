#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mauto/finite_structure.hpp"
#include "mauto/formula_io.hpp"
#include "mauto/padded.hpp"
#include "mauto/presburger.hpp"
#include "support/gen.hpp"
#include "support/presburger_cases.hpp"

using namespace mauto;

namespace {

const PresburgerArithmetic& pa() {
  static const PresburgerArithmetic p;
  return p;
}

Formula F(const std::string& text) { return cases::expand(text); }

Element N(std::int64_t v) { return Element::atom(v); }

bool existential_text(const std::string& t) {
  return t.rfind("(exists", 0) == 0 && t.find("forall") == std::string::npos && t.find("(not (exists") == std::string::npos;
}

// Quantifier-free matrices over x, y built from small-coefficient atoms.
Formula presburger_matrix(gen::Rng& r, int depth) {
  static const std::vector<std::string> atoms{
      "(rel plus x x y)", "(rel plus x y x)", "(rel plus y y x)", "(= x y)", "(zero x)", "(zero y)",
      "(one x)", "(one y)", "(exists u (and (rel plus x x u) (rel plus u x y)))",
      "(exists u (and (one u) (rel plus x u y)))", "(exists u (exists v (and (one u) (rel plus u u v) (rel plus v u x))))"};
  if (depth == 0 || gen::coin(r, 0.3)) return F(atoms[static_cast<std::size_t>(gen::pick(r, 0, static_cast<int>(atoms.size()) - 1))]);
  switch (gen::pick(r, 0, 2)) {
    case 0: return lnot(presburger_matrix(r, depth - 1));
    case 1: return Formula::conj({presburger_matrix(r, depth - 1), presburger_matrix(r, depth - 1)});
    default: return Formula::disj({presburger_matrix(r, depth - 1), presburger_matrix(r, depth - 1)});
  }
}

}  // namespace

TEST_CASE("finite structure basics") {
  const auto s = gen::two_element();
  CHECK(s->size() == 2);
  CHECK(s->decide(parse_formula("(exists x (rel P x))")));
  CHECK_FALSE(s->decide(parse_formula("(forall x (rel P x))")));
  CHECK(s->decide(parse_formula("(forall x (exists y (rel E x y)))")));
  CHECK_FALSE(s->decide(parse_formula("(exists x (and (rel E x x) (rel P x)))")));
  CHECK(s->eval(parse_formula("(rel E x y)"), {{"x", N(0)}, {"y", N(1)}}));
  CHECK_FALSE(s->eval(parse_formula("(rel E x y)"), {{"x", N(1)}, {"y", N(0)}}));
  CHECK(s->format_element(N(1)) == "b");
  CHECK(s->parse_element("a") == N(0));
  CHECK_THROWS_AS(s->parse_element("c"), Error);
  CHECK(FiniteStructure::parse(s->to_text())->to_text() == s->to_text());
}

TEST_CASE("finite structure rejects malformed input") {
  CHECK_THROWS_AS(FiniteStructure::parse("domain a b\nrel P/1 = {c}\n"), Error);
  CHECK_THROWS_AS(FiniteStructure::parse("domain a b\nrel E/2 = {(a)}\n"), Error);
  CHECK_THROWS_AS(FiniteStructure::parse("rel P/1 = {a}\n"), Error);
}

TEST_CASE("presburger examples") {
  CHECK(pa().decide(F("(exists x (rel plus x x x))")));
  CHECK(pa().decide(F("(forall x (forall y (implies (rel plus x y y) (rel plus x x x))))")));
  for (int x = 0; x <= 8; ++x)
    for (int y = 0; y <= 8; ++y)
      if (x + y == y) CHECK(x + x == x);

  const Formula even_odd =
      F("(forall x (exists y (or (rel plus y y x) (exists u (and (rel plus y y u) (exists o (and (one o) (rel plus u o x))))))))");
  CHECK(pa().decide(even_odd));
  const Formula instance = F("(exists y (or (rel plus y y x) (exists u (and (rel plus y y u) (exists o (and (one o) (rel plus u o x)))))))");
  for (int x = 0; x <= 16; ++x) CHECK(pa().eval(instance, {{"x", N(x)}}));
}

TEST_CASE("presburger definable constants") {
  for (int n = 0; n <= 5; ++n) {
    const Formula def = numeral_formula(n, "x");
    for (int v = 0; v <= 7; ++v) CHECK(pa().eval(def, {{"x", N(v)}}) == (v == n));
  }
  CHECK(pa().eval(one_formula("x"), {{"x", N(1)}}));
  CHECK_FALSE(pa().eval(one_formula("x"), {{"x", N(2)}}));
  CHECK(pa().eval(zero_formula("x"), {{"x", N(0)}}));
}

TEST_CASE("presburger eval guard") {
  CHECK_THROWS_AS(pa().eval(F("(rel plus x x x)"), {{"x", N(PresburgerArithmetic::kEvalLimit + 1)}}), Error);
  CHECK_NOTHROW(pa().eval(F("(rel plus x x x)"), {{"x", N(PresburgerArithmetic::kEvalLimit)}}));
  CHECK_THROWS_AS(pa().eval(F("(rel plus x x y)"), {{"x", N(1)}}), Error);
  CHECK_THROWS_AS(pa().decide(F("(rel plus x x x)")), Error);
}

TEST_CASE("curated presburger sentences") {
  for (const auto& c : cases::presburger()) {
    const Formula f = F(c.text);
    CHECK_MESSAGE(pa().decide(f) == c.truth, c.text);
    if (c.truth && existential_text(c.text)) CHECK_MESSAGE(cases::diagonal_witness(pa(), f).has_value(), c.text);
  }
}

TEST_CASE("padded oracle examples") {
  const auto base = std::make_shared<PresburgerArithmetic>();
  const auto fresh = PaddedTheory::fresh(base);
  CHECK(fresh->decide(parse_formula("(exists x (pad x))")));
  CHECK_FALSE(fresh->decide(parse_formula("(exists x (and (pad x) (rel plus x x x)))")));
  CHECK(fresh->eval(parse_formula("(pad x)"), {{"x", Element::padding()}}));
  CHECK_FALSE(fresh->eval(parse_formula("(rel plus x y z)"), {{"x", Element::padding()}, {"y", N(0)}, {"z", N(0)}}));
  CHECK(fresh->pad_element().is_padding());

  const auto alias = PaddedTheory::alias(base, N(0));
  CHECK(alias->eval(parse_formula("(pad x)"), {{"x", N(0)}}));
  CHECK_FALSE(alias->eval(parse_formula("(pad x)"), {{"x", N(3)}}));
  CHECK(alias->decide(parse_formula("(forall x (implies (pad x) (rel plus x x x)))")));
  CHECK_FALSE(alias->decide(parse_formula("(exists x (exists y (and (pad x) (pad y) (not (= x y)))))")));
}

TEST_CASE("alias padding needs a definable element") {
  CHECK_THROWS_AS(PaddedTheory::alias(gen::two_element(), N(0)), Error);
  CHECK_THROWS_AS(PaddedTheory::alias(std::make_shared<PresburgerArithmetic>(), Element::padding()), Error);
}

TEST_CASE("find_witness examples") {
  const auto w = pa().find_witness(F("(and (rel plus x x y) (not (= y x)))"), {"x", "y"});
  REQUIRE(w);
  const auto x = w->at("x").value(), y = w->at("y").value();
  CHECK(y == 2 * x);
  CHECK(x >= 1);

  const auto s = gen::two_element();
  const auto u = s->find_witness(parse_formula("(not (= x y))"), {"x", "y"});
  REQUIRE(u);
  CHECK(u->at("x") != u->at("y"));

  CHECK_FALSE(pa().find_witness(F("(and (rel plus x x x) (not (= x x)))"), {"x"}));
}

TEST_CASE("property: existential sentences are true iff a diagonal witness exists") {
  gen::Rng r(21);
  int trues = 0;
  for (int round = 0; round < 60; ++round) {
    const Formula phi = Formula::exists("x", Formula::exists("y", presburger_matrix(r, 3)));
    const bool truth = pa().decide(phi);
    const auto w = cases::diagonal_witness(pa(), phi);
    CHECK_MESSAGE(truth == w.has_value(), print_formula(phi));
    trues += truth;
  }
  CHECK(trues > 5);
}

TEST_CASE("property: satisfiable agrees with find_witness") {
  gen::Rng r(22);
  for (int round = 0; round < 40; ++round) {
    const Formula phi = presburger_matrix(r, 2);
    const auto w = pa().find_witness(phi, {"x", "y"});
    CHECK_MESSAGE(pa().satisfiable(phi) == w.has_value(), print_formula(phi));
    if (w) CHECK(pa().eval(phi, *w));
  }
  for (int round = 0; round < 200; ++round) {
    const auto s = gen::random_structure(r);
    const Formula phi = gen::formula(r, {"x", "y"}, 3, false);
    const auto w = s->find_witness(phi, {"x", "y"});
    CHECK_MESSAGE(s->satisfiable(phi) == w.has_value(), print_formula(phi));
    if (w) CHECK(s->eval(phi, *w));
  }
}

TEST_CASE("property: fresh padding agrees with the literal padded structure") {
  gen::Rng r(23);
  int checked = 0;
  for (int round = 0; round < 80; ++round) {
    const auto base = gen::random_structure(r);
    const auto literal = base->with_padding_element();
    const auto padded = PaddedTheory::fresh(base);
    for (int k = 0; k < 10; ++k) {
      const Formula phi = gen::formula(r, {"x"}, 3);
      if (quantifier_depth(phi) > 2) continue;
      const Formula sentence = gen::coin(r) ? Formula::exists("x", phi) : Formula::forall("x", phi);
      CHECK_MESSAGE(padded->decide(sentence) == literal->decide(sentence), print_formula(sentence));
      for (int v = 0; v <= base->size(); ++v) {
        const Element e = v == base->size() ? Element::padding() : N(v);
        CHECK(padded->eval(phi, {{"x", e}}) == literal->eval(phi, {{"x", N(v)}}));
      }
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("property: concurrent decisions agree with sequential ones") {
  gen::Rng r(24);
  const auto padded = gen::two_fresh();
  std::vector<Formula> fs;
  for (int i = 0; i < 64; ++i) fs.push_back(Formula::exists("x", gen::formula(r, {"x"}, 3)));
  std::vector<char> seq, par(fs.size());
  for (const auto& f : fs) seq.push_back(padded->decide(f));
#pragma omp parallel for
  for (long i = 0; i < static_cast<long>(fs.size()); ++i) par[static_cast<std::size_t>(i)] = padded->decide(fs[static_cast<std::size_t>(i)]);
  CHECK(seq == par);
}
