#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mauto/finite_structure.hpp"
#include "mauto/formula_io.hpp"
#include "mauto/logic.hpp"
#include "support/gen.hpp"

using namespace mauto;

namespace {

Formula F(const char* text) { return parse_formula(text); }
std::set<std::string> S(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("free variables") {
  CHECK(free_vars(F("(rel plus x y z)")) == S({"x", "y", "z"}));
  CHECK(free_vars(F("(exists x (rel plus x x y))")) == S({"y"}));
  CHECK(free_vars(F("true")).empty());
  CHECK(free_vars(F("(and (pad x) (forall x (= x y)))")) == S({"x", "y"}));
}

TEST_CASE("substitution") {
  Signature sig({{"plus", 3}}, {"c1", "c2"});
  const Formula r = substitute(F("(rel plus x y z)"), {{"x", Term::constant("c1")}});
  CHECK(print_formula(r) == "(rel plus c1 y z)");
  CHECK(parse_formula("(rel plus c1 y z)", &sig) == r);

  const Formula captured = substitute(F("(exists y (= x y))"), {{"x", Term::var("y")}});
  CHECK(print_formula(captured) == "(exists y1 (= y y1))");

  const Formula two = substitute(F("(exists z (and (rel plus x1 z x2) (= x1 x2)))"),
                                 {{"x1", Term::constant("c1")}, {"x2", Term::constant("c2")}});
  CHECK(print_formula(two) == "(exists z (and (rel plus c1 z c2) (= c1 c2)))");
  CHECK(constants_of(two) == S({"c1", "c2"}));

  CHECK_THROWS_AS(substitute(F("(exists x (= x x))"), {{"x", Term::var("y")}}), Error);
}

TEST_CASE("fresh names are the smallest unused suffix") {
  CHECK(fresh_name("y", S({"x"})) == "y");
  CHECK(fresh_name("y", S({"y", "y1", "y3"})) == "y2");
}

TEST_CASE("padding elimination examples") {
  CHECK(eliminate_pad(F("(pad x)"), {{"x", PadStatus::Padding}}) == Formula::truth());
  CHECK(eliminate_pad(F("(pad x)"), {{"x", PadStatus::Proper}}) == Formula::falsity());
  const Formula plus = F("(rel plus x y z)");
  CHECK(eliminate_pad(plus, {{"x", PadStatus::Proper}, {"y", PadStatus::Proper}, {"z", PadStatus::Proper}}) == plus);
  CHECK(simplify(eliminate_pad(F("(exists z (rel plus z z x))"), {{"x", PadStatus::Padding}})) == Formula::falsity());
  CHECK(eliminate_pad(F("(= x y)"), {{"x", PadStatus::Padding}, {"y", PadStatus::Padding}}) == Formula::truth());
  CHECK(eliminate_pad(F("(= x y)"), {{"x", PadStatus::Padding}, {"y", PadStatus::Proper}}) == Formula::falsity());
}

TEST_CASE("padding elimination on a three-element structure agrees with enumeration") {
  std::string text = "domain a b c\nrel plus/3 = {";
  const char* names = "abc";
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) text += std::string("(") + names[x] + "," + names[y] + "," + names[(x + y) % 3] + ") ";
  text += "}\n";
  const auto base = FiniteStructure::parse(text);
  const auto literal = base->with_padding_element();
  const Formula phi = F("(exists z (rel plus z z x))");
  CHECK_FALSE(literal->eval(phi, {{"x", Element::atom(3)}}));
  for (int x = 0; x < 3; ++x) CHECK(literal->eval(phi, {{"x", Element::atom(x)}}));
}

TEST_CASE("property: padding elimination matches the literal padded structure") {
  gen::Rng r(11);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    const auto base = gen::random_structure(r);
    const auto literal = base->with_padding_element();
    const int n = base->size();
    for (int k = 0; k < 8; ++k) {
      const Formula phi = gen::formula(r, {"x", "y"}, 3);
      if (quantifier_depth(phi) > 2) continue;
      for (int vx = 0; vx <= n; ++vx)
        for (int vy = 0; vy <= n; ++vy) {
          PadMask mask{{"x", vx == n ? PadStatus::Padding : PadStatus::Proper},
                       {"y", vy == n ? PadStatus::Padding : PadStatus::Proper}};
          Assignment proper;
          if (vx < n) proper["x"] = Element::atom(vx);
          if (vy < n) proper["y"] = Element::atom(vy);
          const Formula reduced = simplify(eliminate_pad(phi, mask));
          Assignment used;
          for (const auto& v : free_vars(reduced)) used[v] = proper.at(v);
          const bool expected = literal->eval(phi, {{"x", Element::atom(vx)}, {"y", Element::atom(vy)}});
          CHECK_MESSAGE(base->eval(reduced, used) == expected, print_formula(phi));
          ++checked;
        }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("property: substitution obeys the free-variable equation") {
  gen::Rng r(12);
  const std::vector<std::string> pool{"x", "y", "z", "v0", "v1"};
  for (int round = 0; round < 300; ++round) {
    const Formula phi = gen::formula(r, {"x", "y", "z"}, 3);
    const auto fv = free_vars(phi);
    if (fv.empty()) continue;
    std::map<std::string, Term> mapping;
    std::set<std::string> introduced;
    for (const auto& v : fv) {
      if (!gen::coin(r)) continue;
      const std::string target = pool[static_cast<std::size_t>(gen::pick(r, 0, 4))];
      mapping.emplace(v, Term::var(target));
      introduced.insert(target);
    }
    std::set<std::string> expected;
    for (const auto& v : fv)
      if (!mapping.count(v)) expected.insert(v);
    expected.insert(introduced.begin(), introduced.end());
    CHECK_MESSAGE(free_vars(substitute(phi, mapping)) == expected, print_formula(phi));
  }
}

TEST_CASE("property: simplify and negation normal form preserve truth") {
  gen::Rng r(13);
  for (int round = 0; round < 40; ++round) {
    const auto base = gen::random_structure(r);
    const auto literal = base->with_padding_element();
    const Formula phi = gen::formula(r, {"x"}, 3);
    for (int v = 0; v <= base->size(); ++v) {
      const Assignment a{{"x", Element::atom(v)}};
      const bool want = literal->eval(phi, a);
      CHECK(literal->eval(simplify(phi), a) == want);
      CHECK(literal->eval(to_nnf(phi), a) == want);
      CHECK(literal->eval(rename_bound_apart(phi), a) == want);
    }
  }
}

TEST_CASE("text round trip") {
  gen::Rng r(14);
  for (int i = 0; i < 200; ++i) {
    const Formula phi = gen::formula(r, {"x", "y"}, 3);
    CHECK(parse_formula(print_formula(phi)) == phi);
  }
  CHECK(print_formula(F("(implies (pad x)   (not (= x y)))")) == "(implies (pad x) (not (= x y)))");
}

TEST_CASE("signature checks") {
  Signature sig({{"plus", 3}});
  CHECK_THROWS_AS(parse_formula("(rel plus x y)", &sig), Error);
  CHECK_THROWS_AS(parse_formula("(rel times x y z)", &sig), Error);
  CHECK_THROWS_AS(parse_formula("(and x", &sig), Error);
  CHECK_NOTHROW(parse_formula("(forall x (exists y (rel plus x y x)))", &sig));
}
