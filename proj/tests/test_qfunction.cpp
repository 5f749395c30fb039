#include <catch2/catch_amalgamated.hpp>

#include "qset/qfunction.hpp"
#include "qset/universe.hpp"
#include "qset/value.hpp"

using namespace qset;

namespace {

Universe make_universe() {
  Universe u;
  u.declare_species(Species("s"), 3);
  u.declare_species(Species("t"), 2);
  return u;
}

QSetValue classical(std::initializer_list<const char*> names) {
  std::vector<Value> elems;
  for (const char* n : names) elems.emplace_back(MAtomLabel(n));
  return make_qset(elems);
}

}  // namespace

TEST_CASE("a pure domain admits exactly two quasi-functions into a two-point set") {
  Universe u = make_universe();
  QSetValue dom = pure_qset(Species("s"), 3);
  QSetValue cod = classical({"0", "1"});
  auto fs = enumerate_qfunctions(dom, cod, u);
  REQUIRE(fs.size() == 2);
  for (const auto& f : fs) {
    REQUIRE(f.assignments.size() == 1);
    // the whole domain class maps to one codomain class
    for (const auto& [arg, val] : f.assignments)
      CHECK(std::holds_alternative<MAtomLabel>(val));
  }
}

TEST_CASE("classical domains recover the classical function count") {
  Universe u = make_universe();
  QSetValue cod = classical({"0", "1"});
  CHECK(enumerate_qfunctions(classical({"a", "b"}), cod, u).size() == 4);
  CHECK(enumerate_qfunctions(classical({"a", "b", "c"}), cod, u).size() == 8);
  CHECK(enumerate_qfunctions(classical({"a", "b", "c", "d"}), cod, u).size() == 16);
}

TEST_CASE("the empty domain has exactly the empty quasi-function") {
  Universe u = make_universe();
  auto fs = enumerate_qfunctions(QSetValue(), classical({"0", "1"}), u);
  REQUIRE(fs.size() == 1);
  CHECK(fs.front().assignments.empty());
  CHECK(fs.front().graph.is_empty());
}

TEST_CASE("an empty codomain admits no quasi-function from a nonempty domain") {
  Universe u = make_universe();
  CHECK_THROWS_AS(enumerate_qfunctions(classical({"a"}), QSetValue(), u), Error);
  CHECK(enumerate_qfunctions(QSetValue(), QSetValue(), u).size() == 1);
}

TEST_CASE("enumerated quasi-functions respect indistinguishability") {
  Universe u = make_universe();
  QSetValue dom = union_of(pure_qset(Species("s"), 2), classical({"a"}));
  QSetValue cod = union_of(pure_qset(Species("t"), 2), classical({"0"}));
  auto fs = enumerate_qfunctions(dom, cod, u);
  REQUIRE(fs.size() == 4);  // 2 domain classes, 2 codomain classes
  for (const auto& f : fs)
    for (const auto& [a1, v1] : f.assignments)
      for (const auto& [a2, v2] : f.assignments)
        if (indistinguishable(a1, a2)) REQUIRE(indistinguishable(v1, v2));
}

TEST_CASE("classifying quasi-functions") {
  Universe u = make_universe();
  SECTION("the identity on a classical pair is a bijection") {
    QSetValue dom = classical({"a", "b"});
    auto fs = enumerate_qfunctions(dom, dom, u);
    REQUIRE(fs.size() == 4);
    int bijections = 0;
    for (const auto& f : fs) {
      auto flags = classify_qfunction(f);
      if (flags.q_bijection) {
        ++bijections;
        CHECK(flags.q_injection);
        CHECK(flags.q_surjection);
      }
    }
    CHECK(bijections == 2);  // identity and the swap
  }
  SECTION("a constant map off a pure triple is not a q-injection") {
    QSetValue dom = pure_qset(Species("s"), 3);
    QSetValue cod = classical({"0", "1"});
    auto fs = enumerate_qfunctions(dom, cod, u);
    for (const auto& f : fs) {
      auto flags = classify_qfunction(f);
      // value classes cannot collapse further, but qc(dom)=3 > qc(range)=1
      CHECK_FALSE(flags.q_injection);
      CHECK_FALSE(flags.q_surjection);
      CHECK_FALSE(flags.q_bijection);
    }
  }
  SECTION("range tracking: a surjection needs every codomain element hit") {
    QSetValue dom = classical({"a", "b"});
    QSetValue cod = classical({"0"});
    auto fs = enumerate_qfunctions(dom, cod, u);
    REQUIRE(fs.size() == 1);
    auto flags = classify_qfunction(fs.front());
    CHECK(flags.q_surjection);
    CHECK_FALSE(flags.q_injection);
  }
}
