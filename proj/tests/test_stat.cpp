#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qset/stat.hpp"
#include "qset/value.hpp"

using namespace qset;
using namespace qset::stat;

namespace {

// Brute-force oracle: place N labeled particles into n labeled boxes, one
// at a time, and group the n^N placements by occupancy vector.
std::map<std::vector<std::size_t>, BigInt> labeled_placements(std::size_t n, std::size_t N) {
  std::map<std::vector<std::size_t>, BigInt> grouped;
  std::vector<std::size_t> assign(N, 0);
  for (;;) {
    std::vector<std::size_t> occ(n, 0);
    for (std::size_t b : assign) ++occ[b];
    grouped[occ] += 1;
    std::size_t i = N;
    bool done = true;
    while (i > 0) {
      --i;
      if (assign[i] + 1 < n) {
        ++assign[i];
        for (std::size_t j = i + 1; j < N; ++j) assign[j] = 0;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return grouped;
}

}  // namespace

TEST_CASE("occupancy enumeration") {
  SECTION("two boxes, three particles") {
    auto vs = enumerate_occupancies(2, 3);
    REQUIRE(vs.size() == 4);
    CHECK(vs[0].counts == std::vector<std::size_t>{0, 3});
    CHECK(vs[1].counts == std::vector<std::size_t>{1, 2});
    CHECK(vs[2].counts == std::vector<std::size_t>{2, 1});
    CHECK(vs[3].counts == std::vector<std::size_t>{3, 0});
  }
  SECTION("zero particles") {
    auto vs = enumerate_occupancies(3, 0);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].counts == std::vector<std::size_t>{0, 0, 0});
  }
  SECTION("count matches the brute-force grouping") {
    CHECK(enumerate_occupancies(3, 2).size() == labeled_placements(3, 2).size());
    CHECK(enumerate_occupancies(3, 2).size() == 6);
  }
  SECTION("zero boxes are rejected") {
    CHECK_THROWS_AS(enumerate_occupancies(0, 3), Error);
  }
}

TEST_CASE("multinomial weights") {
  CHECK(multinomial_weight({{2, 1}}) == 3);
  CHECK(multinomial_weight({{3, 0}}) == 1);
  SECTION("matches the brute-force count") {
    auto brute = labeled_placements(2, 4);
    CHECK(multinomial_weight({{2, 2}}) == brute[{2, 2}]);
    CHECK(multinomial_weight({{2, 2}}) == 6);
  }
}

TEST_CASE("Maxwell-Boltzmann reports") {
  SECTION("two boxes, three particles: the 1+3+3+1 parcels") {
    auto r = mb_report(2, 3);
    REQUIRE(r.per_occupancy.size() == 4);
    CHECK(r.per_occupancy[0].second == 1);
    CHECK(r.per_occupancy[1].second == 3);
    CHECK(r.per_occupancy[2].second == 3);
    CHECK(r.per_occupancy[3].second == 1);
    CHECK(r.total == 8);
  }
  SECTION("one box") {
    CHECK(mb_report(1, 7).total == 1);
  }
  SECTION("three boxes, four particles, against brute force") {
    auto r = mb_report(3, 4);
    CHECK(r.total == 81);
    auto brute = labeled_placements(3, 4);
    for (const auto& [v, w] : r.per_occupancy) REQUIRE(brute[v.counts] == w);
  }
}

TEST_CASE("Bose-Einstein reports") {
  CHECK(be_report(2, 3).total == 4);
  CHECK(be_report(4, 0).total == 1);
  CHECK(be_report(3, 3).total == 10);
  SECTION("every weight is one") {
    for (const auto& [v, w] : be_report(3, 5).per_occupancy) REQUIRE(w == 1);
  }
  SECTION("totals equal the composition count") {
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t N = 0; N <= 8; ++N)
        REQUIRE(be_report(n, N).total == binomial(N + n - 1, n - 1));
  }
}

TEST_CASE("Fermi-Dirac reports") {
  SECTION("three boxes, two particles") {
    auto r = fd_report(3, 2);
    CHECK(r.total == 3);
    for (const auto& [v, w] : r.per_occupancy) {
      REQUIRE(w == 1);
      for (std::size_t c : v.counts) REQUIRE(c <= 1);
    }
  }
  SECTION("more particles than boxes is impossible") {
    auto r = fd_report(2, 3);
    CHECK(r.total == 0);
    CHECK(r.per_occupancy.empty());
    CHECK(r.most_probable.empty());
  }
  SECTION("zero particles") {
    CHECK(fd_report(5, 0).total == 1);
  }
  SECTION("admissible occupancies are a subset of the Bose-Einstein support") {
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t N = 0; N <= 8; ++N) {
        std::set<std::vector<std::size_t>> be_support;
        for (const auto& [v, w] : be_report(n, N).per_occupancy) be_support.insert(v.counts);
        for (const auto& [v, w] : fd_report(n, N).per_occupancy) {
          REQUIRE(be_support.count(v.counts) == 1);
          REQUIRE(w == 1);
        }
      }
  }
}

TEST_CASE("most probable occupancies") {
  SECTION("even split wins") {
    auto mp = most_probable(2, 4);
    REQUIRE(mp.size() == 1);
    CHECK(mp[0].counts == std::vector<std::size_t>{2, 2});
  }
  SECTION("ties are reported in lexicographic order") {
    auto mp = most_probable(2, 3);
    REQUIRE(mp.size() == 2);
    CHECK(mp[0].counts == std::vector<std::size_t>{1, 2});
    CHECK(mp[1].counts == std::vector<std::size_t>{2, 1});
  }
  SECTION("no particles") {
    auto mp = most_probable(3, 0);
    REQUIRE(mp.size() == 1);
    CHECK(mp[0].counts == std::vector<std::size_t>{0, 0, 0});
  }
}

TEST_CASE("the Leibniz identity holds exactly") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t N = 0; N <= 10; ++N) {
      BigInt total = 0;
      for (const auto& v : enumerate_occupancies(n, N)) total += multinomial_weight(v);
      REQUIRE(total == ipow(n, N));
    }
}

TEST_CASE("per-occupancy weights equal brute-force labeled placement counts") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t N = 0; N <= 6; ++N) {
      auto brute = labeled_placements(n, N);
      auto r = mb_report(n, N);
      REQUIRE(r.per_occupancy.size() == brute.size());
      for (const auto& [v, w] : r.per_occupancy) REQUIRE(brute[v.counts] == w);
    }
}

TEST_CASE("box distributions of a qset") {
  Species s("s");
  SECTION("a pure triple over two boxes reproduces the occupancy table") {
    auto r = distributions_of_qset(pure_qset(s, 3), 2);
    CHECK(r.total == 8);
    REQUIRE(r.per_occupancy.size() == 4);
    std::vector<BigInt> weights;
    for (const auto& [v, w] : r.per_occupancy) weights.push_back(w);
    CHECK(weights == std::vector<BigInt>{1, 3, 3, 1});

    auto tuples = partition_tuples(pure_qset(s, 3), 2);
    REQUIRE(tuples.size() == 4);
    BigInt total = 0;
    for (const auto& t : tuples) total += t.multiplicity;
    CHECK(total == 8);
  }
  SECTION("a classical triple over two boxes yields eight distinct tuples") {
    QSetValue abc = make_qset({Value{MAtomLabel("a")}, Value{MAtomLabel("b")},
                               Value{MAtomLabel("c")}});
    auto tuples = partition_tuples(abc, 2);
    REQUIRE(tuples.size() == 8);
    std::set<std::string> distinct;
    for (const auto& t : tuples) {
      REQUIRE(t.multiplicity == 1);
      std::string key;
      for (const auto& b : t.boxes) key += b.raw_text() + "|";
      distinct.insert(key);
      // tuples partition the set
      QSetValue u = union_of(t.boxes[0], t.boxes[1]);
      REQUIRE(extensional_eq(Value{u}, Value{abc}).value());
      REQUIRE(t.boxes[0].quasi_cardinal() + t.boxes[1].quasi_cardinal() == 3);
    }
    CHECK(distinct.size() == 8);
    CHECK(distributions_of_qset(abc, 2).total == 8);
  }
  SECTION("the empty qset fills every box with nothing") {
    auto tuples = partition_tuples(QSetValue(), 3);
    REQUIRE(tuples.size() == 1);
    for (const auto& b : tuples.front().boxes) REQUIRE(b.is_empty());
    CHECK(distributions_of_qset(QSetValue(), 3).total == 1);
  }
  SECTION("tuples satisfy the side conditions on random mixed qsets") {
    QSetValue x = make_qset({Value{make_m_atom(s)}, Value{make_m_atom(s)},
                             Value{MAtomLabel("a")}, Value{MAtomLabel("b")}});
    auto tuples = partition_tuples(x, 3);
    BigInt total = 0;
    for (const auto& t : tuples) {
      total += t.multiplicity;
      QSetValue u;
      std::size_t qcs = 0;
      for (const auto& b : t.boxes) {
        u = union_of(u, b);
        qcs += b.quasi_cardinal();
      }
      REQUIRE(extensional_eq(Value{u}, Value{x}).value());
      REQUIRE(qcs == x.quasi_cardinal());
    }
    CHECK(total == ipow(3, 4));
  }
  SECTION("the aggregated report agrees with the explicit tuple enumeration") {
    QSetValue x = make_qset({Value{make_m_atom(s)}, Value{make_m_atom(s)},
                             Value{make_m_atom(Species("t"))}, Value{MAtomLabel("a")}});
    for (std::size_t n = 1; n <= 3; ++n) {
      auto report = distributions_of_qset(x, n);
      std::map<std::vector<std::size_t>, BigInt> agg;
      for (const auto& t : partition_tuples(x, n)) {
        std::vector<std::size_t> occ;
        for (const auto& b : t.boxes) occ.push_back(b.quasi_cardinal());
        agg[occ] += t.multiplicity;
      }
      REQUIRE(agg.size() == report.per_occupancy.size());
      for (const auto& [v, w] : report.per_occupancy) REQUIRE(agg[v.counts] == w);
    }
  }
  SECTION("agreement between the combinatorial and set-theoretic layers") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t N = 0; N <= 6; ++N) {
        auto from_qset = distributions_of_qset(pure_qset(s, N), n);
        auto from_counts = mb_report(n, N);
        REQUIRE(from_qset.total == from_counts.total);
        REQUIRE(from_qset.per_occupancy.size() == from_counts.per_occupancy.size());
        for (std::size_t i = 0; i < from_qset.per_occupancy.size(); ++i) {
          REQUIRE(from_qset.per_occupancy[i].first.counts ==
                  from_counts.per_occupancy[i].first.counts);
          REQUIRE(from_qset.per_occupancy[i].second == from_counts.per_occupancy[i].second);
        }
      }
  }
}

TEST_CASE("the two-box report recovers the power total") {
  Species s("s");
  for (std::size_t N = 0; N <= 10; ++N) {
    QSetValue x = pure_qset(s, N);
    REQUIRE(mb_report(2, N).total == power_qset(x).total);
  }
}

TEST_CASE("report rendering") {
  auto r = mb_report(2, 3);
  SECTION("text output is stable and carries the parcels") {
    std::string text = render_text(r);
    CHECK(text == render_text(mb_report(2, 3)));
    CHECK(text.find("total = 8") != std::string::npos);
    CHECK(text.find("most probable: (1,2) (2,1)") != std::string::npos);
  }
  SECTION("json output carries exact weights and rational probabilities") {
    auto j = to_json(r);
    CHECK(j["model"] == "MB");
    CHECK(j["n"] == 2);
    CHECK(j["N"] == 3);
    CHECK(j["total"] == "8");
    REQUIRE(j["occupancies"].size() == 4);
    CHECK(j["occupancies"][0]["counts"] == nlohmann::json::array({0, 3}));
    CHECK(j["occupancies"][0]["weight"] == "1");
    CHECK(j["occupancies"][0]["probability"] == "1/8");
    CHECK(j["occupancies"][1]["probability"] == "3/8");
    CHECK(j["most_probable"] == nlohmann::json::array({{1, 2}, {2, 1}}));
  }
}
