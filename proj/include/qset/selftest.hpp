#pragma once

#include <iostream>
#include <map>
#include <set>
#include <string>

#include "qset/bigint.hpp"
#include "qset/eval.hpp"
#include "qset/ops.hpp"
#include "qset/parser.hpp"
#include "qset/qfunction.hpp"
#include "qset/random_values.hpp"
#include "qset/stat.hpp"
#include "qset/value.hpp"

namespace qset {

// Compiled-in invariant suite behind the `selftest` subcommand: a quick,
// deterministic spot check of the algebraic laws the library promises.
inline bool run_selftest(std::ostream& out) {
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    all_ok = all_ok && ok;
  };
  RandomValueGen gen(20260809);
  Universe u = gen.universe(4);

  {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      QSetValue x = gen.qset(2, 4);
      QSetValue y = refresh_witnesses(x);
      ok = ok && indistinguishable(Value{x}, Value{x});
      ok = ok && indistinguishable(Value{x}, Value{y}) &&
           indistinguishable(Value{y}, Value{x});
      QSetValue z = refresh_witnesses(y);
      ok = ok && indistinguishable(Value{x}, Value{z});
    }
    check("indistinguishability is an equivalence", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      QSetValue x = gen.qset(3, 4);
      QSetValue again = QSetValue::canonicalize(x.occurrences());
      ok = ok && again.raw_text() == x.raw_text();
      ok = ok && parse(x.canonical_text()).node.index() == 0;
      QSetValue reparsed = qset_of_literal(std::get<QsetLit>(parse(x.canonical_text()).node));
      ok = ok && reparsed.canonical_text() == x.canonical_text();
    }
    check("canonical form is idempotent and print/parse is a fixed point", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      QSetValue x = pure_qset(Species("s"), 1 + gen.pick(5));
      QSetValue y = pure_qset(Species("t"), 1 + gen.pick(5));
      ok = ok && union_of(x, y).quasi_cardinal() == x.quasi_cardinal() + y.quasi_cardinal();
      ok = ok && (x.is_empty() || x.quasi_cardinal() > 0);
      QSetValue sub = power_qset(x, gen.pick(x.quasi_cardinal() + 1)).entries.front().subqset;
      ok = ok && subqset(sub, x) && sub.quasi_cardinal() <= x.quasi_cardinal();
      ok = ok && difference_of(x, sub).quasi_cardinal() ==
                     x.quasi_cardinal() - sub.quasi_cardinal();
    }
    check("quasi-cardinal laws (additivity, monotonicity, difference)", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      QSetValue x = gen.qset(2, 4);
      ok = ok && power_qset(x).total == ipow(2, x.quasi_cardinal());
    }
    check("power multiplicities add up to 2^qc", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      Value x{make_m_atom(Species("s"))};
      Value y{make_m_atom(Species("s"))};
      auto collapsed = extensional_eq(Value{ordered_pair(x, y, u)}, Value{ordered_pair(y, x, u)});
      ok = ok && collapsed.has_value() && *collapsed;
      ok = ok && indistinguishable(Value{weak_singleton(x, u)}, Value{weak_singleton(y, u)});
    }
    ok = ok && indistinguishable(Value{QSetValue()}, Value{QSetValue()});
    check("ordered pairs of indiscernibles collapse; weak singletons agree", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      QSetValue x = gen.qset(2, 5);
      if (x.is_empty()) continue;
      std::size_t idx = gen.pick(x.quasi_cardinal());
      Value z = to_value(x.occurrences()[idx]);
      Value w = refresh_witnesses(z);
      // classical elements have no distinct indistinguishable partner
      if (extensional_eq(z, w).value_or(false)) continue;
      QSetValue swapped = swap_indistinguishable(x, z, w);
      ok = ok && indistinguishable(Value{swapped}, Value{x});
      ok = ok && swapped.quasi_cardinal() == x.quasi_cardinal();
    }
    check("permutations of indiscernibles are unobservable", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      QSetValue x = gen.qset(2, 4);
      QSetValue y = gen.qset(2, 4);
      auto rl = [](Witness w) { return w * 2 + 17; };
      QSetValue xr = debug::relabel_witnesses(x, rl);
      QSetValue yr = debug::relabel_witnesses(y, rl);
      ok = ok && xr.canonical_text() == x.canonical_text();
      ok = ok && union_of(xr, yr).canonical_text() == union_of(x, y).canonical_text();
      ok = ok && difference_of(xr, yr).canonical_text() == difference_of(x, y).canonical_text();
    }
    check("witness relabeling is observationally silent", ok);
  }
  {
    bool ok = true;
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t N = 0; N <= 8; ++N) {
        BigInt total = 0;
        for (const auto& v : stat::enumerate_occupancies(n, N))
          total += stat::multinomial_weight(v);
        ok = ok && total == ipow(n, N);
      }
    check("multinomial parcels add up to n^N", ok);
  }
  {
    bool ok = true;
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t N = 0; N <= 5; ++N) {
        std::map<std::vector<std::size_t>, BigInt> brute;
        std::vector<std::size_t> assign(N, 0);
        for (;;) {
          std::vector<std::size_t> occ(n, 0);
          for (std::size_t b : assign) ++occ[b];
          brute[occ] += 1;
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
        for (const auto& [v, w] : stat::mb_report(n, N).per_occupancy)
          ok = ok && brute[v.counts] == w;
      }
    check("per-occupancy weights match the labeled-placement count", ok);
  }
  {
    bool ok = true;
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t N = 0; N <= 8; ++N) {
        auto be = stat::be_report(n, N);
        auto fd = stat::fd_report(n, N);
        ok = ok && be.total == binomial(N + n - 1, n - 1);
        ok = ok && fd.total == (N <= n ? binomial(n, N) : BigInt(0));
        std::set<std::vector<std::size_t>> be_support;
        for (const auto& [v, w] : be.per_occupancy) be_support.insert(v.counts);
        for (const auto& [v, w] : fd.per_occupancy)
          ok = ok && be_support.count(v.counts) && w == 1;
      }
    check("quantum statistics totals and support inclusion", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      std::size_t N = gen.pick(7);
      std::size_t n = 1 + gen.pick(3);
      QSetValue x = pure_qset(Species("s"), N);
      ok = ok && stat::distributions_of_qset(x, n).total == stat::mb_report(n, N).total;
    }
    check("qset box distributions agree with the occupancy report", ok);
  }
  {
    QSetValue dom = pure_qset(Species("s"), 3);
    QSetValue cod = make_qset({Value{MAtomLabel("0")}, Value{MAtomLabel("1")}});
    bool ok = enumerate_qfunctions(dom, cod, u).size() == 2;
    QSetValue cdom = make_qset({Value{MAtomLabel("a")}, Value{MAtomLabel("b")}});
    ok = ok && enumerate_qfunctions(cdom, cod, u).size() == 4;
    check("quasi-function counts (indiscernible vs classical domains)", ok);
  }

  out << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
  return all_ok;
}

}  // namespace qset
