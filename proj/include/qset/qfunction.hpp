#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qset/error.hpp"
#include "qset/ops.hpp"
#include "qset/universe.hpp"
#include "qset/value.hpp"

namespace qset {

// A relation that cannot tell indistinguishable arguments apart: whenever
// two pairs have indistinguishable left components, the right components
// are indistinguishable too, and every class of the domain is covered.
struct QuasiFunction {
  QSetValue domain;
  QSetValue codomain;
  // One (argument class representative, value class representative) per
  // domain class, in canonical domain-class order.
  std::vector<std::pair<Value, Value>> assignments;
  // The same data as a qset of generalized ordered pairs.
  QSetValue graph;
};

struct QFunctionFlags {
  bool q_injection = false;
  bool q_surjection = false;
  bool q_bijection = false;
};

// All quasi-functions from dom to cod: one codomain class choice per
// domain class, (#cod classes)^(#dom classes) in total, enumerated in
// canonical class order.
inline std::vector<QuasiFunction> enumerate_qfunctions(const QSetValue& dom,
                                                       const QSetValue& cod,
                                                       const Universe& u) {
  auto dom_classes = equivalence_classes(dom);
  auto cod_classes = equivalence_classes(cod);
  if (cod_classes.empty() && !dom_classes.empty())
    throw Error(Errc::empty_codomain, "no quasi-function into an empty codomain");

  std::vector<QuasiFunction> out;
  std::vector<std::size_t> choice(dom_classes.size(), 0);
  for (;;) {
    QuasiFunction f;
    f.domain = dom;
    f.codomain = cod;
    std::vector<Value> pairs;
    for (std::size_t i = 0; i < dom_classes.size(); ++i) {
      Value uv = to_value(dom.occurrences()[dom_classes[i].indices[0]]);
      Value vv = to_value(cod.occurrences()[cod_classes[choice[i]].indices[0]]);
      pairs.emplace_back(ordered_pair(uv, vv, u));
      f.assignments.emplace_back(std::move(uv), std::move(vv));
    }
    f.graph = make_qset(pairs);
    out.push_back(std::move(f));

    std::size_t i = dom_classes.size();
    bool rolled = true;
    while (i > 0) {
      --i;
      if (choice[i] + 1 < cod_classes.size()) {
        ++choice[i];
        rolled = false;
        break;
      }
      choice[i] = 0;
    }
    if (rolled) break;
  }
  return out;
}

// The range as a sub-qset of the codomain: the full population of every
// value class the function reaches.
inline QSetValue qfunction_range(const QuasiFunction& f) {
  return separation(f.codomain, [&](const Value& v) {
    for (const auto& [u_, val] : f.assignments)
      if (indistinguishable(v, val)) return true;
    return false;
  });
}

inline QFunctionFlags classify_qfunction(const QuasiFunction& f) {
  QFunctionFlags flags;
  std::size_t dom_qc = f.domain.quasi_cardinal();
  QSetValue range = qfunction_range(f);
  std::size_t rng_qc = range.quasi_cardinal();

  // Injection: indistinguishable values force indistinguishable arguments,
  // and qc(Dom) <= qc(Rang). Domain classes are pairwise distinguishable,
  // so the first clause reduces to the chosen value classes being so too.
  bool values_separate = true;
  for (std::size_t i = 0; i < f.assignments.size(); ++i)
    for (std::size_t j = i + 1; j < f.assignments.size(); ++j)
      if (indistinguishable(f.assignments[i].second, f.assignments[j].second))
        values_separate = false;
  flags.q_injection = values_separate && dom_qc <= rng_qc;

  // Surjection: every element of the codomain is a value, and
  // qc(Dom) >= qc(Rang).
  bool covers = true;
  for (const auto& o : f.codomain.occurrences()) {
    bool hit = false;
    for (const auto& [u_, val] : f.assignments)
      if (indistinguishable(to_value(o), val)) hit = true;
    if (!hit) covers = false;
  }
  flags.q_surjection = covers && dom_qc >= rng_qc;

  flags.q_bijection = flags.q_injection && flags.q_surjection;
  return flags;
}

}  // namespace qset
