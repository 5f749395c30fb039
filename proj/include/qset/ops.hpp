#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qset/bigint.hpp"
#include "qset/error.hpp"
#include "qset/universe.hpp"
#include "qset/value.hpp"

namespace qset {

// ---------------------------------------------------------------------------
// Class decomposition.
//
// Elements fall into indistinguishability classes (equal public keys).
// Membership, inclusion and the boolean operations all act on class
// counts: which witnesses realize a class is never observable.
// ---------------------------------------------------------------------------

struct OccClass {
  std::string key;                   // public key shared by the members
  std::vector<std::size_t> indices;  // positions in occurrences(), canonical order
};

inline std::vector<OccClass> equivalence_classes(const QSetValue& x) {
  std::vector<OccClass> classes;
  const auto& occs = x.occurrences();
  for (std::size_t i = 0; i < occs.size(); ++i) {
    std::string key = detail::occ_public_key(occs[i]);
    if (!classes.empty() && classes.back().key == key) {
      classes.back().indices.push_back(i);
    } else {
      classes.push_back({std::move(key), {i}});
    }
  }
  return classes;
}

inline std::size_t class_count(const QSetValue& x, const std::string& key) {
  std::size_t n = 0;
  for (const auto& o : x.occurrences())
    if (detail::occ_public_key(o) == key) ++n;
  return n;
}

// v occurs in x, up to indistinguishability.
inline bool element_of(const Value& v, const QSetValue& x) {
  for (const auto& o : x.occurrences())
    if (indistinguishable(to_value(o), v)) return true;
  return false;
}

// x is a sub-qset of y: every class of x occurs in y at least as often.
inline bool subqset(const QSetValue& x, const QSetValue& y) {
  for (const auto& c : equivalence_classes(x))
    if (c.indices.size() > class_count(y, c.key)) return false;
  return true;
}

inline bool proper_subqset(const QSetValue& x, const QSetValue& y) {
  return subqset(x, y) && x.quasi_cardinal() < y.quasi_cardinal();
}

inline bool disjoint(const QSetValue& x, const QSetValue& y) {
  for (const auto& c : equivalence_classes(x))
    if (class_count(y, c.key) > 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Boolean operations.
// ---------------------------------------------------------------------------

// Union keeps every hidden identity present on either side; classical
// elements therefore deduplicate while separately built micro-atom
// collections accumulate.
inline QSetValue union_of(const QSetValue& x, const QSetValue& y) {
  std::vector<Occurrence> occs = x.occurrences();
  occs.insert(occs.end(), y.occurrences().begin(), y.occurrences().end());
  return QSetValue::canonicalize(std::move(occs));
}

// Intersection takes, per class, the smaller count; representatives come
// from x in canonical order.
inline QSetValue intersection_of(const QSetValue& x, const QSetValue& y) {
  std::vector<Occurrence> occs;
  for (const auto& c : equivalence_classes(x)) {
    std::size_t k = std::min(c.indices.size(), class_count(y, c.key));
    for (std::size_t i = 0; i < k; ++i) occs.push_back(x.occurrences()[c.indices[i]]);
  }
  return QSetValue::canonicalize(std::move(occs));
}

// Difference removes, per class, min(count_x, count_y) occurrences. Which
// witnesses go is unobservable; the first of each class go, which makes
// the result deterministic.
inline QSetValue difference_of(const QSetValue& x, const QSetValue& y) {
  std::vector<Occurrence> occs;
  for (const auto& c : equivalence_classes(x)) {
    std::size_t k = std::min(c.indices.size(), class_count(y, c.key));
    for (std::size_t i = k; i < c.indices.size(); ++i)
      occs.push_back(x.occurrences()[c.indices[i]]);
  }
  return QSetValue::canonicalize(std::move(occs));
}

// ---------------------------------------------------------------------------
// Weak singletons and pairs (universe-scoped comprehension).
// ---------------------------------------------------------------------------

// [x]: everything in scope indistinguishable from x. For a micro-atom
// that is the declared population of its species; for a classical atom,
// itself; for a qset, the canonical avatar of its class.
inline QSetValue weak_singleton(const Value& x, const Universe& u) {
  return std::visit(
      detail::overloaded{
          [](const MAtomLabel& a) { return make_qset({Value{a}}); },
          [&](const MOcc& m) {
            std::vector<Occurrence> occs;
            for (Witness w : u.roster(m.species)) occs.push_back({m.species, w});
            return QSetValue::canonicalize(std::move(occs));
          },
          [](const QSetValue& q) { return make_qset({Value{canonical_representative(q)}}); },
      },
      x);
}

inline QSetValue weak_pair(const Value& x, const Value& y, const Universe& u) {
  return union_of(weak_singleton(x, u), weak_singleton(y, u));
}

// The generalized ordered pair [[x],[x,y]]. The components enter as a
// weak pair, so when x and y are indistinguishable they coincide and the
// pair collapses to [[x]]: no orientation survives.
inline QSetValue ordered_pair(const Value& x, const Value& y, const Universe& u) {
  QSetValue first = weak_singleton(x, u);
  QSetValue second = weak_pair(x, y, u);
  std::vector<Occurrence> occs;
  occs.push_back({std::make_shared<const QSetValue>(first), 0});
  occs.push_back({std::make_shared<const QSetValue>(second), 0});
  return QSetValue::canonicalize(std::move(occs));
}

// ---------------------------------------------------------------------------
// Separation and replacement.
//
// Conditions receive only the canonical representative of each element,
// never its witnesses, so they are invariant across indistinguishable
// elements by construction.
// ---------------------------------------------------------------------------

inline QSetValue separation(const QSetValue& x, const std::function<bool(const Value&)>& pred) {
  std::vector<Occurrence> occs;
  for (const auto& o : x.occurrences())
    if (pred(canonical_representative(to_value(o)))) occs.push_back(o);
  return QSetValue::canonicalize(std::move(occs));
}

inline QSetValue replacement_image(const QSetValue& x,
                                   const std::function<Value(const Value&)>& f) {
  std::vector<Value> images;
  images.reserve(x.quasi_cardinal());
  for (const auto& o : x.occurrences()) images.push_back(f(canonical_representative(to_value(o))));
  return make_qset(images);
}

// ---------------------------------------------------------------------------
// Power enumeration.
// ---------------------------------------------------------------------------

struct PowerEntry {
  QSetValue subqset;
  BigInt multiplicity;  // distinct witness choices realizing this shape
};

struct PowerEnumeration {
  std::vector<PowerEntry> entries;
  BigInt total;  // sum of multiplicities over the emitted entries
};

// Sub-qsets grouped by shape: taking k of a class of size c can be done in
// C(c, k) ways, and the multiplicities over the full enumeration add up to
// exactly 2^qc. With qc_filter only shapes of that quasi-cardinal are
// emitted.
inline PowerEnumeration power_qset(const QSetValue& x,
                                   std::optional<std::size_t> qc_filter = std::nullopt) {
  auto classes = equivalence_classes(x);
  PowerEnumeration out;
  out.total = 0;
  std::vector<std::size_t> take(classes.size(), 0);
  for (;;) {
    std::size_t qc = 0;
    for (std::size_t t : take) qc += t;
    if (!qc_filter || qc == *qc_filter) {
      std::vector<Occurrence> occs;
      BigInt mult = 1;
      for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        for (std::size_t i = 0; i < take[ci]; ++i)
          occs.push_back(x.occurrences()[classes[ci].indices[i]]);
        mult *= binomial(classes[ci].indices.size(), take[ci]);
      }
      out.entries.push_back({QSetValue::canonicalize(std::move(occs)), mult});
      out.total += out.entries.back().multiplicity;
    }
    // odometer, last class fastest
    std::size_t ci = classes.size();
    while (ci > 0) {
      --ci;
      if (take[ci] < classes[ci].indices.size()) {
        ++take[ci];
        break;
      }
      take[ci] = 0;
      if (ci == 0) return out;
    }
    if (classes.empty()) return out;
  }
}

inline BigInt power_total(const QSetValue& x) { return power_qset(x).total; }

// ---------------------------------------------------------------------------
// Strong singletons and permutation of indiscernibles.
// ---------------------------------------------------------------------------

// A quasi-cardinal-1 sub-qset of [x]. The witness is drawn fresh and
// unobservably, so repeated calls agree up to indistinguishability but
// need not agree extensionally.
inline QSetValue strong_singleton(const Value& x, const Universe& u) {
  return std::visit(
      detail::overloaded{
          [](const MAtomLabel& a) { return make_qset({Value{a}}); },
          [&](const MOcc& m) {
            if (!u.has_species(m.species))
              throw Error(Errc::unknown_species,
                          "species '" + m.species.id() + "' is not declared");
            return make_qset({Value{MOcc{m.species, fresh_witness()}}});
          },
          [](const QSetValue& q) { return make_qset({Value{canonical_representative(q)}}); },
      },
      x);
}

// (x - z') u w' for strong singletons z', w' of z_in and w_out. The
// exchange of an element for an indistinguishable one: the result is
// indistinguishable from x and the quasi-cardinal is preserved.
inline QSetValue swap_indistinguishable(const QSetValue& x, const Value& z_in,
                                        const Value& w_out) {
  Occurrence zo = to_occurrence(z_in);
  std::string zraw = detail::occ_desc_key(zo);
  bool in_x = false;
  for (const auto& o : x.occurrences())
    if (detail::occ_desc_key(o) == zraw) in_x = true;
  if (!in_x) throw Error(Errc::not_member, "z_in does not occur in x");
  if (!indistinguishable(z_in, w_out))
    throw Error(Errc::not_indistinguishable, "w_out is not indistinguishable from z_in");
  Occurrence wo = to_occurrence(w_out);
  std::string wraw = detail::occ_desc_key(wo);
  for (const auto& o : x.occurrences())
    if (detail::occ_desc_key(o) == wraw)
      throw Error(Errc::not_member, "w_out already occurs in x");
  QSetValue z_single = QSetValue::canonicalize({zo});
  QSetValue w_single = QSetValue::canonicalize({wo});
  return union_of(difference_of(x, z_single), w_single);
}

// ---------------------------------------------------------------------------
// Choice and product.
// ---------------------------------------------------------------------------

// One representative from each member of a family of pairwise disjoint,
// nonempty qsets.
inline QSetValue choice_qset(const QSetValue& family, const Universe&) {
  std::vector<const QSetValue*> members;
  for (const auto& o : family.occurrences()) {
    const auto* p = std::get_if<QSetPtr>(&o.desc);
    if (!p) throw Error(Errc::not_a_qset, "family members must be qsets");
    members.push_back(p->get());
  }
  for (const auto* m : members)
    if (m->is_empty()) throw Error(Errc::empty_member, "family contains an empty member");
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!disjoint(*members[i], *members[j]))
        throw Error(Errc::not_disjoint, "family members overlap");
  std::vector<Occurrence> picks;
  for (const auto* m : members) picks.push_back(m->occurrences().front());
  return QSetValue::canonicalize(std::move(picks));
}

// Cartesian product up to indistinguishability: one generalized pair per
// class combination, with multiplicity the product of the class sizes.
inline QSetValue product(const QSetValue& x, const QSetValue& y, const Universe& u) {
  std::vector<Occurrence> occs;
  occs.reserve(x.quasi_cardinal() * y.quasi_cardinal());
  std::map<std::string, Witness> copies;
  for (const auto& cx : equivalence_classes(x)) {
    Value zv = to_value(x.occurrences()[cx.indices[0]]);
    for (const auto& cy : equivalence_classes(y)) {
      Value uv = to_value(y.occurrences()[cy.indices[0]]);
      QSetValue pair = ordered_pair(zv, uv, u);
      auto ptr = std::make_shared<const QSetValue>(pair);
      std::size_t mult = cx.indices.size() * cy.indices.size();
      for (std::size_t i = 0; i < mult; ++i) {
        Occurrence o{ptr, 0};
        if (pair.has_m_in_closure()) o.witness = copies[pair.raw_text()]++;
        occs.push_back(std::move(o));
      }
    }
  }
  return QSetValue::canonicalize(std::move(occs));
}

}  // namespace qset
