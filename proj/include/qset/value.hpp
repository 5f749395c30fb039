#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qset/error.hpp"

namespace qset {

// ---------------------------------------------------------------------------
// Atoms.
//
// The model is two-layered. The hidden layer labels every micro-atom
// occurrence with a witness tag; the observable layer is the quotient that
// erases witnesses. Every public operation is a function of the quotient:
// two values with equal witness-free canonical forms are indistinguishable,
// and nothing observable may depend on which witnesses realize a value.
// ---------------------------------------------------------------------------

using Witness = std::uint64_t;

// Process-wide source of never-before-seen witness tags. Unobservable:
// no public result depends on the values drawn here.
inline Witness fresh_witness() {
  static std::atomic<Witness> counter{0};
  return ++counter;
}

// An indistinguishability kind. Two micro-atom occurrences of the same
// species are indistinguishable; the species id orders canonical forms
// but never surfaces as an identity.
class Species {
 public:
  Species() = default;
  explicit Species(std::string id) : id_(std::move(id)) {}
  const std::string& id() const { return id_; }
  auto operator<=>(const Species&) const = default;

 private:
  std::string id_;
};

// A classical urelement. Equal labels denote the very same atom.
class MAtomLabel {
 public:
  MAtomLabel() = default;
  explicit MAtomLabel(std::string name) : name_(std::move(name)) {}
  const std::string& name() const { return name_; }
  auto operator<=>(const MAtomLabel&) const = default;

 private:
  std::string name_;
};

// One micro-atom: a species plus its hidden witness.
struct MOcc {
  Species species;
  Witness witness = 0;
};

inline MOcc make_m_atom(const Species& s) { return MOcc{s, fresh_witness()}; }

class QSetValue;
using QSetPtr = std::shared_ptr<const QSetValue>;

// Element descriptor: classical atom, micro-atom species, or nested qset.
using Descriptor = std::variant<MAtomLabel, Species, QSetPtr>;

// One element occurrence. The witness field is the hidden tag: for a
// micro-atom it is the atom's own witness; for a nested non-classical qset
// it is a copy tag that lets two equal-looking members coexist; for
// anything classical it is normalized to zero.
struct Occurrence {
  Descriptor desc;
  Witness witness = 0;
};

// Any value an operation may receive: a classical atom, a micro-atom
// occurrence, or a qset.
using Value = std::variant<MAtomLabel, MOcc, QSetValue>;

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// QSetValue: a canonical, well-founded, finite quasi-set.
//
// Values are immutable once canonicalized and are only constructible
// bottom-up, so membership cycles cannot be formed. Canonical order is:
// classical atoms by label, then micro-atoms by species (ties by witness,
// which fixes a representation without being observable), then nested
// qsets by canonical key.
// ---------------------------------------------------------------------------
class QSetValue {
 public:
  QSetValue() : public_text_("[]"), raw_text_("[]") {}

  static QSetValue canonicalize(std::vector<Occurrence> raw);

  std::size_t quasi_cardinal() const { return occs_.size(); }
  bool is_empty() const { return occs_.empty(); }

  // True when a micro-atom occurs anywhere in the transitive closure;
  // its negation is the Z predicate ("is a classical set").
  bool has_m_in_closure() const { return contains_m_; }

  // Representation access for the operation layer and diagnostics.
  // Witness tags are visible here and nowhere else.
  const std::vector<Occurrence>& occurrences() const { return occs_; }

  // Witness-free canonical form. Parseable by the expression grammar and
  // the key of the indistinguishability quotient.
  const std::string& canonical_text() const { return public_text_; }

  // Witness-bearing canonical form: the identity key of the hidden layer.
  const std::string& raw_text() const { return raw_text_; }

  nlohmann::json to_json(bool include_witnesses = false) const;

 private:
  std::vector<Occurrence> occs_;
  bool contains_m_ = false;
  std::string public_text_;
  std::string raw_text_;
};

namespace detail {

inline int kind_rank(const Descriptor& d) { return static_cast<int>(d.index()); }

inline bool is_classical_desc(const Descriptor& d) {
  if (std::holds_alternative<MAtomLabel>(d)) return true;
  if (const auto* p = std::get_if<QSetPtr>(&d)) return !(*p)->has_m_in_closure();
  return false;
}

inline std::string occ_public_key(const Occurrence& o) {
  return std::visit(
      overloaded{
          [](const MAtomLabel& a) { return "M\"" + escape(a.name()) + "\""; },
          [](const Species& s) { return "m " + s.id(); },
          [](const QSetPtr& p) { return p->canonical_text(); },
      },
      o.desc);
}

inline std::string occ_raw_key(const Occurrence& o) {
  return std::visit(
      overloaded{
          [](const MAtomLabel& a) { return "M\"" + escape(a.name()) + "\""; },
          [&](const Species& s) { return "m " + s.id() + "#" + std::to_string(o.witness); },
          [&](const QSetPtr& p) { return p->raw_text() + "#" + std::to_string(o.witness); },
      },
      o.desc);
}

// Hidden identity of the element itself, without the copy tag a nested
// member may carry inside a particular qset.
inline std::string occ_desc_key(const Occurrence& o) {
  return std::visit(
      overloaded{
          [](const MAtomLabel& a) { return "M\"" + escape(a.name()) + "\""; },
          [&](const Species& s) { return "m " + s.id() + "#" + std::to_string(o.witness); },
          [](const QSetPtr& p) { return p->raw_text(); },
      },
      o.desc);
}

}  // namespace detail

inline QSetValue QSetValue::canonicalize(std::vector<Occurrence> raw) {
  struct Keyed {
    int rank;
    std::string pub;
    std::string rawk;
    Occurrence occ;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(raw.size());
  for (auto& o : raw) {
    // Classical descriptors bear no hidden tag: identity is their content.
    if (detail::is_classical_desc(o.desc)) o.witness = 0;
    keyed.push_back({detail::kind_rank(o.desc), detail::occ_public_key(o),
                     detail::occ_raw_key(o), std::move(o)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.pub != b.pub) return a.pub < b.pub;
    return a.rawk < b.rawk;
  });

  QSetValue v;
  v.occs_.reserve(keyed.size());
  std::string rawt = "[";
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    // An element either is or is not in the collection: occurrences with
    // identical hidden identities collapse.
    if (i > 0 && keyed[i].rawk == keyed[i - 1].rawk) continue;

    const Occurrence& o = keyed[i].occ;
    if (std::holds_alternative<Species>(o.desc)) {
      v.contains_m_ = true;
    } else if (const auto* p = std::get_if<QSetPtr>(&o.desc)) {
      v.contains_m_ = v.contains_m_ || (*p)->has_m_in_closure();
    }

    if (!v.occs_.empty()) rawt += ", ";
    rawt += keyed[i].rawk;
    v.occs_.push_back(o);
  }
  rawt += "]";

  // Public text, with micro-atom runs grouped as "m s:K".
  std::string pub = "[";
  std::size_t i = 0;
  while (i < v.occs_.size()) {
    if (i > 0) pub += ", ";
    if (const auto* s = std::get_if<Species>(&v.occs_[i].desc)) {
      std::size_t j = i;
      while (j < v.occs_.size() && std::holds_alternative<Species>(v.occs_[j].desc) &&
             std::get<Species>(v.occs_[j].desc) == *s)
        ++j;
      pub += "m " + s->id();
      if (j - i > 1) pub += ":" + std::to_string(j - i);
      i = j;
    } else {
      pub += detail::occ_public_key(v.occs_[i]);
      ++i;
    }
  }
  pub += "]";

  v.public_text_ = std::move(pub);
  v.raw_text_ = std::move(rawt);
  return v;
}

inline nlohmann::json QSetValue::to_json(bool include_witnesses) const {
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& o : occs_) {
    std::visit(detail::overloaded{
                   [&](const MAtomLabel& a) {
                     elems.push_back({{"kind", "matom"}, {"name", a.name()}});
                   },
                   [&](const Species& s) {
                     nlohmann::json e = {{"kind", "mocc"}, {"species", s.id()}};
                     if (include_witnesses) e["witness"] = o.witness;
                     elems.push_back(std::move(e));
                   },
                   [&](const QSetPtr& p) {
                     nlohmann::json e = p->to_json(include_witnesses);
                     if (include_witnesses) e["tag"] = o.witness;
                     elems.push_back(std::move(e));
                   },
               },
               o.desc);
  }
  return nlohmann::json{{"kind", "qset"}, {"elems", std::move(elems)}};
}

// ---------------------------------------------------------------------------
// Value helpers.
// ---------------------------------------------------------------------------

inline Occurrence to_occurrence(const Value& v) {
  return std::visit(
      detail::overloaded{
          [](const MAtomLabel& a) { return Occurrence{a, 0}; },
          [](const MOcc& m) { return Occurrence{m.species, m.witness}; },
          [](const QSetValue& q) {
            return Occurrence{std::make_shared<const QSetValue>(q), 0};
          },
      },
      v);
}

inline Value to_value(const Occurrence& o) {
  return std::visit(detail::overloaded{
                        [](const MAtomLabel& a) { return Value{a}; },
                        [&](const Species& s) { return Value{MOcc{s, o.witness}}; },
                        [](const QSetPtr& p) { return Value{*p}; },
                    },
                    o.desc);
}

// Builds a qset from element values. Distinct non-classical members that
// happen to share a hidden representation receive consecutive copy tags,
// so multiplicity survives canonicalization.
inline QSetValue make_qset(const std::vector<Value>& elems) {
  std::vector<Occurrence> occs;
  occs.reserve(elems.size());
  std::map<std::string, Witness> copies;
  for (const auto& v : elems) {
    Occurrence o = to_occurrence(v);
    if (const auto* p = std::get_if<QSetPtr>(&o.desc); p && (*p)->has_m_in_closure()) {
      o.witness = copies[(*p)->raw_text()]++;
    }
    occs.push_back(std::move(o));
  }
  return QSetValue::canonicalize(std::move(occs));
}

// n fresh micro-atoms of one species.
inline QSetValue pure_qset(const Species& s, std::size_t n) {
  std::vector<Value> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.emplace_back(make_m_atom(s));
  return make_qset(elems);
}

// ---------------------------------------------------------------------------
// Predicates and relations.
// ---------------------------------------------------------------------------

struct Flags {
  bool m = false;      // micro-atom
  bool M = false;      // classical atom
  bool Q = false;      // quasi-set
  bool Z = false;      // classical set: no micro-atom in the closure
  bool D = false;      // Dinge: classical atom or classical set
  bool E = false;      // all elements are qsets
  bool pure = false;   // nonempty, all elements micro-atoms of one kind
};

inline Flags classify(const Value& v) {
  Flags f;
  std::visit(detail::overloaded{
                 [&](const MAtomLabel&) {
                   f.M = true;
                   f.D = true;
                 },
                 [&](const MOcc&) { f.m = true; },
                 [&](const QSetValue& q) {
                   f.Q = true;
                   f.Z = !q.has_m_in_closure();
                   f.D = f.Z;
                   f.E = true;
                   bool all_m = !q.is_empty();
                   const Species* sp = nullptr;
                   for (const auto& o : q.occurrences()) {
                     if (!std::holds_alternative<QSetPtr>(o.desc)) f.E = false;
                     if (const auto* s = std::get_if<Species>(&o.desc)) {
                       if (sp && !(*sp == *s)) all_m = false;
                       sp = s;
                     } else {
                       all_m = false;
                     }
                   }
                   f.pure = all_m;
                 },
             },
             v);
  return f;
}

// The indistinguishability quotient: equality of witness-free canonical
// forms. For qsets this is exactly the recursive criterion "same quantity
// of elements of each sort".
inline bool indistinguishable(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      detail::overloaded{
          [&](const MAtomLabel& x) { return x == std::get<MAtomLabel>(b); },
          [&](const MOcc& x) { return x.species == std::get<MOcc>(b).species; },
          [&](const QSetValue& x) {
            return x.canonical_text() == std::get<QSetValue>(b).canonical_text();
          },
      },
      a);
}

// Extensional identity. Ill-formed (not false) when a micro-atom is
// involved, hence the optional. For qsets it compares the hidden layer:
// same occurrences, witnesses included.
inline std::optional<bool> extensional_eq(const Value& a, const Value& b) {
  if (std::holds_alternative<MOcc>(a) || std::holds_alternative<MOcc>(b)) return std::nullopt;
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<MAtomLabel>(&a)) return *x == std::get<MAtomLabel>(b);
  return std::get<QSetValue>(a).raw_text() == std::get<QSetValue>(b).raw_text();
}

// Atoms have quasi-cardinal zero.
inline std::size_t quasi_cardinal(const Value& v) {
  if (const auto* q = std::get_if<QSetValue>(&v)) return q->quasi_cardinal();
  return 0;
}

// ---------------------------------------------------------------------------
// Canonical representatives and witness surgery.
// ---------------------------------------------------------------------------

// The avatar of a value's indistinguishability class: witnesses are
// replaced by positions within their class, recursively. Two values are
// indistinguishable exactly when their representatives are extensionally
// identical. Also the only view of elements that predicates ever see.
inline QSetValue canonical_representative(const QSetValue& x) {
  std::vector<Occurrence> occs;
  occs.reserve(x.quasi_cardinal());
  const auto& in = x.occurrences();
  std::size_t i = 0;
  while (i < in.size()) {
    std::size_t j = i;
    std::string key = detail::occ_public_key(in[i]);
    while (j < in.size() && detail::occ_public_key(in[j]) == key) ++j;
    for (std::size_t k = i; k < j; ++k) {
      Occurrence o = in[k];
      if (const auto* p = std::get_if<QSetPtr>(&o.desc)) {
        o.desc = std::make_shared<const QSetValue>(canonical_representative(**p));
      }
      o.witness = static_cast<Witness>(k - i);
      occs.push_back(std::move(o));
    }
    i = j;
  }
  return QSetValue::canonicalize(std::move(occs));
}

inline Value canonical_representative(const Value& v) {
  return std::visit(detail::overloaded{
                        [](const MAtomLabel& a) { return Value{a}; },
                        [](const MOcc& m) { return Value{MOcc{m.species, 0}}; },
                        [](const QSetValue& q) { return Value{canonical_representative(q)}; },
                    },
                    v);
}

// A fresh indistinguishable copy: every hidden tag replaced by a new one.
// Classical values come back unchanged.
inline QSetValue refresh_witnesses(const QSetValue& x) {
  std::vector<Occurrence> occs;
  occs.reserve(x.quasi_cardinal());
  for (Occurrence o : x.occurrences()) {
    if (const auto* p = std::get_if<QSetPtr>(&o.desc)) {
      o.desc = std::make_shared<const QSetValue>(refresh_witnesses(**p));
    }
    o.witness = fresh_witness();
    occs.push_back(std::move(o));
  }
  return QSetValue::canonicalize(std::move(occs));
}

inline Value refresh_witnesses(const Value& v) {
  return std::visit(detail::overloaded{
                        [](const MAtomLabel& a) { return Value{a}; },
                        [](const MOcc& m) { return Value{MOcc{m.species, fresh_witness()}}; },
                        [](const QSetValue& q) { return Value{refresh_witnesses(q)}; },
                    },
                    v);
}

namespace debug {

// Diagnostic only: rewrite every hidden tag through f and recanonicalize.
// For any injective f the observable quotient of every value and every
// operation result is unchanged; tests lean on this.
inline QSetValue relabel_witnesses(const QSetValue& x,
                                   const std::function<Witness(Witness)>& f) {
  std::vector<Occurrence> occs;
  occs.reserve(x.quasi_cardinal());
  for (Occurrence o : x.occurrences()) {
    if (const auto* p = std::get_if<QSetPtr>(&o.desc)) {
      o.desc = std::make_shared<const QSetValue>(relabel_witnesses(**p, f));
    }
    o.witness = f(o.witness);
    occs.push_back(std::move(o));
  }
  return QSetValue::canonicalize(std::move(occs));
}

inline Value relabel_witnesses(const Value& v, const std::function<Witness(Witness)>& f) {
  return std::visit(
      detail::overloaded{
          [](const MAtomLabel& a) { return Value{a}; },
          [&](const MOcc& m) { return Value{MOcc{m.species, f(m.witness)}}; },
          [&](const QSetValue& q) { return Value{relabel_witnesses(q, f)}; },
      },
      v);
}

}  // namespace debug

}  // namespace qset
