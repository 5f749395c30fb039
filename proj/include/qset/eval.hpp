#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qset/bigint.hpp"
#include "qset/error.hpp"
#include "qset/ops.hpp"
#include "qset/parser.hpp"
#include "qset/qfunction.hpp"
#include "qset/stat.hpp"
#include "qset/universe.hpp"
#include "qset/value.hpp"

namespace qset {

struct TernaryResult {
  std::optional<bool> value;
};

struct FlagsResult {
  Flags flags;
};

using Result = std::variant<QSetValue, BigInt, bool, TernaryResult, FlagsResult,
                            PowerEnumeration, stat::DistributionReport>;

namespace detail {

inline const QSetValue& as_qset(const Result& r, const std::string& op) {
  if (const auto* q = std::get_if<QSetValue>(&r)) return *q;
  throw EvalError(op, "NotAQSet: argument is not a qset");
}

// Operations whose contract takes an atom accept it wrapped in a
// one-element qset: the wrapper denotes its element.
inline Value as_value(const Result& r, const std::string& op) {
  const QSetValue& q = as_qset(r, op);
  if (q.quasi_cardinal() == 1) return to_value(q.occurrences().front());
  return Value{q};
}

inline void arity(const Call& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo)
                                : std::to_string(lo) + ".." + std::to_string(hi);
    throw EvalError(c.name, "expected " + want + " argument(s), got " +
                                std::to_string(c.args.size()));
  }
}

}  // namespace detail

inline Result eval(const Expr& e, const Universe& u);

namespace detail {

inline Result eval_call(const Call& c, const Universe& u) {
  std::vector<Result> args;
  args.reserve(c.args.size());
  for (const auto& a : c.args) args.push_back(eval(a, u));
  const std::string& op = c.name;
  auto q = [&](std::size_t i) -> const QSetValue& { return as_qset(args[i], op); };
  auto v = [&](std::size_t i) { return as_value(args[i], op); };

  try {
    if (op == "qc") {
      arity(c, 1, 1);
      return Result{BigInt(q(0).quasi_cardinal())};
    }
    if (op == "equiv") {
      arity(c, 2, 2);
      return Result{indistinguishable(v(0), v(1))};
    }
    if (op == "exteq") {
      arity(c, 2, 2);
      return Result{TernaryResult{extensional_eq(v(0), v(1))}};
    }
    if (op == "classify") {
      arity(c, 1, 1);
      return Result{FlagsResult{classify(v(0))}};
    }
    if (op == "union") {
      arity(c, 2, 2);
      return Result{union_of(q(0), q(1))};
    }
    if (op == "intersect") {
      arity(c, 2, 2);
      return Result{intersection_of(q(0), q(1))};
    }
    if (op == "diff") {
      arity(c, 2, 2);
      return Result{difference_of(q(0), q(1))};
    }
    if (op == "product") {
      arity(c, 2, 2);
      return Result{product(q(0), q(1), u)};
    }
    if (op == "single") {
      arity(c, 1, 1);
      return Result{weak_singleton(v(0), u)};
    }
    if (op == "pair") {
      arity(c, 2, 2);
      return Result{weak_pair(v(0), v(1), u)};
    }
    if (op == "opair") {
      arity(c, 2, 2);
      return Result{ordered_pair(v(0), v(1), u)};
    }
    if (op == "strong") {
      arity(c, 1, 1);
      return Result{strong_singleton(v(0), u)};
    }
    if (op == "power") {
      arity(c, 1, 1);
      return Result{power_qset(q(0))};
    }
    if (op == "powertotal") {
      arity(c, 1, 1);
      return Result{power_total(q(0))};
    }
    if (op == "qfcount") {
      arity(c, 2, 2);
      return Result{BigInt(enumerate_qfunctions(q(0), q(1), u).size())};
    }
    if (op == "choice") {
      arity(c, 1, 1);
      return Result{choice_qset(q(0), u)};
    }
    if (op == "swap") {
      arity(c, 2, 2);
      // Exchange the first occurrence matching the given element for a
      // fresh indistinguishable one.
      const QSetValue& x = q(0);
      Value probe = as_value(args[1], op);
      for (const auto& o : x.occurrences()) {
        if (indistinguishable(to_value(o), probe)) {
          Value z_in = to_value(o);
          return Result{swap_indistinguishable(x, z_in, refresh_witnesses(z_in))};
        }
      }
      throw Error(Errc::not_member, "no occurrence matches the given element");
    }
  } catch (const EvalError&) {
    throw;
  } catch (const Error& err) {
    throw EvalError(op, err.what());
  }
  throw EvalError(op, "unknown operation");
}

}  // namespace detail

inline Result eval(const Expr& e, const Universe& u) {
  return std::visit(detail::overloaded{
                        [](const QsetLit& lit) { return Result{qset_of_literal(lit)}; },
                        [&](const Call& c) { return detail::eval_call(c, u); },
                    },
                    e.node);
}

inline Result eval_text(std::string_view text, const Universe& u) {
  return eval(parse(text), u);
}

// ---------------------------------------------------------------------------
// Rendering.
// ---------------------------------------------------------------------------

inline std::string flags_text(const Flags& f) {
  std::string s;
  auto add = [&](bool set, const char* name) {
    if (!set) return;
    if (!s.empty()) s += ", ";
    s += name;
  };
  add(f.m, "m");
  add(f.M, "M");
  add(f.Q, "Q");
  add(f.Z, "Z");
  add(f.D, "D");
  add(f.E, "E");
  add(f.pure, "pure");
  return s.empty() ? "none" : s;
}

inline std::string render_text(const Result& r, bool debug_witnesses = false) {
  return std::visit(
      detail::overloaded{
          [&](const QSetValue& q) {
            return debug_witnesses ? q.raw_text() : q.canonical_text();
          },
          [](const BigInt& n) { return n.str(); },
          [](bool b) { return std::string(b ? "true" : "false"); },
          [](const TernaryResult& t) {
            if (!t.value) return std::string("undefined");
            return std::string(*t.value ? "true" : "false");
          },
          [](const FlagsResult& f) { return "flags: " + flags_text(f.flags); },
          [&](const PowerEnumeration& p) {
            std::ostringstream out;
            out << "power enumeration: " << p.entries.size() << " entries, total "
                << p.total.str() << "\n";
            for (const auto& e : p.entries) {
              out << "qc=" << e.subqset.quasi_cardinal() << "  mult=" << e.multiplicity.str()
                  << "  "
                  << (debug_witnesses ? e.subqset.raw_text() : e.subqset.canonical_text())
                  << "\n";
            }
            return out.str();
          },
          [](const stat::DistributionReport& rep) { return stat::render_text(rep); },
      },
      r);
}

inline nlohmann::json render_json(const Result& r, bool debug_witnesses = false) {
  return std::visit(
      detail::overloaded{
          [&](const QSetValue& q) { return q.to_json(debug_witnesses); },
          [](const BigInt& n) {
            return nlohmann::json{{"kind", "nat"}, {"value", n.str()}};
          },
          [](bool b) { return nlohmann::json{{"kind", "bool"}, {"value", b}}; },
          [](const TernaryResult& t) {
            nlohmann::json j{{"kind", "ternary"}};
            if (t.value)
              j["value"] = *t.value;
            else
              j["value"] = nullptr;
            return j;
          },
          [](const FlagsResult& f) {
            return nlohmann::json{{"kind", "flags"},
                                  {"m", f.flags.m},
                                  {"M", f.flags.M},
                                  {"Q", f.flags.Q},
                                  {"Z", f.flags.Z},
                                  {"D", f.flags.D},
                                  {"E", f.flags.E},
                                  {"pure", f.flags.pure}};
          },
          [&](const PowerEnumeration& p) {
            nlohmann::json entries = nlohmann::json::array();
            for (const auto& e : p.entries) {
              entries.push_back({{"qc", e.subqset.quasi_cardinal()},
                                 {"multiplicity", e.multiplicity.str()},
                                 {"value", e.subqset.to_json(debug_witnesses)}});
            }
            return nlohmann::json{
                {"kind", "power"}, {"total", p.total.str()}, {"entries", std::move(entries)}};
          },
          [](const stat::DistributionReport& rep) { return stat::to_json(rep); },
      },
      r);
}

}  // namespace qset
