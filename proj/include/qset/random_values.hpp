#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qset/universe.hpp"
#include "qset/value.hpp"

namespace qset {

// Deterministic source of random values over a small fixed vocabulary.
// Used by the selftest subcommand and the test suites; the same seed
// yields the same stream.
class RandomValueGen {
 public:
  explicit RandomValueGen(std::uint64_t seed) : rng_(seed) {
    for (const char* s : {"s", "t", "u", "v"}) species_.emplace_back(s);
    for (const char* a : {"a", "b", "c"}) atoms_.emplace_back(a);
  }

  std::mt19937_64& rng() { return rng_; }

  const std::vector<Species>& species_pool() const { return species_; }
  const std::vector<MAtomLabel>& atom_pool() const { return atoms_; }

  Species any_species() { return species_[pick(species_.size())]; }
  MAtomLabel any_atom() { return atoms_[pick(atoms_.size())]; }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  // A qset of at most max_width elements nesting at most depth levels.
  QSetValue qset(std::size_t depth, std::size_t max_width) {
    std::vector<Value> elems;
    std::size_t width = pick(max_width + 1);
    for (std::size_t i = 0; i < width; ++i) elems.push_back(value(depth));
    return make_qset(elems);
  }

  Value value(std::size_t depth) {
    std::size_t kind = pick(depth > 0 ? 4 : 3);
    switch (kind) {
      case 0: return Value{any_atom()};
      case 1:
      case 2: return Value{make_m_atom(any_species())};
      default: return Value{qset(depth - 1, 3)};
    }
  }

  // A universe covering the generator's whole species vocabulary.
  Universe universe(std::size_t max_population) {
    Universe u;
    for (const auto& s : species_)
      u.declare_species(s, 1 + pick(max_population));
    for (const auto& a : atoms_) u.declare_atom(a);
    return u;
  }

 private:
  std::mt19937_64 rng_;
  std::vector<Species> species_;
  std::vector<MAtomLabel> atoms_;
};

}  // namespace qset
