#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qset/error.hpp"
#include "qset/value.hpp"

namespace qset {

// A declared finite population: the scope of weak singletons and pairs.
// Each species owns a fixed roster of witnesses allocated at declaration,
// so "the qset of everything indistinguishable from x" is one definite
// value per universe, not a fresh collection per call.
class Universe {
 public:
  Universe() = default;

  void declare_species(const Species& s, std::size_t count) {
    if (count == 0)
      throw Error(Errc::invalid_universe, "species '" + s.id() + "' needs a count >= 1");
    if (species_.count(s))
      throw Error(Errc::invalid_universe, "species '" + s.id() + "' declared twice");
    std::vector<Witness>& roster = species_[s];
    roster.reserve(count);
    for (std::size_t i = 0; i < count; ++i) roster.push_back(fresh_witness());
  }

  void declare_atom(const MAtomLabel& a) {
    for (const auto& b : atoms_)
      if (b == a) throw Error(Errc::invalid_universe, "atom \"" + a.name() + "\" declared twice");
    atoms_.push_back(a);
  }

  bool has_species(const Species& s) const { return species_.count(s) != 0; }

  std::size_t population(const Species& s) const { return roster(s).size(); }

  const std::vector<Witness>& roster(const Species& s) const {
    auto it = species_.find(s);
    if (it == species_.end())
      throw Error(Errc::unknown_species, "species '" + s.id() + "' is not declared");
    return it->second;
  }

  const std::map<Species, std::vector<Witness>>& species() const { return species_; }
  const std::vector<MAtomLabel>& atoms() const { return atoms_; }

  // One declaration per line: `species <ident> <count>` or `atom "<name>"`.
  // Blank lines and `#` comments are ignored.
  static Universe from_string(const std::string& text) {
    Universe u;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view sv(line);
      auto fail = [&](const std::string& msg) -> void {
        throw Error(Errc::invalid_universe, "line " + std::to_string(lineno) + ": " + msg);
      };
      std::size_t pos = 0;
      auto skip_ws = [&] {
        while (pos < sv.size() && (sv[pos] == ' ' || sv[pos] == '\t')) ++pos;
      };
      skip_ws();
      if (pos == sv.size() || sv[pos] == '#') continue;
      std::size_t start = pos;
      while (pos < sv.size() && std::isalpha(static_cast<unsigned char>(sv[pos]))) ++pos;
      std::string kw(sv.substr(start, pos - start));
      skip_ws();
      if (kw == "species") {
        start = pos;
        while (pos < sv.size() &&
               (std::isalnum(static_cast<unsigned char>(sv[pos])) || sv[pos] == '_'))
          ++pos;
        if (start == pos) fail("expected a species identifier");
        std::string id(sv.substr(start, pos - start));
        skip_ws();
        start = pos;
        while (pos < sv.size() && std::isdigit(static_cast<unsigned char>(sv[pos]))) ++pos;
        if (start == pos) fail("expected a count");
        std::size_t count = std::stoull(std::string(sv.substr(start, pos - start)));
        skip_ws();
        if (pos != sv.size()) fail("trailing characters");
        u.declare_species(Species(id), count);
      } else if (kw == "atom") {
        if (pos == sv.size() || sv[pos] != '"') fail("expected a quoted atom name");
        ++pos;
        std::string name;
        bool closed = false;
        while (pos < sv.size()) {
          char c = sv[pos++];
          if (c == '\\' && pos < sv.size()) {
            name.push_back(sv[pos++]);
          } else if (c == '"') {
            closed = true;
            break;
          } else {
            name.push_back(c);
          }
        }
        if (!closed) fail("unterminated atom name");
        skip_ws();
        if (pos != sv.size()) fail("trailing characters");
        u.declare_atom(MAtomLabel(name));
      } else {
        fail("expected 'species' or 'atom'");
      }
    }
    return u;
  }

  static Universe from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::invalid_universe, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
  }

 private:
  std::map<Species, std::vector<Witness>> species_;
  std::vector<MAtomLabel> atoms_;
};

}  // namespace qset
