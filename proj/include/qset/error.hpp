#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qset {

enum class Errc {
  cyclic_structure,
  not_a_qset,
  unknown_species,
  not_member,
  not_indistinguishable,
  not_disjoint,
  empty_member,
  empty_codomain,
  invalid_shape,
  invalid_universe,
  parse_error,
  eval_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::cyclic_structure: return "CyclicStructure";
    case Errc::not_a_qset: return "NotAQSet";
    case Errc::unknown_species: return "UnknownSpecies";
    case Errc::not_member: return "NotMember";
    case Errc::not_indistinguishable: return "NotIndistinguishable";
    case Errc::not_disjoint: return "NotDisjoint";
    case Errc::empty_member: return "EmptyMember";
    case Errc::empty_codomain: return "EmptyCodomain";
    case Errc::invalid_shape: return "InvalidShape";
    case Errc::invalid_universe: return "InvalidUniverse";
    case Errc::parse_error: return "ParseError";
    case Errc::eval_error: return "EvalError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Syntax error with a 1-based source position and what was expected there.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& expected,
             const std::string& found)
      : Error(Errc::parse_error, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": expected " + expected +
                                     ", found " + found),
        line_(line),
        column_(column),
        expected_(expected) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

class EvalError : public Error {
 public:
  EvalError(const std::string& op, const std::string& what)
      : Error(Errc::eval_error, "in '" + op + "': " + what), op_(op) {}
  const std::string& op() const { return op_; }

 private:
  std::string op_;
};

}  // namespace qset
