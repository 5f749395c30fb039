#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qset/error.hpp"
#include "qset/value.hpp"

namespace qset {

// Expression grammar:
//
//   expr  := qset | call
//   call  := IDENT '(' [expr {',' expr}] ')'
//   qset  := '[' [elem {',' elem}] ']'
//   elem  := matom | mocc | qset
//   matom := 'M' STRING
//   mocc  := 'm' IDENT [':' NAT]          (count defaults to 1)
//
// The canonical printer emits exactly this grammar, so print-then-parse is
// a fixed point on canonical text.

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct MAtomLit {
  std::string name;
};

struct MOccLit {
  std::string species;
  std::size_t count = 1;
};

struct Elem;

struct QsetLit {
  std::vector<Elem> elems;
};

struct Elem {
  std::variant<MAtomLit, MOccLit, QsetLit> node;
};

struct Expr;

struct Call {
  std::string name;
  std::vector<Expr> args;
};

struct Expr {
  std::variant<QsetLit, Call> node;
  SourcePos pos;
};

namespace detail {

enum class Tok { lbrack, rbrack, lparen, rparen, comma, colon, ident, nat, string, end };

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::lbrack: return "'['";
    case Tok::rbrack: return "']'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::ident: return "identifier";
    case Tok::nat: return "number";
    case Tok::string: return "string";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' ||
                                src_[i_] == '\r')) {
      bump();
    }
    tok_.pos = {line_, col_};
    if (i_ >= src_.size()) {
      tok_.kind = Tok::end;
      tok_.text.clear();
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '[': single(Tok::lbrack); return;
      case ']': single(Tok::rbrack); return;
      case '(': single(Tok::lparen); return;
      case ')': single(Tok::rparen); return;
      case ',': single(Tok::comma); return;
      case ':': single(Tok::colon); return;
      case '"': lex_string(); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Tok::nat;
      tok_.text.clear();
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        tok_.text.push_back(src_[i_]);
        bump();
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Tok::ident;
      tok_.text.clear();
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                                  src_[i_] == '_')) {
        tok_.text.push_back(src_[i_]);
        bump();
      }
      return;
    }
    throw ParseError(line_, col_, "a token", std::string("'") + c + "'");
  }

  void lex_string() {
    tok_.kind = Tok::string;
    tok_.text.clear();
    bump();  // opening quote
    for (;;) {
      if (i_ >= src_.size())
        throw ParseError(tok_.pos.line, tok_.pos.column, "closing '\"'", "end of input");
      char c = src_[i_];
      bump();
      if (c == '"') return;
      if (c == '\\') {
        if (i_ >= src_.size())
          throw ParseError(tok_.pos.line, tok_.pos.column, "escaped character", "end of input");
        tok_.text.push_back(src_[i_]);
        bump();
      } else {
        tok_.text.push_back(c);
      }
    }
  }

  void single(Tok kind) {
    tok_.kind = kind;
    tok_.text = src_[i_];
    bump();
  }

  void bump() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Expr parse_whole() {
    Expr e = parse_expr();
    expect(Tok::end, "end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = lex_.peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos.line, t.pos.column, expected, found);
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) fail(what);
    return lex_.take();
  }

  Expr parse_expr() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::lbrack) {
      SourcePos pos = t.pos;
      return Expr{parse_qset(), pos};
    }
    if (t.kind == Tok::ident) return parse_call();
    fail("'[' or an operation name");
  }

  Expr parse_call() {
    Token name = expect(Tok::ident, "an operation name");
    expect(Tok::lparen, "'('");
    Call call;
    call.name = name.text;
    if (lex_.peek().kind != Tok::rparen) {
      call.args.push_back(parse_expr());
      while (lex_.peek().kind == Tok::comma) {
        lex_.take();
        call.args.push_back(parse_expr());
      }
    }
    expect(Tok::rparen, "')' or ','");
    return Expr{std::move(call), name.pos};
  }

  QsetLit parse_qset() {
    expect(Tok::lbrack, "'['");
    QsetLit q;
    if (lex_.peek().kind != Tok::rbrack) {
      q.elems.push_back(parse_elem());
      while (lex_.peek().kind == Tok::comma) {
        lex_.take();
        q.elems.push_back(parse_elem());
      }
    }
    expect(Tok::rbrack, "']' or ','");
    return q;
  }

  Elem parse_elem() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::lbrack) return Elem{parse_qset()};
    if (t.kind == Tok::ident && t.text == "M") {
      lex_.take();
      Token s = expect(Tok::string, "a quoted atom name");
      return Elem{MAtomLit{s.text}};
    }
    if (t.kind == Tok::ident && t.text == "m") {
      lex_.take();
      Token id = expect(Tok::ident, "a species identifier");
      MOccLit lit{id.text, 1};
      if (lex_.peek().kind == Tok::colon) {
        lex_.take();
        Token n = expect(Tok::nat, "a count");
        lit.count = std::stoull(n.text);
      }
      return Elem{std::move(lit)};
    }
    fail("'M', 'm' or '['");
  }

  Lexer lex_;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse_whole(); }

// Realizes a literal: every written micro-atom is a new atom of its
// species, so equal literals denote indistinguishable but extensionally
// unrelated collections.
inline QSetValue qset_of_literal(const QsetLit& lit) {
  std::vector<Value> elems;
  for (const Elem& e : lit.elems) {
    std::visit(detail::overloaded{
                   [&](const MAtomLit& a) { elems.emplace_back(MAtomLabel(a.name)); },
                   [&](const MOccLit& m) {
                     Species s(m.species);
                     for (std::size_t i = 0; i < m.count; ++i) elems.emplace_back(make_m_atom(s));
                   },
                   [&](const QsetLit& q) { elems.emplace_back(qset_of_literal(q)); },
               },
               e.node);
  }
  return make_qset(elems);
}

}  // namespace qset
