#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace paramodal {

// Grammar, loosest to tightest:
//   formula := imp ("<->" imp)*        left-assoc, expands to (a->b)&(b->a)
//   imp     := or ("->" imp)?          right-assoc
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "!" unary | "[]" unary | atom
//   atom    := IDENT | "(" formula ")"
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_space();
    if (pos_ != text_.size()) fail({"'<->'", "'->'", "'|'", "'&'", "end of input"});
    return f;
  }

 private:
  enum class Tok { Ident, SNeg, Neg, Box, And, Or, Imp, Iff, LParen, RParen, End, Bad };

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Tok peek() {
    skip_space();
    if (pos_ >= text_.size()) return Tok::End;
    std::string_view rest = text_.substr(pos_);
    if (rest.starts_with("<->")) return Tok::Iff;
    if (rest.starts_with("->")) return Tok::Imp;
    if (rest.starts_with("[]")) return Tok::Box;
    switch (rest.front()) {
      case '~': return Tok::SNeg;
      case '!': return Tok::Neg;
      case '&': return Tok::And;
      case '|': return Tok::Or;
      case '(': return Tok::LParen;
      case ')': return Tok::RParen;
      default: break;
    }
    return ident_start(rest.front()) ? Tok::Ident : Tok::Bad;
  }

  static std::size_t width(Tok t) {
    switch (t) {
      case Tok::Iff: return 3;
      case Tok::Imp:
      case Tok::Box: return 2;
      case Tok::End: return 0;
      default: return 1;
    }
  }

  void advance(Tok t) { pos_ += width(t); }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    std::string found = "end of input";
    if (pos_ < text_.size()) found = "'" + std::string(1, text_[pos_]) + "'";
    throw ParseError(pos_, std::move(expected), found);
  }

  Formula parse_iff() {
    Formula acc = parse_imp();
    while (peek() == Tok::Iff) {
      advance(Tok::Iff);
      acc = iff(acc, parse_imp());
    }
    return acc;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (peek() == Tok::Imp) {
      advance(Tok::Imp);
      return Formula::imp(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (peek() == Tok::Or) {
      advance(Tok::Or);
      acc = Formula::disj(acc, parse_and());
    }
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    while (peek() == Tok::And) {
      advance(Tok::And);
      acc = Formula::conj(acc, parse_unary());
    }
    return acc;
  }

  Formula parse_unary() {
    switch (Tok t = peek()) {
      case Tok::SNeg: advance(t); return Formula::sneg(parse_unary());
      case Tok::Neg: advance(t); return Formula::neg(parse_unary());
      case Tok::Box: advance(t); return Formula::box(parse_unary());
      case Tok::LParen: {
        advance(t);
        Formula inner = parse_iff();
        if (peek() != Tok::RParen) fail({"')'", "'<->'", "'->'", "'|'", "'&'"});
        advance(Tok::RParen);
        return inner;
      }
      case Tok::Ident: {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return Formula::var(std::string(text_.substr(start, pos_ - start)));
      }
      default:
        fail({"identifier", "'('", "'~'", "'!'", "'[]'"});
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline Formula parse(std::string_view text) { return Parser(text).parse_all(); }

// Comma-separated list of formulas; formulas never contain commas.
inline std::vector<Formula> parse_list(std::string_view text) {
  std::vector<Formula> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    bool blank = piece.find_first_not_of(" \t\r\n") == std::string_view::npos;
    if (!blank) {
      try {
        out.push_back(parse(piece));
      } catch (const ParseError& e) {
        std::size_t at = start + e.offset();
        std::string found = at < text.size() ? "'" + std::string(1, text[at]) + "'" : "end of item";
        throw ParseError(at, e.expected(), found);
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

enum class Notation { Ascii, Unicode };

namespace detail {

constexpr int precedence(Connective c) {
  switch (c) {
    case Connective::Imp: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    default: return 4;
  }
}

inline std::string_view symbol(Connective c, Notation n) {
  if (n == Notation::Ascii) return token(c);
  switch (c) {
    case Connective::Neg: return "¬";
    case Connective::SNeg: return "∼";
    case Connective::Box: return "□";
    case Connective::And: return "∧";
    case Connective::Or: return "∨";
    case Connective::Imp: return "→";
    case Connective::Var: break;
  }
  return "";
}

inline void print_into(const Formula& f, Notation n, std::string& out) {
  if (f.is_var()) {
    out += f.name();
    return;
  }
  const Connective c = f.op();
  if (arity(c) == 1) {
    out += symbol(c, n);
    const Formula& a = f.sub();
    bool paren = arity(a.op()) == 2;
    if (paren) out += '(';
    print_into(a, n, out);
    if (paren) out += ')';
    return;
  }
  const int p = precedence(c);
  const Formula& l = f.left();
  const Formula& r = f.right();
  // & and | associate left, -> associates right.
  bool paren_l = arity(l.op()) == 2 && (precedence(l.op()) < p ||
                                        (precedence(l.op()) == p && c == Connective::Imp));
  bool paren_r = arity(r.op()) == 2 && (precedence(r.op()) < p ||
                                        (precedence(r.op()) == p && c != Connective::Imp));
  if (paren_l) out += '(';
  print_into(l, n, out);
  if (paren_l) out += ')';
  out += ' ';
  out += symbol(c, n);
  out += ' ';
  if (paren_r) out += '(';
  print_into(r, n, out);
  if (paren_r) out += ')';
}

}  // namespace detail

inline std::string print(const Formula& f, Notation n = Notation::Ascii) {
  std::string out;
  detail::print_into(f, n, out);
  return out;
}

}  // namespace paramodal
