#ifndef TREEAUT_EXPRLANG_HPP
#define TREEAUT_EXPRLANG_HPP

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeaut/engine.hpp"

namespace treeaut {

// Grammar of the expression language (columns are 1-based):
//
//   expr     := term { "*" term }
//   term     := atom [ "^" exponent ]
//   atom     := "tau" | "iota" | "eps" | "theta" | "id"
//             | "lambda(" rational ")" | "psi(" rational ")"
//             | "rigid(" cycles ")"
//             | "wreath(" expr { "," expr } ";" cycles ")"
//             | "conj(" expr "," expr ")"
//             | "(" expr ")"
//   exponent := rational
//   rational := ["-"] digits ["/" digits]
//   cycles   := { "(" int { " " int } ")" }
//
// "*" composes left to right; "^" binds tighter than "*"; conj(a, b) is
// b^{-1} a b. An empty cycle list denotes the identity permutation.

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int column)
      : std::runtime_error(message + " at column " + std::to_string(column)), column(column) {}
  int column;
};

struct EvalError : std::runtime_error {
  EvalError(const std::string& message, int column_begin, int column_end)
      : std::runtime_error(message + " (columns " + std::to_string(column_begin) + "-" +
                           std::to_string(column_end) + ")"),
        column_begin(column_begin),
        column_end(column_end) {}
  int column_begin;
  int column_end;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Name, Lambda, Psi, Rigid, Wreath, Conj, Compose, Power };
  Kind kind = Kind::Name;
  std::string name;                      // Name
  mpq_class rational;                    // Lambda, Psi, Power
  std::vector<std::vector<int>> cycles;  // Rigid, Wreath
  std::vector<ExprPtr> children;         // Compose, Wreath, Conj, Power
  int column_begin = 0;                  // 1-based, inclusive
  int column_end = 0;
};

// Parses an expression. Throws ParseError with a 1-based column.
ExprPtr parse_expression(const std::string& text);

// Canonical text form; unparse(parse(unparse(e))) == unparse(e).
std::string unparse(const ExprPtr& expr);

// Evaluates against an engine at the given degree. Throws EvalError with
// the span of the offending subexpression.
TreeAut evaluate(Engine& engine, int degree, const ExprPtr& expr);

// parse + evaluate.
TreeAut evaluate_text(Engine& engine, int degree, const std::string& text);

}  // namespace treeaut

#endif  // TREEAUT_EXPRLANG_HPP
