#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "zetauniv/types.hpp"
#include "zetauniv/zeta.hpp"

namespace zetauniv {

// A target function f(s) written in a small expression language:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?            (right associative)
//   primary := number | number 'i' | 'i' | 's' | 'pi'
//            | name '(' expr ')' | 'zeta_shift' '(' number ')' | '(' expr ')'
//   name    := 'exp' | 'log' | 'sin' | 'cos'
//
// zeta_shift(t0) stands for zeta(s + i t0); t0 must be a non-negative
// literal and is kept in split precision. log is the principal branch.
// Integer real exponents are evaluated by repeated multiplication, other
// exponents as exp(b log a).
class Expression {
public:
  struct Node;

  // Throws ParseError carrying the 0-based character offset.
  static Expression parse(std::string_view text);

  Complex evaluate(ComplexPoint s, const EvalConfig& cfg = {}) const;

  // Fully parenthesized text that parses back to an equivalent tree.
  std::string to_string() const;

  // Shifts t0 of every zeta_shift node, in order of appearance.
  std::vector<TallShift> zeta_shifts() const;

private:
  explicit Expression(std::shared_ptr<const Node> root)
      : root_(std::move(root)) {}

  std::shared_ptr<const Node> root_;
};

}  // namespace zetauniv
