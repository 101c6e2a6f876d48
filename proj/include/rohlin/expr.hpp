#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rohlin/linalg.hpp"
#include "rohlin/turns.hpp"

namespace rohlin {

// Grammar (whitespace is insignificant):
//
//   expr    := power ('*' power)*
//   power   := primary ('^' integer)?
//   primary := 'S(' n ')' | 'Omega(' n ',' angle ')' | 'I(' n ')'
//            | 'diag(' angle (',' angle)* ')' | 'phase(' angle ')'
//            | 'kron(' expr ',' expr ')' | 'dsum(' expr ',' expr ')'
//            | '[' row (',' row)* ']' | '(' expr ')'
//   row     := '[' entry (',' entry)* ']'
//   entry   := real | real 'i' | real ('+'|'-') real 'i'
//   angle   := integer ('/' integer)? | decimal          (in turns)
//
// phase(t) is the 1x1 matrix [exp(2 pi i t)]; a product with a 1x1 operand is
// scalar multiplication.

class MatrixExpr;

namespace expr_node {

struct Shift { std::int64_t n; };
struct Clock { std::int64_t n; Turns angle; };
struct Identity { std::int64_t n; };
struct Diagonal { std::vector<Turns> angles; };
struct Phase { Turns angle; };
struct Literal { std::vector<std::vector<Complex>> rows; };
struct Kron { std::shared_ptr<const MatrixExpr> lhs, rhs; };
struct DirectSum { std::shared_ptr<const MatrixExpr> lhs, rhs; };
struct Product { std::shared_ptr<const MatrixExpr> lhs, rhs; };
struct Power { std::shared_ptr<const MatrixExpr> base; std::int64_t exponent; };

}  // namespace expr_node

/// Immutable expression tree over the canonical generators.
class MatrixExpr {
 public:
  using Node = std::variant<expr_node::Shift, expr_node::Clock, expr_node::Identity,
                            expr_node::Diagonal, expr_node::Phase, expr_node::Literal,
                            expr_node::Kron, expr_node::DirectSum, expr_node::Product,
                            expr_node::Power>;

  explicit MatrixExpr(Node node) : node_(std::move(node)) {}

  static MatrixExpr parse(std::string_view source);

  const Node& node() const noexcept { return node_; }

  /// Canonical text; parse(e.to_string()) reproduces an equal tree.
  std::string to_string() const;

  ComplexMatrix evaluate() const;

 private:
  Node node_;
};

inline ComplexMatrix eval_expr(const MatrixExpr& e) { return e.evaluate(); }

}  // namespace rohlin
