#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ik/exprgraph/dual.hpp"

namespace ik::expr {

enum class NodeKind { Constant, Variable, Unary, Binary };

enum class UnaryOp { Neg, Ln, Exp, Sin, Cos, Sqrt, Tanh, Atanh, Sigmoid };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);

/// Variable name -> real value. Every variable of an Expr must be bound
/// before it can be evaluated.
using Bindings = std::map<std::string, double, std::less<>>;
using DualBindings = std::map<std::string, Dual, std::less<>>;

/// Immutable handle to a node of an expression DAG.
///
/// Copies share the underlying node, so reusing a handle in several places
/// builds a DAG rather than a tree. No simplification or constant folding
/// happens at construction: evaluation visits the graph exactly as built.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable(std::string name);
  static Expr unary(UnaryOp op, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  NodeKind kind() const noexcept;
  double constant_value() const;        // Constant only
  const std::string& name() const;      // Variable only
  UnaryOp unary_op() const;             // Unary only
  BinaryOp binary_op() const;           // Binary only
  Expr arg(std::size_t i) const;        // child i of a Unary/Binary node
  std::size_t arity() const noexcept;

  // Stable identity of the shared node, used for DAG memoisation.
  const void* id() const noexcept { return node_.get(); }

  // Distinct variable names, in order of first appearance (left to right).
  std::vector<std::string> variables() const;

  // Infix rendering that round-trips through parse().
  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Expr& b);
Expr ln(const Expr& a);
Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);
Expr tanh(const Expr& a);
Expr atanh(const Expr& a);
Expr sigmoid(const Expr& a);

/// Parses infix text: `+ - * / ^`, calls such as `ln(x)` or `pow(x, 2)`,
/// parentheses, decimal literals and identifiers. `^` binds tighter than unary
/// minus and is right-associative. Repeated identifiers resolve to a single
/// shared variable node. Throws ik::ParseError.
Expr parse(std::string_view text);

/// Plain real evaluation. Throws ik::InvalidArgument for unbound variables and
/// ik::DomainError for domain violations.
double eval(const Expr& expr, const Bindings& at);

/// Dual-number evaluation: the value part equals eval() at the value parts
/// and the tangent is propagated by the chain rule.
Dual dual_eval(const Expr& expr, const DualBindings& at);

// One row of a forward-mode table. Variables are labelled v_{1-n} .. v_0 in
// order of first appearance, every other node v_1, v_2, ... in evaluation
// order. `args` index earlier rows, which is what makes a trace replayable.
struct TraceRow {
  std::string label;
  NodeKind kind = NodeKind::Constant;
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  std::string variable;  // Variable rows
  std::vector<std::size_t> args;
  double value = 0.0;
  double tangent = 0.0;

  // Human readable description, e.g. "ln v_-1" or "v_1 + v_2".
  std::string describe(const std::vector<TraceRow>& rows) const;
};

struct TangentTrace {
  std::vector<TraceRow> rows;  // topological order; last row is the output

  // Table with columns (label, op, value, tangent), tab separated.
  std::string to_table() const;
};

struct AdResult {
  double value = 0.0;
  double derivative = 0.0;
  TangentTrace trace;
};

/// Forward-mode derivative with respect to `wrt`, seeded one-hot: tangent 1
/// for `wrt`, 0 for every other variable. Runs through dual evaluation.
AdResult forward_ad(const Expr& expr, const Bindings& at, std::string_view wrt);

// Dual evaluation that also records the tangent table.
Dual dual_eval_traced(const Expr& expr, const DualBindings& at, TangentTrace& trace);

/// Re-executes a trace row by row from its variable rows and returns
/// (value, tangent) of the final row.
Dual replay(const TangentTrace& trace);

/// True if every row only references earlier rows.
bool is_topological(const TangentTrace& trace);

}  // namespace ik::expr
