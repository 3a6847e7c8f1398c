#include "ik/exprgraph/expr.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "ik/error.hpp"
#include "ik/format.hpp"
#include "scalar_ops.hpp"

namespace ik::expr {

struct Expr::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  std::string name;
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

std::string_view to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "neg";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Tanh: return "tanh";
    case UnaryOp::Atanh: return "atanh";
    case UnaryOp::Sigmoid: return "sigmoid";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
  }
  return "?";
}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  if (name.empty()) throw InvalidArgument("variable name must be nonempty");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Unary;
  n->unary = op;
  n->lhs = std::move(arg.node_);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->binary = op;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }

double Expr::constant_value() const {
  if (node_->kind != NodeKind::Constant) throw InvalidArgument("not a constant node");
  return node_->value;
}

const std::string& Expr::name() const {
  if (node_->kind != NodeKind::Variable) throw InvalidArgument("not a variable node");
  return node_->name;
}

UnaryOp Expr::unary_op() const {
  if (node_->kind != NodeKind::Unary) throw InvalidArgument("not a unary node");
  return node_->unary;
}

BinaryOp Expr::binary_op() const {
  if (node_->kind != NodeKind::Binary) throw InvalidArgument("not a binary node");
  return node_->binary;
}

std::size_t Expr::arity() const noexcept {
  switch (node_->kind) {
    case NodeKind::Unary: return 1;
    case NodeKind::Binary: return 2;
    default: return 0;
  }
}

Expr Expr::arg(std::size_t i) const {
  if (i >= arity()) throw InvalidArgument("child index out of range");
  return Expr(i == 0 ? node_->lhs : node_->rhs);
}

std::vector<std::string> Expr::variables() const {
  std::vector<std::string> names;
  std::vector<Expr> stack{*this};
  std::unordered_map<const void*, bool> seen;
  // Explicit stack with right child pushed first gives left-to-right order.
  while (!stack.empty()) {
    Expr e = stack.back();
    stack.pop_back();
    if (!seen.emplace(e.id(), true).second) continue;
    if (e.kind() == NodeKind::Variable) {
      bool dup = false;
      for (const auto& n : names) dup = dup || n == e.name();
      if (!dup) names.push_back(e.name());
    }
    for (std::size_t i = e.arity(); i-- > 0;) stack.push_back(e.arg(i));
  }
  return names;
}

namespace {

void render(const Expr& e, std::ostringstream& os) {
  switch (e.kind()) {
    case NodeKind::Constant: {
      const double v = e.constant_value();
      if (v < 0 || std::signbit(v)) {
        os << "(-" << format_number(-v) << ")";
      } else {
        os << format_number(v);
      }
      return;
    }
    case NodeKind::Variable: os << e.name(); return;
    case NodeKind::Unary:
      if (e.unary_op() == UnaryOp::Neg) {
        os << "(-";
        render(e.arg(0), os);
        os << ")";
      } else {
        os << to_string(e.unary_op()) << "(";
        render(e.arg(0), os);
        os << ")";
      }
      return;
    case NodeKind::Binary:
      os << "(";
      render(e.arg(0), os);
      os << " " << to_string(e.binary_op()) << " ";
      render(e.arg(1), os);
      os << ")";
      return;
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::ostringstream os;
  render(*this, os);
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryOp::Neg, a); }
Expr pow(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Pow, a, b); }
Expr ln(const Expr& a) { return Expr::unary(UnaryOp::Ln, a); }
Expr exp(const Expr& a) { return Expr::unary(UnaryOp::Exp, a); }
Expr sin(const Expr& a) { return Expr::unary(UnaryOp::Sin, a); }
Expr cos(const Expr& a) { return Expr::unary(UnaryOp::Cos, a); }
Expr sqrt(const Expr& a) { return Expr::unary(UnaryOp::Sqrt, a); }
Expr tanh(const Expr& a) { return Expr::unary(UnaryOp::Tanh, a); }
Expr atanh(const Expr& a) { return Expr::unary(UnaryOp::Atanh, a); }
Expr sigmoid(const Expr& a) { return Expr::unary(UnaryOp::Sigmoid, a); }

// ---------------------------------------------------------------------------
// Linearisation and evaluation

namespace {

// Rows without values: variables first (first-appearance order), then every
// other node in post-order. Shared nodes and repeated variable names map to a
// single row.
std::vector<TraceRow> linearize(const Expr& root) {
  const auto names = root.variables();
  std::vector<TraceRow> rows;
  std::map<std::string, std::size_t, std::less<>> var_row;
  const auto n_vars = static_cast<long>(names.size());
  for (long i = 0; i < n_vars; ++i) {
    TraceRow r;
    r.kind = NodeKind::Variable;
    r.variable = names[static_cast<std::size_t>(i)];
    r.label = "v_" + std::to_string(i - n_vars + 1);
    var_row[r.variable] = rows.size();
    rows.push_back(std::move(r));
  }

  std::unordered_map<const void*, std::size_t> done;
  int next_label = 1;

  // Iterative post-order so deep graphs do not exhaust the call stack.
  struct Frame {
    Expr e;
    bool expanded;
  };
  std::vector<Frame> stack{{root, false}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (done.count(f.e.id())) continue;
    if (f.e.kind() == NodeKind::Variable) {
      done[f.e.id()] = var_row.at(f.e.name());
      continue;
    }
    if (!f.expanded && f.e.arity() > 0) {
      stack.push_back({f.e, true});
      for (std::size_t i = f.e.arity(); i-- > 0;) stack.push_back({f.e.arg(i), false});
      continue;
    }
    TraceRow r;
    r.kind = f.e.kind();
    r.label = "v_" + std::to_string(next_label++);
    if (r.kind == NodeKind::Constant) {
      r.value = f.e.constant_value();
    } else if (r.kind == NodeKind::Unary) {
      r.unary = f.e.unary_op();
      r.args = {done.at(f.e.arg(0).id())};
    } else {
      r.binary = f.e.binary_op();
      r.args = {done.at(f.e.arg(0).id()), done.at(f.e.arg(1).id())};
    }
    done[f.e.id()] = rows.size();
    rows.push_back(std::move(r));
  }
  return rows;
}

double apply_scalar(UnaryOp op, double a) {
  using namespace detail;
  switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Ln: return checked_ln(a);
    case UnaryOp::Exp: return std::exp(a);
    case UnaryOp::Sin: return std::sin(a);
    case UnaryOp::Cos: return std::cos(a);
    case UnaryOp::Sqrt: return checked_sqrt(a);
    case UnaryOp::Tanh: return std::tanh(a);
    case UnaryOp::Atanh: return checked_atanh(a);
    case UnaryOp::Sigmoid: return stable_sigmoid(a);
  }
  return 0.0;
}

double apply_scalar(BinaryOp op, double a, double b) {
  using namespace detail;
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return checked_div(a, b);
    case BinaryOp::Pow: return checked_pow(a, b);
  }
  return 0.0;
}

Dual apply_dual(UnaryOp op, Dual a) {
  switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Ln: return ln(a);
    case UnaryOp::Exp: return exp(a);
    case UnaryOp::Sin: return sin(a);
    case UnaryOp::Cos: return cos(a);
    case UnaryOp::Sqrt: return sqrt(a);
    case UnaryOp::Tanh: return tanh(a);
    case UnaryOp::Atanh: return atanh(a);
    case UnaryOp::Sigmoid: return sigmoid(a);
  }
  return {};
}

Dual apply_dual(BinaryOp op, Dual a, Dual b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow: return pow(a, b);
  }
  return {};
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& at, const std::string& name) {
  auto it = at.find(name);
  if (it == at.end()) throw InvalidArgument("unbound variable '" + name + "'");
  return it->second;
}

// Fills value/tangent of every row. Constants carry their value already.
void run_dual(std::vector<TraceRow>& rows, const DualBindings& at) {
  for (auto& r : rows) {
    Dual out;
    switch (r.kind) {
      case NodeKind::Constant: out = Dual::constant(r.value); break;
      case NodeKind::Variable: out = lookup(at, r.variable); break;
      case NodeKind::Unary: {
        const auto& a = rows[r.args[0]];
        out = apply_dual(r.unary, {a.value, a.tangent});
        break;
      }
      case NodeKind::Binary: {
        const auto& a = rows[r.args[0]];
        const auto& b = rows[r.args[1]];
        out = apply_dual(r.binary, {a.value, a.tangent}, {b.value, b.tangent});
        break;
      }
    }
    r.value = out.value;
    r.tangent = out.tangent;
  }
}

}  // namespace

double eval(const Expr& expr, const Bindings& at) {
  auto rows = linearize(expr);
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    switch (r.kind) {
      case NodeKind::Constant: values[i] = r.value; break;
      case NodeKind::Variable: values[i] = lookup(at, r.variable); break;
      case NodeKind::Unary: values[i] = apply_scalar(r.unary, values[r.args[0]]); break;
      case NodeKind::Binary:
        values[i] = apply_scalar(r.binary, values[r.args[0]], values[r.args[1]]);
        break;
    }
  }
  return values.back();
}

Dual dual_eval_traced(const Expr& expr, const DualBindings& at, TangentTrace& trace) {
  trace.rows = linearize(expr);
  run_dual(trace.rows, at);
  const auto& out = trace.rows.back();
  return {out.value, out.tangent};
}

Dual dual_eval(const Expr& expr, const DualBindings& at) {
  TangentTrace scratch;
  return dual_eval_traced(expr, at, scratch);
}

AdResult forward_ad(const Expr& expr, const Bindings& at, std::string_view wrt) {
  if (at.find(wrt) == at.end())
    throw InvalidArgument("differentiation variable '" + std::string(wrt) + "' is not bound");
  DualBindings seeded;
  for (const auto& [name, value] : at) seeded[name] = Dual(value, name == wrt ? 1.0 : 0.0);

  AdResult result;
  const Dual d = dual_eval_traced(expr, seeded, result.trace);
  result.value = d.value;
  result.derivative = d.tangent;
  return result;
}

Dual replay(const TangentTrace& trace) {
  if (trace.rows.empty()) throw InvalidArgument("empty trace");
  std::vector<TraceRow> rows = trace.rows;
  DualBindings at;
  for (const auto& r : rows)
    if (r.kind == NodeKind::Variable) at[r.variable] = Dual(r.value, r.tangent);
  run_dual(rows, at);
  return {rows.back().value, rows.back().tangent};
}

bool is_topological(const TangentTrace& trace) {
  for (std::size_t i = 0; i < trace.rows.size(); ++i)
    for (auto a : trace.rows[i].args)
      if (a >= i) return false;
  return true;
}

std::string TraceRow::describe(const std::vector<TraceRow>& rows) const {
  switch (kind) {
    case NodeKind::Constant: return format_number(value);
    case NodeKind::Variable: return variable;
    case NodeKind::Unary:
      if (unary == UnaryOp::Neg) return "-" + rows[args[0]].label;
      return std::string(to_string(unary)) + " " + rows[args[0]].label;
    case NodeKind::Binary:
      return rows[args[0]].label + " " + std::string(to_string(binary)) + " " +
             rows[args[1]].label;
  }
  return {};
}

std::string TangentTrace::to_table() const {
  std::ostringstream os;
  os.precision(10);
  os << "label\top\tvalue\ttangent\n";
  for (const auto& r : rows)
    os << r.label << '\t' << r.describe(rows) << '\t' << r.value << '\t' << r.tangent << '\n';
  return os.str();
}

}  // namespace ik::expr
