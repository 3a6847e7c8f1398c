#include <cctype>
#include <cstdlib>
#include <map>
#include <string>

#include "ik/error.hpp"
#include "ik/exprgraph/expr.hpp"

namespace ik::expr {
namespace {

// Grammar (lowest to highest precedence):
//   sum     := product (('+' | '-') product)*
//   product := prefix (('*' | '/') prefix)*
//   prefix  := '-' prefix | power
//   power   := primary ('^' prefix)?
//   primary := number | ident | ident '(' args ')' | '(' sum ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_ws();
    if (at_end()) fail("empty expression");
    Expr e = sum();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, Expr, std::less<>> vars_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error: " + msg, pos_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr sum() {
    Expr lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + product();
      } else if (accept('-')) {
        lhs = lhs - product();
      } else {
        return lhs;
      }
    }
  }

  Expr product() {
    Expr lhs = prefix();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * prefix();
      } else if (accept('/')) {
        lhs = lhs / prefix();
      } else {
        return lhs;
      }
    }
  }

  Expr prefix() {
    if (accept('-')) return -prefix();
    if (accept('+')) return prefix();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return pow(base, prefix());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      // Exponent only if followed by digits, so "2e" stays an error below.
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || token == ".") {
      pos_ = start;
      fail("malformed number '" + token + "'");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (peek() != '(') {
      auto it = vars_.find(name);
      if (it == vars_.end()) it = vars_.emplace(name, Expr::variable(name)).first;
      return it->second;
    }
    ++pos_;
    if (name == "pow") {
      Expr base = sum();
      expect(',');
      Expr exponent = sum();
      expect(')');
      return pow(base, exponent);
    }
    static const std::map<std::string, UnaryOp, std::less<>> functions = {
        {"ln", UnaryOp::Ln},       {"exp", UnaryOp::Exp},     {"sin", UnaryOp::Sin},
        {"cos", UnaryOp::Cos},     {"sqrt", UnaryOp::Sqrt},   {"tanh", UnaryOp::Tanh},
        {"atanh", UnaryOp::Atanh}, {"sigmoid", UnaryOp::Sigmoid}};
    auto fn = functions.find(name);
    if (fn == functions.end()) {
      pos_ = start;
      fail("unknown function '" + name + "'");
    }
    Expr arg = sum();
    expect(')');
    return Expr::unary(fn->second, arg);
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ik::expr
