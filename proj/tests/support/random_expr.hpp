#pragma once

// Random expression DAGs for property tests. Risky operations are wrapped so
// that every generated expression is defined everywhere on the real line:
// ln(1 + g^2), sqrt(1 + g^2), atanh(0.5 tanh g), a / (1 + b^2), integer
// powers 2..3 and positive constant bases. Subexpressions are reused at random
// so the result is a DAG, not only a tree.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ik/exprgraph/expr.hpp"

namespace ik::testing {

class RandomExprGen {
 public:
  explicit RandomExprGen(std::uint64_t seed) : rng_(seed) {}

  static const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"x", "y", "z"};
    return n;
  }

  expr::Expr generate(int max_depth) {
    pool_.clear();
    return node(max_depth);
  }

  expr::Bindings bindings() {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    expr::Bindings b;
    for (const auto& n : names()) b[n] = u(rng_);
    return b;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<expr::Expr> pool_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  expr::Expr leaf() {
    if (pick(3) == 0) {
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      return expr::Expr::constant(std::round(u(rng_) * 100.0) / 100.0);
    }
    return expr::Expr::variable(names()[static_cast<std::size_t>(pick(3))]);
  }

  expr::Expr node(int depth) {
    using namespace expr;
    if (depth <= 0 || pick(5) == 0) return leaf();
    if (!pool_.empty() && pick(4) == 0) return pool_[static_cast<std::size_t>(pick(static_cast<int>(pool_.size())))];

    const auto one = Expr::constant(1.0);
    Expr e = leaf();
    switch (pick(15)) {
      case 0: e = node(depth - 1) + node(depth - 1); break;
      case 1: e = node(depth - 1) - node(depth - 1); break;
      case 2: e = node(depth - 1) * node(depth - 1); break;
      case 3: {
        const auto d = node(depth - 1);
        e = node(depth - 1) / (one + d * d);
        break;
      }
      case 4: e = pow(node(depth - 1), Expr::constant(2.0 + pick(2))); break;
      case 5: {
        const auto g = node(depth - 1);
        e = ln(one + g * g);
        break;
      }
      case 6: {
        const auto g = node(depth - 1);
        e = sqrt(one + g * g);
        break;
      }
      case 7: e = atanh(Expr::constant(0.5) * tanh(node(depth - 1))); break;
      case 8: e = sin(node(depth - 1)); break;
      case 9: e = cos(node(depth - 1)); break;
      case 10: e = tanh(node(depth - 1)); break;
      case 11: e = sigmoid(node(depth - 1)); break;
      case 12: e = exp(sin(node(depth - 1))); break;
      case 13: e = pow(Expr::constant(1.5), sin(node(depth - 1))); break;
      default: e = -node(depth - 1); break;
    }
    pool_.push_back(e);
    return e;
  }
};

}  // namespace ik::testing
