#pragma once

#include <string>
#include <vector>

#include "ik/dist.hpp"
#include "ik/matrix.hpp"

namespace ik::nn {

enum class ActivationKind { Sigmoid, SigmoidApprox, Tanh, Relu, LeakyRelu, Swish, Identity };

struct Activation {
  ActivationKind kind = ActivationKind::Identity;
  double slope = 0.01;  // leaky_relu only, must lie in (0, 1)

  static Activation sigmoid() { return {ActivationKind::Sigmoid}; }
  static Activation tanh() { return {ActivationKind::Tanh}; }
  static Activation relu() { return {ActivationKind::Relu}; }
  static Activation identity() { return {ActivationKind::Identity}; }
  static Activation leaky_relu(double a);

  bool smooth() const noexcept;
};

/// Tags: sigmoid, sigmoid_approx, tanh, relu, leaky_relu, swish, identity.
/// "leaky_relu:0.1" sets the slope.
Activation parse_activation(const std::string& tag);
std::string to_string(const Activation& a);

double activate(const Activation& a, double x);
/// Exact derivative; relu'(0) = 0 and leaky'(0) = slope.
double activate_grad(const Activation& a, double x);

struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;
  Activation activation;

  DenseLayer(Matrix weights, std::vector<double> bias, Activation activation);
  std::size_t inputs() const noexcept { return weights.cols(); }
  std::size_t outputs() const noexcept { return weights.rows(); }
};

/// W x + b before the activation.
std::vector<double> dense_preactivation(const DenseLayer& layer, const std::vector<double>& x);
std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& x);

struct Mlp {
  std::vector<DenseLayer> layers;
  bool softmax = false;

  Mlp(std::vector<DenseLayer> layers, bool softmax);

  /// {"layers":[{"rows","cols","weights","bias","activation"}], "softmax": bool}
  static Mlp from_json(const std::string& text);
  static Mlp load(const std::string& path);
};

struct MlpTrace {
  std::vector<std::vector<double>> pre_activations;  // per layer
  std::vector<std::vector<double>> activations;      // per layer
  std::vector<double> output;                        // last activation, softmaxed if flagged
};

MlpTrace mlp_forward(const Mlp& net, const std::vector<double>& x);

/// Max-shifted softmax.
DiscreteDist softmax(const std::vector<double>& v);

/// -ln(probs[target]) for a one-hot target.
double cross_entropy_loss(const DiscreteDist& probs, const std::vector<double>& one_hot);
double cross_entropy_loss(const DiscreteDist& probs, std::size_t target_class);

/// 1 iff w . x + b > 0.
int perceptron_predict(const std::vector<double>& w, double b, const std::vector<double>& x);

enum class GradCheckStatus { Pass, Fail, Skipped };

struct GradCheckResult {
  GradCheckStatus status = GradCheckStatus::Skipped;
  double analytic = 0.0;
  double numeric = 0.0;
};

/// Compares activate_grad against (f(x+h) - f(x-h)) / 2h with tolerance
/// tol * max(1, |grad|). Skipped when a relu kink lies within h of x.
GradCheckResult grad_check(const Activation& a, double x, double h = 1e-6, double tol = 1e-5);

std::string to_string(GradCheckStatus s);

}  // namespace ik::nn
