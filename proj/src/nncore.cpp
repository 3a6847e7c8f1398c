#include "ik/nncore.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ik/error.hpp"
#include "ik/format.hpp"

namespace ik::nn {
namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require_dims(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace

Activation Activation::leaky_relu(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os << "leaky relu slope must lie in (0, 1), got " << a;
    throw DomainError(os.str());
  }
  return {ActivationKind::LeakyRelu, a};
}

bool Activation::smooth() const noexcept {
  return kind != ActivationKind::Relu && kind != ActivationKind::LeakyRelu;
}

Activation parse_activation(const std::string& tag) {
  const auto colon = tag.find(':');
  const std::string name = tag.substr(0, colon);
  if (name == "leaky_relu") {
    if (colon == std::string::npos) return Activation::leaky_relu(0.01);
    try {
      return Activation::leaky_relu(std::stod(tag.substr(colon + 1)));
    } catch (const std::invalid_argument&) {
      throw InvalidArgument("bad leaky relu slope in '" + tag + "'");
    }
  }
  if (colon != std::string::npos) throw InvalidArgument("only leaky_relu takes a parameter: '" + tag + "'");
  if (name == "sigmoid") return {ActivationKind::Sigmoid};
  if (name == "sigmoid_approx") return {ActivationKind::SigmoidApprox};
  if (name == "tanh") return {ActivationKind::Tanh};
  if (name == "relu") return {ActivationKind::Relu};
  if (name == "swish") return {ActivationKind::Swish};
  if (name == "identity" || name == "linear") return {ActivationKind::Identity};
  throw InvalidArgument("unknown activation '" + tag + "'");
}

std::string to_string(const Activation& a) {
  switch (a.kind) {
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::SigmoidApprox: return "sigmoid_approx";
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::Relu: return "relu";
    case ActivationKind::LeakyRelu: return "leaky_relu:" + format_number(a.slope);
    case ActivationKind::Swish: return "swish";
    case ActivationKind::Identity: return "identity";
  }
  return "?";
}

double activate(const Activation& a, double x) {
  switch (a.kind) {
    case ActivationKind::Sigmoid: return sigmoid(x);
    case ActivationKind::SigmoidApprox: return 1.0 / (1.0 + std::exp2(-1.5 * x));
    case ActivationKind::Tanh: return std::tanh(x);
    case ActivationKind::Relu: return x > 0.0 ? x : 0.0;
    case ActivationKind::LeakyRelu: return x > 0.0 ? x : a.slope * x;
    case ActivationKind::Swish: return x * sigmoid(x);
    case ActivationKind::Identity: return x;
  }
  return x;
}

double activate_grad(const Activation& a, double x) {
  switch (a.kind) {
    case ActivationKind::Sigmoid: {
      const double s = sigmoid(x);
      return s * (1.0 - s);
    }
    case ActivationKind::SigmoidApprox: {
      // d/dx 1/(1+u) with u = 2^(-1.5x): 1.5 ln2 u / (1+u)^2.
      const double u = std::exp2(-1.5 * x);
      if (std::isinf(u)) return 0.0;
      return 1.5 * std::log(2.0) * u / ((1.0 + u) * (1.0 + u));
    }
    case ActivationKind::Tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case ActivationKind::Relu: return x > 0.0 ? 1.0 : 0.0;
    case ActivationKind::LeakyRelu: return x > 0.0 ? 1.0 : a.slope;
    case ActivationKind::Swish: {
      const double s = sigmoid(x);
      return s + x * s * (1.0 - s);
    }
    case ActivationKind::Identity: return 1.0;
  }
  return 1.0;
}

// ---------------------------------------------------------------- layers

DenseLayer::DenseLayer(Matrix w, std::vector<double> b, Activation act)
    : weights(std::move(w)), bias(std::move(b)), activation(act) {
  if (weights.empty()) throw InvalidArgument("dense layer needs a nonempty weight matrix");
  require_dims(weights.rows(), bias.size(), "bias");
}

std::vector<double> dense_preactivation(const DenseLayer& layer, const std::vector<double>& x) {
  require_dims(layer.inputs(), x.size(), "dense layer input");
  std::vector<double> z(layer.outputs());
  for (std::size_t r = 0; r < z.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) acc += layer.weights(r, c) * x[c];
    z[r] = acc + layer.bias[r];
  }
  return z;
}

std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& x) {
  auto z = dense_preactivation(layer, x);
  for (double& v : z) v = activate(layer.activation, v);
  return z;
}

Mlp::Mlp(std::vector<DenseLayer> l, bool sm) : layers(std::move(l)), softmax(sm) {
  if (layers.empty()) throw InvalidArgument("MLP needs at least one layer");
  for (std::size_t i = 1; i < layers.size(); ++i) {
    if (layers[i].inputs() != layers[i - 1].outputs()) {
      throw DimensionError("layer " + std::to_string(i) + " expects " + std::to_string(layers[i].inputs()) +
                           " inputs but layer " + std::to_string(i - 1) + " produces " +
                           std::to_string(layers[i - 1].outputs()));
    }
  }
}

Mlp Mlp::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("MLP JSON: ") + e.what(), e.byte);
  }
  try {
    std::vector<DenseLayer> layers;
    for (const auto& l : doc.at("layers")) {
      const auto rows = l.at("rows").get<std::size_t>();
      const auto cols = l.at("cols").get<std::size_t>();
      auto weights = l.at("weights").get<std::vector<double>>();
      auto bias = l.contains("bias") ? l.at("bias").get<std::vector<double>>() : std::vector<double>(rows, 0.0);
      const auto act = parse_activation(l.value("activation", std::string("identity")));
      layers.emplace_back(Matrix(rows, cols, std::move(weights)), std::move(bias), act);
    }
    return Mlp(std::move(layers), doc.value("softmax", false));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("MLP JSON: ") + e.what());
  }
}

Mlp Mlp::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open MLP file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

MlpTrace mlp_forward(const Mlp& net, const std::vector<double>& x) {
  MlpTrace trace;
  std::vector<double> current = x;
  for (const auto& layer : net.layers) {
    auto z = dense_preactivation(layer, current);
    current = z;
    for (double& v : current) v = activate(layer.activation, v);
    trace.pre_activations.push_back(std::move(z));
    trace.activations.push_back(current);
  }
  trace.output = net.softmax ? softmax(current).probs() : current;
  return trace;
}

DiscreteDist softmax(const std::vector<double>& v) {
  if (v.empty()) throw InvalidArgument("softmax of an empty vector");
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError("softmax inputs must be finite");
  const double top = *std::max_element(v.begin(), v.end());
  std::vector<double> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = std::exp(v[i] - top);
  return DiscreteDist::normalized(std::move(e));
}

double cross_entropy_loss(const DiscreteDist& probs, std::size_t target_class) {
  if (target_class >= probs.size()) throw InvalidArgument("target class out of range");
  const double p = probs[target_class];
  if (!(p > 0.0)) throw DomainError("probability at the target class is 0; loss is infinite");
  const double loss = -std::log(p);
  return loss == 0.0 ? 0.0 : loss;
}

double cross_entropy_loss(const DiscreteDist& probs, const std::vector<double>& one_hot) {
  require_dims(probs.size(), one_hot.size(), "target");
  std::size_t hot = one_hot.size();
  for (std::size_t i = 0; i < one_hot.size(); ++i) {
    if (one_hot[i] == 1.0) {
      if (hot != one_hot.size()) throw InvalidArgument("target has more than one hot entry");
      hot = i;
    } else if (one_hot[i] != 0.0) {
      throw InvalidArgument("target entries must be 0 or 1");
    }
  }
  if (hot == one_hot.size()) throw InvalidArgument("target has no hot entry");
  return cross_entropy_loss(probs, hot);
}

int perceptron_predict(const std::vector<double>& w, double b, const std::vector<double>& x) {
  require_dims(w.size(), x.size(), "perceptron input");
  double s = b;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s > 0.0 ? 1 : 0;
}

GradCheckResult grad_check(const Activation& a, double x, double h, double tol) {
  if (!(h > 0.0) || !(tol > 0.0)) throw InvalidArgument("grad check needs h > 0 and tol > 0");
  GradCheckResult r;
  r.analytic = activate_grad(a, x);
  if (!a.smooth() && std::fabs(x) < h) return r;
  r.numeric = (activate(a, x + h) - activate(a, x - h)) / (2.0 * h);
  const double scale = std::max(1.0, std::fabs(r.analytic));
  r.status = std::fabs(r.analytic - r.numeric) <= tol * scale ? GradCheckStatus::Pass : GradCheckStatus::Fail;
  return r;
}

std::string to_string(GradCheckStatus s) {
  switch (s) {
    case GradCheckStatus::Pass: return "pass";
    case GradCheckStatus::Fail: return "fail";
    case GradCheckStatus::Skipped: return "skipped";
  }
  return "?";
}

}  // namespace ik::nn
