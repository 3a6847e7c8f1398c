#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ik/bayes.hpp"
#include "ik/error.hpp"
#include "ik/exprgraph/expr.hpp"
#include "ik/exprgraph/numeric.hpp"
#include "ik/harness.hpp"
#include "ik/infotheory.hpp"
#include "ik/logistic.hpp"
#include "ik/metrics.hpp"
#include "ik/nncore.hpp"
#include "ik/tensorops.hpp"

namespace ik::harness {
namespace {

const Json& arg(const Json& in, const char* key) {
  if (!in.is_object() || !in.contains(key))
    throw InvalidArgument(std::string("missing input '") + key + "'");
  return in.at(key);
}

double num(const Json& in, const char* key) {
  const Json& v = arg(in, key);
  if (!v.is_number()) throw InvalidArgument(std::string("input '") + key + "' must be a number");
  return v.get<double>();
}

double num_or(const Json& in, const char* key, double fallback) {
  return in.contains(key) ? num(in, key) : fallback;
}

int integer(const Json& in, const char* key) {
  const Json& v = arg(in, key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("input '") + key + "' must be an integer");
  return v.get<int>();
}

std::size_t count(const Json& in, const char* key) {
  const int v = integer(in, key);
  if (v < 0) throw InvalidArgument(std::string("input '") + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

std::string str_or(const Json& in, const char* key, const std::string& fallback) {
  if (!in.contains(key)) return fallback;
  const Json& v = in.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw InvalidArgument(std::string("input '") + key + "' must be a string");
}

std::vector<double> vec(const Json& in, const char* key) {
  const Json& v = arg(in, key);
  if (!v.is_array()) throw InvalidArgument(std::string("input '") + key + "' must be an array");
  return v.get<std::vector<double>>();
}

template <typename T>
std::vector<T> vec_of(const Json& in, const char* key) {
  const Json& v = arg(in, key);
  if (!v.is_array()) throw InvalidArgument(std::string("input '") + key + "' must be an array");
  return v.get<std::vector<T>>();
}

Matrix mat(const Json& v) {
  if (!v.is_array()) throw InvalidArgument("matrix input must be an array of rows");
  return Matrix::from_rows(v.get<std::vector<std::vector<double>>>());
}

Json to_json(const Matrix& m) { return m.to_rows(); }

LogBase base_of(const Json& in) { return parse_log_base(str_or(in, "base", "bits")); }

DiscreteDist dist(const Json& in, const char* key) { return DiscreteDist(vec(in, key)); }

expr::Bindings bindings(const Json& in, const char* key) {
  expr::Bindings b;
  for (const auto& [name, v] : arg(in, key).items()) b[name] = v.get<double>();
  return b;
}

std::string resolve(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(data_dir()) / p;
  return p.string();
}

logistic::ConfidenceLevel level_of(const Json& in) {
  return logistic::parse_confidence_level(str_or(in, "level", "95"));
}

logistic::TwoByTwoTable table_of(const Json& in) {
  const auto t = vec(in, "table");
  if (t.size() != 4) throw InvalidArgument("table needs four counts a,b,c,d");
  return {t[0], t[1], t[2], t[3]};
}

logistic::LogisticModel model_of(const Json& in) {
  return {num(in, "intercept"), vec(in, "coefficients")};
}

bayes::DiscreteThetaPrior theta_prior(const Json& in) {
  return {vec(in, "thetas"), DiscreteDist::normalized(vec(in, "weights"))};
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::size_t feature_index(const info::LabeledDataset& ds, const Json& f) {
  if (f.is_number_integer()) return f.get<std::size_t>();
  const auto name = f.get<std::string>();
  const auto& names = ds.feature_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw InvalidArgument("dataset has no feature '" + name + "'");
}

// Activation applied to a scalar or to every entry of an array.
Json map_activation(const Json& x, const std::function<double(double)>& f) {
  if (x.is_number()) return f(x.get<double>());
  Json out = Json::array();
  for (const auto& e : x) out.push_back(f(e.get<double>()));
  return out;
}

using Registry = std::vector<std::pair<std::string, OpFn>>;

void add_exprgraph(Registry& r) {
  r.emplace_back("expr_eval", [](const Json& in) {
    return Json{{"value", expr::eval(expr::parse(arg(in, "expr").get<std::string>()), bindings(in, "at"))}};
  });
  r.emplace_back("ad_forward", [](const Json& in) {
    const auto res = expr::forward_ad(expr::parse(arg(in, "expr").get<std::string>()), bindings(in, "at"),
                                      arg(in, "wrt").get<std::string>());
    Json trace = Json::array();
    for (const auto& row : res.trace.rows)
      trace.push_back({{"label", row.label}, {"op", row.describe(res.trace.rows)},
                       {"value", row.value}, {"tangent", row.tangent}});
    return Json{{"value", res.value}, {"derivative", res.derivative}, {"trace", trace}};
  });
  r.emplace_back("finite_diff", [](const Json& in) {
    const auto e = expr::parse(arg(in, "expr").get<std::string>());
    const auto at = bindings(in, "at");
    const auto wrt = arg(in, "wrt").get<std::string>();
    if (!in.contains("h")) return Json{{"derivative", expr::finite_diff(e, at, wrt)}};
    const auto scheme = str_or(in, "scheme", "central");
    if (scheme != "central" && scheme != "forward") throw InvalidArgument("scheme must be central or forward");
    return Json{{"derivative", expr::finite_diff(e, at, wrt, num(in, "h"),
                                                 scheme == "central" ? expr::FdScheme::Central
                                                                     : expr::FdScheme::Forward)}};
  });
  r.emplace_back("taylor", [](const Json& in) {
    return Json{{"value", expr::taylor_eval(expr::parse_series(arg(in, "series").get<std::string>()),
                                            num(in, "x"), integer(in, "terms"))}};
  });
  r.emplace_back("gradient_descent", [](const Json& in) {
    expr::GdConfig cfg;
    cfg.learning_rate = num_or(in, "learning_rate", cfg.learning_rate);
    cfg.max_iterations = in.contains("max_iterations") ? integer(in, "max_iterations") : cfg.max_iterations;
    cfg.tolerance = num_or(in, "tolerance", cfg.tolerance);
    cfg.momentum = num_or(in, "momentum", cfg.momentum);
    const auto vars = vec_of<std::string>(in, "vars");
    const auto res =
        expr::gradient_descent(expr::parse(arg(in, "expr").get<std::string>()), vars, bindings(in, "init"), cfg);
    Json point = Json::object();
    for (const auto& v : vars) point[v] = res.point.at(v);
    return Json{{"point", point}, {"value", res.value}, {"iterations", res.iterations},
                {"status", expr::to_string(res.status)}};
  });
}

void add_infotheory(Registry& r) {
  r.emplace_back("entropy", [](const Json& in) {
    return Json{{"entropy", info::entropy(dist(in, "probs"), base_of(in))}};
  });
  r.emplace_back("surprisal", [](const Json& in) {
    return Json{{"surprisal", info::surprisal(num(in, "p"), base_of(in))}};
  });
  r.emplace_back("cross_entropy", [](const Json& in) {
    return Json{{"cross_entropy", info::cross_entropy(dist(in, "p"), dist(in, "q"), base_of(in))}};
  });
  r.emplace_back("kl", [](const Json& in) {
    info::KlOptions opt;
    opt.smoothing = in.value("smoothing", false);
    opt.epsilon = num_or(in, "epsilon", opt.epsilon);
    return Json{{"kl", info::kl_divergence(dist(in, "p"), dist(in, "q"), base_of(in), opt)}};
  });
  r.emplace_back("kl_distances", [](const Json& in) {
    const auto d = info::kl_distances(dist(in, "p"), dist(in, "q"), base_of(in));
    return Json{{"symmetrized", d.symmetrized}, {"lin_form", d.lin_form},
                {"jensen_shannon", d.jensen_shannon}, {"max_directed", d.max_directed}};
  });
  r.emplace_back("mutual_information", [](const Json& in) {
    const auto rows = arg(in, "joint").get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw InvalidArgument("joint needs at least one row");
    std::vector<double> flat;
    for (const auto& row : rows) {
      if (row.size() != rows.front().size()) throw DimensionError("joint rows differ in length");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return Json{{"mi", info::mutual_information(info::JointDist(rows.size(), rows.front().size(), flat),
                                                base_of(in))}};
  });
  r.emplace_back("info_gain", [](const Json& in) {
    const auto ds = info::LabeledDataset::from_csv_file(resolve(arg(in, "dataset").get<std::string>()));
    const auto f = feature_index(ds, arg(in, "feature"));
    const auto base = base_of(in);
    return Json{{"parent_entropy", info::entropy(ds.label_distribution(), base)},
                {"conditional_entropy", info::conditional_entropy(ds, f, base)},
                {"gain", info::information_gain(ds, f, base)}};
  });
  r.emplace_back("best_split", [](const Json& in) {
    const auto ds = info::LabeledDataset::from_csv_file(resolve(arg(in, "dataset").get<std::string>()));
    const auto s = info::best_split(ds, base_of(in));
    return Json{{"feature", ds.feature_names()[s.feature]}, {"gain", s.gain}};
  });
  r.emplace_back("split_impurity", [](const Json& in) {
    const auto m = str_or(in, "measure", "entropy");
    info::Impurity kind;
    if (m == "entropy") kind = info::Impurity::Entropy;
    else if (m == "gini") kind = info::Impurity::Gini;
    else if (m == "error") kind = info::Impurity::ClassificationError;
    else throw InvalidArgument("unknown impurity '" + m + "'");
    return Json{{"impurity", info::split_impurity(dist(in, "probs"), kind)}};
  });
}

void add_logistic(Registry& r) {
  r.emplace_back("odds", [](const Json& in) {
    const double p = num(in, "p");
    return Json{{"odds", logistic::odds_from_prob(p)}, {"logit", logistic::logit(p)}};
  });
  r.emplace_back("expit", [](const Json& in) {
    const double z = num(in, "z");
    return Json{{"p", logistic::expit(z)}, {"odds", std::exp(z)}};
  });
  r.emplace_back("predict_logistic", [](const Json& in) {
    const auto p = logistic::predict(model_of(in), vec(in, "x"));
    return Json{{"logit", p.logit}, {"odds", p.odds}, {"probability", p.probability}};
  });
  r.emplace_back("solve_feature", [](const Json& in) {
    return Json{{"value", logistic::solve_feature_for_prob(model_of(in), vec(in, "x"), count(in, "slot"),
                                                           num(in, "p"))}};
  });
  r.emplace_back("odds_ratio", [](const Json& in) {
    const auto o = logistic::odds_ratio(table_of(in), level_of(in));
    return Json{{"odds_ratio", o.odds_ratio}, {"log_or", o.log_or}, {"se", o.se},
                {"ci_low", o.ci_or.low}, {"ci_high", o.ci_or.high}};
  });
  r.emplace_back("relative_risk", [](const Json& in) {
    return Json{{"rr", logistic::relative_risk(table_of(in))}};
  });
  r.emplace_back("coefficient_or_ci", [](const Json& in) {
    const auto c = logistic::coefficient_or_ci(num(in, "estimate"), num(in, "se"), level_of(in));
    return Json{{"odds_ratio", c.odds_ratio}, {"beta_low", c.ci_beta.low}, {"beta_high", c.ci_beta.high},
                {"or_low", c.ci_or.low}, {"or_high", c.ci_or.high}};
  });
  r.emplace_back("binary_cross_entropy", [](const Json& in) {
    return Json{{"loss", logistic::binary_cross_entropy(num(in, "y_hat"), integer(in, "y"))}};
  });
}

void add_bayes(Registry& r) {
  r.emplace_back("binomial_pmf", [](const Json& in) {
    return Json{{"pmf", bayes::binomial_pmf({integer(in, "n"), num(in, "p")}, integer(in, "k"))}};
  });
  r.emplace_back("binomial_moments", [](const Json& in) {
    const auto m = bayes::binomial_moments({integer(in, "n"), num(in, "p")});
    return Json{{"mean", m.mean}, {"variance", m.variance}};
  });
  r.emplace_back("binomial_tail", [](const Json& in) {
    return Json{{"tail", bayes::binomial_tail({integer(in, "n"), num(in, "p")}, integer(in, "k_min"))}};
  });
  r.emplace_back("z_score", [](const Json& in) {
    return Json{{"z", bayes::z_score(num(in, "x"), num(in, "mu"), num(in, "sigma"))}};
  });
  r.emplace_back("posterior_two_hyp", [](const Json& in) {
    const auto p = bayes::posterior_two_hypothesis({num(in, "prior"), num(in, "lik_a"), num(in, "lik_not")});
    return Json{{"posterior", p.posterior}, {"evidence", p.evidence}};
  });
  r.emplace_back("mle_binomial", [](const Json& in) {
    const auto m = bayes::mle_binomial(integer(in, "successes"), integer(in, "trials"));
    return Json{{"gamma_hat", m.gamma_hat}, {"variance", m.variance}, {"se", m.se}};
  });
  r.emplace_back("fisher", [](const Json& in) {
    const auto model = arg(in, "model").get<std::string>();
    if (model == "bernoulli") return Json{{"information", bayes::fisher_bernoulli(num(in, "gamma"))}};
    if (model == "poisson") return Json{{"information", bayes::fisher_poisson(num(in, "theta"))}};
    if (model == "binomial")
      return Json{{"information", bayes::fisher_binomial(integer(in, "n"), num(in, "gamma"))}};
    throw InvalidArgument("unknown model '" + model + "'");
  });
  r.emplace_back("beta_pdf", [](const Json& in) {
    return Json{{"pdf", bayes::beta_pdf({num(in, "a"), num(in, "b")}, num(in, "theta"))}};
  });
  r.emplace_back("beta_update", [](const Json& in) {
    const auto b = bayes::beta_binomial_update({num(in, "a"), num(in, "b")}, integer(in, "successes"),
                                               integer(in, "trials"));
    return Json{{"a", b.a}, {"b", b.b}};
  });
  r.emplace_back("unnormalized_posterior", [](const Json& in) {
    return Json{{"density", bayes::unnormalized_posterior_density({num(in, "a"), num(in, "b")}, integer(in, "n"),
                                                                  integer(in, "x"), num(in, "theta"))}};
  });
  r.emplace_back("discrete_posterior", [](const Json& in) {
    return Json{{"posterior", bayes::discrete_posterior(theta_prior(in), integer(in, "n"), integer(in, "y")).probs()}};
  });
  r.emplace_back("prior_predictive", [](const Json& in) {
    return Json{{"predictive", bayes::prior_predictive(theta_prior(in), integer(in, "n")).probs()}};
  });
  r.emplace_back("exp_tail", [](const Json& in) {
    const auto t = bayes::exp_tail(num(in, "t"));
    return Json{{"below", t.below}, {"at_or_above", t.at_or_above}};
  });
  r.emplace_back("mb_speed", [](const Json& in) {
    return Json{{"speed", bayes::mb_most_probable_speed(num_or(in, "k_b", bayes::kBoltzmann),
                                                        num(in, "temperature"), num(in, "mass"))}};
  });
}

void add_nncore(Registry& r) {
  r.emplace_back("activate", [](const Json& in) {
    const auto a = nn::parse_activation(arg(in, "kind").get<std::string>());
    return Json{{"y", map_activation(arg(in, "x"), [&](double x) { return nn::activate(a, x); })},
                {"dy", map_activation(arg(in, "x"), [&](double x) { return nn::activate_grad(a, x); })}};
  });
  r.emplace_back("atanh", [](const Json& in) {
    return Json{{"y", map_activation(arg(in, "x"), [](double x) {
                   if (!(std::abs(x) < 1.0)) throw DomainError("atanh needs |x| < 1");
                   return std::atanh(x);
                 })}};
  });
  r.emplace_back("dense_forward", [](const Json& in) {
    const nn::DenseLayer layer(mat(arg(in, "weights")), vec(in, "bias"),
                               nn::parse_activation(str_or(in, "activation", "identity")));
    const auto x = vec(in, "x");
    return Json{{"pre", nn::dense_preactivation(layer, x)}, {"out", nn::dense_forward(layer, x)}};
  });
  r.emplace_back("mlp_forward", [](const Json& in) {
    const auto net = in.contains("network")
                         ? nn::Mlp::load(resolve(arg(in, "network").get<std::string>()))
                         : nn::Mlp::from_json(arg(in, "net").dump());
    const auto t = nn::mlp_forward(net, vec(in, "x"));
    Json out{{"activations", t.activations}, {"output", t.output}};
    if (!t.activations.empty()) out["raw_output"] = t.activations.back();
    return out;
  });
  r.emplace_back("softmax", [](const Json& in) {
    return Json{{"probs", nn::softmax(vec(in, "v")).probs()}};
  });
  r.emplace_back("cross_entropy_loss", [](const Json& in) {
    const DiscreteDist probs = DiscreteDist::normalized(vec(in, "probs"));
    const Json& t = arg(in, "target");
    if (t.is_array()) return Json{{"loss", nn::cross_entropy_loss(probs, t.get<std::vector<double>>())}};
    return Json{{"loss", nn::cross_entropy_loss(probs, t.get<std::size_t>())}};
  });
  r.emplace_back("perceptron", [](const Json& in) {
    const auto w = vec(in, "w");
    const double b = num(in, "b");
    std::vector<int> outs;
    for (const auto& x : arg(in, "inputs")) outs.push_back(nn::perceptron_predict(w, b, x.get<std::vector<double>>()));
    return Json{{"outputs", outs}};
  });
  r.emplace_back("grad_check", [](const Json& in) {
    const auto res = nn::grad_check(nn::parse_activation(arg(in, "kind").get<std::string>()), num(in, "x"),
                                    num_or(in, "h", 1e-6), num_or(in, "tol", 1e-5));
    return Json{{"status", nn::to_string(res.status)}, {"analytic", res.analytic}, {"numeric", res.numeric}};
  });
}

tensor::Padding padding_of(const Json& in) {
  const auto p = str_or(in, "padding", "valid");
  if (p == "valid") return tensor::Padding::Valid;
  if (p == "same") return tensor::Padding::Same;
  throw InvalidArgument("padding must be valid or same");
}

tensor::Conv1dMode mode1d_of(const Json& in) {
  const auto m = str_or(in, "mode", "full");
  if (m == "full") return tensor::Conv1dMode::Full;
  if (m == "valid") return tensor::Conv1dMode::Valid;
  throw InvalidArgument("mode must be full or valid");
}

void add_tensorops(Registry& r) {
  r.emplace_back("conv2d", [](const Json& in) {
    return Json{{"output", to_json(tensor::conv2d(mat(arg(in, "input")), mat(arg(in, "kernel")), padding_of(in)))}};
  });
  r.emplace_back("correlate2d", [](const Json& in) {
    return Json{
        {"output", to_json(tensor::correlate2d(mat(arg(in, "input")), mat(arg(in, "kernel")), padding_of(in)))}};
  });
  r.emplace_back("conv1d", [](const Json& in) {
    return Json{{"output", tensor::conv1d(vec(in, "a"), vec(in, "b"), mode1d_of(in))}};
  });
  r.emplace_back("correlate1d", [](const Json& in) {
    auto out = tensor::correlate1d(vec(in, "a"), vec(in, "b"), mode1d_of(in));
    Json j{{"output", out}};
    if (in.value("relu", false)) j["relu"] = tensor::relu(out);
    return j;
  });
  r.emplace_back("conv_shape", [](const Json& in) {
    tensor::ConvSpec s{integer(in, "n"), integer(in, "f"), in.contains("s") ? integer(in, "s") : 1,
                       in.contains("p") ? integer(in, "p") : 0};
    return Json{{"size", tensor::conv_output_shape(s)}};
  });
  r.emplace_back("pool_shape", [](const Json& in) {
    return Json{{"size", tensor::pool_output_shape(integer(in, "n"), integer(in, "size"), integer(in, "stride"))}};
  });
  r.emplace_back("maxpool2d", [](const Json& in) {
    return Json{{"output", to_json(tensor::maxpool2d(mat(arg(in, "input")), count(in, "size"), count(in, "stride")))}};
  });
  r.emplace_back("maxpool1d", [](const Json& in) {
    return Json{{"output", tensor::maxpool1d(vec(in, "v"), count(in, "size"), count(in, "stride"))}};
  });
  r.emplace_back("relu", [](const Json& in) { return Json{{"output", tensor::relu(vec(in, "v"))}}; });
  r.emplace_back("model_size_mb", [](const Json& in) {
    return Json{{"mb", tensor::model_size_mb(num(in, "params"), num(in, "bits"))}};
  });
  r.emplace_back("conv_cost", [](const Json& in) {
    return Json{{"cost", tensor::conv_cost(count(in, "w"), count(in, "h"), count(in, "k"))}};
  });
  r.emplace_back("gram_matrix", [](const Json& in) {
    return Json{{"gram", to_json(tensor::gram_matrix(arg(in, "vectors").get<std::vector<std::vector<double>>>()))}};
  });
  r.emplace_back("gaussian_kernel", [](const Json& in) {
    return Json{{"kernel", to_json(tensor::gaussian_kernel(num(in, "sigma"), integer(in, "radius"),
                                                           in.contains("dims") ? integer(in, "dims") : 2))}};
  });
}

Json folds_json(const metrics::FoldPlan& plan) { return Json{{"folds", plan.folds}, {"k", plan.k()}}; }

void add_metrics(Registry& r) {
  r.emplace_back("confusion", [](const Json& in) {
    const auto m = metrics::confusion_metrics(
        {arg(in, "tp").get<std::uint64_t>(), arg(in, "fn").get<std::uint64_t>(),
         arg(in, "fp").get<std::uint64_t>(), arg(in, "tn").get<std::uint64_t>()});
    return Json{{"accuracy", optional_json(m.accuracy)}, {"precision", optional_json(m.precision)},
                {"recall", optional_json(m.recall)}};
  });
  r.emplace_back("roc_auc", [](const Json& in) {
    const auto c = metrics::roc_auc({vec(in, "scores"), vec_of<int>(in, "labels")});
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back({p.fpr, p.tpr});
    return Json{{"auc", c.auc}, {"points", pts}};
  });
  r.emplace_back("kfold", [](const Json& in) {
    return folds_json(metrics::kfold(count(in, "n"), count(in, "k"), arg(in, "seed").get<std::uint64_t>()));
  });
  r.emplace_back("stratified_kfold", [](const Json& in) {
    return folds_json(
        metrics::stratified_kfold(vec_of<int>(in, "labels"), count(in, "k"), arg(in, "seed").get<std::uint64_t>()));
  });
  r.emplace_back("loocv", [](const Json& in) { return folds_json(metrics::loocv(count(in, "n"))); });
  r.emplace_back("cv_score", [](const Json& in) { return Json{{"score", metrics::cv_score(vec(in, "errors"))}}; });
  r.emplace_back("vector_distances", [](const Json& in) {
    const auto u = vec(in, "u");
    const auto v = vec(in, "v");
    return Json{{"l1", metrics::l1_distance(u, v)}, {"l2", metrics::l2_distance(u, v)},
                {"cosine", metrics::cosine_similarity(u, v)}};
  });
  r.emplace_back("jaccard", [](const Json& in) {
    const auto j = metrics::jaccard(vec_of<std::int64_t>(in, "a"), vec_of<std::int64_t>(in, "b"));
    return Json{{"intersection", j.intersection}, {"union", j.union_size}, {"value", j.value()}};
  });
  r.emplace_back("minhash", [](const Json& in) {
    const auto a = vec_of<std::int64_t>(in, "a");
    const auto b = vec_of<std::int64_t>(in, "b");
    const auto hashes = count(in, "hashes");
    const auto seed = arg(in, "seed").get<std::uint64_t>();
    return Json{{"estimate", metrics::minhash_estimate(metrics::minhash_signature(a, hashes, seed),
                                                       metrics::minhash_signature(b, hashes, seed))},
                {"exact", metrics::jaccard(a, b).value()}};
  });
  r.emplace_back("ensemble_average", [](const Json& in) {
    std::vector<Matrix> probs;
    for (const auto& m : arg(in, "probs")) probs.push_back(mat(m));
    const auto w = in.contains("weights") ? vec(in, "weights") : std::vector<double>{};
    return Json{{"average", to_json(metrics::ensemble_average(probs, w))}};
  });
  r.emplace_back("majority_vote", [](const Json& in) {
    return Json{{"labels", metrics::majority_vote(arg(in, "votes").get<std::vector<std::vector<int>>>())}};
  });
  r.emplace_back("dropout", [](const Json& in) {
    const double p = num(in, "p");
    Json out{{"scale", metrics::inverted_dropout_scale(p)}};
    if (in.contains("q")) out["combined"] = metrics::dropout_compose(p, num(in, "q"));
    return out;
  });
}

Registry build() {
  Registry r;
  add_exprgraph(r);
  add_infotheory(r);
  add_logistic(r);
  add_bayes(r);
  add_nncore(r);
  add_tensorops(r);
  add_metrics(r);
  return r;
}

}  // namespace

const std::vector<std::pair<std::string, OpFn>>& registry() {
  static const Registry r = build();
  return r;
}

const OpFn* find_op(const std::string& name) {
  for (const auto& [n, fn] : registry())
    if (n == name) return &fn;
  return nullptr;
}

}  // namespace ik::harness
