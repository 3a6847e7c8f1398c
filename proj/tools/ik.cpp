#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ik/error.hpp"
#include "ik/exprgraph/expr.hpp"
#include "ik/format.hpp"
#include "ik/harness.hpp"
#include "ik/matrix.hpp"
#include "ik/metrics.hpp"

namespace {

using ik::harness::Json;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || cell.find_first_not_of(" \t", used) != std::string::npos)
      throw ik::InvalidArgument("'" + cell + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ik::InvalidArgument("empty number list");
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  for (double v : parse_list(text)) {
    if (v != static_cast<double>(static_cast<std::int64_t>(v))) throw ik::InvalidArgument("set elements must be integers");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

// "x1=7.38,x2=3.14"
Json parse_bindings(const std::string& text) {
  Json out = Json::object();
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto eq = cell.find('=');
    if (eq == std::string::npos) throw ik::InvalidArgument("binding '" + cell + "' is not name=value");
    out[cell.substr(0, eq)] = parse_list(cell.substr(eq + 1)).front();
  }
  return out;
}

Json matrix_json(const std::string& path) { return ik::Matrix::load(path).to_rows(); }

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return ik::format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string value_text(const Json& v, const std::string& indent) {
  if (!v.is_array()) return scalar_text(v);
  const bool nested = !v.empty() && v.front().is_array();
  std::string out;
  if (nested) {
    for (const auto& row : v) out += "\n" + indent + value_text(row, indent);
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + scalar_text(v[i]);
  return out;
}

void print(const Json& result, bool json) {
  if (json) {
    std::cout << result.dump(2) << '\n';
    return;
  }
  if (result.is_object() && result.size() == 1 && !result.begin()->is_array()) {
    std::cout << scalar_text(*result.begin()) << '\n';
    return;
  }
  for (const auto& [key, value] : result.items()) {
    const bool nested = value.is_array() && !value.empty() && value.front().is_array();
    std::cout << key << (nested ? ":" : ": ") << value_text(value, "  ") << '\n';
  }
}

Json call(const std::string& op, const Json& inputs) {
  const auto* fn = ik::harness::find_op(op);
  return (*fn)(inputs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ik: numeric toolkit and exam harness"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  auto* exam = app.add_subcommand("exam", "Golden-case manifest runner");
  exam->require_subcommand(1);
  auto* run = exam->add_subcommand("run", "Replay every case and report pass/fail");
  std::string manifest = ik::harness::default_manifest_path(), filter;
  run->add_option("--manifest", manifest, "Manifest path (default: $IK_MANIFEST or the bundled manifest)");
  run->add_option("--filter", filter, "Only run cases whose id starts with this prefix");

  std::string expr_text, at;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression");
  eval->add_option("--expr", expr_text)->required();
  eval->add_option("--at", at, "name=value,...");

  std::string wrt;
  bool trace = false;
  auto* ad = app.add_subcommand("ad", "Forward-mode derivative with optional tangent trace");
  ad->add_option("--expr", expr_text)->required();
  ad->add_option("--at", at, "name=value,...")->required();
  ad->add_option("--wrt", wrt)->required();
  ad->add_flag("--trace", trace, "Print the tangent table");

  std::string base = "bits", probs;
  auto* entropy = app.add_subcommand("entropy", "Shannon entropy of a distribution");
  entropy->add_option("--probs", probs)->required();
  entropy->add_option("--base", base, "bits | nats | hartleys");

  std::string dataset, feature;
  auto* ig = app.add_subcommand("ig", "Information gain on a CSV dataset");
  ig->add_option("--dataset", dataset)->required();
  ig->add_option("--feature", feature, "Feature name; omitted picks the best split");
  ig->add_option("--base", base);

  std::string p_list, q_list;
  bool all_forms = false;
  auto* kl = app.add_subcommand("kl", "KL divergence and related distances");
  kl->add_option("--p", p_list)->required();
  kl->add_option("--q", q_list)->required();
  kl->add_option("--base", base);
  kl->add_flag("--all", all_forms, "Also print the symmetrized, linear, JS and max forms");

  double logit_value = 0.0;
  auto* logit = app.add_subcommand("logit", "Odds and logit of a probability, or the inverse");
  auto* logit_p = logit->add_option("--p", logit_value, "Probability");
  auto* logit_z = logit->add_option("--z", logit_value, "Logit value to invert");
  logit_p->excludes(logit_z);

  std::string table, level = "95";
  auto* oddsratio = app.add_subcommand("oddsratio", "Odds ratio, RR and Wald interval of a 2x2 table");
  oddsratio->add_option("--table", table, "a,b,c,d")->required();
  oddsratio->add_option("--level", level, "90 | 95 | 99 | 99.9");

  double prior = 0.0, lik_a = 0.0, lik_not = 0.0;
  auto* bayes = app.add_subcommand("bayes", "Posterior of a binary hypothesis");
  bayes->add_option("--prior", prior)->required();
  bayes->add_option("--lik-a", lik_a, "P(B | A)")->required();
  bayes->add_option("--lik-not", lik_not, "P(B | not A)")->required();

  int successes = 0, trials = 0;
  auto* mle = app.add_subcommand("mle", "Binomial MLE with variance and standard error");
  mle->add_option("--successes", successes)->required();
  mle->add_option("--trials", trials)->required();

  double a = 1.0, b = 1.0;
  auto* betaupdate = app.add_subcommand("betaupdate", "Conjugate beta-binomial update");
  betaupdate->add_option("--a", a)->required();
  betaupdate->add_option("--b", b)->required();
  betaupdate->add_option("--successes", successes)->required();
  betaupdate->add_option("--trials", trials)->required();

  std::string network, x_list;
  auto* mlp = app.add_subcommand("mlp", "Forward pass of a JSON network");
  mlp->add_option("--network", network)->required();
  mlp->add_option("--x", x_list)->required();

  std::string kind;
  bool grad_check = false;
  auto* act = app.add_subcommand("act", "Apply an activation (and its derivative)");
  act->add_option("--kind", kind, "sigmoid | sigmoid_approx | tanh | relu | leaky_relu[:a] | swish | identity")
      ->required();
  act->add_option("--x", x_list)->required();
  act->add_flag("--grad-check", grad_check, "Compare the derivative with a central difference");

  std::string input, kernel, padding = "valid", signal, taps, mode = "full";
  bool correlate = false;
  auto* conv = app.add_subcommand("conv", "2D convolution of matrix files, or 1D of lists");
  conv->add_option("--input", input, "Matrix file (rows cols header, then values)");
  conv->add_option("--kernel", kernel, "Matrix file");
  conv->add_option("--padding", padding, "valid | same");
  conv->add_option("--a", signal, "1D signal");
  conv->add_option("--b", taps, "1D kernel");
  conv->add_option("--mode", mode, "full | valid (1D)");
  conv->add_flag("--correlate", correlate, "Cross-correlate instead of convolving");

  int size = 2, stride = 2;
  auto* pool = app.add_subcommand("pool", "Max pooling of a matrix file");
  pool->add_option("--input", input)->required();
  pool->add_option("--size", size);
  pool->add_option("--stride", stride);

  int n = 0, f = 0, s = 1, p = 0;
  auto* convshape = app.add_subcommand("convshape", "Output size floor((n - f + 2p)/s) + 1");
  convshape->add_option("--n", n)->required();
  convshape->add_option("--f", f)->required();
  convshape->add_option("--s", s);
  convshape->add_option("--p", p);

  int tp = -1, fn = -1, fp = -1, tn = -1;
  std::string roc;
  auto* metrics = app.add_subcommand("metrics", "Confusion-matrix metrics or ROC AUC");
  metrics->add_option("--tp", tp);
  metrics->add_option("--fn", fn);
  metrics->add_option("--fp", fp);
  metrics->add_option("--tn", tn);
  metrics->add_option("--roc", roc, "CSV of score,label rows");

  int k = 5;
  std::uint64_t seed = 0;
  std::string strata;
  bool loocv = false;
  auto* folds = app.add_subcommand("folds", "Cross-validation fold plans");
  folds->add_option("--n", n);
  folds->add_option("--k", k);
  folds->add_option("--seed", seed);
  folds->add_option("--stratified", strata, "Comma-separated class labels");
  folds->add_flag("--loocv", loocv);

  std::string u_list, v_list, set_a, set_b;
  auto* sim = app.add_subcommand("sim", "Vector distances or set Jaccard similarity");
  sim->add_option("--u", u_list, "Vector");
  sim->add_option("--v", v_list, "Vector");
  sim->add_option("--set-a", set_a, "Integer set");
  sim->add_option("--set-b", set_b, "Integer set");

  int hashes = 128;
  auto* minhash = app.add_subcommand("minhash", "MinHash estimate of Jaccard similarity");
  minhash->add_option("--a", set_a)->required();
  minhash->add_option("--b", set_b)->required();
  minhash->add_option("--hashes", hashes);
  minhash->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    Json in = Json::object();
    std::string op;
    if (*run) {
      const auto cases = ik::harness::load_manifest(manifest);
      const auto report = ik::harness::run_exam(cases, filter);
      if (json) std::cout << report.to_json().dump(2) << '\n';
      else std::cout << report.to_text();
      return report.exit_code();
    }
    if (*eval) {
      op = "expr_eval";
      in = {{"expr", expr_text}, {"at", at.empty() ? Json::object() : parse_bindings(at)}};
    } else if (*ad) {
      if (trace && !json) {
        const auto res =
            ik::expr::forward_ad(ik::expr::parse(expr_text), parse_bindings(at).get<ik::expr::Bindings>(), wrt);
        std::cout << "value: " << ik::format_number(res.value) << '\n'
                  << "derivative: " << ik::format_number(res.derivative) << '\n'
                  << res.trace.to_table();
        return 0;
      }
      auto r = call("ad_forward", {{"expr", expr_text}, {"at", parse_bindings(at)}, {"wrt", wrt}});
      if (!trace) r.erase("trace");
      print(r, json);
      return 0;
    } else if (*entropy) {
      op = "entropy";
      in = {{"probs", parse_list(probs)}, {"base", base}};
    } else if (*ig) {
      if (feature.empty()) {
        op = "best_split";
        in = {{"dataset", dataset}, {"base", base}};
      } else {
        op = "info_gain";
        in = {{"dataset", dataset}, {"feature", feature}, {"base", base}};
      }
    } else if (*kl) {
      in = {{"p", parse_list(p_list)}, {"q", parse_list(q_list)}, {"base", base}};
      if (!all_forms) {
        op = "kl";
      } else {
        auto r = call("kl_distances", in);
        r["kl"] = call("kl", in).at("kl");
        print(r, json);
        return 0;
      }
    } else if (*logit) {
      if (logit_p->count() + logit_z->count() == 0) throw ik::InvalidArgument("give --p or --z");
      op = logit_z->count() ? "expit" : "odds";
      in = logit_z->count() ? Json{{"z", logit_value}} : Json{{"p", logit_value}};
    } else if (*oddsratio) {
      in = {{"table", parse_list(table)}, {"level", level}};
      auto r = call("odds_ratio", in);
      r["rr"] = call("relative_risk", in).at("rr");
      print(r, json);
      return 0;
    } else if (*bayes) {
      op = "posterior_two_hyp";
      in = {{"prior", prior}, {"lik_a", lik_a}, {"lik_not", lik_not}};
    } else if (*mle) {
      op = "mle_binomial";
      in = {{"successes", successes}, {"trials", trials}};
    } else if (*betaupdate) {
      op = "beta_update";
      in = {{"a", a}, {"b", b}, {"successes", successes}, {"trials", trials}};
    } else if (*mlp) {
      op = "mlp_forward";
      in = {{"network", network}, {"x", parse_list(x_list)}};
    } else if (*act) {
      if (!grad_check) {
        op = "activate";
        in = {{"kind", kind}, {"x", parse_list(x_list)}};
      } else {
        Json rows = Json::array();
        for (double x : parse_list(x_list)) {
          auto r = call("grad_check", {{"kind", kind}, {"x", x}});
          r["x"] = x;
          rows.push_back(r);
        }
        if (json) {
          std::cout << rows.dump(2) << '\n';
        } else {
          for (const auto& r : rows)
            std::cout << "x=" << scalar_text(r.at("x")) << "  " << r.at("status").get<std::string>()
                      << "  analytic " << scalar_text(r.at("analytic")) << "  numeric "
                      << scalar_text(r.at("numeric")) << '\n';
        }
        return 0;
      }
    } else if (*conv) {
      if (!input.empty() || !kernel.empty()) {
        if (input.empty() || kernel.empty()) throw ik::InvalidArgument("2D convolution needs --input and --kernel");
        op = correlate ? "correlate2d" : "conv2d";
        in = {{"input", matrix_json(input)}, {"kernel", matrix_json(kernel)}, {"padding", padding}};
      } else {
        if (signal.empty() || taps.empty()) throw ik::InvalidArgument("give --input/--kernel or --a/--b");
        op = correlate ? "correlate1d" : "conv1d";
        in = {{"a", parse_list(signal)}, {"b", parse_list(taps)}, {"mode", mode}};
      }
    } else if (*pool) {
      op = "maxpool2d";
      in = {{"input", matrix_json(input)}, {"size", size}, {"stride", stride}};
    } else if (*convshape) {
      op = "conv_shape";
      in = {{"n", n}, {"f", f}, {"s", s}, {"p", p}};
    } else if (*metrics) {
      if (!roc.empty()) {
        std::ifstream file(roc);
        if (!file) throw ik::InvalidArgument("cannot open '" + roc + "'");
        const auto sl = ik::metrics::ScoredLabels::from_csv(file);
        op = "roc_auc";
        in = {{"scores", sl.scores}, {"labels", sl.labels}};
      } else {
        if (tp < 0 || fn < 0 || fp < 0 || tn < 0) throw ik::InvalidArgument("give --tp --fn --fp --tn, or --roc");
        op = "confusion";
        in = {{"tp", tp}, {"fn", fn}, {"fp", fp}, {"tn", tn}};
      }
    } else if (*folds) {
      if (loocv) {
        op = "loocv";
        in = {{"n", n}};
      } else if (!strata.empty()) {
        std::vector<int> labels;
        for (double v : parse_list(strata)) labels.push_back(static_cast<int>(v));
        op = "stratified_kfold";
        in = {{"labels", labels}, {"k", k}, {"seed", seed}};
      } else {
        op = "kfold";
        in = {{"n", n}, {"k", k}, {"seed", seed}};
      }
    } else if (*sim) {
      if (!set_a.empty() || !set_b.empty()) {
        op = "jaccard";
        in = {{"a", parse_ints(set_a)}, {"b", parse_ints(set_b)}};
      } else {
        op = "vector_distances";
        in = {{"u", parse_list(u_list)}, {"v", parse_list(v_list)}};
      }
    } else if (*minhash) {
      op = "minhash";
      in = {{"a", parse_ints(set_a)}, {"b", parse_ints(set_b)}, {"hashes", hashes}, {"seed", seed}};
    }
    print(call(op, in), json);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
