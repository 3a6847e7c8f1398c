#include "ik/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "ik/error.hpp"

namespace ik::metrics {
namespace {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

double ratio(std::uint64_t num, std::uint64_t den, const char* what) {
  if (den == 0) throw DomainError(std::string(what) + " undefined: denominator is 0");
  return static_cast<double>(num) / static_cast<double>(den);
}

void require_same_length(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) {
    throw DimensionError("vector lengths differ (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  const u128 prod = static_cast<u128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(prod & kMersenne61) + static_cast<std::uint64_t>(prod >> 61);
  while (r >= kMersenne61) r -= kMersenne61;
  return r;
}

std::uint64_t reduce61(std::int64_t v) {
  const std::int64_t p = static_cast<std::int64_t>(kMersenne61);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

// ---------------------------------------------------------------- confusion

double accuracy(const ConfusionCounts& c) { return ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn, "accuracy"); }
double precision(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fp, "precision"); }
double recall(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn, "recall"); }

ConfusionMetrics confusion_metrics(const ConfusionCounts& c) {
  ConfusionMetrics m;
  if (c.tp + c.tn + c.fp + c.fn > 0) m.accuracy = accuracy(c);
  if (c.tp + c.fp > 0) m.precision = precision(c);
  if (c.tp + c.fn > 0) m.recall = recall(c);
  return m;
}

// ---------------------------------------------------------------- ROC

ScoredLabels ScoredLabels::from_csv(std::istream& in) {
  ScoredLabels s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string score_text, label_text;
    std::getline(ss, score_text, ',');
    std::getline(ss, label_text);
    double score = 0.0;
    int label = 0;
    try {
      std::size_t used = 0;
      score = std::stod(score_text, &used);
      label = std::stoi(label_text);
    } catch (const std::exception&) {
      if (s.scores.empty() && line_no == 1) continue;  // header
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected 'score,label'");
    }
    if (label != 0 && label != 1) throw InvalidArgument("line " + std::to_string(line_no) + ": label must be 0 or 1");
    s.scores.push_back(score);
    s.labels.push_back(label);
  }
  return s;
}

RocCurve roc_auc(const ScoredLabels& s) {
  if (s.scores.size() != s.labels.size()) throw DimensionError("scores and labels differ in length");
  std::size_t pos = 0, neg = 0;
  for (int l : s.labels) {
    if (l == 1) ++pos;
    else if (l == 0) ++neg;
    else throw InvalidArgument("labels must be 0 or 1");
  }
  if (pos == 0 || neg == 0) throw DomainError("ROC needs at least one positive and one negative label");

  std::vector<std::size_t> order(s.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.scores[a] > s.scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = s.scores[order[i]];
    for (; i < order.size() && s.scores[order[i]] == threshold; ++i) {
      if (s.labels[order[i]] == 1) ++tp;
      else ++fp;
    }
    const RocPoint next{static_cast<double>(fp) / neg, static_cast<double>(tp) / pos};
    const RocPoint& prev = curve.points.back();
    curve.auc += (next.fpr - prev.fpr) * (next.tpr + prev.tpr) / 2.0;
    curve.points.push_back(next);
  }
  return curve;
}

// ---------------------------------------------------------------- folds

std::string FoldPlan::to_json() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f) os << ',';
    os << '[';
    for (std::size_t i = 0; i < folds[f].size(); ++i) {
      if (i) os << ',';
      os << folds[f][i];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

void FoldPlan::check_partition(std::size_t n) const {
  std::vector<int> seen(n, 0);
  for (const auto& fold : folds) {
    for (std::size_t i : fold) {
      if (i >= n) throw InvalidArgument("fold index " + std::to_string(i) + " out of range");
      if (seen[i]++) throw InvalidArgument("index " + std::to_string(i) + " appears in more than one fold");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw InvalidArgument("index " + std::to_string(i) + " is in no fold");
}

FoldPlan kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) {
    throw InvalidArgument("k-fold needs 2 <= k <= n (k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  FoldPlan plan;
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    std::vector<std::size_t> fold(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                  idx.begin() + static_cast<std::ptrdiff_t>(start + len));
    std::sort(fold.begin(), fold.end());
    plan.folds.push_back(std::move(fold));
    start += len;
  }
  return plan;
}

FoldPlan stratified_kfold(const std::vector<int>& labels, std::size_t k, std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2 || k > n) {
    throw InvalidArgument("stratified k-fold needs 2 <= k <= n (k = " + std::to_string(k) + ", n = " +
                          std::to_string(n) + ")");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  FoldPlan plan;
  plan.folds.resize(k);
  std::size_t dealt = 0;
  for (auto& [label, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i : members) plan.folds[dealt++ % k].push_back(i);
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

FoldPlan loocv(std::size_t n) {
  if (n < 2) throw InvalidArgument("leave-one-out needs n >= 2");
  FoldPlan plan;
  for (std::size_t i = 0; i < n; ++i) plan.folds.push_back({i});
  return plan;
}

double cv_score(const std::vector<double>& per_fold_errors) {
  if (per_fold_errors.empty()) throw InvalidArgument("cv score needs at least one fold error");
  return std::accumulate(per_fold_errors.begin(), per_fold_errors.end(), 0.0) /
         static_cast<double>(per_fold_errors.size());
}

// ---------------------------------------------------------------- vectors

double l1_distance(const std::vector<double>& u, const std::vector<double>& v) {
  require_same_length(u, v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::fabs(u[i] - v[i]);
  return s;
}

double l2_distance(const std::vector<double>& u, const std::vector<double>& v) {
  require_same_length(u, v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
  return std::sqrt(s);
}

std::vector<double> normalize_l2(const std::vector<double>& v) {
  const double n = norm2(v);
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
  std::vector<double> out(v);
  for (double& x : out) x /= n;
  return out;
}

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v, bool clamp) {
  require_same_length(u, v);
  const auto a = normalize_l2(u), b = normalize_l2(v);
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  dot = std::clamp(dot, -1.0, 1.0);
  if (clamp && dot < 0.0) return 0.0;
  return dot;
}

// ---------------------------------------------------------------- sets

JaccardRatio jaccard(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  const std::set<std::int64_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) throw DomainError("Jaccard index of two empty sets is undefined");
  std::size_t inter = 0;
  for (auto x : sa) inter += sb.count(x);
  return {inter, sa.size() + sb.size() - inter};
}

MinHashSig minhash_signature(const std::vector<std::int64_t>& set, std::size_t hashes, std::uint64_t seed) {
  if (set.empty()) throw InvalidArgument("MinHash of an empty set");
  if (hashes == 0) throw InvalidArgument("MinHash needs at least one hash function");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw_a(1, kMersenne61 - 1), draw_b(0, kMersenne61 - 1);
  MinHashSig sig;
  sig.seed = seed;
  sig.mins.reserve(hashes);
  std::vector<std::uint64_t> reduced;
  reduced.reserve(set.size());
  for (auto v : set) reduced.push_back(reduce61(v));
  for (std::size_t i = 0; i < hashes; ++i) {
    const std::uint64_t a = draw_a(rng), b = draw_b(rng);
    std::uint64_t best = kMersenne61;
    for (auto v : reduced) {
      std::uint64_t h = mulmod61(a, v) + b;
      if (h >= kMersenne61) h -= kMersenne61;
      best = std::min(best, h);
    }
    sig.mins.push_back(best);
  }
  return sig;
}

double minhash_estimate(const MinHashSig& x, const MinHashSig& y) {
  if (x.seed != y.seed) throw InvalidArgument("MinHash signatures use different seeds");
  if (x.mins.size() != y.mins.size()) throw DimensionError("MinHash signatures differ in length");
  if (x.mins.empty()) throw InvalidArgument("empty MinHash signature");
  std::size_t same = 0;
  for (std::size_t i = 0; i < x.mins.size(); ++i) same += x.mins[i] == y.mins[i];
  return static_cast<double>(same) / static_cast<double>(x.mins.size());
}

// ---------------------------------------------------------------- ensembles

Matrix ensemble_average(const std::vector<Matrix>& probs, const std::vector<double>& weights) {
  if (probs.empty()) throw InvalidArgument("ensemble needs at least one model");
  std::vector<double> w = weights;
  if (w.empty()) w.assign(probs.size(), 1.0 / static_cast<double>(probs.size()));
  if (w.size() != probs.size()) throw DimensionError("one weight per model is required");
  double wsum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw DomainError("ensemble weights must be >= 0");
    wsum += x;
  }
  if (std::fabs(wsum - 1.0) > 1e-9) throw DomainError("ensemble weights must sum to 1");
  const std::size_t rows = probs.front().rows(), cols = probs.front().cols();
  Matrix out(rows, cols);
  for (std::size_t m = 0; m < probs.size(); ++m) {
    const Matrix& p = probs[m];
    if (p.rows() != rows || p.cols() != cols) throw DimensionError("model probability matrices differ in shape");
    for (std::size_t r = 0; r < rows; ++r) {
      double row_sum = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!(p(r, c) >= 0.0)) throw DomainError("probabilities must be >= 0");
        row_sum += p(r, c);
        out(r, c) += w[m] * p(r, c);
      }
      if (std::fabs(row_sum - 1.0) > 1e-9) {
        throw DomainError("row " + std::to_string(r) + " of model " + std::to_string(m) + " does not sum to 1");
      }
    }
  }
  return out;
}

std::vector<int> majority_vote(const std::vector<std::vector<int>>& votes) {
  std::vector<int> out;
  out.reserve(votes.size());
  for (const auto& row : votes) {
    if (row.empty()) throw InvalidArgument("each sample needs at least one vote");
    std::map<int, int> tally;
    for (int v : row) ++tally[v];
    // std::map iterates labels ascending, so strict > keeps the lowest label on ties.
    int best = tally.begin()->first, best_count = 0;
    for (const auto& [label, count] : tally) {
      if (count > best_count) {
        best = label;
        best_count = count;
      }
    }
    out.push_back(best);
  }
  return out;
}

// ---------------------------------------------------------------- dropout

double dropout_compose(double p, double q) {
  for (double v : {p, q})
    if (!(v >= 0.0 && v < 1.0)) throw DomainError("dropout probabilities must lie in [0, 1)");
  return 1.0 - (1.0 - p) * (1.0 - q);
}

double inverted_dropout_scale(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("dropout probability must lie in [0, 1)");
  return 1.0 / (1.0 - p);
}

}  // namespace ik::metrics
