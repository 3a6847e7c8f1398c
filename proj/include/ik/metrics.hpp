#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ik/matrix.hpp"

namespace ik::metrics {

// ---------------------------------------------------------------- confusion

struct ConfusionCounts {
  std::uint64_t tp = 0, fn = 0, fp = 0, tn = 0;
};

// Each throws ik::DomainError when its own denominator is zero.
double accuracy(const ConfusionCounts& c);
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);

/// All three at once; an undefined metric is left empty instead of throwing.
struct ConfusionMetrics {
  std::optional<double> accuracy, precision, recall;
};
ConfusionMetrics confusion_metrics(const ConfusionCounts& c);

// ---------------------------------------------------------------- ROC

struct ScoredLabels {
  std::vector<double> scores;
  std::vector<int> labels;  // 0 or 1

  /// CSV rows "score,label"; a non-numeric first line is treated as a header.
  static ScoredLabels from_csv(std::istream& in);
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

/// One threshold per distinct score, descending; trapezoid AUC.
RocCurve roc_auc(const ScoredLabels& s);

// ---------------------------------------------------------------- folds

struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;  // indices sorted within each fold

  std::size_t k() const noexcept { return folds.size(); }
  /// [[indices...], ...]
  std::string to_json() const;
  /// Throws ik::InvalidArgument unless the folds partition 0..n-1.
  void check_partition(std::size_t n) const;
};

/// Shuffles 0..n-1 with the seed, then cuts k contiguous folds; the first
/// n mod k folds take one extra index.
FoldPlan kfold(std::size_t n, std::size_t k, std::uint64_t seed);

/// Shuffles within each class, then deals the classes (ascending label order)
/// round-robin across folds, so every fold gets floor or ceil of each class's
/// share and fold sizes differ by at most one.
FoldPlan stratified_kfold(const std::vector<int>& labels, std::size_t k, std::uint64_t seed);

FoldPlan loocv(std::size_t n);

/// Mean of the per-fold errors.
double cv_score(const std::vector<double>& per_fold_errors);

// ---------------------------------------------------------------- vectors

double l1_distance(const std::vector<double>& u, const std::vector<double>& v);
double l2_distance(const std::vector<double>& u, const std::vector<double>& v);
std::vector<double> normalize_l2(const std::vector<double>& v);
/// Cosine of the angle, computed on normalized copies. With clamp, negative
/// values become 0.
double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v, bool clamp = false);

// ---------------------------------------------------------------- sets

struct JaccardRatio {
  std::size_t intersection = 0;
  std::size_t union_size = 0;
  double value() const noexcept { return static_cast<double>(intersection) / static_cast<double>(union_size); }
};

/// |A n B| / |A u B| as an exact ratio; duplicates in the inputs are ignored.
JaccardRatio jaccard(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

struct MinHashSig {
  std::vector<std::uint64_t> mins;
  std::uint64_t seed = 0;
};

/// h_i(v) = (a_i v + b_i) mod (2^61 - 1), with (a_i, b_i) drawn from
/// mt19937_64(seed) and a_i != 0.
MinHashSig minhash_signature(const std::vector<std::int64_t>& set, std::size_t hashes, std::uint64_t seed);

/// Fraction of positions where the two signatures agree.
double minhash_estimate(const MinHashSig& x, const MinHashSig& y);

// ---------------------------------------------------------------- ensembles

/// Weighted mean of equal-shape row-stochastic matrices (uniform weights when empty).
Matrix ensemble_average(const std::vector<Matrix>& probs, const std::vector<double>& weights = {});

/// Rows are samples, columns are model votes; ties go to the lowest label.
std::vector<int> majority_vote(const std::vector<std::vector<int>>& votes);

// ---------------------------------------------------------------- dropout

/// Combined drop probability 1 - (1-p)(1-q).
double dropout_compose(double p, double q);
/// 1 / (1 - p).
double inverted_dropout_scale(double p);

}  // namespace ik::metrics
