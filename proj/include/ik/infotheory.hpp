#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "ik/dist.hpp"

namespace ik::info {

// All functions take the log base explicitly; 0 log 0 is taken as 0.

/// Shannon entropy -sum p_i log p_i.
double entropy(const DiscreteDist& d, LogBase base);

/// Information content log(1/p) of a single outcome, 0 < p <= 1.
double surprisal(double p, LogBase base);

/// -sum p_i log q_i. Needs q_i > 0 wherever p_i > 0.
double cross_entropy(const DiscreteDist& p, const DiscreteDist& q, LogBase base);

struct KlOptions {
  // When set, q is replaced by (q + epsilon) / (1 + n epsilon) before use, so
  // zero entries of q no longer raise. Off by default.
  bool smoothing = false;
  double epsilon = 1e-12;
};

/// D(P||Q) = sum p_i log(p_i / q_i) >= 0. Throws ik::DomainError naming the
/// first index where p_i > 0 but q_i = 0.
double kl_divergence(const DiscreteDist& p, const DiscreteDist& q, LogBase base,
                     const KlOptions& options = {});

/// The KL-based distance family.
struct KlDistances {
  double symmetrized = 0.0;     // D(P||Q) + D(Q||P)
  double lin_form = 0.0;        // sum (p_i - q_i) log(p_i / q_i)
  double jensen_shannon = 0.0;  // (D(P||M) + D(Q||M)) / 2 with M = (P+Q)/2
  double max_directed = 0.0;    // max(D(P||Q), D(Q||P))
};

/// Computes all four distances. Jensen-Shannon never needs absolute
/// continuity; the other three throw when either direction is undefined.
KlDistances kl_distances(const DiscreteDist& p, const DiscreteDist& q, LogBase base);

double jensen_shannon(const DiscreteDist& p, const DiscreteDist& q, LogBase base);

/// Joint distribution P(x, y) stored row-major, rows indexed by x.
class JointDist {
 public:
  JointDist(std::size_t rows, std::size_t cols, std::vector<double> probs);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t x, std::size_t y) const { return probs_[x * cols_ + y]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  DiscreteDist marginal_x() const;
  DiscreteDist marginal_y() const;
  DiscreteDist flattened() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> probs_;
};

/// I(X;Y) = H(X) + H(Y) - H(X,Y), clamped at 0 against rounding.
double mutual_information(const JointDist& j, LogBase base);

/// Categorical features with a binary label. Feature values are small
/// integer codes; `value_names[f][code]` keeps the original token when the
/// dataset came from CSV.
class LabeledDataset {
 public:
  LabeledDataset(std::vector<std::string> feature_names, std::vector<std::vector<int>> rows,
                 std::vector<int> labels);

  /// Header row of feature names, last column is the label (+/- or 1/0).
  /// Feature tokens are interned per column in order of first appearance.
  static LabeledDataset from_csv(std::istream& in);
  static LabeledDataset from_csv_file(const std::string& path);

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t feature_count() const noexcept { return feature_names_.size(); }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<std::string>>& value_names() const noexcept { return value_names_; }

  DiscreteDist label_distribution() const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> labels_;
  std::vector<std::vector<std::string>> value_names_;
};

/// sum_j P(feature = v_j) H(label | feature = v_j), empirical frequencies.
double conditional_entropy(const LabeledDataset& ds, std::size_t feature, LogBase base);

/// H(label) - conditional_entropy(ds, feature).
double information_gain(const LabeledDataset& ds, std::size_t feature, LogBase base);

struct Split {
  std::size_t feature = 0;
  double gain = 0.0;
};

/// Feature with the largest information gain; ties go to the lowest index.
Split best_split(const LabeledDataset& ds, LogBase base);

enum class Impurity { Entropy, Gini, ClassificationError };

/// Node impurity of a class distribution: entropy (bits), 1 - sum p^2, or 1 - max p.
double split_impurity(const DiscreteDist& class_probs, Impurity measure);

}  // namespace ik::info
