#include "ik/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ik/error.hpp"

namespace ik::info {
namespace {

void require_same_support(const DiscreteDist& p, const DiscreteDist& q) {
  if (p.size() != q.size()) throw DimensionError("distributions have different support sizes");
}

// sum p_i log(p_i / q_i) in base `base`; throws on p_i > 0, q_i = 0.
double kl_raw(const std::vector<double>& p, const std::vector<double>& q, LogBase base) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw DomainError("KL divergence undefined: q[" + std::to_string(i) +
                        "] = 0 where p > 0 (absolute continuity violated)");
    }
    sum += p[i] * log_in(base, p[i] / q[i]);
  }
  return sum;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

int parse_label(const std::string& token, std::size_t line_no) {
  if (token == "+" || token == "1") return 1;
  if (token == "-" || token == "0") return 0;
  throw InvalidArgument("line " + std::to_string(line_no) + ": label '" + token +
                        "' is not one of + - 1 0");
}

}  // namespace

double entropy(const DiscreteDist& d, LogBase base) {
  double h = 0.0;
  for (double p : d.probs())
    if (p > 0.0) h -= p * log_in(base, p);
  // -0.0 for a certain event reads oddly in output.
  return h == 0.0 ? 0.0 : h;
}

double surprisal(double p, LogBase base) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "surprisal needs 0 < p <= 1, got " << p;
    throw DomainError(os.str());
  }
  const double s = -log_in(base, p);
  return s == 0.0 ? 0.0 : s;
}

double cross_entropy(const DiscreteDist& p, const DiscreteDist& q, LogBase base) {
  require_same_support(p, q);
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0)
      throw DomainError("cross entropy undefined: q[" + std::to_string(i) + "] = 0 where p > 0");
    h -= p[i] * log_in(base, q[i]);
  }
  return h;
}

double kl_divergence(const DiscreteDist& p, const DiscreteDist& q, LogBase base,
                     const KlOptions& options) {
  require_same_support(p, q);
  if (!options.smoothing) return kl_raw(p.probs(), q.probs(), base);
  if (!(options.epsilon > 0.0)) throw InvalidArgument("smoothing epsilon must be > 0");
  std::vector<double> qs = q.probs();
  const double denom = 1.0 + options.epsilon * static_cast<double>(qs.size());
  for (double& v : qs) v = (v + options.epsilon) / denom;
  return kl_raw(p.probs(), qs, base);
}

double jensen_shannon(const DiscreteDist& p, const DiscreteDist& q, LogBase base) {
  require_same_support(p, q);
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * (kl_raw(p.probs(), m, base) + kl_raw(q.probs(), m, base));
}

KlDistances kl_distances(const DiscreteDist& p, const DiscreteDist& q, LogBase base) {
  require_same_support(p, q);
  KlDistances d;
  const double pq = kl_raw(p.probs(), q.probs(), base);
  const double qp = kl_raw(q.probs(), p.probs(), base);
  d.symmetrized = pq + qp;
  // Both directions are defined, so p_i and q_i are zero together or both positive.
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) d.lin_form += (p[i] - q[i]) * log_in(base, p[i] / q[i]);
  d.jensen_shannon = jensen_shannon(p, q, base);
  d.max_directed = std::max(pq, qp);
  return d;
}

// ---------------------------------------------------------------- JointDist

JointDist::JointDist(std::size_t rows, std::size_t cols, std::vector<double> probs)
    : rows_(rows), cols_(cols), probs_(std::move(probs)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("joint distribution needs a nonempty grid");
  if (probs_.size() != rows_ * cols_) throw DimensionError("joint probabilities do not fill the grid");
  DiscreteDist check(probs_);  // validates entries and total
}

DiscreteDist JointDist::marginal_x() const {
  std::vector<double> m(rows_, 0.0);
  for (std::size_t x = 0; x < rows_; ++x)
    for (std::size_t y = 0; y < cols_; ++y) m[x] += (*this)(x, y);
  return DiscreteDist::normalized(std::move(m));
}

DiscreteDist JointDist::marginal_y() const {
  std::vector<double> m(cols_, 0.0);
  for (std::size_t x = 0; x < rows_; ++x)
    for (std::size_t y = 0; y < cols_; ++y) m[y] += (*this)(x, y);
  return DiscreteDist::normalized(std::move(m));
}

DiscreteDist JointDist::flattened() const { return DiscreteDist(probs_); }

double mutual_information(const JointDist& j, LogBase base) {
  const double mi =
      entropy(j.marginal_x(), base) + entropy(j.marginal_y(), base) - entropy(j.flattened(), base);
  return std::max(0.0, mi);
}

// ---------------------------------------------------------------- datasets

LabeledDataset::LabeledDataset(std::vector<std::string> feature_names,
                               std::vector<std::vector<int>> rows, std::vector<int> labels)
    : feature_names_(std::move(feature_names)), rows_(std::move(rows)), labels_(std::move(labels)) {
  if (rows_.empty()) throw InvalidArgument("dataset needs at least one row");
  if (rows_.size() != labels_.size()) throw DimensionError("row count does not match label count");
  for (const auto& r : rows_)
    if (r.size() != feature_names_.size())
      throw DimensionError("row arity does not match the number of features");
  for (int l : labels_)
    if (l != 0 && l != 1) throw InvalidArgument("labels must be binary (0 or 1)");
  value_names_.resize(feature_names_.size());
}

LabeledDataset LabeledDataset::from_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split_csv_line(line);
  }
  if (header.size() < 2) throw InvalidArgument("CSV header needs at least one feature and a label");
  header.pop_back();

  std::vector<std::map<std::string, int>> intern(header.size());
  std::vector<std::vector<std::string>> names(header.size());
  std::vector<std::vector<int>> rows;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size() + 1)
      throw DimensionError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(header.size() + 1) + " columns");
    std::vector<int> row(header.size());
    for (std::size_t f = 0; f < header.size(); ++f) {
      auto [it, fresh] = intern[f].emplace(cells[f], static_cast<int>(names[f].size()));
      if (fresh) names[f].push_back(cells[f]);
      row[f] = it->second;
    }
    rows.push_back(std::move(row));
    labels.push_back(parse_label(cells.back(), line_no));
  }
  LabeledDataset ds(std::move(header), std::move(rows), std::move(labels));
  ds.value_names_ = std::move(names);
  return ds;
}

LabeledDataset LabeledDataset::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open dataset '" + path + "'");
  return from_csv(in);
}

DiscreteDist LabeledDataset::label_distribution() const {
  double pos = 0.0;
  for (int l : labels_) pos += l;
  const double n = static_cast<double>(labels_.size());
  return DiscreteDist({pos / n, (n - pos) / n});
}

double conditional_entropy(const LabeledDataset& ds, std::size_t feature, LogBase base) {
  if (feature >= ds.feature_count())
    throw InvalidArgument("feature index " + std::to_string(feature) + " out of range");
  // value -> (count, positives)
  std::map<int, std::pair<double, double>> groups;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto& g = groups[ds.rows()[i][feature]];
    g.first += 1.0;
    g.second += ds.labels()[i];
  }
  const double n = static_cast<double>(ds.size());
  double h = 0.0;
  for (const auto& [value, g] : groups) {
    const auto [count, pos] = g;
    h += (count / n) * entropy(DiscreteDist({pos / count, (count - pos) / count}), base);
  }
  return h;
}

double information_gain(const LabeledDataset& ds, std::size_t feature, LogBase base) {
  return entropy(ds.label_distribution(), base) - conditional_entropy(ds, feature, base);
}

Split best_split(const LabeledDataset& ds, LogBase base) {
  if (ds.feature_count() == 0) throw InvalidArgument("dataset has no features");
  Split best{0, information_gain(ds, 0, base)};
  for (std::size_t f = 1; f < ds.feature_count(); ++f) {
    const double g = information_gain(ds, f, base);
    if (g > best.gain) best = {f, g};
  }
  return best;
}

double split_impurity(const DiscreteDist& class_probs, Impurity measure) {
  switch (measure) {
    case Impurity::Entropy: return entropy(class_probs, LogBase::Bits);
    case Impurity::Gini: {
      double s = 0.0;
      for (double p : class_probs.probs()) s += p * p;
      return 1.0 - s;
    }
    case Impurity::ClassificationError:
      return 1.0 - *std::max_element(class_probs.probs().begin(), class_probs.probs().end());
  }
  return 0.0;
}

}  // namespace ik::info
