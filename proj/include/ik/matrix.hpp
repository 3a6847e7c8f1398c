#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace ik {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  /// Nested rows; all must have the same length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix column(const std::vector<double>& v);
  static Matrix row(const std::vector<double>& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Bounds-checked access; throws ik::DimensionError.
  double at(std::size_t r, std::size_t c) const;

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double> row_vector(std::size_t r) const;
  std::vector<std::vector<double>> to_rows() const;
  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

  /// Text format: "rows cols" on the first line, then the rows.
  static Matrix parse(std::istream& in);
  static Matrix parse(const std::string& text);
  static Matrix load(const std::string& path);
  std::string to_text() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Largest |a - b| over all entries; throws ik::DimensionError on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace ik
