#include "ik/tensorops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ik/error.hpp"

namespace ik::tensor {
namespace {

void require_nonempty(const Matrix& m, const char* what) {
  if (m.empty()) throw InvalidArgument(std::string(what) + " must be nonempty");
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

Matrix flip180(const Matrix& k) {
  Matrix out(k.rows(), k.cols());
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < k.cols(); ++c) out(k.rows() - 1 - r, k.cols() - 1 - c) = k(r, c);
  return out;
}

Matrix correlate2d(const Matrix& input, const Matrix& kernel, Padding mode) {
  require_nonempty(input, "input");
  require_nonempty(kernel, "kernel");
  const std::size_t kr = kernel.rows(), kc = kernel.cols();
  std::size_t out_r = 0, out_c = 0;
  std::ptrdiff_t top = 0, left = 0;
  if (mode == Padding::Valid) {
    if (kr > input.rows() || kc > input.cols())
      throw DimensionError("kernel " + shape(kernel) + " does not fit input " + shape(input) + " in valid mode");
    out_r = input.rows() - kr + 1;
    out_c = input.cols() - kc + 1;
  } else {
    out_r = input.rows();
    out_c = input.cols();
    top = static_cast<std::ptrdiff_t>((kr - 1) / 2);
    left = static_cast<std::ptrdiff_t>((kc - 1) / 2);
  }
  const auto in_r = static_cast<std::ptrdiff_t>(input.rows());
  const auto in_c = static_cast<std::ptrdiff_t>(input.cols());
  Matrix out(out_r, out_c);
  for (std::size_t i = 0; i < out_r; ++i) {
    for (std::size_t j = 0; j < out_c; ++j) {
      double acc = 0.0;
      for (std::size_t u = 0; u < kr; ++u) {
        const auto r = static_cast<std::ptrdiff_t>(i + u) - top;
        if (r < 0 || r >= in_r) continue;
        for (std::size_t v = 0; v < kc; ++v) {
          const auto c = static_cast<std::ptrdiff_t>(j + v) - left;
          if (c < 0 || c >= in_c) continue;
          acc += input(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) * kernel(u, v);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix conv2d(const Matrix& input, const Matrix& kernel, Padding mode) {
  return correlate2d(input, flip180(kernel), mode);
}

std::vector<double> conv1d(const std::vector<double>& a, const std::vector<double>& b, Conv1dMode mode) {
  if (a.empty() || b.empty()) throw InvalidArgument("conv1d inputs must be nonempty");
  std::vector<double> full(a.size() + b.size() - 1, 0.0);
  for (std::size_t m = 0; m < a.size(); ++m)
    for (std::size_t n = 0; n < b.size(); ++n) full[m + n] += a[m] * b[n];
  if (mode == Conv1dMode::Full) return full;
  if (b.size() > a.size()) throw DimensionError("valid conv1d needs the first input at least as long as the second");
  return {full.begin() + static_cast<std::ptrdiff_t>(b.size() - 1),
          full.begin() + static_cast<std::ptrdiff_t>(a.size())};
}

std::vector<double> correlate1d(const std::vector<double>& a, const std::vector<double>& b,
                                Conv1dMode mode) {
  return conv1d(a, std::vector<double>(b.rbegin(), b.rend()), mode);
}

long long conv_output_shape(const ConvSpec& spec) {
  if (spec.n <= 0 || spec.f <= 0) throw InvalidArgument("input and kernel sizes must be positive");
  if (spec.s < 1) throw InvalidArgument("stride must be >= 1");
  if (spec.p < 0) throw InvalidArgument("padding must be >= 0");
  const long long num = spec.n - spec.f + 2 * spec.p;
  if (num < 0) throw DimensionError("kernel larger than padded input (n - f + 2p < 0)");
  return num / spec.s + 1;
}

long long pool_output_shape(long long n, long long size, long long stride) {
  if (size < 1 || stride < 1) throw InvalidArgument("pool size and stride must be >= 1");
  if (size > n) throw DimensionError("pool window larger than input");
  return (n - size) / stride + 1;
}

Matrix maxpool2d(const Matrix& input, const PoolSpec& spec) {
  require_nonempty(input, "input");
  const auto out_r = static_cast<std::size_t>(pool_output_shape(
      static_cast<long long>(input.rows()), static_cast<long long>(spec.size_rows),
      static_cast<long long>(spec.stride_rows)));
  const auto out_c = static_cast<std::size_t>(pool_output_shape(
      static_cast<long long>(input.cols()), static_cast<long long>(spec.size_cols),
      static_cast<long long>(spec.stride_cols)));
  Matrix out(out_r, out_c);
  for (std::size_t i = 0; i < out_r; ++i) {
    for (std::size_t j = 0; j < out_c; ++j) {
      double best = input(i * spec.stride_rows, j * spec.stride_cols);
      for (std::size_t u = 0; u < spec.size_rows; ++u)
        for (std::size_t v = 0; v < spec.size_cols; ++v)
          best = std::max(best, input(i * spec.stride_rows + u, j * spec.stride_cols + v));
      out(i, j) = best;
    }
  }
  return out;
}

Matrix maxpool2d(const Matrix& input, std::size_t size, std::size_t stride) {
  return maxpool2d(input, PoolSpec{size, size, stride, stride});
}

std::vector<double> maxpool1d(const std::vector<double>& v, std::size_t size, std::size_t stride) {
  return maxpool2d(Matrix::row(v), PoolSpec{1, size, 1, stride}).data();
}

Matrix gaussian_kernel(double sigma, int radius, int dims) {
  if (!(sigma > 0.0)) throw DomainError("gaussian sigma must be > 0");
  if (radius < 1) throw InvalidArgument("gaussian radius must be >= 1");
  if (dims != 1 && dims != 2) throw InvalidArgument("gaussian dims must be 1 or 2");
  const std::size_t n = static_cast<std::size_t>(2 * radius + 1);
  std::vector<double> g(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - radius;
    g[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    total += g[i];
  }
  for (double& v : g) v /= total;
  if (dims == 1) return Matrix::row(g);
  Matrix k(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) k(r, c) = g[r] * g[c];
  return k;
}

Matrix separable_conv2d(const Matrix& input, const Matrix& row_kernel, Padding mode) {
  if (row_kernel.rows() != 1) throw DimensionError("separable filter expects a 1 x k row kernel");
  return conv2d(conv2d(input, row_kernel, mode), row_kernel.transposed(), mode);
}

Matrix gram_matrix(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) throw InvalidArgument("gram matrix needs at least one vector");
  const std::size_t len = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != len) throw DimensionError("gram matrix vectors differ in length");
  const std::size_t n = vectors.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t t = 0; t < len; ++t) dot += vectors[i][t] * vectors[j][t];
      g(i, j) = g(j, i) = dot;
    }
  }
  return g;
}

std::uint64_t conv_cost(std::uint64_t w, std::uint64_t h, std::uint64_t k) {
  if (w == 0 || h == 0 || k == 0) throw InvalidArgument("conv cost arguments must be positive");
  return k * k * w * h;
}

double model_size_mb(double param_count, double bits_per_param) {
  if (!(param_count >= 0.0) || !(bits_per_param > 0.0))
    throw InvalidArgument("parameter count must be >= 0 and bits per parameter > 0");
  return param_count * bits_per_param * 1.25e-7;
}

std::vector<double> relu(std::vector<double> v) {
  for (double& x : v) x = std::max(0.0, x);
  return v;
}

}  // namespace ik::tensor
