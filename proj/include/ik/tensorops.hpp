#pragma once

#include <cstdint>
#include <vector>

#include "ik/matrix.hpp"

namespace ik::tensor {

enum class Padding { Valid, Same };
enum class Conv1dMode { Full, Valid };

/// 180-degree rotation (both axes reversed).
Matrix flip180(const Matrix& k);

/// Sliding dot product, no flip. Same mode zero-pads to keep the input size;
/// for even kernels the extra row/column of padding goes bottom/right.
Matrix correlate2d(const Matrix& input, const Matrix& kernel, Padding mode);

/// True convolution: correlate2d(input, flip180(kernel), mode).
Matrix conv2d(const Matrix& input, const Matrix& kernel, Padding mode);

/// C[m+n] += A[m] * B[n]; full length |a| + |b| - 1, valid length |a| - |b| + 1
/// (requires |a| >= |b|).
std::vector<double> conv1d(const std::vector<double>& a, const std::vector<double>& b, Conv1dMode mode);

/// Sliding dot product of b over a (real inputs, so conj is the identity).
std::vector<double> correlate1d(const std::vector<double>& a, const std::vector<double>& b,
                                Conv1dMode mode);

struct ConvSpec {
  long long n = 0;  // input size
  long long f = 0;  // kernel size
  long long s = 1;  // stride
  long long p = 0;  // padding per side
};

/// floor((n - f + 2p) / s) + 1.
long long conv_output_shape(const ConvSpec& spec);

struct PoolSpec {
  std::size_t size_rows = 2;
  std::size_t size_cols = 2;
  std::size_t stride_rows = 2;
  std::size_t stride_cols = 2;
};

/// Max over windows, floor semantics, no padding.
Matrix maxpool2d(const Matrix& input, const PoolSpec& spec);
Matrix maxpool2d(const Matrix& input, std::size_t size, std::size_t stride);
std::vector<double> maxpool1d(const std::vector<double>& v, std::size_t size, std::size_t stride);

/// Output side length of pooling, floor((n - size) / stride) + 1.
long long pool_output_shape(long long n, long long size, long long stride);

/// Sampled exp(-x^2 / (2 sigma^2)) on [-radius, radius], normalized to sum 1.
/// dims = 1 gives a 1 x (2r+1) row; dims = 2 gives the (2r+1)^2 outer product.
Matrix gaussian_kernel(double sigma, int radius, int dims);

/// Row pass with `row_kernel` (1 x k) then column pass with its transpose.
Matrix separable_conv2d(const Matrix& input, const Matrix& row_kernel, Padding mode);

/// G[i][j] = u_i . u_j.
Matrix gram_matrix(const std::vector<std::vector<double>>& vectors);

/// K^2 * w * h multiply-accumulates.
std::uint64_t conv_cost(std::uint64_t w, std::uint64_t h, std::uint64_t k);

/// params * bits * 1.25e-7 MB (1 bit = 1.25e-7 MB).
double model_size_mb(double param_count, double bits_per_param);

std::vector<double> relu(std::vector<double> v);

}  // namespace ik::tensor
