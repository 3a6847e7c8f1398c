#include <gtest/gtest.h>

#include <random>

#include "ik/error.hpp"
#include "ik/tensorops.hpp"

using ik::Matrix;
using namespace ik::tensor;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

Matrix six_by_six() {
  return {{3, 3, 3, 1, 1, 1}, {3, 3, 3, 1, 1, 1}, {3, 3, 3, 1, 1, 1},
          {3, 3, 3, 1, 1, 1}, {3, 3, 3, 1, 1, 1}, {3, 3, 3, 1, 1, 1}};
}

const Matrix kEdge{{2, 0, -2}, {2, 0, -2}, {2, 0, -2}};

}  // namespace

// ---------------------------------------------------------------- Matrix

TEST(Matrix, TextRoundTrip) {
  const Matrix m{{1, -2.5}, {0.1, 3}};
  EXPECT_EQ(m.to_text(), "2 2\n1 -2.5\n0.1 3\n");
  EXPECT_EQ(Matrix::parse(m.to_text()), m);
}

TEST(Matrix, ParseErrors) {
  EXPECT_THROW(Matrix::parse("2"), ik::ParseError);
  EXPECT_THROW(Matrix::parse("2 2\n1 2 3"), ik::ParseError);
  EXPECT_THROW(Matrix::parse("1 1\n1 2"), ik::ParseError);
  EXPECT_THROW(Matrix::parse("0 3\n"), ik::InvalidArgument);
  EXPECT_THROW(Matrix(2, 2, std::vector<double>{1, 2, 3}), ik::DimensionError);
  EXPECT_THROW(Matrix::from_rows({{1, 2}, {3}}), ik::DimensionError);
}

TEST(Matrix, AccessAndTranspose) {
  const Matrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.at(1, 2), 6);
  EXPECT_THROW(m.at(2, 0), ik::DimensionError);
  EXPECT_EQ(m.transposed(), (Matrix{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(m.row_vector(1), (std::vector<double>{4, 5, 6}));
}

// ---------------------------------------------------------------- convolution

TEST(Conv2d, WorkedEdgeDetector) {
  const Matrix out = conv2d(six_by_six(), kEdge, Padding::Valid);
  ASSERT_EQ(out.rows(), 4u);
  ASSERT_EQ(out.cols(), 4u);
  for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(out.row_vector(r), (std::vector<double>{0, -12, -12, 0}));
}

TEST(Conv2d, IdentityKernel) {
  std::mt19937_64 rng(1);
  const Matrix x = random_matrix(rng, 5, 7);
  EXPECT_EQ(conv2d(x, Matrix{{1}}, Padding::Valid), x);
  EXPECT_EQ(conv2d(x, Matrix{{1}}, Padding::Same), x);
}

TEST(Conv2d, ImpulseResponse) {
  Matrix delta(5, 5);
  delta(2, 2) = 1.0;
  const Matrix k{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const Matrix conv = conv2d(delta, k, Padding::Same);
  const Matrix corr = correlate2d(delta, k, Padding::Same);
  const Matrix flipped = flip180(k);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_EQ(conv(1 + r, 1 + c), k(r, c));
      EXPECT_EQ(corr(1 + r, 1 + c), flipped(r, c));
    }
  }
}

TEST(Conv2d, SamePaddingEvenKernelPadsBottomRight) {
  const Matrix x{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const Matrix ones{{1, 1}, {1, 1}};
  const Matrix out = correlate2d(x, ones, Padding::Same);
  ASSERT_EQ(out.rows(), 3u);
  EXPECT_EQ(out(0, 0), 1 + 2 + 4 + 5);
  EXPECT_EQ(out(2, 2), 9);
  EXPECT_EQ(out(0, 2), 3 + 6);
}

TEST(Conv2d, KernelTooLarge) {
  EXPECT_THROW(conv2d(Matrix(2, 2), Matrix(3, 3), Padding::Valid), ik::DimensionError);
  EXPECT_NO_THROW(conv2d(Matrix(2, 2), Matrix(3, 3), Padding::Same));
  EXPECT_THROW(conv2d(Matrix(), Matrix(1, 1), Padding::Same), ik::InvalidArgument);
}

TEST(Correlate2d, ColumnKernelPipeline) {
  const Matrix col = Matrix::column({7, 3, -6, 2, 5});
  const Matrix k = Matrix::column({3, 1});
  EXPECT_EQ(correlate2d(col, k, Padding::Valid).data(), (std::vector<double>{24, 3, -16, 11}));
  EXPECT_EQ(correlate1d({7, 3, -6, 2, 5}, {3, 1}, Conv1dMode::Valid), (std::vector<double>{24, 3, -16, 11}));
  const auto activated = relu({24, 3, -16, 11});
  EXPECT_EQ(activated, (std::vector<double>{24, 3, 0, 11}));
  EXPECT_EQ(maxpool1d(activated, 2, 2), (std::vector<double>{24, 11}));
  EXPECT_EQ(maxpool2d(Matrix::column(activated), PoolSpec{2, 1, 2, 1}).data(), (std::vector<double>{24, 11}));
}

TEST(Correlate2d, SymmetricKernelMatchesConv) {
  std::mt19937_64 rng(4);
  const Matrix x = random_matrix(rng, 6, 6);
  const Matrix sym{{1, 2, 1}, {2, 4, 2}, {1, 2, 1}};
  EXPECT_EQ(correlate2d(x, sym, Padding::Same), conv2d(x, sym, Padding::Same));
}

TEST(Conv1d, Examples) {
  EXPECT_EQ(conv1d({1, 2, 3}, {0, 1, 0}, Conv1dMode::Full), (std::vector<double>{0, 1, 2, 3, 0}));
  EXPECT_EQ(conv1d({1, 1}, {1, 1}, Conv1dMode::Full), (std::vector<double>{1, 2, 1}));
  EXPECT_EQ(conv1d({1, 2, 3, 4}, {1, 1}, Conv1dMode::Valid), (std::vector<double>{3, 5, 7}));
  EXPECT_THROW(conv1d({1}, {1, 2}, Conv1dMode::Valid), ik::DimensionError);
  EXPECT_THROW(conv1d({}, {1}, Conv1dMode::Full), ik::InvalidArgument);
}

TEST(Conv1d, MatchesDirectDefinition) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(3 + trial % 9), b(1 + trial % 5);
    for (double& v : a) v = u(rng);
    for (double& v : b) v = u(rng);
    const auto full = conv1d(a, b, Conv1dMode::Full);
    ASSERT_EQ(full.size(), a.size() + b.size() - 1);
    for (std::size_t k = 0; k < full.size(); ++k) {
      double ref = 0.0;
      for (std::size_t m = 0; m < a.size(); ++m)
        if (k >= m && k - m < b.size()) ref += a[m] * b[k - m];
      EXPECT_NEAR(full[k], ref, 1e-12);
    }
  }
}

// ---------------------------------------------------------------- shapes and pooling

TEST(Shapes, OutputShape) {
  EXPECT_EQ(conv_output_shape({224, 7, 1, 2}), 222);
  EXPECT_EQ(conv_output_shape({3, 3, 1, 0}), 1);
  long long n = 224;
  for (int i = 0; i < 5; ++i) n = conv_output_shape({n, 2, 2, 0});
  EXPECT_EQ(n, 7);
  EXPECT_THROW(conv_output_shape({2, 5, 1, 0}), ik::DimensionError);
  EXPECT_THROW(conv_output_shape({5, 3, 0, 0}), ik::InvalidArgument);
}

TEST(Shapes, PoolChainAndFlatten) {
  const long long after_conv = conv_output_shape({224, 7, 1, 2});
  const long long p1 = pool_output_shape(after_conv, 2, 2);
  const long long p2 = pool_output_shape(p1, 2, 2);
  EXPECT_EQ(p1, 111);
  EXPECT_EQ(p2, 55);
  EXPECT_EQ(32 * p2 * p2, 96800);
}

TEST(MaxPool, WorkedExample) {
  const Matrix x{{-1, 0, 11, -1}, {-1, 7, 1, -1}, {-1, 0, 1, -1}, {-1, 0, 1, -1}};
  EXPECT_EQ(maxpool2d(x, 2, 2), (Matrix{{7, 11}, {0, 1}}));
}

TEST(MaxPool, ConstantAndErrors) {
  const Matrix c(6, 6, 2.5);
  EXPECT_EQ(maxpool2d(c, 3, 1), Matrix(4, 4, 2.5));
  EXPECT_THROW(maxpool2d(c, 7, 1), ik::DimensionError);
  EXPECT_THROW(maxpool2d(c, 2, 0), ik::InvalidArgument);
}

TEST(MaxPool, FloorSemantics) {
  std::mt19937_64 rng(6);
  const Matrix x = random_matrix(rng, 7, 5);
  const Matrix p = maxpool2d(x, 2, 2);
  EXPECT_EQ(p.rows(), 3u);
  EXPECT_EQ(p.cols(), 2u);
}

// ---------------------------------------------------------------- gaussian, gram, cost

TEST(Gaussian, OuterProductAndNormalization) {
  const Matrix g1 = gaussian_kernel(1.3, 3, 1);
  const Matrix g2 = gaussian_kernel(1.3, 3, 2);
  double s1 = 0.0, s2 = 0.0;
  for (double v : g1.data()) s1 += v;
  for (double v : g2.data()) s2 += v;
  EXPECT_NEAR(s1, 1.0, 1e-12);
  EXPECT_NEAR(s2, 1.0, 1e-12);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 7; ++c) EXPECT_NEAR(g2(r, c), g1(0, r) * g1(0, c), 1e-12);
}

TEST(Gaussian, WideSigmaApproachesUniform) {
  const Matrix g = gaussian_kernel(1e4, 2, 1);
  const double ratio = g(0, 2) / g(0, 0);
  EXPECT_NEAR(ratio, std::exp(4.0 / (2.0 * 1e8)), 1e-15);
  EXPECT_NEAR(ratio, 1.0, 1e-7);
}

TEST(Gaussian, Errors) {
  EXPECT_THROW(gaussian_kernel(0.0, 1, 1), ik::DomainError);
  EXPECT_THROW(gaussian_kernel(1.0, 0, 1), ik::InvalidArgument);
  EXPECT_THROW(gaussian_kernel(1.0, 1, 3), ik::InvalidArgument);
}

TEST(Gram, Examples) {
  EXPECT_EQ(gram_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), (Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(gram_matrix({{3, 4}}), (Matrix{{25}}));
  EXPECT_THROW(gram_matrix({{1, 2}, {3}}), ik::DimensionError);
  EXPECT_THROW(gram_matrix({}), ik::InvalidArgument);
}

TEST(Gram, SymmetricPositiveSemidefinite) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> vs(3, std::vector<double>(4));
    for (auto& v : vs)
      for (double& x : v) x = u(rng);
    const Matrix g = gram_matrix(vs);
    EXPECT_EQ(g, g.transposed());
    std::vector<double> x(3);
    for (double& v : x) v = u(rng);
    double q = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) q += x[i] * g(i, j) * x[j];
    EXPECT_GE(q, -1e-9);
  }
}

TEST(Cost, Examples) {
  EXPECT_EQ(conv_cost(10, 10, 3), 900u);
  EXPECT_EQ(conv_cost(17, 5, 1), 85u);
  EXPECT_NEAR(model_size_mb(138357544, 32), 553.430176, 1e-6);
  EXPECT_THROW(conv_cost(0, 1, 1), ik::InvalidArgument);
}

// ---------------------------------------------------------------- properties

TEST(Properties, FlipEquivalence) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix x = random_matrix(rng, 4 + trial % 5, 5 + trial % 3);
    const Matrix k = random_matrix(rng, 1 + trial % 4, 1 + trial % 3);
    for (auto mode : {Padding::Valid, Padding::Same}) {
      EXPECT_EQ(conv2d(x, k, mode), correlate2d(x, flip180(k), mode));
      EXPECT_EQ(correlate2d(x, k, mode), conv2d(x, flip180(k), mode));
    }
  }
}

TEST(Properties, LinearityAndShiftCovariance) {
  std::mt19937_64 rng(22);
  const Matrix k = random_matrix(rng, 3, 3);
  const Matrix x = random_matrix(rng, 8, 8), y = random_matrix(rng, 8, 8);
  const double a = 1.7, b = -0.4;
  Matrix mix(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) mix(i, j) = a * x(i, j) + b * y(i, j);
  const Matrix lhs = conv2d(mix, k, Padding::Same);
  const Matrix cx = conv2d(x, k, Padding::Same), cy = conv2d(y, k, Padding::Same);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(lhs(i, j), a * cx(i, j) + b * cy(i, j), 1e-12);

  // Shift the input down 1 and right 2 (zero fill); valid output shifts the same way.
  Matrix shifted(8, 8);
  for (std::size_t i = 1; i < 8; ++i)
    for (std::size_t j = 2; j < 8; ++j) shifted(i, j) = x(i - 1, j - 2);
  const Matrix base = conv2d(x, k, Padding::Valid), moved = conv2d(shifted, k, Padding::Valid);
  for (std::size_t i = 1; i < base.rows(); ++i)
    for (std::size_t j = 2; j < base.cols(); ++j) EXPECT_EQ(moved(i, j), base(i - 1, j - 2));
}

TEST(Properties, PoolComposition) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix x = random_matrix(rng, 4 * (1 + trial % 4), 4 * (1 + trial % 3));
    EXPECT_EQ(maxpool2d(maxpool2d(x, 2, 2), 2, 2), maxpool2d(x, 4, 4));
  }
}

TEST(Properties, GaussianSeparability) {
  std::mt19937_64 rng(24);
  const Matrix x = random_matrix(rng, 12, 10);
  for (auto mode : {Padding::Valid, Padding::Same}) {
    const Matrix direct = conv2d(x, gaussian_kernel(1.1, 2, 2), mode);
    const Matrix split = separable_conv2d(x, gaussian_kernel(1.1, 2, 1), mode);
    EXPECT_LE(ik::max_abs_diff(direct, split), 1e-10);
  }
}

TEST(Properties, ValidModeShrinks) {
  std::mt19937_64 rng(25);
  const Matrix x = random_matrix(rng, 9, 7);
  const Matrix out = conv2d(x, random_matrix(rng, 4, 2), Padding::Valid);
  EXPECT_EQ(out.rows(), 9u - 4 + 1);
  EXPECT_EQ(out.cols(), 7u - 2 + 1);
}
