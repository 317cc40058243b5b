#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fsi/la/block_vector.hpp"
#include "fsi/la/dense.hpp"
#include "fsi/la/matrix_market.hpp"
#include "fsi/la/sparse_matrix.hpp"
#include "oracle.hpp"

using namespace fsi;
using namespace fsi::la;

namespace {

std::vector<Triplet> random_triplets(Index n, Index m, Index count, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> ri(0, n - 1), ci(0, m - 1);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::vector<Triplet> t;
  for (Index k = 0; k < count; ++k) t.push_back({ri(rng), ci(rng), v(rng)});
  return t;
}

oracle::Dense accumulate(const std::vector<Triplet>& t, Index n, Index m) {
  oracle::Dense d(n, m);
  for (const auto& e : t) d(e.row, e.col) += e.value;
  return d;
}

}  // namespace

TEST(CsrFromTriplets, IdentityCase) {
  std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 1.0}};
  auto a = csr_from_triplets(t, 2, 2);
  EXPECT_EQ(a.nnz(), 2u);
  EXPECT_EQ(a.to_dense(), (std::vector<double>{1, 0, 0, 1}));
}

TEST(CsrFromTriplets, DuplicatesAreSummed) {
  std::vector<Triplet> t{{0, 0, 1.0}, {0, 0, 2.0}};
  auto a = csr_from_triplets(t, 1, 1);
  EXPECT_EQ(a.nnz(), 1u);
  EXPECT_EQ(a.at(0, 0), 3.0);
}

TEST(CsrFromTriplets, MatchesDenseAccumulation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_triplets(8, 8, 40, rng);
    auto a = csr_from_triplets(t, 8, 8);
    auto d = accumulate(t, 8, 8);
    auto ad = a.to_dense();
    for (Index k = 0; k < ad.size(); ++k) EXPECT_NEAR(ad[k], d.a[k], 1e-15);
    // canonical form: sorted, unique columns
    for (Index i = 0; i < a.nrows(); ++i) {
      auto c = a.row_cols(i);
      for (Index k = 1; k < c.size(); ++k) EXPECT_LT(c[k - 1], c[k]);
    }
  }
}

TEST(CsrFromTriplets, OutOfRangeThrows) {
  std::vector<Triplet> t{{2, 0, 1.0}};
  EXPECT_THROW(csr_from_triplets(t, 2, 2), DimensionError);
}

TEST(SparseMatrix, RejectsBrokenInvariants) {
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1, 1}, {0, 0}, {1, 1}), Error);     // row_ptr[n] != nnz
  EXPECT_THROW(SparseMatrix(1, 2, {0, 2}, {1, 0}, {1, 1}), Error);        // unsorted
  EXPECT_THROW(SparseMatrix(1, 2, {0, 2}, {1, 1}, {1, 1}), Error);        // duplicate
  EXPECT_THROW(SparseMatrix(1, 2, {0, 1}, {2}, {1}), DimensionError);     // col out of range
}

TEST(Spmv, IdentityAndZero) {
  Vector x{1.5, -2.0, 3.0};
  EXPECT_EQ(spmv(SparseMatrix::identity(3), x), x);
  EXPECT_EQ(spmv(SparseMatrix(3, 3), x), (Vector{0, 0, 0}));
}

TEST(Spmv, MatchesDenseMultiply) {
  std::mt19937_64 rng(5);
  auto t = random_triplets(6, 4, 15, rng);
  auto a = csr_from_triplets(t, 6, 4);
  auto d = accumulate(t, 6, 4);
  auto x = oracle::random_vector(4, rng);
  auto y = spmv(a, x);
  auto yd = oracle::mul(d, x);
  for (Index i = 0; i < 6; ++i) EXPECT_NEAR(y[i], yd[i], 1e-14);
}

TEST(Spmv, DimensionMismatchThrows) {
  Vector x(3, 1.0);
  EXPECT_THROW(spmv(SparseMatrix::identity(2), x), DimensionError);
}

TEST(Spmv, LinearityProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> s(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = csr_from_triplets(random_triplets(10, 10, 45, rng), 10, 10);
    auto x = oracle::random_vector(10, rng);
    auto y = oracle::random_vector(10, rng);
    const double alpha = s(rng), beta = s(rng);
    Vector comb(10);
    for (Index i = 0; i < 10; ++i) comb[i] = alpha * x[i] + beta * y[i];
    auto lhs = spmv(a, comb);
    auto ax = spmv(a, x), ay = spmv(a, y);
    Vector rhs(10);
    for (Index i = 0; i < 10; ++i) rhs[i] = alpha * ax[i] + beta * ay[i];
    double scale = 0.0;
    for (Index i = 0; i < 10; ++i) scale = std::max(scale, std::abs(alpha * ax[i]) + std::abs(beta * ay[i]));
    for (Index i = 0; i < 10; ++i) EXPECT_LE(std::abs(lhs[i] - rhs[i]), 1e-14 * std::max(scale, 1.0));
  }
}

TEST(Submatrix, FullIndexSetsGiveA) {
  std::mt19937_64 rng(3);
  auto a = csr_from_triplets(random_triplets(5, 5, 12, rng), 5, 5);
  IndexSet all{0, 1, 2, 3, 4};
  auto s = submatrix(a, all, all);
  EXPECT_EQ(s.to_dense(), a.to_dense());
}

TEST(Submatrix, EmptyRowSet) {
  auto s = submatrix(SparseMatrix::identity(4), IndexSet{}, IndexSet{0, 1, 2, 3});
  EXPECT_EQ(s.nrows(), 0u);
  EXPECT_EQ(s.ncols(), 4u);
}

TEST(Submatrix, MatchesDenseSlice) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto t = random_triplets(8, 8, 30, rng);
    auto a = csr_from_triplets(t, 8, 8);
    auto d = accumulate(t, 8, 8);
    IndexSet rows, cols;
    std::bernoulli_distribution pick(0.5);
    for (Index i = 0; i < 8; ++i) {
      if (pick(rng)) rows.push_back(i);
      if (pick(rng)) cols.push_back(i);
    }
    auto s = submatrix(a, rows, cols).to_dense();
    for (Index r = 0; r < rows.size(); ++r)
      for (Index c = 0; c < cols.size(); ++c)
        EXPECT_EQ(s[r * cols.size() + c], d(rows[r], cols[c]));
  }
  auto a = csr_from_triplets(random_triplets(8, 8, 30, rng), 8, 8);
  auto s = submatrix(a, IndexSet{1, 3}, IndexSet{0, 2});
  EXPECT_EQ(s.at(1, 1), a.at(3, 2));
}

TEST(Submatrix, UnsortedOrDuplicateIndexSetThrows) {
  auto a = SparseMatrix::identity(4);
  EXPECT_THROW(submatrix(a, IndexSet{2, 1}, IndexSet{0}), Error);
  EXPECT_THROW(submatrix(a, IndexSet{1, 1}, IndexSet{0}), Error);
}

TEST(SparseAlgebra, ProductTransposeAddAgreeWithDense) {
  std::mt19937_64 rng(8);
  auto ta = random_triplets(5, 7, 15, rng), tb = random_triplets(7, 4, 15, rng);
  auto a = csr_from_triplets(ta, 5, 7), b = csr_from_triplets(tb, 7, 4);
  auto p = multiply(a, b).to_dense();
  auto pd = oracle::mul(accumulate(ta, 5, 7), accumulate(tb, 7, 4));
  for (Index k = 0; k < p.size(); ++k) EXPECT_NEAR(p[k], pd.a[k], 1e-14);
  auto at = a.transpose();
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 7; ++j) EXPECT_EQ(at.at(j, i), a.at(i, j));
  auto s = add(a, a, 2.0, -1.0);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 7; ++j) EXPECT_DOUBLE_EQ(s.at(i, j), a.at(i, j));
}

TEST(DenseLu, IdentitySolve) {
  auto f = dense_lu_factor(DenseMatrix::identity(4));
  Vector b{1, 2, 3, 4};
  EXPECT_EQ(f.solve(b), b);
}

TEST(DenseLu, DiagonalSolve) {
  DenseMatrix a(2, 2, {2, 0, 0, 4});
  auto x = dense_lu_factor(a).solve(Vector{2, 4});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(DenseLu, ResidualOnWellConditionedRandom) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a(10, 10);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Index i = 0; i < 10; ++i)
      for (Index j = 0; j < 10; ++j) a(i, j) = u(rng) + (i == j ? 6.0 : 0.0);
    auto b = oracle::random_vector(10, rng);
    auto x = dense_lu_factor(a).solve(b);
    auto ax = a.multiply(x);
    Vector r(10);
    for (Index i = 0; i < 10; ++i) r[i] = ax[i] - b[i];
    EXPECT_LE(oracle::norm(r), 1e-12 * oracle::norm(b));
  }
}

TEST(DenseLu, LeftInverseUpToConditionMillion) {
  // Graded diagonal scaled by a random orthogonal-ish mixing; cond ~ 1e6.
  std::mt19937_64 rng(99);
  const Index n = 12;
  DenseMatrix q(n, n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) q(i, j) = (i == j ? 1.0 : 0.0) + 0.1 * u(rng);
  DenseMatrix d(n, n);
  for (Index i = 0; i < n; ++i) d(i, i) = std::pow(10.0, -6.0 * double(i) / double(n - 1));
  auto a = q.multiply(d);
  oracle::Dense ad(n, n);
  std::copy(a.data().begin(), a.data().end(), ad.a.begin());
  ASSERT_LE(oracle::condition_1(ad), 5e7);
  auto b = oracle::random_vector(n, rng);
  auto x = dense_lu_factor(a).solve(b);
  auto ax = a.multiply(x);
  Vector r(n);
  for (Index i = 0; i < n; ++i) r[i] = ax[i] - b[i];
  EXPECT_LE(oracle::norm(r), 1e-12 * oracle::norm(b));
}

TEST(DenseLu, SingularCarriesPivotIndex) {
  DenseMatrix a(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 0});
  try {
    dense_lu_factor(a);
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.pivot(), 2u);
  }
}

TEST(DenseLu, FactorsReproducePermutedMatrix) {
  DenseMatrix a(3, 3, {0, 2, 1, 4, 1, 0, 1, 1, 3});
  auto f = dense_lu_factor(a);
  auto lu = f.lu();
  auto piv = f.pivots();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      double s = 0.0;
      for (Index k = 0; k <= std::min(i, j); ++k) {
        const double l = (k == i) ? 1.0 : lu[i * 3 + k];
        s += l * lu[k * 3 + j];
      }
      EXPECT_NEAR(s, a(piv[i], j), 1e-14);
    }
}

TEST(BlockVector, SegmentsAndUniqueness) {
  BlockVector v({{Segment::solid, 2}, {Segment::interface, 3}});
  EXPECT_EQ(v.size(), 5u);
  v.segment(Segment::interface)[0] = 7.0;
  EXPECT_EQ(v.data()[2], 7.0);
  EXPECT_THROW(BlockVector({{Segment::solid, 1}, {Segment::solid, 2}}), Error);
  EXPECT_THROW(v.segment(Segment::geometry), Error);
}

TEST(MatrixMarket, RoundTripIsExact) {
  std::mt19937_64 rng(1);
  auto a = csr_from_triplets(random_triplets(7, 5, 20, rng), 7, 5);
  std::stringstream ss;
  write_matrix_market(ss, a);
  auto b = read_matrix_market(ss);
  EXPECT_EQ(a.to_dense(), b.to_dense());
  EXPECT_NE(ss.str().find("coordinate real general"), std::string::npos);
}

TEST(MatrixMarket, SymmetricInputExpands) {
  std::stringstream ss("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 2.0\n2 1 -1.0\n");
  auto a = read_matrix_market(ss);
  EXPECT_EQ(a.at(0, 1), -1.0);
  EXPECT_EQ(a.at(1, 0), -1.0);
}
