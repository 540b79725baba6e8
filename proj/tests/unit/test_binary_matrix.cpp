#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qccd/binary_matrix.hpp"

using qccd::BinaryMatrix;

namespace {

BinaryMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BinaryMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (rng() & 1u) m.set(i, j);
    }
  }
  return m;
}

}  // namespace

TEST(BinaryMatrix, GetSetFlipAcrossWordBoundary) {
  BinaryMatrix m(3, 130);
  m.set(1, 63);
  m.set(1, 64);
  m.set(2, 129);
  m.flip(2, 129);
  EXPECT_TRUE(m.get(1, 63));
  EXPECT_TRUE(m.get(1, 64));
  EXPECT_FALSE(m.get(2, 129));
  EXPECT_EQ(m.row_weight(1), 2u);
  EXPECT_EQ(m.col_weight(64), 1u);
  EXPECT_EQ(m.popcount(), 2u);
  EXPECT_THROW(m.get(3, 0), std::out_of_range);
}

TEST(BinaryMatrix, FromRowsRejectsRaggedInput) {
  EXPECT_THROW(BinaryMatrix::from_rows({"101", "10"}), std::invalid_argument);
  EXPECT_THROW(BinaryMatrix::from_rows({"102"}), std::invalid_argument);
}

TEST(BinaryMatrix, TransposeIsInvolution) {
  const auto m = random_matrix(17, 71, 3);
  EXPECT_EQ(m.transpose().transpose(), m);
  EXPECT_EQ(m.transpose().get(70, 16), m.get(16, 70));
}

TEST(BinaryMatrix, ProductMatchesDenseReference) {
  const auto a = random_matrix(9, 70, 1);
  const auto b = random_matrix(70, 13, 2);
  const auto p = a * b;
  const auto da = qccd::oracle::to_dense(a);
  const auto db = qccd::oracle::to_dense(b);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 13; ++j) {
      unsigned acc = 0;
      for (std::size_t k = 0; k < 70; ++k) acc ^= da[i][k] & db[k][j];
      EXPECT_EQ(p.get(i, j), acc == 1) << i << "," << j;
    }
  }
  EXPECT_THROW(a * a, std::invalid_argument);
}

TEST(BinaryMatrix, KronAndStacksHaveExpectedShape) {
  const auto a = BinaryMatrix::from_rows({"11", "01"});
  const auto i3 = BinaryMatrix::identity(3);
  const auto k = BinaryMatrix::kron(a, i3);
  EXPECT_EQ(k.rows(), 6u);
  EXPECT_EQ(k.cols(), 6u);
  EXPECT_TRUE(k.get(0, 3));
  EXPECT_FALSE(k.get(3, 0));
  EXPECT_EQ(BinaryMatrix::hstack(a, a).cols(), 4u);
  EXPECT_EQ(BinaryMatrix::vstack(a, a).rows(), 4u);
  EXPECT_THROW(BinaryMatrix::hstack(a, i3), std::invalid_argument);
}

TEST(BinaryMatrix, RankAgreesWithKernelEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t r = 1 + seed % 9;
    const std::size_t c = 4 + seed % 13;
    const auto m = random_matrix(r, c, seed + 100);
    EXPECT_EQ(qccd::gf2_rank(m), qccd::oracle::rank_by_enumeration(m)) << "seed " << seed;
    EXPECT_EQ(qccd::gf2_rank(m), qccd::oracle::rank_dense(qccd::oracle::to_dense(m))) << "seed " << seed;
  }
}

TEST(BinaryMatrix, RankOfIdentityAndZero) {
  EXPECT_EQ(qccd::gf2_rank(BinaryMatrix::identity(100)), 100u);
  EXPECT_EQ(qccd::gf2_rank(BinaryMatrix(5, 5)), 0u);
  EXPECT_EQ(qccd::gf2_rank(BinaryMatrix()), 0u);
}

TEST(BinaryMatrix, PcmRoundTrip) {
  const auto m = random_matrix(7, 19, 9);
  std::stringstream ss;
  qccd::write_pcm(ss, m);
  EXPECT_EQ(qccd::read_pcm(ss), m);
  std::stringstream bad("2 3\n101\n");
  EXPECT_THROW(qccd::read_pcm(bad), std::runtime_error);
}
