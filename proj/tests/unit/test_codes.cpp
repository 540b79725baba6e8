#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qccd/codes.hpp"

namespace oracle = qccd::oracle;

TEST(Codes, SeedsAreFullRankRegular) {
  const auto h = qccd::seed_12_3_6();
  EXPECT_EQ(h.rows(), 9u);
  EXPECT_EQ(h.cols(), 12u);
  EXPECT_EQ(oracle::rank_by_enumeration(h), 9u);
  for (std::size_t r = 0; r < h.rows(); ++r) EXPECT_EQ(h.row_weight(r), 4u);
  for (std::size_t c = 0; c < h.cols(); ++c) EXPECT_EQ(h.col_weight(c), 3u);
  const auto h20 = qccd::seed_20_5_8();
  EXPECT_EQ(oracle::rank_by_enumeration(h20), 15u);
}

TEST(Codes, SeedMinimumDistance) {
  // Smallest nonzero codeword weight, by enumeration.
  auto distance = [](const qccd::BinaryMatrix& h) {
    std::size_t best = h.cols();
    const auto d = oracle::to_dense(h);
    for (std::uint32_t v = 1; v < (1u << h.cols()); ++v) {
      bool ok = true;
      for (const auto& row : d) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < row.size(); ++c) acc ^= row[c] & ((v >> c) & 1u);
        if (acc) {
          ok = false;
          break;
        }
      }
      if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(v)));
    }
    return best;
  };
  EXPECT_EQ(distance(qccd::seed_12_3_6()), 6u);
  EXPECT_EQ(distance(qccd::seed_20_5_8()), 8u);
  EXPECT_EQ(distance(qccd::seed_hamming_7()), 3u);
}

TEST(Codes, HgpMatchesIndexFormulas) {
  const auto h1 = qccd::seed_hamming_7();
  const auto h2 = qccd::seed_repetition_2();
  const auto code = qccd::hgp_construct(h1, h2);
  const auto [hx, hz] = oracle::hgp_reference(oracle::to_dense(h1), oracle::to_dense(h2));
  EXPECT_EQ(oracle::to_dense(code.hx()), hx);
  EXPECT_EQ(oracle::to_dense(code.hz()), hz);
}

TEST(Codes, Hgp225Parameters) {
  const auto code = qccd::code_preset("hgp225");
  EXPECT_EQ(code.n(), 225u);
  EXPECT_EQ(code.m_x(), 108u);
  EXPECT_EQ(code.m_z(), 108u);
  const auto rx = oracle::rank_dense(oracle::to_dense(code.hx()));
  const auto rz = oracle::rank_dense(oracle::to_dense(code.hz()));
  EXPECT_EQ(code.k(), code.n() - rx - rz);
  EXPECT_EQ(code.k(), 9u);
}

TEST(Codes, PresetFamilySizes) {
  EXPECT_EQ(qccd::code_preset("hgp5").n(), 5u);
  EXPECT_EQ(qccd::code_preset("hgp58").n(), 58u);
  const auto h625 = qccd::code_preset("hgp625");
  EXPECT_EQ(h625.n(), 625u);
  EXPECT_EQ(h625.k(), 25u);
  EXPECT_THROW(qccd::code_preset("nope"), std::invalid_argument);
}

TEST(Codes, Bb144Parameters) {
  const auto code = qccd::code_preset("bb144");
  EXPECT_EQ(code.n(), 144u);
  EXPECT_EQ(code.k(), 12u);
  for (const auto& s : qccd::stabilizers_of(code)) EXPECT_EQ(s.weight(), 6u);
  EXPECT_TRUE(oracle::orthogonal(oracle::to_dense(code.hx()), oracle::to_dense(code.hz())));
}

TEST(Codes, ConstructorRejectsNonCommuting) {
  const auto hx = qccd::BinaryMatrix::from_rows({"110"});
  const auto hz = qccd::BinaryMatrix::from_rows({"100"});
  EXPECT_THROW(qccd::CssCode(hx, hz, qccd::CodeFamily::Custom), std::invalid_argument);
  const auto hz2 = qccd::BinaryMatrix::from_rows({"10"});
  EXPECT_THROW(qccd::CssCode(hx, hz2, qccd::CodeFamily::Custom), std::invalid_argument);
}

TEST(Codes, StabilizerOrderingIsXThenZ) {
  const auto code = qccd::code_preset("hgp5");
  const auto stabs = qccd::stabilizers_of(code);
  ASSERT_EQ(stabs.size(), code.m());
  for (std::size_t i = 0; i < stabs.size(); ++i) {
    EXPECT_EQ(qccd::stabilizer_ordinal(code, stabs[i].kind, stabs[i].index), i);
    EXPECT_TRUE(std::is_sorted(stabs[i].support.begin(), stabs[i].support.end()));
  }
}

TEST(Codes, SpecParsing) {
  const auto code = qccd::code_from_spec("hgp:" + std::string(QCCD_FIXTURE_DIR) + "/h12_3_6.pcm");
  EXPECT_EQ(code.n(), 225u);
  EXPECT_EQ(qccd::code_from_spec("bb:144").k(), 12u);
  EXPECT_EQ(qccd::code_from_spec("random-hgp:3x5", 4).n(), 34u);
  EXPECT_EQ(qccd::code_from_spec("random-hgp:3x5", 4).hx(), qccd::code_from_spec("random-hgp:3x5", 4).hx());
  EXPECT_THROW(qccd::code_from_spec("zzz:1"), std::invalid_argument);
  EXPECT_THROW(qccd::code_from_spec("hgp:/nonexistent.pcm"), std::runtime_error);
}

TEST(Codes, BbPolynomialJsonRoundTrip) {
  const auto p = qccd::bb_preset_144();
  const auto q = qccd::bb_from_json(qccd::to_json(p));
  EXPECT_EQ(q.l, p.l);
  EXPECT_EQ(q.m, p.m);
  EXPECT_EQ(q.a, p.a);
  EXPECT_EQ(q.b, p.b);
}
