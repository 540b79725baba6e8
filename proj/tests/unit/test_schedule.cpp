#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qccd/schedule.hpp"

namespace oracle = qccd::oracle;
using qccd::ScheduleKind;

namespace {

qccd::CssCode tiny_hgp() {
  // [3,1] repetition checks: 2x3 each side.
  const auto h = qccd::BinaryMatrix::from_rows({"110", "011"});
  return qccd::hgp_construct(qccd::seed_repetition_2(), h);
}

}  // namespace

TEST(Schedule, SerialIsOneGatePerSlice) {
  const auto code = qccd::code_preset("hgp5");
  const auto s = qccd::schedule_serial(code);
  EXPECT_EQ(s.depth(), oracle::tanner_edges(code).size());
  EXPECT_TRUE(oracle::schedule_is_valid(code, s));
}

TEST(Schedule, AllKindsValidOnPresets) {
  for (const auto& name : qccd::code_preset_names()) {
    const auto code = qccd::code_preset(name);
    EXPECT_TRUE(oracle::schedule_is_valid(code, qccd::schedule_x_then_z(code))) << name;
    if (code.family() == qccd::CodeFamily::HGP) {
      EXPECT_TRUE(oracle::schedule_is_valid(code, qccd::schedule_edge_colorable(code))) << name;
    }
  }
}

TEST(Schedule, EdgeColorableDepthIsMaxDegree) {
  for (const auto& name : {"hgp5", "hgp58", "hgp225"}) {
    const auto code = qccd::code_preset(name);
    EXPECT_EQ(qccd::schedule_edge_colorable(code).depth(), oracle::max_tanner_degree(code)) << name;
  }
}

TEST(Schedule, MinimalOnTinyCodeByExhaustiveSearch) {
  const auto code = tiny_hgp();
  const auto best = oracle::min_depth_exhaustive(code);
  EXPECT_EQ(qccd::schedule_edge_colorable(code).depth(), best);
  EXPECT_GE(qccd::schedule_x_then_z(code).depth(), best);
}

TEST(Schedule, XThenZSeparatesPhases) {
  const auto code = qccd::code_preset("bb144");
  const auto s = qccd::schedule_x_then_z(code);
  EXPECT_EQ(s.depth(), 12u);
  bool seen_z = false;
  for (const auto& slice : s.slices) {
    for (const auto& g : slice) {
      if (g.stabilizer.kind == qccd::PauliKind::Z) seen_z = true;
      else EXPECT_FALSE(seen_z);
    }
  }
}

TEST(Schedule, EdgeColorableRejectsNonHgp) {
  EXPECT_THROW(qccd::schedule_edge_colorable(qccd::code_preset("bb144")), std::invalid_argument);
  EXPECT_EQ(qccd::default_parallel_kind(qccd::code_preset("bb144")), ScheduleKind::XThenZ);
  EXPECT_EQ(qccd::default_parallel_kind(qccd::code_preset("hgp225")), ScheduleKind::EdgeColorable);
}

TEST(Schedule, BipartiteColoringIsProper) {
  const std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}, {0, 2}};
  const auto colour = qccd::bipartite_edge_coloring(3, 3, edges);
  ASSERT_EQ(colour.size(), edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    EXPECT_LT(colour[i], 3u);
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i].first == edges[j].first || edges[i].second == edges[j].second) EXPECT_NE(colour[i], colour[j]);
    }
  }
}

TEST(Schedule, IdealSpeedup) {
  EXPECT_EQ(qccd::ideal_speedup(qccd::code_preset("bb144"), ScheduleKind::XThenZ), (qccd::Ratio{72, 1}));
  EXPECT_THROW(qccd::ideal_speedup(qccd::code_preset("bb144"), ScheduleKind::Serial), std::invalid_argument);
}

TEST(Schedule, JsonRoundTrip) {
  const auto code = qccd::code_preset("hgp5");
  const auto s = qccd::schedule_x_then_z(code);
  const auto back = qccd::schedule_from_json(qccd::to_json(s));
  EXPECT_EQ(back.kind, s.kind);
  EXPECT_EQ(back.slices, s.slices);
  EXPECT_EQ(qccd::parse_stabilizer_ref("Z17"), (qccd::StabilizerRef{qccd::PauliKind::Z, 17}));
}
