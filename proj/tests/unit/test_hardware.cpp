#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qccd/hardware.hpp"

namespace oracle = qccd::oracle;

TEST(OpTimes, DefaultsAndJunctionPricing) {
  const qccd::OpTimes t;
  EXPECT_EQ(t.split, 80.0);
  EXPECT_EQ(t.move, 10.0);
  EXPECT_EQ(t.merge, 80.0);
  EXPECT_EQ(t.junction_time(2), 10.0);
  EXPECT_EQ(t.junction_time(3), 100.0);
  EXPECT_EQ(t.junction_time(4), 120.0);
  EXPECT_EQ(t.junction_time(1), 10.0);
  EXPECT_NO_THROW(qccd::validate(t));
}

TEST(OpTimes, GateTimeFlatThenQuadratic) {
  const qccd::OpTimes t;
  EXPECT_EQ(qccd::gate_time(t, 2), 40.0);
  EXPECT_EQ(qccd::gate_time(t, 12), 40.0);
  EXPECT_GT(qccd::gate_time(t, 13), 40.0);
  const double g13 = qccd::gate_time(t, 13), g14 = qccd::gate_time(t, 14), g15 = qccd::gate_time(t, 15);
  EXPECT_NEAR((g15 - g14) - (g14 - g13), (g14 - g13) - (g13 - 40.0), 1e-9);
}

TEST(OpTimes, JsonRoundTripAndValidation) {
  qccd::OpTimes t;
  t.move = 3.5;
  t.junction_cross[3] = 55.0;
  const auto back = qccd::op_times_from_json(qccd::to_json(t));
  EXPECT_EQ(back.move, 3.5);
  EXPECT_EQ(back.junction_time(3), 55.0);
  t.split = -1.0;
  EXPECT_THROW(qccd::validate(t), std::invalid_argument);
}

TEST(Topology, GridBaselineStructure) {
  const auto t = qccd::build_grid_baseline(225, 5);
  EXPECT_EQ(t.trap_count(), 225u);
  EXPECT_TRUE(oracle::connected(t));
  EXPECT_TRUE(qccd::validate_topology(t).empty());
  for (auto trap : t.traps()) EXPECT_EQ(t.degree(trap), 2u);
}

TEST(Topology, AltGridStructure) {
  const auto t = qccd::build_alt_grid(225, 5);
  EXPECT_EQ(t.trap_count(), 225u);
  EXPECT_TRUE(oracle::connected(t));
  EXPECT_TRUE(qccd::validate_topology(t).empty());
}

TEST(Topology, MeshStructure) {
  for (std::size_t n : {16u, 100u, 225u}) {
    const auto t = qccd::build_mesh_junction(n, 5);
    const std::size_t k = (n + 3) / 4;
    EXPECT_EQ(t.junction_count(), k * k) << n;
    EXPECT_EQ(t.trap_count(), n);
    EXPECT_TRUE(oracle::connected(t));
    EXPECT_LE(oracle::max_route_junctions(t), 2 * k) << n;
    for (auto trap : t.traps()) EXPECT_EQ(t.degree(trap), 1u);
  }
}

TEST(Topology, RingStructure) {
  const auto t = qccd::build_ring(8, 4);
  EXPECT_TRUE(t.unidirectional());
  EXPECT_EQ(t.trap_count(), 8u);
  EXPECT_EQ(t.junction_count(), 4u);
  EXPECT_EQ(qccd::trap_path_count(t), 8u);
  EXPECT_TRUE(oracle::connected(t));
  const auto one = qccd::build_ring(1, 4);
  EXPECT_EQ(one.edges().size(), 0u);
  EXPECT_EQ(qccd::build_ring(2, 3).junction_count(), 2u);
  EXPECT_THROW(qccd::build_ring(0, 3), std::invalid_argument);
}

TEST(Topology, ValidatorFlagsDefects) {
  qccd::Topology t;
  const auto a = t.add_trap(2);
  const auto b = t.add_trap(0);
  const auto c = t.add_trap(2);
  t.connect(a, c);
  (void)b;
  const auto v = qccd::validate_topology(t);
  bool disconnected = false, capacity = false;
  for (const auto& x : v) {
    disconnected |= x.kind == qccd::ViolationKind::Disconnected;
    capacity |= x.kind == qccd::ViolationKind::Capacity;
  }
  EXPECT_TRUE(disconnected);
  EXPECT_TRUE(capacity);
}

TEST(Topology, JsonDump) {
  const auto j = qccd::to_json(qccd::build_ring(3, 4));
  EXPECT_EQ(j.at("layout_tag"), "ring");
  EXPECT_EQ(j.at("nodes").size(), 6u);
  EXPECT_EQ(j.at("nodes")[0].at("kind"), "trap");
  EXPECT_TRUE(j.at("unidirectional").get<bool>());
}
