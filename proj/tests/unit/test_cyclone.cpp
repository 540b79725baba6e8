#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qccd/cyclone.hpp"

namespace oracle = qccd::oracle;

namespace {

qccd::CycloneConfig config(std::size_t x, std::size_t cap) {
  qccd::CycloneConfig c;
  c.x = x;
  c.capacity = cap;
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> executed_edges(const qccd::CssCode& code,
                                                                const qccd::CycloneResult& r) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& g : r.executed) {
    out.emplace_back(qccd::stabilizer_ordinal(code, g.stabilizer.kind, g.stabilizer.index), g.data_qubit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Cyclone, PartitionIsRoundRobin) {
  const auto p = qccd::partition_data(7, 3);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0], (std::vector<std::size_t>{0, 3, 6}));
  EXPECT_EQ(p[2], (std::vector<std::size_t>{2, 5}));
}

TEST(Cyclone, RotationAssignmentPadsShorterSide) {
  const auto h = qccd::BinaryMatrix::from_rows({"1100", "0011"});
  const auto z = qccd::BinaryMatrix::from_rows({"1111"});
  const qccd::CssCode code(h, z, qccd::CodeFamily::Custom);
  const auto r = qccd::assign_rotations(code);
  EXPECT_EQ(r.ancillas, 2u);
  EXPECT_TRUE(r.z_phase[0].has_value());
  EXPECT_FALSE(r.z_phase[1].has_value());
}

TEST(Cyclone, CapacityRules) {
  const auto code = qccd::code_preset("hgp225");
  EXPECT_EQ(qccd::tight_capacity(225, 216, 64), 8u);
  EXPECT_EQ(qccd::tight_capacity(225, 216, 1), 441u);
  EXPECT_EQ(qccd::cyclone_min_capacity(code, 108), 4u);
  EXPECT_THROW(qccd::cyclone_compile(code, config(108, 3)), std::invalid_argument);
  EXPECT_THROW(qccd::cyclone_compile(code, config(0, 3)), std::invalid_argument);
}

TEST(Cyclone, ShuttleConstant) { EXPECT_EQ(qccd::cyclone_shuttle_time(qccd::OpTimes{}), 180.0); }

TEST(Cyclone, SingleTrapHasNoShuttling) {
  const auto h = qccd::BinaryMatrix::from_rows({"1"});
  const qccd::CssCode code(h, qccd::BinaryMatrix(0, 1), qccd::CodeFamily::Custom);
  const auto r = qccd::cyclone_compile(code, config(1, 2));
  for (const auto& e : r.schedule.events) {
    EXPECT_TRUE(e.kind == qccd::EventKind::Gate || e.kind == qccd::EventKind::Measure);
  }
  EXPECT_DOUBLE_EQ(r.schedule.stats.total_time, 40.0 + 150.0);
}

TEST(Cyclone, CoversTannerGraphWithLockstepPhases) {
  for (const auto& name : {"hgp5", "hgp58", "bb144"}) {
    const auto code = qccd::code_preset(name);
    for (std::size_t x : {1u, 2u, 5u}) {
      const auto r = qccd::cyclone_compile(code, config(x, qccd::cyclone_min_capacity(code, x)));
      EXPECT_EQ(r.shuttle_phases, x == 1 ? 0u : 2 * x) << name << " x=" << x;
      EXPECT_EQ(executed_edges(code, r), oracle::tanner_edges(code)) << name << " x=" << x;
      EXPECT_TRUE(qccd::detect_roadblocks(r.schedule).stalls.empty());
      const auto rep = qccd::replay(r.schedule, r.topology);
      EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
      EXPECT_EQ(rep.total_time, r.schedule.stats.total_time);
    }
  }
}

TEST(Cyclone, BoundIsTightOnUniformDenseCodes) {
  for (const auto& [n, m, x] : std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{
           {8, 4, 2}, {12, 6, 3}, {16, 8, 4}, {24, 6, 6}}) {
    const auto code = oracle::uniform_dense_code(n, m);
    const std::size_t cap = n / x + m / x;
    const auto cfg = config(x, cap);
    const auto r = qccd::cyclone_compile(code, cfg);
    const double bound = qccd::cyclone_bound(code, cfg);
    // Closed form evaluated by hand: every ancilla meets every data ion.
    const double g = qccd::gate_time(cfg.times, cap);
    const double t = 3.0 * g;
    const double a = static_cast<double>(m / x), d = static_cast<double>(n / x);
    const double expect = 2.0 * x * (180.0 + a * (t + g * d)) + 2.0 * a * 150.0;
    EXPECT_DOUBLE_EQ(bound, expect);
    EXPECT_NEAR(r.schedule.stats.total_time, bound, bound * 1e-3) << n << "," << m << "," << x;
  }
}

TEST(Cyclone, BoundDominatesPresets) {
  const auto code = qccd::code_preset("hgp225");
  const auto cfg = config(108, 4);
  const auto r = qccd::cyclone_compile(code, cfg);
  EXPECT_LE(r.schedule.stats.total_time, qccd::cyclone_bound(code, cfg));
  EXPECT_GT(qccd::cyclone_bound_literal(code, cfg), 0.0);
}

TEST(Cyclone, IonSwapPolicyCompiles) {
  const auto code = qccd::code_preset("hgp58");
  auto cfg = config(4, qccd::cyclone_min_capacity(code, 4));
  cfg.swap = qccd::SwapPolicy::IonSwap;
  const auto r = qccd::cyclone_compile(code, cfg);
  const auto n_ion = std::count_if(r.schedule.events.begin(), r.schedule.events.end(),
                                   [](const auto& e) { return e.kind == qccd::EventKind::IonSwap; });
  EXPECT_GT(n_ion, 0);
  EXPECT_TRUE(qccd::replay(r.schedule, r.topology).ok());
}

TEST(Cyclone, SweepSortsAndRecordsErrors) {
  const auto code = qccd::code_preset("hgp58");
  const auto rows = qccd::sweep_traps(code, {8, 1, 4}, false, 3, qccd::CycloneConfig{}, 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].x, 1u);
  EXPECT_FALSE(rows[0].error.empty());  // 58 + 29 ions do not fit in one trap of 3
  EXPECT_EQ(rows[2].x, 8u);
  const auto tight = qccd::sweep_traps(code, {1, 2}, true, 0, qccd::CycloneConfig{}, 1);
  EXPECT_EQ(tight[0].capacity, qccd::tight_capacity(code.n(), code.m(), 1));
  EXPECT_TRUE(tight[0].error.empty());
  EXPECT_EQ(qccd::trap_sweep_csv_header(), "x,capacity,total_us,bound_us,spacetime");
}
