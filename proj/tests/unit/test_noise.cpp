#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qccd/noise.hpp"

TEST(Noise, CoherenceAnchors) {
  EXPECT_DOUBLE_EQ(qccd::coherence_from_p(1e-4), 100.0);
  EXPECT_DOUBLE_EQ(qccd::coherence_from_p(1e-3), 10.0);
  EXPECT_NEAR(qccd::coherence_from_p(std::pow(10.0, -3.5)), 31.6227766, 1e-6);
  EXPECT_NEAR(qccd::coherence_from_p(1e-4, qccd::CoherenceFit::LogLinear), 100.0, 1e-12);
  EXPECT_NEAR(qccd::coherence_from_p(1e-3, qccd::CoherenceFit::LogLinear), 10.0, 1e-12);
  EXPECT_THROW(qccd::coherence_from_p(0.0), std::invalid_argument);
  EXPECT_THROW(qccd::coherence_from_p(1.0), std::invalid_argument);
}

TEST(Noise, TwirlLimits) {
  const auto zero = qccd::twirl_depolarize({1e-3, 10.0, 10.0, 0.0});
  EXPECT_EQ(zero.p_twirl, 0.0);
  EXPECT_EQ(zero.p_total, 1e-3);
  const auto inf = qccd::twirl_depolarize({0.0, 1.0, 1.0, 1e6});
  EXPECT_DOUBLE_EQ(inf.px, 0.25);
  EXPECT_DOUBLE_EQ(inf.py, 0.25);
  EXPECT_DOUBLE_EQ(inf.pz, 0.25);
}

TEST(Noise, WorkedExample) {
  const auto r = qccd::twirl_depolarize({0.0, 10.0, 10.0, 0.1});
  const double expect = (1.0 - std::exp(-0.01)) / 4.0;
  EXPECT_NEAR(r.px, expect, 1e-15);
  EXPECT_NEAR(r.pz, expect, 1e-15);
  EXPECT_NEAR(r.px, 2.48754e-3, 1e-8);
}

TEST(Noise, LinearizationWithinOnePercent) {
  for (double t2 : {5.0, 10.0, 20.0}) {
    const double t1 = 10.0;
    const double t = std::min(t1, t2) / 100.0;
    const auto r = qccd::twirl_depolarize({0.0, t1, t2, t});
    EXPECT_NEAR(r.p_twirl / qccd::twirl_linearized(t, t1, t2), 1.0, 0.01);
  }
}

TEST(Noise, MonotoneInTime) {
  double px = 0, pz = 0;
  for (double t = 0.0; t < 50.0; t += 0.5) {
    const auto r = qccd::twirl_depolarize({0.0, 10.0, 15.0, t});
    EXPECT_GE(r.px, px);
    EXPECT_GE(r.pz, pz);
    EXPECT_EQ(r.px, r.py);
    px = r.px;
    pz = r.pz;
  }
}

TEST(Noise, ValidationAndClamp) {
  EXPECT_THROW(qccd::twirl_depolarize({0.0, 1.0, 3.0, 0.1}), std::invalid_argument);
  EXPECT_THROW(qccd::twirl_depolarize({1.5, 1.0, 1.0, 0.1}), std::invalid_argument);
  const auto r = qccd::twirl_depolarize({0.9, 1.0, 1.0, 100.0});
  EXPECT_TRUE(r.clamped);
  EXPECT_EQ(r.p_total, 1.0);
}

TEST(Noise, ExportRecord) {
  qccd::ExecStats empty;
  EXPECT_THROW(qccd::export_noise_model("c", "grid", "ejf", empty, 1e-3), std::runtime_error);
  qccd::ExecStats s;
  s.event_count = 10;
  s.total_time = 100000.0;
  const auto j = qccd::export_noise_model("c", "grid", "ejf", s, 1e-3);
  EXPECT_DOUBLE_EQ(j.at("t_exec").get<double>(), 0.1);
  EXPECT_DOUBLE_EQ(j.at("T1").get<double>(), 10.0);
  for (const char* key : {"code", "layout", "mode", "p_base", "T2", "px", "py", "pz", "p_total"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(qccd::noise_file_name("hgp:a/b.pcm", "grid", "ejf", 0.001), "noise_hgp-a-b.pcm_grid_ejf_0.001.json");
}
