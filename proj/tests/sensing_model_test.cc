// Copyright 2026 The fidshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fidshare/sensing_model.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "fidshare/rng.h"
#include "gtest/gtest.h"

namespace fidshare {
namespace {

SensingConfig FixedRate(double rate) {
  SensingConfig cfg;
  cfg.rate_min = rate;
  cfg.rate_max = rate;
  return cfg;
}

TEST(ScheduleUpdatesTest, FixedRateTwoOverFiveSeconds) {
  Rng rng(1);
  const std::vector<ScheduledUpdate> s = ScheduleUpdates(5.0, FixedRate(2.0), rng);
  ASSERT_EQ(s.size(), 10u);
  for (size_t k = 0; k < s.size(); ++k) {
    EXPECT_NEAR(s[k].t, 0.5 * k, 1e-12);
    EXPECT_EQ(s[k].epoch, 0);
    EXPECT_EQ(s[k].rate, 2.0);
  }
}

TEST(ScheduleUpdatesTest, ExpectedCountOverTenSeconds) {
  const SensingConfig cfg;
  double total = 0.0;
  constexpr int kSeeds = 10000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    Rng rng = MakeRng(seed, {42});
    total += ScheduleUpdates(10.0, cfg, rng).size();
  }
  EXPECT_NEAR(total / kSeeds, 30.0, 1.5);
}

TEST(ScheduleUpdatesTest, BoundaryAndOrdering) {
  const SensingConfig cfg;
  for (int seed = 0; seed < 200; ++seed) {
    Rng rng = MakeRng(seed, {7});
    const std::vector<ScheduledUpdate> s = ScheduleUpdates(12.0, cfg, rng);
    ASSERT_FALSE(s.empty());
    EXPECT_EQ(s.front().t, 0.0);
    EXPECT_LT(s.back().t, 12.0);
    for (size_t k = 1; k < s.size(); ++k) {
      EXPECT_GT(s[k].t, s[k - 1].t);
      // Spacing is set by the epoch of the earlier sample.
      EXPECT_NEAR(s[k].t - s[k - 1].t, 1.0 / s[k - 1].rate, 1e-9);
      EXPECT_EQ(s[k].epoch, static_cast<int>(std::floor(s[k].t / 5.0 + 1e-9)));
      EXPECT_GE(s[k].rate, 2.0);
      EXPECT_LE(s[k].rate, 4.0);
    }
  }
}

TEST(ScheduleUpdatesTest, LongRunMeanRateNearThree) {
  const SensingConfig cfg;
  Rng rng(99);
  const double duration = 5.0 * 2000;  // 2000 epochs
  const std::vector<ScheduledUpdate> s = ScheduleUpdates(duration, cfg, rng);
  const double rate = s.size() / duration;
  EXPECT_GE(rate, 2.9);
  EXPECT_LE(rate, 3.1);
}

TEST(DrawLosStateTest, DegenerateAndNominal) {
  SensingConfig cfg;
  Rng rng(5);
  cfg.p_los = 1.0;
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(DrawLosState(cfg, rng));
  cfg.p_los = 0.0;
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(DrawLosState(cfg, rng));
  cfg.p_los = 0.7;
  int hits = 0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) hits += DrawLosState(cfg, rng);
  // 5 standard deviations of a binomial proportion.
  EXPECT_NEAR(hits / double(kN), 0.7, 5 * std::sqrt(0.21 / kN));
}

TEST(DrawRicianPowerTest, UnitMean) {
  Rng rng(6);
  for (double k : {0.1, 3.0}) {
    double sum = 0.0;
    constexpr int kN = 200000;
    for (int i = 0; i < kN; ++i) {
      const double p = DrawRicianPower(k, 4, rng);
      ASSERT_GE(p, 0.0);
      sum += p;
    }
    EXPECT_NEAR(sum / kN, 1.0, 0.01) << "K=" << k;
  }
}

double MeanBeta(const Vec2& target, bool los, const SensingConfig& cfg,
                uint64_t seed, int n) {
  Rng rng(seed);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += DrawChannel(target, los, cfg, rng)->gain_beta;
  return sum / n;
}

TEST(DrawChannelTest, DoublingDistanceDividesGainByTwoToFivePointFour) {
  const SensingConfig cfg;
  const Vec2 bs = cfg.bs_position;
  const double near = MeanBeta(bs + Vec2{10, 0}, true, cfg, 1, 100000);
  const double far = MeanBeta(bs + Vec2{20, 0}, true, cfg, 2, 100000);
  EXPECT_NEAR((near / far) / std::pow(2.0, 5.4), 1.0, 0.03);
}

TEST(DrawChannelTest, NlosIsTenDecibelsDown) {
  const SensingConfig cfg;
  const Vec2 target = cfg.bs_position + Vec2{15, 5};
  const double los = MeanBeta(target, true, cfg, 3, 100000);
  const double nlos = MeanBeta(target, false, cfg, 4, 100000);
  EXPECT_NEAR(10.0 * std::log10(los / nlos), cfg.nlos_extra_loss_db, 0.5);
}

TEST(DrawChannelTest, StateFieldsAreConsistent) {
  const SensingConfig cfg;
  Rng rng(8);
  for (bool los : {true, false}) {
    absl::StatusOr<ChannelState> ch =
        DrawChannel(cfg.bs_position + Vec2{3, 4}, los, cfg, rng);
    ASSERT_TRUE(ch.ok());
    EXPECT_EQ(ch->is_los, los);
    EXPECT_EQ(ch->rician_k, los ? cfg.rician_k_los : cfg.rician_k_nlos);
    EXPECT_GT(ch->gain_beta, 0.0);
    EXPECT_NEAR(ch->snr_eff_db, 10.0 * std::log10(FisherInfo(*ch, cfg)), 1e-9);
  }
}

TEST(DrawChannelTest, TargetOnBaseStationIsAnError) {
  const SensingConfig cfg;
  Rng rng(1);
  EXPECT_FALSE(DrawChannel(cfg.bs_position, true, cfg, rng).ok());
}

TEST(MeanChannelGainTest, DecreasesWithDistance) {
  const SensingConfig cfg;
  double prev = MeanChannelGain(0.5, true, cfg);
  for (double d = 1.0; d < 100.0; d *= 1.3) {
    const double g = MeanChannelGain(d, true, cfg);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(FisherInfoTest, DirectSubstitution) {
  SensingConfig cfg;
  cfg.symbols_per_update = 1;
  cfg.n_tx_antennas = 4;
  cfg.ptx_dbm = 30.0;  // 1 W, so G_bf = 4
  ChannelState ch;
  ch.gain_beta = 1.0;
  EXPECT_DOUBLE_EQ(BeamformingGain(cfg), 4.0);
  EXPECT_DOUBLE_EQ(FisherInfo(ch, cfg), 4.0);
  EXPECT_DOUBLE_EQ(1.0 / FisherInfo(ch, cfg), 0.25);
}

TEST(FisherInfoTest, LinearInSymbolsAndPower) {
  SensingConfig cfg;
  ChannelState ch;
  ch.gain_beta = 0.37;
  const double base = FisherInfo(ch, cfg);
  SensingConfig more_symbols = cfg;
  more_symbols.symbols_per_update *= 2;
  EXPECT_DOUBLE_EQ(FisherInfo(ch, more_symbols), 2.0 * base);
  SensingConfig more_power = cfg;
  more_power.ptx_dbm += 10.0 * std::log10(2.0);
  EXPECT_NEAR(FisherInfo(ch, more_power) / base, 2.0, 1e-12);
}

TEST(DbmToWattsTest, ReferencePoints) {
  EXPECT_DOUBLE_EQ(DbmToWatts(30.0), 1.0);
  EXPECT_DOUBLE_EQ(DbmToWatts(0.0), 1e-3);
  EXPECT_NEAR(DbmToWatts(50.0), 100.0, 1e-12);
}

TEST(PolarPerturbTest, PureRadial) {
  const Vec2 p = PolarPerturb({5, 30}, {5, 40}, 0.1, 0.0);
  EXPECT_NEAR(p.x, 5.0, 1e-12);
  EXPECT_NEAR(p.y, 40.1, 1e-12);
}

TEST(PolarPerturbTest, PureRotationKeepsRange) {
  const Vec2 bs{5, 30};
  const Vec2 p = PolarPerturb(bs, {15, 30}, 0.0, std::numbers::pi / 2);
  EXPECT_NEAR(p.x, 5.0, 1e-12);
  EXPECT_NEAR(p.y, 40.0, 1e-12);
}

TEST(MeasureTest, ZeroCrbIsExact) {
  const SensingConfig cfg;
  Rng rng(2);
  const Vec2 truth{20, 10};
  EXPECT_EQ(Measure(truth, 0.0, cfg, rng), truth);
  const Vec2 tiny = Measure(truth, 1e-20, cfg, rng);
  EXPECT_NEAR(Distance(tiny, truth), 0.0, 1e-9);
}

TEST(MeasureTest, MeanSquaredErrorMatchesCrb) {
  const SensingConfig cfg;
  Rng rng(3);
  const Vec2 truth{25, 12};
  constexpr double kCrb = 0.02;
  constexpr int kN = 100000;
  double sq = 0.0, radial = 0.0;
  const Vec2 u = (truth - cfg.bs_position) * (1.0 / Distance(truth, cfg.bs_position));
  for (int i = 0; i < kN; ++i) {
    const Vec2 d = Measure(truth, kCrb, cfg, rng) - truth;
    sq += Dot(d, d);
    radial += Dot(d, u) * Dot(d, u);
  }
  EXPECT_NEAR(sq / kN / kCrb, 1.0, 0.03);
  // Half of the error budget is radial.
  EXPECT_NEAR(radial / kN / (kCrb / 2), 1.0, 0.03);
}

TEST(PositionCrbTest, ScalesWithRangeSquared) {
  EXPECT_DOUBLE_EQ(PositionCrb(4.0, 10.0), 25.0);
}

Trajectory Straight(double duration) {
  return {"s", {{0.0, 10.0, 10.0}, {duration, 40.0, 50.0}}};
}

TEST(SenseTrajectoryTest, ProducesConsistentUpdates) {
  const SensingConfig cfg;
  Rng rng(4);
  const Trajectory traj = Straight(30.0);
  absl::StatusOr<std::vector<SensingUpdate>> u = SenseTrajectory(traj, cfg, rng);
  ASSERT_TRUE(u.ok()) << u.status();
  ASSERT_GT(u->size(), 50u);
  for (const SensingUpdate& s : *u) {
    EXPECT_GT(s.fisher_info, 0.0);
    EXPECT_NEAR(s.Crb() * s.fisher_info, 1.0, 2e-16);
    EXPECT_EQ(s.true_xy, traj.PositionAt(s.t));
    EXPECT_LT(s.t, 30.0);
  }
  // Epochs share one blockage state.
  for (size_t k = 1; k < u->size(); ++k) {
    if ((*u)[k].epoch == (*u)[k - 1].epoch) {
      EXPECT_EQ((*u)[k].channel.is_los, (*u)[k - 1].channel.is_los);
    }
  }
}

TEST(SenseTrajectoryTest, DeterministicPerSeed) {
  const SensingConfig cfg;
  const Trajectory traj = Straight(20.0);
  Rng a(10), b(10);
  auto ua = SenseTrajectory(traj, cfg, a);
  auto ub = SenseTrajectory(traj, cfg, b);
  ASSERT_TRUE(ua.ok() && ub.ok());
  ASSERT_EQ(ua->size(), ub->size());
  for (size_t k = 0; k < ua->size(); ++k) {
    EXPECT_EQ((*ua)[k].t, (*ub)[k].t);
    EXPECT_EQ((*ua)[k].fisher_info, (*ub)[k].fisher_info);
    EXPECT_EQ((*ua)[k].raw_xy, (*ub)[k].raw_xy);
  }
}

TEST(SenseTrajectoryTest, TimestampsOffsetByStartTime) {
  const SensingConfig cfg;
  Rng rng(11);
  Trajectory traj = {"late", {{100.0, 10, 10}, {115.0, 20, 20}}};
  auto u = SenseTrajectory(traj, cfg, rng);
  ASSERT_TRUE(u.ok());
  EXPECT_EQ(u->front().t, 100.0);
  EXPECT_LT(u->back().t, 115.0);
}

TEST(ValidateSensingConfigTest, RejectsOutOfRange) {
  SensingConfig cfg;
  EXPECT_TRUE(ValidateSensingConfig(cfg).ok());
  cfg.ptx_dbm = 14.0;
  EXPECT_FALSE(ValidateSensingConfig(cfg).ok());
  cfg = {};
  cfg.p_los = 1.2;
  EXPECT_FALSE(ValidateSensingConfig(cfg).ok());
  cfg = {};
  cfg.rate_max = 5.0;
  EXPECT_FALSE(ValidateSensingConfig(cfg).ok());
  cfg = {};
  cfg.rate_min = 3.5;
  cfg.rate_max = 3.0;
  EXPECT_FALSE(ValidateSensingConfig(cfg).ok());
}

}  // namespace
}  // namespace fidshare
