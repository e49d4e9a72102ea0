#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "femtoho/propagation.hpp"

namespace femtoho {
namespace {

using propagation::path_loss_femto;
using propagation::path_loss_macro;

TEST(PathLossMacro, ReferencePoints) {
  EXPECT_NEAR(path_loss_macro(1000.0), 128.1, 1e-9);
  EXPECT_NEAR(path_loss_macro(100.0), 128.1 - 37.6, 1e-9);  // 90.5
  EXPECT_DOUBLE_EQ(path_loss_macro(10.0), path_loss_macro(5.0));
  EXPECT_DOUBLE_EQ(path_loss_macro(0.0), path_loss_macro(10.0));
}

TEST(PathLossFemto, ReferencePoints) {
  EXPECT_NEAR(path_loss_femto(1.0, 0), 38.46, 1e-9);
  EXPECT_NEAR(path_loss_femto(10.0, 0), 58.46, 1e-9);
  EXPECT_NEAR(path_loss_femto(10.0, 2), 78.46, 1e-9);
  EXPECT_DOUBLE_EQ(path_loss_femto(0.0, 0), path_loss_femto(0.1, 0));
}

TEST(PathLoss, SquaredDistanceFormsAgree) {
  const PropagationParams p;
  for (double d : {0.0, 0.05, 0.1, 1.0, 3.7, 10.0, 55.5, 100.0, 999.0, 2500.0}) {
    EXPECT_NEAR(propagation::macro_path_loss_sq(d * d, false, p), path_loss_macro(d, p), 1e-9) << d;
    EXPECT_NEAR(propagation::macro_path_loss_sq(d * d, true, p), path_loss_macro(d, p) + 20.0, 1e-9);
    EXPECT_NEAR(propagation::femto_path_loss_sq(d * d, 3, p), path_loss_femto(d, 3, p), 1e-9) << d;
  }
}

TEST(NoiseFloor, Values) {
  EXPECT_NEAR(propagation::noise_floor_dbm(20e6, 9.0), -91.99, 0.01);
  EXPECT_DOUBLE_EQ(propagation::noise_floor_dbm(1.0, 0.0), -174.0);
  EXPECT_NEAR(propagation::noise_floor_dbm(40e6, 9.0) - propagation::noise_floor_dbm(20e6, 9.0),
              3.0103, 1e-4);
  EXPECT_NEAR(PropagationParams{}.noise_floor_dbm, propagation::noise_floor_dbm(20e6, 9.0), 1e-12);
}

SimConfig quiet_config() {
  SimConfig c;
  c.shadowing_macro_sigma_db = 0.0;
  c.shadowing_femto_sigma_db = 0.0;
  c.mue_count = 0;
  c.csg_users_per_fap = 0;
  return c;
}

TEST(Rsrp, MacroOutdoorsAt100m) {
  const SimConfig c = quiet_config();
  const Scenario s = build_scenario(c);
  const auto p = PropagationParams::from(c);
  EXPECT_NEAR(propagation::rsrp_dbm(s, s.macro(), {0.0, 100.0}, 0.0, p), -47.5, 1e-9);
}

TEST(Rsrp, FemtoAt1m) {
  const SimConfig c = quiet_config();
  const Scenario s = build_scenario(c);
  const auto p = PropagationParams::from(c);
  const Cell& fap = s.cells[13];
  const Point ue{fap.position.x + 1.0, fap.position.y};
  EXPECT_NEAR(propagation::rsrp_dbm(s, fap, ue, 0.0, p), -18.46, 1e-9);
}

TEST(Rsrp, TxShiftIsLinear) {
  SimConfig c = quiet_config();
  const Scenario a = build_scenario(c);
  c.macro_tx_dbm += 7.25;
  c.fap_tx_dbm += 7.25;
  const Scenario b = build_scenario(c);
  const auto p = PropagationParams::from(c);
  const Point ue{130.0, 4.0};
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_NEAR(propagation::rsrp_dbm(b, b.cells[i], ue, 1.5, p) -
                    propagation::rsrp_dbm(a, a.cells[i], ue, 1.5, p),
                7.25, 1e-9);
  }
}

TEST(Rsrp, IndoorMacroLinkPaysPenetration) {
  const SimConfig c = quiet_config();
  const Scenario s = build_scenario(c);
  const auto p = PropagationParams::from(c);
  const Point inside{s.building.bounds.min.x + 1.0, 0.5};
  const double expected = path_loss_macro(std::hypot(inside.x, inside.y), p) + 20.0;
  EXPECT_NEAR(propagation::link_path_loss_db(s, s.macro(), inside, p), expected, 1e-9);
}

TEST(Sinr, NoInterferers) {
  const std::vector<double> rsrp = {-81.99};
  EXPECT_NEAR(propagation::sinr_db(rsrp, 0, -91.99), 10.0, 1e-9);
}

TEST(Sinr, EqualInterfererNoNoise) {
  const std::vector<double> rsrp = {-70.0, -70.0};
  EXPECT_NEAR(propagation::sinr_db(rsrp, 0, -300.0), 0.0, 1e-9);
}

TEST(Sinr, MonotoneInInterference) {
  double prev = 1e9;
  for (double i = -120.0; i <= -40.0; i += 5.0) {
    const std::vector<double> rsrp = {-60.0, i, -95.0};
    const double s = propagation::sinr_db(rsrp, 0, -91.99);
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(Sinr, ShiftInvariantWithoutNoise) {
  const std::vector<double> a = {-61.0, -75.5, -80.25, -90.0};
  std::vector<double> b = a;
  for (double& v : b) v += 13.0;
  EXPECT_NEAR(propagation::sinr_db(a, 1, -300.0), propagation::sinr_db(b, 1, -300.0), 1e-9);
}

TEST(Units, MilliwattRoundTrip) {
  for (double dbm : {-174.0, -91.99, -47.5, 0.0, 20.0, 46.0}) {
    EXPECT_NEAR(mw_to_dbm(dbm_to_mw(dbm)), dbm, 1e-9);
  }
  EXPECT_NEAR(dbm_to_mw(30.0), 1000.0, 1e-9);
}

TEST(Shadowing, ZeroSigmaGivesZero) {
  PropagationParams p;
  p.shadowing_macro_sigma_db = 0.0;
  p.shadowing_femto_sigma_db = 0.0;
  RandomStream rng(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(propagation::shadowing_db(i % 2 ? CellKind::Macro : CellKind::Femto, p, rng), 0.0);
  }
}

TEST(Shadowing, SameSeedSameTable) {
  const Scenario s = build_scenario(SimConfig{});
  const auto p = PropagationParams::from(s.config);
  const ShadowingTable a(s, p);
  const ShadowingTable b(s, p);
  for (const Ue& u : s.ues) {
    for (const Cell& c : s.cells) ASSERT_EQ(a.at(u.id, c.id), b.at(u.id, c.id));
  }
}

TEST(Shadowing, SampleMeanNearZero) {
  SimConfig c;
  c.csg_users_per_fap = 15;
  c.mue_count = 0;
  const Scenario s = build_scenario(c);  // 375 UEs x 26 cells = 9750 links
  const auto p = PropagationParams::from(c);
  const ShadowingTable t(s, p);
  double sum = 0.0;
  double sum_macro_sq = 0.0;
  int n = 0;
  for (const Ue& u : s.ues) {
    for (const Cell& cell : s.cells) {
      sum += t.at(u.id, cell.id);
      if (cell.kind == CellKind::Macro) sum_macro_sq += t.at(u.id, cell.id) * t.at(u.id, cell.id);
      ++n;
    }
  }
  ASSERT_GE(n, 9750);
  EXPECT_NEAR(sum / n, 0.0, 0.3);
  EXPECT_NEAR(std::sqrt(sum_macro_sq / static_cast<double>(s.ues.size())), 8.0, 1.0);
}

TEST(MeasureLinks, RsrpIsTxMinusLossMinusShadowing) {
  const Scenario s = build_scenario(SimConfig{});
  const auto p = PropagationParams::from(s.config);
  const ShadowingTable t(s, p);
  std::vector<LinkSample> out(s.cells.size());
  const Ue& ue = s.ues[40];
  propagation::measure_links(s, ue.position, t.row(ue.id), p, out);
  std::vector<double> rsrp;
  for (const Cell& c : s.cells) {
    const LinkSample& l = out[static_cast<std::size_t>(c.id)];
    EXPECT_GT(l.path_loss_db, 0.0);
    EXPECT_NEAR(l.rsrp_dbm, c.tx_power_dbm - l.path_loss_db - t.at(ue.id, c.id), 1e-9);
    rsrp.push_back(l.rsrp_dbm);
  }
  for (std::size_t i = 0; i < rsrp.size(); ++i) {
    EXPECT_NEAR(out[i].sinr_db, propagation::sinr_db(rsrp, i, p.noise_floor_dbm), 1e-6);
  }
}

}  // namespace
}  // namespace femtoho
