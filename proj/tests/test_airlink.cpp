// SPDX-License-Identifier: Apache-2.0
//
// eess-rfi: adjacent-band terrestrial RFI modelling for passive EESS sensors
// Copyright (C) 2026 The eess-rfi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "eessrfi/airlink.hpp"
#include "eessrfi/units.hpp"

using namespace eessrfi;
using namespace eessrfi::airlink;

TEST_CASE("distance sampling range and means") {
  CellConfig cfg;
  auto rng = trial_rng(7, 0);
  double sum = 0.0;
  const int n = 100000;
  int drawn = 0;
  while (drawn < n) {
    for (const auto& p : sample_positions(cfg, rng)) {
      CHECK_FALSE((p.d2d_m < 10.0 || p.d2d_m > 150.0));
      CHECK_FALSE((p.angle_rad < 0.0 || p.angle_rad >= 2.0 * M_PI));
      sum += p.d2d_m;
      ++drawn;
    }
  }
  CHECK(sum / drawn == doctest::Approx(80.0).epsilon(1.0 / 80.0));

  cfg.sampling = DistanceSampling::UniformArea;
  sum = 0.0;
  drawn = 0;
  while (drawn < n) {
    for (const auto& p : sample_positions(cfg, rng)) {
      sum += p.d2d_m;
      ++drawn;
    }
  }
  const double area_mean = 2.0 / 3.0 * (std::pow(150.0, 3) - std::pow(10.0, 3)) / (150.0 * 150.0 - 10.0 * 10.0);
  CHECK(sum / drawn == doctest::Approx(area_mean).epsilon(0.01));
}

TEST_CASE("fixed seed gives identical sequences") {
  CellConfig cfg;
  auto a = trial_rng(42, 3);
  auto b = trial_rng(42, 3);
  auto c = trial_rng(42, 4);
  const auto pa = sample_positions(cfg, a);
  const auto pb = sample_positions(cfg, b);
  const auto pc = sample_positions(cfg, c);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].d2d_m == pb[i].d2d_m);
    CHECK(pa[i].angle_rad == pb[i].angle_rad);
  }
  CHECK(pa[0].d2d_m != pc[0].d2d_m);
  CHECK(trial_rng(1, 0)() != trial_rng(2, 0)());
}

TEST_CASE("UMi LOS probability") {
  CHECK(los_probability(10.0) == 1.0);
  CHECK(los_probability(18.0) == 1.0);
  CHECK(los_probability(150.0) == doctest::Approx(0.12 + std::exp(-150.0 / 36.0) * 0.88).epsilon(1e-12));
  CHECK(los_probability(150.0) == doctest::Approx(0.1337).epsilon(1e-3));
  CHECK(los_probability(50.0) == doctest::Approx(0.36 + std::exp(-50.0 / 36.0) * 0.64));
  CHECK_THROWS_AS(los_probability(-1.0), InvalidArgument);
}

TEST_CASE("UMi path loss") {
  CellConfig cfg;
  CHECK(breakpoint_distance_m(cfg) == doctest::Approx(4.0 * 9.0 * 0.5 * 7.275e9 / 299792458.0));
  CHECK(breakpoint_distance_m(cfg) > 150.0);
  // d3D = 150 m
  const double d2d = std::sqrt(150.0 * 150.0 - 8.5 * 8.5);
  const double los = umi_path_loss_db(d2d, true, cfg);
  CHECK(los == doctest::Approx(32.4 + 21.0 * std::log10(150.0) + 20.0 * std::log10(7.275)).epsilon(1e-12));
  CHECK(los == doctest::Approx(95.3).epsilon(0.05 / 95.3));
  for (double d = 10.0; d <= 1000.0; d += 7.0) CHECK(umi_path_loss_db(d, false, cfg) >= umi_path_loss_db(d, true, cfg));
  // Beyond the breakpoint the 40 log10 branch is continuous with the 21 log10 branch.
  const double bp = breakpoint_distance_m(cfg);
  CHECK(umi_path_loss_db(bp * (1 + 1e-9), true, cfg) == doctest::Approx(umi_path_loss_db(bp, true, cfg)).epsilon(1e-4));
  const double nlos100 = 35.3 * std::log10(std::hypot(100.0, 8.5)) + 22.4 + 21.3 * std::log10(7.275);
  CHECK(umi_path_loss_db(100.0, false, cfg) == doctest::Approx(nlos100));
}

TEST_CASE("path_loss shadowing and domain") {
  CellConfig cfg;
  cfg.shadowing = false;
  auto rng = trial_rng(1, 0);
  const auto a = path_loss(80.0, true, cfg, rng);
  const auto b = path_loss(80.0, true, cfg, rng);
  CHECK(a.path_loss_db == b.path_loss_db);
  CHECK(a.gain == b.gain);
  CHECK(a.shadowing_db == 0.0);
  CHECK(a.gain == doctest::Approx(db_to_linear(15.0 - a.path_loss_db)));
  CHECK_THROWS_AS(path_loss(5.0, true, cfg, rng), InvalidArgument);

  cfg.shadowing = true;
  for (bool los : {true, false}) {
    double s1 = 0.0, s2 = 0.0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
      const double s = path_loss(80.0, los, cfg, rng).shadowing_db;
      s1 += s;
      s2 += s * s;
    }
    const double mean = s1 / n;
    const double sd = std::sqrt(s2 / n - mean * mean);
    CHECK(std::abs(mean) < 0.1);
    CHECK(sd == doctest::Approx(shadowing_sigma_db(los)).epsilon(0.02));
  }
}

TEST_CASE("noise power") {
  CellConfig cfg;
  CHECK(cfg.noise_power_w() == doctest::Approx(1.001e-12).epsilon(1e-3));
  CHECK(linear_to_db(cfg.noise_power_w()) == doctest::Approx(-120.0).epsilon(0.01 / 120.0));
}

TEST_CASE("Rayleigh fading has unit-variance entries") {
  CellConfig cfg;
  double acc = 0.0;
  int count = 0;
  for (int t = 0; t < 10000 / cfg.n_users; ++t) {
    auto rng = trial_rng(9, t);
    const auto ch = generate_channel(cfg, rng);
    REQUIRE(ch.h.rows() == 256);
    REQUIRE(ch.h.cols() == 8);
    for (int k = 0; k < cfg.n_users; ++k) {
      acc += ch.h.col(k).squaredNorm();
      ++count;
    }
  }
  CHECK(acc / count == doctest::Approx(256.0).epsilon(0.02));
}

TEST_CASE("empirical LOS fraction matches the analytic mean") {
  CellConfig cfg;
  cfg.n_antennas = 8;
  int los = 0, total = 0;
  for (int t = 0; total < 100000; ++t) {
    auto rng = trial_rng(11, t);
    for (const auto& u : generate_channel(cfg, rng).users) {
      los += u.los ? 1 : 0;
      ++total;
    }
  }
  // Mean of los_probability over d ~ U[10, 150] by the midpoint rule.
  double analytic = 0.0;
  const int m = 140000;
  for (int i = 0; i < m; ++i) analytic += los_probability(10.0 + (i + 0.5) * 140.0 / m);
  analytic /= m;
  CHECK(static_cast<double>(los) / total == doctest::Approx(analytic).epsilon(0.01));
}

TEST_CASE("same seed gives a bit-identical realization") {
  CellConfig cfg;
  auto r1 = trial_rng(5, 17);
  auto r2 = trial_rng(5, 17);
  const auto a = generate_channel(cfg, r1);
  const auto b = generate_channel(cfg, r2);
  CHECK(a.h == b.h);
  for (std::size_t k = 0; k < a.users.size(); ++k) {
    CHECK(a.users[k].gain == b.users[k].gain);
    CHECK(a.users[k].los == b.users[k].los);
  }
  cfg.los_mode = LosMode::AlwaysNlos;
  auto r3 = trial_rng(5, 17);
  for (const auto& u : generate_channel(cfg, r3).users) CHECK_FALSE(u.los);
}

TEST_CASE("channel trace output") {
  CellConfig cfg;
  cfg.n_users = 2;
  cfg.n_antennas = 2;
  auto rng = trial_rng(1, 0);
  const auto ch = generate_channel(cfg, rng);
  std::ostringstream out;
  write_trace_header(out);
  write_trace_rows(out, 1, 0, ch);
  const std::string s = out.str();
  CHECK(s.rfind("seed,trial,user,d2d_m,angle_rad,los,path_loss_db,shadowing_db,gain_db\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}

TEST_CASE("cell validation") {
  CellConfig cfg;
  cfg.n_users = 300;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = CellConfig{};
  cfg.r_min_m = 200.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
