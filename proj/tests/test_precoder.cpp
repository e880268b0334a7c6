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
#include <limits>
#include <random>

#include "eessrfi/precoder.hpp"
#include "eessrfi/units.hpp"
#include "oracles.hpp"

using namespace eessrfi;
using namespace eessrfi::precoder;

namespace {

const RfiBudget kNoBudget{0.0, 0.0, 0.0, std::numeric_limits<double>::infinity()};

Eigen::MatrixXcd random_channel(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> q(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd h(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) h(i, j) = {q(rng), q(rng)};
  return h;
}

Eigen::MatrixXcd normalised(const Eigen::MatrixXcd& h, const std::vector<double>& g, double noise) {
  Eigen::MatrixXcd a = h;
  for (Eigen::Index k = 0; k < h.cols(); ++k) a.col(k) *= std::sqrt(g[k] / noise);
  return a;
}

}  // namespace

TEST_CASE("rate to SINR mapping") {
  CHECK(sinr_target(500e6, 250e6) == doctest::Approx(3.0));
  CHECK(linear_to_db(sinr_target(500e6, 250e6)) == doctest::Approx(4.771).epsilon(1e-3));
  CHECK(sinr_target(100e6, 250e6) == doctest::Approx(0.31951).epsilon(1e-4));
  CHECK(sinr_target(0.0, 250e6) == 0.0);
  CHECK_THROWS_AS(sinr_target(-1.0, 250e6), InvalidArgument);
  CHECK_THROWS_AS(sinr_target(1.0, 0.0), InvalidArgument);
}

TEST_CASE("single user is matched filtering with the closed-form power") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    const auto h = random_channel(rng, n, 1);
    const std::vector<double> g{std::exp(std::uniform_real_distribution<double>(-3, 3)(rng))};
    const double noise = 1e-3, gamma = 0.2 + trial * 0.3;
    const auto sol = solve_power_min(h, g, SinrTargets::uniform(1, gamma), noise, kNoBudget);
    REQUIRE(sol.status == SolveStatus::Optimal);
    const double closed = gamma * noise / (g[0] * h.col(0).squaredNorm());
    CHECK(std::abs(sol.p_tx_w / closed - 1.0) < 1e-10);
    // Beam is colinear with the channel.
    const double cosang = std::abs(h.col(0).dot(sol.w.col(0))) / (h.col(0).norm() * sol.w.col(0).norm());
    CHECK(cosang == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("zero targets give zero beams") {
  std::mt19937_64 rng(1);
  const auto h = random_channel(rng, 4, 3);
  const std::vector<double> g{1.0, 1.0, 1.0};
  const auto sol = solve_power_min(h, g, SinrTargets::uniform(3, 0.0), 1.0, kNoBudget);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.p_tx_w == 0.0);
  CHECK(sol.w.squaredNorm() == 0.0);

  // A zero-target user gets no beam while the others are served.
  SinrTargets t{{1.0, 0.0, 2.0}};
  const auto mixed = solve_power_min(h, g, t, 1.0, kNoBudget);
  REQUIRE(mixed.status == SolveStatus::Optimal);
  CHECK(mixed.w.col(1).squaredNorm() == 0.0);
  CHECK(mixed.sinr[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mixed.sinr[2] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("random instances match the bisection oracle and every constraint is tight") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nk(1, 6);
  std::uniform_real_distribution<double> lg(-1.0, 1.5), lgam(-1.0, 0.7);
  for (int inst = 0; inst < 100; ++inst) {
    const int n = nk(rng);
    const int k = std::min(n, 1 + inst % 3);
    const auto h = random_channel(rng, n, k);
    std::vector<double> g(k), gamma(k);
    for (int j = 0; j < k; ++j) {
      g[j] = std::pow(10.0, lg(rng));
      gamma[j] = std::pow(10.0, lgam(rng));
    }
    const double noise = 0.5;
    const auto sol = solve_power_min(h, g, SinrTargets{gamma}, noise, kNoBudget);
    CAPTURE(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    const double ref = oracle::min_power_bisection(normalised(h, g, noise), gamma);
    CHECK(std::abs(sol.p_tx_w / ref - 1.0) < 1e-4);
    for (int j = 0; j < k; ++j) CHECK(std::abs(sol.sinr[j] / gamma[j] - 1.0) < 1e-6);
    CHECK(sol.duality_gap < 1e-6);
  }
}

TEST_CASE("full-size instance is tight and dual-consistent") {
  std::mt19937_64 rng(5);
  const auto h = random_channel(rng, 256, 8);
  std::vector<double> g(8);
  for (auto& x : g) x = db_to_linear(std::uniform_real_distribution<double>(-110, -70)(rng));
  const double noise = 1.001e-12;
  const auto sol = solve_power_min(h, g, SinrTargets::from_rate(8, 500e6, 250e6), noise, kNoBudget);
  REQUIRE(sol.status == SolveStatus::Optimal);
  for (double s : sol.sinr) CHECK(std::abs(s / 3.0 - 1.0) < 1e-6);
  CHECK(sol.duality_gap < 1e-8);
}

TEST_CASE("budget handling") {
  std::mt19937_64 rng(8);
  const auto h = random_channel(rng, 4, 2);
  const std::vector<double> g{1.0, 1.0};
  const auto free = solve_power_min(h, g, SinrTargets::uniform(2, 1.0), 1.0, kNoBudget);
  REQUIRE(free.feasible);
  RfiBudget tight{0.0, 0.0, 0.0, free.p_tx_w * 0.5};
  auto sol = solve_power_min(h, g, SinrTargets::uniform(2, 1.0), 1.0, tight);
  CHECK(sol.status == SolveStatus::BudgetExceeded);
  CHECK_FALSE(sol.feasible);
  CHECK(sol.p_tx_w == doctest::Approx(free.p_tx_w));
  RfiBudget loose{0.0, 0.0, 0.0, free.p_tx_w * 2.0};
  CHECK(solve_power_min(h, g, SinrTargets::uniform(2, 1.0), 1.0, loose).feasible);
}

TEST_CASE("unreachable targets are reported as infeasible") {
  // Two users on the same channel direction: feasible iff sum gamma/(1+gamma) < 1.
  Eigen::MatrixXcd h(2, 2);
  h << std::complex<double>(1, 0.5), std::complex<double>(1, 0.5), std::complex<double>(-0.3, 1),
      std::complex<double>(-0.3, 1);
  const std::vector<double> g{1.0, 1.0};
  const auto bad = solve_power_min(h, g, SinrTargets::uniform(2, 2.0), 1.0, kNoBudget);
  CHECK(bad.status == SolveStatus::TargetsInfeasible);
  CHECK_FALSE(bad.feasible);
  const auto ok = solve_power_min(h, g, SinrTargets::uniform(2, 0.5), 1.0, kNoBudget);
  CHECK(ok.status == SolveStatus::Optimal);
}

TEST_CASE("input validation") {
  std::mt19937_64 rng(1);
  const auto h = random_channel(rng, 2, 3);
  const std::vector<double> g{1, 1, 1};
  CHECK_THROWS_AS(solve_power_min(h, g, SinrTargets::uniform(3, 1.0), 1.0, kNoBudget), InvalidArgument);
  const auto h2 = random_channel(rng, 4, 2);
  CHECK_THROWS_AS(solve_power_min(h2, g, SinrTargets::uniform(2, 1.0), 1.0, kNoBudget), InvalidArgument);
  CHECK_THROWS_AS(solve_power_min(h2, std::vector<double>{1, 1}, SinrTargets::uniform(2, 1.0), 0.0, kNoBudget),
                  InvalidArgument);
}

TEST_CASE("RFI budget") {
  RfiBudget b{db_to_linear(-166.0), db_to_linear(-133.79), 1e-4, db_to_linear(-5.0)};
  CHECK(linear_to_db(b.p_sat_max_w()) == doctest::Approx(-166.0 + 133.79 + 40.0));
  CHECK(b.p_sum_max_w() == doctest::Approx(db_to_linear(-5.0)));
  CHECK_FALSE(b.rfi_limited());
  b.delta = 1.0;
  CHECK(b.rfi_limited());
  CHECK(b.p_sum_max_w() == doctest::Approx(b.p_sat_max_w()));
  b.delta = 0.0;
  CHECK(std::isinf(b.p_sat_max_w()));
}

TEST_CASE("per-BS RFI") {
  CHECK(per_bs_rfi(1.0, 0.0, 1.0) == 0.0);
  const double rfi = per_bs_rfi(db_to_linear(-5.0), 1e-4, std::pow(10.0, -13.379));
  CHECK(linear_to_db(rfi) == doctest::Approx(-178.79).epsilon(1e-4));
  CHECK(per_bs_rfi(2.0, 1e-3, 1e-14) == doctest::Approx(2.0 * per_bs_rfi(1.0, 1e-3, 1e-14)));
}

TEST_CASE("consumed power model") {
  CHECK(total_consumed_power(2.0, PowerModel{}, 250e6, 7, 0.0) == 2.0);
  PowerModel pm{0.1, 0.0, 0.05, 0.0};
  CHECK(total_consumed_power(1.0, pm, 250e6, 7, 1e-4) == doctest::Approx(1.1501));
  PowerModel steps{0.0, 0.0, 0.0, 0.01};
  CHECK(total_consumed_power(1.0, steps, 250e6, 9, 0.0) > total_consumed_power(1.0, steps, 250e6, 7, 0.0));
  CHECK_THROWS_AS(total_consumed_power(1.0, PowerModel{-1, 0, 0, 0}, 1.0, 1, 0.0), InvalidArgument);
}
