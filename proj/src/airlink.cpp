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

#include "eessrfi/airlink.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "eessrfi/units.hpp"

namespace eessrfi::airlink {

void CellConfig::validate() const {
  require(r_min_m > 0.0 && r_min_m < r_cell_m, "cell radii must satisfy 0 < r_min < r_cell");
  require(n_users >= 1 && n_antennas >= n_users, "need N >= K >= 1");
  require(carrier_ghz > 0.0 && bandwidth_hz > 0.0, "carrier and bandwidth must be positive");
  require(bs_height_m > 1.0 && ut_height_m > 1.0, "antenna heights must exceed the 1 m effective environment height");
  require(noise_temp_k > 0.0, "noise temperature must be positive");
}

double CellConfig::noise_power_w() const { return constants::boltzmann * noise_temp_k * bandwidth_hz; }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial) {
  const std::uint64_t a = splitmix64(master_seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

std::vector<UserPosition> sample_positions(const CellConfig& cfg, Rng& rng) {
  cfg.validate();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UserPosition> out(static_cast<std::size_t>(cfg.n_users));
  for (auto& p : out) {
    const double u = unit(rng);
    if (cfg.sampling == DistanceSampling::UniformDistance) {
      p.d2d_m = cfg.r_min_m + u * (cfg.r_cell_m - cfg.r_min_m);
    } else {
      const double r2 = cfg.r_min_m * cfg.r_min_m + u * (cfg.r_cell_m * cfg.r_cell_m - cfg.r_min_m * cfg.r_min_m);
      p.d2d_m = std::sqrt(r2);
    }
    p.angle_rad = 2.0 * std::numbers::pi * unit(rng);
  }
  return out;
}

double los_probability(double d2d_m) {
  require(d2d_m >= 0.0, "2D distance must be non-negative");
  if (d2d_m <= 18.0) return 1.0;
  return 18.0 / d2d_m + std::exp(-d2d_m / 36.0) * (1.0 - 18.0 / d2d_m);
}

double breakpoint_distance_m(const CellConfig& cfg) {
  constexpr double h_e = 1.0;
  return 4.0 * (cfg.bs_height_m - h_e) * (cfg.ut_height_m - h_e) * cfg.carrier_ghz * 1e9 /
         constants::speed_of_light;
}

double umi_path_loss_db(double d2d_m, bool los, const CellConfig& cfg) {
  const double dh = cfg.bs_height_m - cfg.ut_height_m;
  const double d3d = std::sqrt(d2d_m * d2d_m + dh * dh);
  const double fc = cfg.carrier_ghz;
  const double d_bp = breakpoint_distance_m(cfg);
  double pl_los = 0.0;
  if (d2d_m <= d_bp) {
    pl_los = 32.4 + 21.0 * std::log10(d3d) + 20.0 * std::log10(fc);
  } else {
    pl_los = 32.4 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc) - 9.5 * std::log10(d_bp * d_bp + dh * dh);
  }
  if (los) return pl_los;
  const double pl_nlos = 35.3 * std::log10(d3d) + 22.4 + 21.3 * std::log10(fc) - 0.3 * (cfg.ut_height_m - 1.5);
  return std::max(pl_los, pl_nlos);
}

LargeScale path_loss(double d2d_m, bool los, const CellConfig& cfg, Rng& rng) {
  require(d2d_m >= cfg.r_min_m, "user distance below the exclusion radius");
  LargeScale out;
  out.path_loss_db = umi_path_loss_db(d2d_m, los, cfg);
  if (cfg.shadowing) {
    std::normal_distribution<double> sf(0.0, shadowing_sigma_db(los));
    out.shadowing_db = sf(rng);
  }
  out.gain = db_to_linear(cfg.tx_gain_db - out.path_loss_db - out.shadowing_db);
  return out;
}

std::vector<double> ChannelRealization::gains() const {
  std::vector<double> g;
  g.reserve(users.size());
  for (const auto& u : users) g.push_back(u.gain);
  return g;
}

ChannelRealization generate_channel(const CellConfig& cfg, Rng& rng) {
  cfg.validate();
  ChannelRealization out;
  out.noise_power_w = cfg.noise_power_w();
  const auto positions = sample_positions(cfg, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  out.users.reserve(positions.size());
  for (const auto& p : positions) {
    UserLink link;
    link.d2d_m = p.d2d_m;
    link.angle_rad = p.angle_rad;
    switch (cfg.los_mode) {
      case LosMode::AlwaysLos: link.los = true; break;
      case LosMode::AlwaysNlos: link.los = false; break;
      case LosMode::Random: link.los = unit(rng) < los_probability(p.d2d_m); break;
    }
    const auto ls = path_loss(p.d2d_m, link.los, cfg, rng);
    link.path_loss_db = ls.path_loss_db;
    link.shadowing_db = ls.shadowing_db;
    link.gain = ls.gain;
    out.users.push_back(link);
  }
  // CN(0, 1) entries: each quadrature has variance 1/2.
  std::normal_distribution<double> quad(0.0, std::sqrt(0.5));
  out.h.resize(cfg.n_antennas, cfg.n_users);
  for (int k = 0; k < cfg.n_users; ++k) {
    for (int n = 0; n < cfg.n_antennas; ++n) {
      const double re = quad(rng);
      const double im = quad(rng);
      out.h(n, k) = {re, im};
    }
  }
  return out;
}

void write_trace_header(std::ostream& out) {
  out << "seed,trial,user,d2d_m,angle_rad,los,path_loss_db,shadowing_db,gain_db\n";
}

void write_trace_rows(std::ostream& out, std::uint64_t seed, std::uint64_t trial,
                      const ChannelRealization& r) {
  for (std::size_t k = 0; k < r.users.size(); ++k) {
    const auto& u = r.users[k];
    std::ostringstream s;
    s << seed << ',' << trial << ',' << k << ',' << std::setprecision(12) << u.d2d_m << ',' << u.angle_rad
      << ',' << (u.los ? 1 : 0) << ',' << u.path_loss_db << ',' << u.shadowing_db << ','
      << linear_to_db(u.gain);
    out << s.str() << '\n';
  }
}

}  // namespace eessrfi::airlink
