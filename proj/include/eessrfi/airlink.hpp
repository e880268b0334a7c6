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

#pragma once

// Monte Carlo downlink MU-MISO channel: 3GPP TR 38.901 UMi-Street Canyon
// large-scale model with i.i.d. Rayleigh small-scale fading.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace eessrfi::airlink {

using Rng = std::mt19937_64;

enum class DistanceSampling { UniformDistance, UniformArea };
enum class LosMode { Random, AlwaysLos, AlwaysNlos };

struct CellConfig {
  int n_antennas = 256;
  int n_users = 8;
  double r_min_m = 10.0;
  double r_cell_m = 150.0;
  double carrier_ghz = 7.275;
  double bandwidth_hz = 250e6;
  double bs_height_m = 10.0;
  double ut_height_m = 1.5;
  double tx_gain_db = 15.0;
  double noise_temp_k = 290.0;
  bool shadowing = true;
  DistanceSampling sampling = DistanceSampling::UniformDistance;
  LosMode los_mode = LosMode::Random;

  void validate() const;
  double noise_power_w() const;  // k_B * T * B
};

/// Independent generator for one trial, derived from (master seed, trial index).
Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial);

struct UserPosition {
  double d2d_m = 0.0;
  double angle_rad = 0.0;
};

std::vector<UserPosition> sample_positions(const CellConfig& cfg, Rng& rng);

// UMi-Street Canyon LOS probability.
double los_probability(double d2d_m);

// Effective-height breakpoint distance d'_BP in metres (h_E = 1 m).
double breakpoint_distance_m(const CellConfig& cfg);

// Median path loss in dB. NLOS is max(PL_LOS, PL'_NLOS).
double umi_path_loss_db(double d2d_m, bool los, const CellConfig& cfg);

inline double shadowing_sigma_db(bool los) { return los ? 4.0 : 7.82; }

struct LargeScale {
  double path_loss_db = 0.0;
  double shadowing_db = 0.0;
  double gain = 0.0;  // 10^((tx_gain - PL - SF) / 10)
};

LargeScale path_loss(double d2d_m, bool los, const CellConfig& cfg, Rng& rng);

struct UserLink {
  double d2d_m = 0.0;
  double angle_rad = 0.0;
  bool los = false;
  double path_loss_db = 0.0;
  double shadowing_db = 0.0;
  double gain = 0.0;
};

struct ChannelRealization {
  std::vector<UserLink> users;
  Eigen::MatrixXcd h;  // N x K, column k is h_k
  double noise_power_w = 0.0;

  std::vector<double> gains() const;
};

ChannelRealization generate_channel(const CellConfig& cfg, Rng& rng);

void write_trace_header(std::ostream& out);
void write_trace_rows(std::ostream& out, std::uint64_t seed, std::uint64_t trial,
                      const ChannelRealization& realization);

}  // namespace eessrfi::airlink
