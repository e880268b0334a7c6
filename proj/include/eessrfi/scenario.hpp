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

// End-to-end pipeline: Monte Carlo per-BS power -> aggregate RFI per sensor
// -> rate / guard-band / year sweeps.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "eessrfi/adoption.hpp"
#include "eessrfi/airlink.hpp"
#include "eessrfi/deployment.hpp"
#include "eessrfi/filterbank.hpp"
#include "eessrfi/linkbudget.hpp"
#include "eessrfi/precoder.hpp"

namespace eessrfi::scenario {

struct ScenarioConfig {
  double year = 2030.0;
  double adoption_factor = 1.0;
  double guard_mhz = 25.0;
  double rate_bps = 100e6;         // per-user SINR target rate
  double demand_rate_bps = 500e6;  // per-user demand the deployment is sized for
  int trials = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> sensors = {"B1", "B3", "B4", "B5", "B7"};
  double threshold_dbw = -166.0;  // per reference bandwidth
  double reference_bw_mhz = 200.0;

  int filter_order = 7;
  double ripple_db = 0.2;
  double grid_step_mhz = 0.01;
  double eess_edge_ghz = 7.125;  // lower edge of the TN allocation
  double tn_top_ghz = 7.400;

  double p_bs_dbw = -5.0;
  double spectral_efficiency = 50.0;  // bps/Hz per base station
  std::string county_fips = "06037";  // "auto" picks the worst county per sensor

  linkbudget::CouplingSource coupling = linkbudget::CouplingSource::Published;
  double g_tx_db = -10.0;
  double link_eval_ghz = 6.925;
  linkbudget::LossExtras extras;
  double earth_radius_km = 6371.0;

  adoption::AdoptionModel adoption = adoption::baseline_model();
  precoder::PowerModel power_model;

  int threads = 0;  // 0: hardware concurrency. Never affects results.

  double tn_low_ghz() const { return eess_edge_ghz + guard_mhz / 1e3; }
  double bandwidth_hz() const { return std::round((tn_top_ghz - tn_low_ghz()) * 1e9); }  // nearest Hz
  filterbank::FilterSpec filter() const;
  void validate() const;
};

struct Inputs {
  linkbudget::SensorCatalog catalog;
  std::vector<deployment::CountyRecord> counties;
};

struct TrialOutcome {
  double p_tx_w = 0.0;  // unconstrained optimum
  precoder::SolveStatus status = precoder::SolveStatus::NotConverged;
};

/// Per-trial optimal transmit powers. Trial t uses airlink::trial_rng(seed, t),
/// so the channel draws are shared by every grid point with the same seed and
/// results do not depend on the thread count.
std::vector<TrialOutcome> simulate_trials(const ScenarioConfig& cfg, const airlink::CellConfig& cell);

struct PowerSummary {
  double mean_p_tx_w = 0.0;  // over feasible trials
  int trials = 0;
  int feasible_trials = 0;
  double infeasibility_rate = 0.0;
  bool degenerate = false;  // no feasible trial at all
};

PowerSummary summarize_power(const std::vector<TrialOutcome>& outcomes, double p_sum_max_w);

/// Mean optimal per-BS power with the hardware cap P_BS as the only budget.
PowerSummary mean_bs_power(const ScenarioConfig& cfg, const airlink::CellConfig& cell);

/// p_tx + delta + net gain + N_footprint, all in dB. Zero emitters give -inf.
double aggregate_rfi_dbw(std::int64_t n_footprint, double mean_p_tx_w, double delta, double net_gain_db);

struct SensorRfi {
  std::string sensor_id;
  std::string county_fips;
  std::int64_t county_bs = 0;
  std::int64_t footprint_bs = 0;
  double delta = 0.0;
  double delta_db = 0.0;
  double net_gain_db = 0.0;
  double p_sum_max_w = 0.0;
  double mean_p_tx_w = 0.0;
  double mean_p_tx_dbw = 0.0;
  double infeasibility_rate = 0.0;
  bool degenerate = false;
  double aggregate_dbw = 0.0;
  double margin_db = 0.0;  // threshold - aggregate
  bool compliant = false;
};

struct RfiReport {
  double year = 0.0;
  double adoption_factor = 0.0;
  double guard_mhz = 0.0;
  double rate_bps = 0.0;
  double bandwidth_hz = 0.0;
  double sinr_target = 0.0;
  double penetration_per_100 = 0.0;
  double threshold_dbw = 0.0;
  std::vector<SensorRfi> sensors;

  const SensorRfi& worst() const;  // highest aggregate RFI (degenerate counts as worst)
  const SensorRfi& find(const std::string& id) const;
  bool compliant() const;
};

/// Evaluates one grid point. `outcomes` must come from simulate_trials with
/// the same cfg (rate, guard); passing them in lets callers reuse one Monte
/// Carlo across years and scenarios.
RfiReport evaluate(const ScenarioConfig& cfg, const Inputs& inputs, const std::vector<TrialOutcome>& outcomes);
RfiReport evaluate(const ScenarioConfig& cfg, const airlink::CellConfig& cell, const Inputs& inputs);

inline const std::vector<double>& default_rate_grid() {
  static const std::vector<double> grid = {100e6, 200e6, 300e6, 400e6, 500e6};
  return grid;
}

struct RateSearch {
  double max_rate_bps = 0.0;  // 0 when no grid rate complies
  std::vector<RfiReport> reports;  // one per grid rate, ascending
};

/// Largest grid rate whose worst-sensor RFI stays at or below the threshold.
RateSearch max_feasible_rate(const ScenarioConfig& cfg, const airlink::CellConfig& cell, const Inputs& inputs,
                             const std::vector<double>& rates = default_rate_grid());

struct GuardSweepRow {
  double year = 0.0;
  double guard_mhz = 0.0;
  double bandwidth_hz = 0.0;
  double max_rate_bps = 0.0;
  double max_delta_db = 0.0;          // over the evaluated sensors
  std::vector<double> worst_rfi_dbw;  // per grid rate
};

struct GuardSweep {
  std::vector<double> rates;
  std::vector<GuardSweepRow> rows;  // year-major, guard ascending
};

std::vector<double> default_guard_grid();  // 0..50 MHz step 5

GuardSweep sweep_guard_bands(const ScenarioConfig& cfg, const airlink::CellConfig& cell, const Inputs& inputs,
                             const std::vector<double>& years, const std::vector<double>& guards,
                             const std::vector<double>& rates = default_rate_grid());

/// Reports over years x rates at the configured guard band (sensor rows inside).
std::vector<RfiReport> rate_year_grid(const ScenarioConfig& cfg, const airlink::CellConfig& cell,
                                      const Inputs& inputs, const std::vector<double>& years,
                                      const std::vector<double>& rates = default_rate_grid());

}  // namespace eessrfi::scenario
