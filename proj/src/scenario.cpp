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

#include "eessrfi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "eessrfi/units.hpp"

namespace eessrfi::scenario {

filterbank::FilterSpec ScenarioConfig::filter() const {
  filterbank::FilterSpec f;
  f.order = filter_order;
  f.passband_ripple_db = ripple_db;
  f.passband_low_ghz = tn_low_ghz();
  f.passband_high_ghz = tn_top_ghz;
  f.grid_step_mhz = grid_step_mhz;
  return f;
}

void ScenarioConfig::validate() const {
  require(std::isfinite(year), "year must be finite");
  require(adoption_factor > 0.0, "adoption scenario factor must be positive");
  require(guard_mhz >= 0.0, "guard band must be non-negative");
  require(tn_low_ghz() < tn_top_ghz, "guard band leaves no TN bandwidth");
  require(rate_bps >= 0.0 && demand_rate_bps > 0.0, "rates must be positive");
  require(trials >= 1, "need at least one trial");
  require(!sensors.empty(), "sensor set must not be empty");
  require(!std::isnan(threshold_dbw) && threshold_dbw > -std::numeric_limits<double>::infinity(),
          "threshold must be a number or +inf");
  require(reference_bw_mhz > 0.0, "reference bandwidth must be positive");
  require(spectral_efficiency > 0.0, "spectral efficiency must be positive");
  require(std::isfinite(p_bs_dbw), "P_BS must be finite");
  require(threads >= 0, "thread count must be >= 0");
  require(!county_fips.empty(), "county must be a FIPS code or 'auto'");
  filter().validate();
  adoption.validate();
  power_model.validate();
}

std::vector<TrialOutcome> simulate_trials(const ScenarioConfig& cfg, const airlink::CellConfig& cell_in) {
  cfg.validate();
  airlink::CellConfig cell = cell_in;
  cell.bandwidth_hz = cfg.bandwidth_hz();
  cell.validate();

  const auto targets = precoder::SinrTargets::from_rate(cell.n_users, cfg.rate_bps, cell.bandwidth_hz);
  const precoder::RfiBudget unbounded{0.0, 0.0, 0.0, std::numeric_limits<double>::infinity()};
  const auto n_trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOutcome> out(n_trials);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      auto rng = airlink::trial_rng(cfg.seed, t);
      const auto ch = airlink::generate_channel(cell, rng);
      const auto gains = ch.gains();
      const auto sol = precoder::solve_power_min(ch.h, gains, targets, ch.noise_power_w, unbounded);
      out[t] = {sol.p_tx_w, sol.status};
    }
  };

  std::size_t workers = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n_trials);
  if (workers <= 1) {
    run_range(0, n_trials);
    return out;
  }

  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (n_trials + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n_trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

PowerSummary summarize_power(const std::vector<TrialOutcome>& outcomes, double p_sum_max_w) {
  require(!outcomes.empty(), "no trial outcomes");
  PowerSummary s;
  s.trials = static_cast<int>(outcomes.size());
  double sum = 0.0;
  for (const auto& o : outcomes) {
    const bool solved =
        o.status == precoder::SolveStatus::Optimal || o.status == precoder::SolveStatus::BudgetExceeded;
    if (solved && o.p_tx_w <= p_sum_max_w * (1.0 + 1e-12)) {
      sum += o.p_tx_w;
      ++s.feasible_trials;
    }
  }
  s.infeasibility_rate = static_cast<double>(s.trials - s.feasible_trials) / s.trials;
  s.degenerate = s.feasible_trials == 0;
  s.mean_p_tx_w = s.degenerate ? std::numeric_limits<double>::quiet_NaN() : sum / s.feasible_trials;
  return s;
}

PowerSummary mean_bs_power(const ScenarioConfig& cfg, const airlink::CellConfig& cell) {
  return summarize_power(simulate_trials(cfg, cell), db_to_linear(cfg.p_bs_dbw));
}

double aggregate_rfi_dbw(std::int64_t n_footprint, double mean_p_tx_w, double delta, double net_gain_db) {
  require(n_footprint >= 0, "footprint count must be non-negative");
  require(mean_p_tx_w >= 0.0 && delta >= 0.0, "power and leakage must be non-negative");
  if (n_footprint == 0 || mean_p_tx_w == 0.0 || delta == 0.0) return -std::numeric_limits<double>::infinity();
  return linear_to_db(mean_p_tx_w) + linear_to_db(delta) + net_gain_db +
         linear_to_db(static_cast<double>(n_footprint));
}

const SensorRfi& RfiReport::worst() const {
  require(!sensors.empty(), "report has no sensors");
  const SensorRfi* best = &sensors.front();
  for (const auto& s : sensors) {
    if (best->degenerate) break;
    if (s.degenerate || s.aggregate_dbw > best->aggregate_dbw) best = &s;
  }
  return *best;
}

const SensorRfi& RfiReport::find(const std::string& id) const {
  for (const auto& s : sensors) {
    if (s.sensor_id == id) return s;
  }
  throw InvalidArgument("sensor not in report: " + id);
}

bool RfiReport::compliant() const {
  return std::all_of(sensors.begin(), sensors.end(), [](const SensorRfi& s) { return s.compliant; });
}

RfiReport evaluate(const ScenarioConfig& cfg, const Inputs& inputs, const std::vector<TrialOutcome>& outcomes) {
  cfg.validate();
  require(outcomes.size() == static_cast<std::size_t>(cfg.trials), "trial outcomes do not match the trial count");
  require(!inputs.counties.empty(), "no county records");

  RfiReport rep;
  rep.year = cfg.year;
  rep.adoption_factor = cfg.adoption_factor;
  rep.guard_mhz = cfg.guard_mhz;
  rep.rate_bps = cfg.rate_bps;
  rep.bandwidth_hz = cfg.bandwidth_hz();
  rep.sinr_target = precoder::sinr_target(cfg.rate_bps, rep.bandwidth_hz);
  rep.threshold_dbw = cfg.threshold_dbw;

  const auto model = adoption::scale_scenario(cfg.adoption, cfg.adoption_factor);
  rep.penetration_per_100 = adoption::penetration(model, cfg.year);
  const auto snapshot = deployment::build_snapshot(inputs.counties, cfg.year, cfg.adoption_factor,
                                                   rep.penetration_per_100, cfg.demand_rate_bps,
                                                   cfg.spectral_efficiency, rep.bandwidth_hz);
  const bool auto_county = cfg.county_fips == "auto";
  const deployment::CountyDeployment* pinned = auto_county ? nullptr : &snapshot.find(cfg.county_fips);

  const auto filter = cfg.filter();
  const double i_sat = db_to_linear(cfg.threshold_dbw);
  const double p_bs = db_to_linear(cfg.p_bs_dbw);

  for (const auto& id : cfg.sensors) {
    const auto& sensor = inputs.catalog.find(id);
    SensorRfi row;
    row.sensor_id = id;

    const auto window = filterbank::worst_victim_window(sensor.span_low_ghz, sensor.span_high_ghz,
                                                         cfg.reference_bw_mhz, cfg.tn_low_ghz(), cfg.tn_top_ghz);
    const auto leak = filterbank::leakage_fraction(filter, window, rep.bandwidth_hz / 1e6, id);
    row.delta = leak.delta;
    row.delta_db = leak.delta_db();

    const auto link = linkbudget::build_link_budget(sensor, cfg.g_tx_db, cfg.link_eval_ghz, cfg.extras,
                                                    cfg.earth_radius_km);
    row.net_gain_db = linkbudget::coupling_gain_db(link, cfg.coupling);

    if (auto_county) {
      const auto pick = deployment::worst_case_footprint(snapshot, sensor);
      row.county_fips = pick.county.fips;
      row.county_bs = pick.county.n_bs;
      row.footprint_bs = pick.count;
    } else {
      row.county_fips = pinned->fips;
      row.county_bs = pinned->n_bs;
      row.footprint_bs =
          deployment::footprint_bs_count(pinned->n_bs, sensor.footprint_km2, pinned->land_area_km2);
    }

    const precoder::RfiBudget budget{i_sat, db_to_linear(row.net_gain_db), row.delta, p_bs};
    row.p_sum_max_w = budget.p_sum_max_w();
    const auto power = summarize_power(outcomes, row.p_sum_max_w);
    row.mean_p_tx_w = power.mean_p_tx_w;
    row.infeasibility_rate = power.infeasibility_rate;
    row.degenerate = power.degenerate;
    if (row.degenerate) {
      row.mean_p_tx_dbw = std::numeric_limits<double>::quiet_NaN();
      row.aggregate_dbw = std::numeric_limits<double>::quiet_NaN();
      row.margin_db = std::numeric_limits<double>::quiet_NaN();
      row.compliant = false;
    } else {
      row.mean_p_tx_dbw = linear_to_db(row.mean_p_tx_w);
      row.aggregate_dbw = aggregate_rfi_dbw(row.footprint_bs, row.mean_p_tx_w, row.delta, row.net_gain_db);
      row.margin_db = cfg.threshold_dbw - row.aggregate_dbw;
      row.compliant = row.aggregate_dbw <= cfg.threshold_dbw;
    }
    rep.sensors.push_back(std::move(row));
  }
  return rep;
}

RfiReport evaluate(const ScenarioConfig& cfg, const airlink::CellConfig& cell, const Inputs& inputs) {
  return evaluate(cfg, inputs, simulate_trials(cfg, cell));
}

RateSearch max_feasible_rate(const ScenarioConfig& cfg, const airlink::CellConfig& cell, const Inputs& inputs,
                             const std::vector<double>& rates) {
  require(!rates.empty(), "rate grid must not be empty");
  RateSearch out;
  std::vector<double> sorted = rates;
  std::sort(sorted.begin(), sorted.end());
  for (double r : sorted) {
    ScenarioConfig c = cfg;
    c.rate_bps = r;
    out.reports.push_back(evaluate(c, cell, inputs));
    if (out.reports.back().compliant()) out.max_rate_bps = r;
  }
  return out;
}

std::vector<double> default_guard_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) g.push_back(5.0 * i);
  return g;
}

GuardSweep sweep_guard_bands(const ScenarioConfig& cfg, const airlink::CellConfig& cell, const Inputs& inputs,
                             const std::vector<double>& years, const std::vector<double>& guards,
                             const std::vector<double>& rates) {
  require(!years.empty() && !guards.empty() && !rates.empty(), "sweep grids must not be empty");
  GuardSweep out;
  out.rates = rates;
  std::sort(out.rates.begin(), out.rates.end());

  // rows[y][g]; one Monte Carlo per (guard, rate) serves every year.
  std::vector<std::vector<GuardSweepRow>> grid(years.size(), std::vector<GuardSweepRow>(guards.size()));
  for (std::size_t gi = 0; gi < guards.size(); ++gi) {
    ScenarioConfig c = cfg;
    c.guard_mhz = guards[gi];
    for (double r : out.rates) {
      c.rate_bps = r;
      const auto outcomes = simulate_trials(c, cell);
      for (std::size_t yi = 0; yi < years.size(); ++yi) {
        ScenarioConfig cy = c;
        cy.year = years[yi];
        const auto rep = evaluate(cy, inputs, outcomes);
        auto& row = grid[yi][gi];
        row.year = cy.year;
        row.guard_mhz = cy.guard_mhz;
        row.bandwidth_hz = rep.bandwidth_hz;
        row.max_delta_db = -std::numeric_limits<double>::infinity();
        for (const auto& s : rep.sensors) row.max_delta_db = std::max(row.max_delta_db, s.delta_db);
        const auto& w = rep.worst();
        row.worst_rfi_dbw.push_back(w.degenerate ? std::numeric_limits<double>::quiet_NaN() : w.aggregate_dbw);
        if (rep.compliant()) row.max_rate_bps = r;
      }
    }
  }
  for (auto& per_year : grid) {
    for (auto& row : per_year) out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<RfiReport> rate_year_grid(const ScenarioConfig& cfg, const airlink::CellConfig& cell,
                                      const Inputs& inputs, const std::vector<double>& years,
                                      const std::vector<double>& rates) {
  require(!years.empty() && !rates.empty(), "grids must not be empty");
  std::vector<std::vector<RfiReport>> by_year(years.size());
  for (double r : rates) {
    ScenarioConfig c = cfg;
    c.rate_bps = r;
    const auto outcomes = simulate_trials(c, cell);
    for (std::size_t yi = 0; yi < years.size(); ++yi) {
      ScenarioConfig cy = c;
      cy.year = years[yi];
      by_year[yi].push_back(evaluate(cy, inputs, outcomes));
    }
  }
  std::vector<RfiReport> out;
  for (auto& v : by_year) {
    for (auto& rep : v) out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace eessrfi::scenario
