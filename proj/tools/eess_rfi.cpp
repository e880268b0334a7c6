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

// eess-rfi command-line front end.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eessrfi/adoption.hpp"
#include "eessrfi/config.hpp"
#include "eessrfi/deployment.hpp"
#include "eessrfi/filterbank.hpp"
#include "eessrfi/linkbudget.hpp"
#include "eessrfi/report.hpp"
#include "eessrfi/scenario.hpp"
#include "eessrfi/units.hpp"

#ifndef EESSRFI_DEFAULT_DATA_DIR
#define EESSRFI_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace eessrfi;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out_dir;
  std::string data_dir = EESSRFI_DEFAULT_DATA_DIR;
  std::string catalog_path;
  std::string counties_path;
  std::string gazetteer_path;
};

struct GridFlags {
  std::optional<double> year;
  std::optional<double> scenario_pct;
  std::optional<double> guard_mhz;
  std::optional<double> rate_bps;
  std::optional<int> trials;
  std::optional<std::string> county;
  std::vector<std::string> sensors;
};

config::RunConfig load_config(const Globals& g) {
  config::RunConfig cfg;
  if (!g.config_path.empty()) cfg = config::load_run_config(g.config_path);
  if (g.seed) cfg.scenario.seed = *g.seed;
  if (g.threads) cfg.scenario.threads = *g.threads;
  return cfg;
}

void apply_grid(config::RunConfig& cfg, const GridFlags& f) {
  auto& sc = cfg.scenario;
  if (f.year) sc.year = *f.year;
  if (f.scenario_pct) sc.adoption_factor = *f.scenario_pct / 100.0;
  if (f.guard_mhz) sc.guard_mhz = *f.guard_mhz;
  if (f.rate_bps) sc.rate_bps = *f.rate_bps;
  if (f.trials) sc.trials = *f.trials;
  if (f.county) sc.county_fips = *f.county;
  if (!f.sensors.empty()) sc.sensors = f.sensors;
  sc.validate();
}

linkbudget::SensorCatalog load_sensors(const Globals& g) {
  if (g.catalog_path.empty()) return linkbudget::builtin_catalog();
  return linkbudget::load_catalog(g.catalog_path);
}

std::vector<deployment::CountyRecord> load_counties(const Globals& g) {
  const fs::path dir(g.data_dir);
  const fs::path counties = g.counties_path.empty() ? dir / "counties_rucc2023_subset.csv" : fs::path(g.counties_path);
  const fs::path gaz = g.gazetteer_path.empty() ? dir / "county_land_area_subset.csv" : fs::path(g.gazetteer_path);
  auto res = deployment::ingest_counties(counties, gaz);
  for (const auto& d : res.diagnostics) {
    std::cerr << "warning: " << d.source << ':' << d.line << ": " << d.message << '\n';
  }
  return std::move(res.records);
}

scenario::Inputs load_inputs(const Globals& g) { return {load_sensors(g), load_counties(g)}; }

fs::path out_file(const Globals& g, const std::string& name) {
  const fs::path dir(g.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir.string());
  return dir / name;
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file: " + path.string());
  f << body;
  f.close();
  if (!f) throw IoError("failed writing output file: " + path.string());
}

std::string fmt(double v, int precision = 2) {
  if (!std::isfinite(v)) return report::format_number(v);
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

void print_report_table(std::ostream& out, const std::vector<scenario::RfiReport>& reports) {
  out << "year  factor  guard_MHz  rate_Mbps  sensor  county  N_fp   p_tx_dBW   delta_dB  RFI_dBW   margin_dB  infeas\n";
  for (const auto& r : reports) {
    for (const auto& s : r.sensors) {
      out << std::left << std::setw(6) << fmt(r.year, 0) << std::setw(8) << fmt(r.adoption_factor) << std::setw(11)
          << fmt(r.guard_mhz, 1) << std::setw(11) << fmt(r.rate_bps / 1e6, 0) << std::setw(8) << s.sensor_id
          << std::setw(8) << s.county_fips << std::setw(7) << s.footprint_bs << std::setw(11)
          << fmt(s.mean_p_tx_dbw) << std::setw(10) << fmt(s.delta_db) << std::setw(10) << fmt(s.aggregate_dbw)
          << std::setw(11) << fmt(s.margin_db) << fmt(s.infeasibility_rate, 3) << '\n';
    }
  }
}

void emit_reports(const Globals& g, const config::RunConfig& cfg, const std::string& stem,
                  const std::vector<scenario::RfiReport>& reports) {
  if (g.out_dir.empty()) {
    report::write_rfi_csv(std::cout, cfg, reports);
    return;
  }
  report::emit_report(out_file(g, stem + ".csv"), cfg, reports);
  report::emit_report(out_file(g, stem + ".json"), cfg, reports);
  print_report_table(std::cout, reports);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("not a number in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty list: '" + text + "'");
  return out;
}

// ---------------------------------------------------------------- commands

void cmd_link_budget(const Globals& g, const std::string& sensor_id, double freq, std::optional<double> g_tx) {
  const auto cfg = load_config(g);
  const auto catalog = load_sensors(g);
  const double gtx = g_tx.value_or(cfg.scenario.g_tx_db);
  std::vector<linkbudget::LinkBudget> rows;
  for (const auto& s : catalog.sensors) {
    if (!sensor_id.empty() && s.id != sensor_id) continue;
    rows.push_back(linkbudget::build_link_budget(s, gtx, freq, cfg.scenario.extras, cfg.scenario.earth_radius_km));
  }
  if (rows.empty()) throw InvalidArgument("unknown sensor: " + sensor_id);

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back(nlohmann::ordered_json::parse(linkbudget::to_json(r)));
  const std::string json_body = (rows.size() == 1 ? arr[0] : arr).dump(2) + "\n";
  std::ostringstream csv;
  linkbudget::write_link_budget_csv(csv, rows);

  if (!g.out_dir.empty()) {
    write_text(out_file(g, "link_budget.csv"), csv.str());
    write_text(out_file(g, "link_budget.json"), json_body);
  }
  std::cout << (rows.size() == 1 ? json_body : csv.str());
}

void cmd_leakage(const Globals& g, const std::vector<std::string>& sensors, const std::string& guards_text,
                 const std::string& orders_text, std::optional<double> edge_ptx) {
  const auto cfg = load_config(g);
  const auto catalog = load_sensors(g);
  const auto guards = parse_list(guards_text);
  const auto orders = parse_list(orders_text);
  std::vector<std::string> ids = sensors;
  if (ids.empty()) ids = cfg.scenario.sensors;

  std::vector<filterbank::LeakageRow> rows;
  for (const auto& id : ids) {
    const auto& s = catalog.find(id);
    for (double ord : orders) {
      for (double gmhz : guards) {
        auto sc = cfg.scenario;
        sc.guard_mhz = gmhz;
        sc.filter_order = static_cast<int>(ord);
        require(sc.filter_order == ord, "filter order must be an integer");
        const auto window = filterbank::worst_victim_window(s.span_low_ghz, s.span_high_ghz, sc.reference_bw_mhz,
                                                             sc.tn_low_ghz(), sc.tn_top_ghz);
        const auto leak = filterbank::leakage_fraction(sc.filter(), window, sc.bandwidth_hz() / 1e6, id);
        rows.push_back({id, sc.filter_order, gmhz, leak.delta});
      }
    }
  }
  std::ostringstream csv;
  filterbank::write_leakage_csv(csv, rows);
  std::cout << csv.str();
  if (!g.out_dir.empty()) {
    write_text(out_file(g, "leakage.csv"), csv.str());
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"sensor_id", r.sensor_id},
                     {"order", r.order},
                     {"guard_mhz", r.guard_mhz},
                     {"delta", r.delta},
                     {"delta_db", linear_to_db(r.delta)}});
    }
    write_text(out_file(g, "leakage.json"), arr.dump(2) + "\n");
  }

  if (edge_ptx) {
    const auto& sc = cfg.scenario;
    const auto e = filterbank::edge_psd_margin(sc.filter(), *edge_ptx, sc.eess_edge_ghz - 0.0005);
    std::cout << "edge PSD at " << fmt(sc.eess_edge_ghz - 0.0005, 4) << " GHz: " << fmt(e.leaked_psd_dbm_per_mhz)
              << " dBm/MHz (in-band " << fmt(e.in_band_psd_dbm_per_mhz) << ", limit " << fmt(e.limit_dbm_per_mhz)
              << ", margin " << fmt(e.margin_db) << " dB)\n";
  }
}

void cmd_adoption(const Globals& g, double scenario_pct, const std::string& years_text, const std::string& fit_path) {
  const auto cfg = load_config(g);
  adoption::AdoptionModel model = cfg.scenario.adoption;

  if (!fit_path.empty()) {
    const auto series = adoption::load_series(fit_path);
    const auto fit = adoption::fit_gompertz(series, model);
    std::cout << "fit: status=" << adoption::to_string(fit.status) << " b1=" << report::format_number(fit.b1)
              << " b2=" << report::format_number(fit.b2) << " b3=" << report::format_number(fit.b3)
              << " t0=" << report::format_number(fit.time_origin) << " residual=" << report::format_number(fit.residual_norm)
              << " iterations=" << fit.iterations << '\n';
    if (!fit.ok()) throw InvalidArgument("Gompertz fit failed: " + fit.message);
    model.b1 = fit.b1;
    model.b2 = fit.b2;
    model.b3 = fit.b3;
  }

  const auto scaled = adoption::scale_scenario(model, scenario_pct / 100.0);
  const auto years = parse_list(years_text);
  std::ostringstream csv;
  csv << "year,scenario_pct,penetration_per_100\n";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (double y : years) {
    const double p = adoption::penetration(scaled, y);
    csv << report::format_number(y) << ',' << report::format_number(scenario_pct) << ','
        << report::format_number(p) << '\n';
    arr.push_back({{"year", y}, {"scenario_pct", scenario_pct}, {"penetration_per_100", p}});
  }
  if (!g.out_dir.empty()) {
    write_text(out_file(g, "adoption.csv"), csv.str());
    write_text(out_file(g, "adoption.json"), arr.dump(2) + "\n");
  }
  if (years.size() == 1) {
    std::cout << fmt(adoption::penetration(scaled, years.front()), 2) << '\n';
  } else {
    std::cout << csv.str();
  }
}

void cmd_deploy(const Globals& g, const GridFlags& flags, std::optional<double> demand_rate, const std::string& sensor) {
  auto cfg = load_config(g);
  auto f = flags;
  f.rate_bps.reset();
  apply_grid(cfg, f);
  if (demand_rate) cfg.scenario.demand_rate_bps = *demand_rate;
  const auto& sc = cfg.scenario;
  const auto counties = load_counties(g);
  const auto model = adoption::scale_scenario(sc.adoption, sc.adoption_factor);
  const double pen = adoption::penetration(model, sc.year);
  const auto snap = deployment::build_snapshot(counties, sc.year, sc.adoption_factor, pen, sc.demand_rate_bps,
                                               sc.spectral_efficiency, sc.bandwidth_hz());
  double footprint = 0.0;
  if (!sensor.empty()) footprint = load_sensors(g).find(sensor).footprint_km2;
  std::ostringstream csv;
  deployment::write_snapshot_csv(csv, snap, footprint);
  std::cout << csv.str();
  if (!g.out_dir.empty()) {
    write_text(out_file(g, "deploy.csv"), csv.str());
    nlohmann::ordered_json doc;
    doc["year"] = snap.year;
    doc["scenario_factor"] = snap.scenario_factor;
    doc["penetration_per_100"] = snap.penetration_per_100;
    doc["rate_bps"] = snap.rate_bps;
    doc["spectral_efficiency"] = snap.spectral_efficiency;
    doc["bandwidth_hz"] = snap.bandwidth_hz;
    auto& arr = doc["counties"];
    arr = nlohmann::ordered_json::array();
    for (const auto& c : snap.counties) {
      nlohmann::ordered_json row{{"fips", c.fips},           {"name", c.name},
                                 {"state", c.state},         {"population", c.population},
                                 {"land_area_km2", c.land_area_km2}, {"n_bs", c.n_bs}};
      if (footprint > 0.0) {
        row["footprint_bs"] = deployment::footprint_bs_count(c.n_bs, footprint, c.land_area_km2);
      }
      arr.push_back(std::move(row));
    }
    write_text(out_file(g, "deploy.json"), doc.dump(2) + "\n");
  }
}

void cmd_simulate(const Globals& g, const GridFlags& flags) {
  auto cfg = load_config(g);
  apply_grid(cfg, flags);
  const auto inputs = load_inputs(g);
  const auto rep = scenario::evaluate(cfg.scenario, cfg.cell, inputs);
  emit_reports(g, cfg, "simulate", {rep});
}

void cmd_sweep_guard(const Globals& g, const GridFlags& flags, const std::string& years_text,
                     const std::string& guards_text, const std::string& rates_text) {
  auto cfg = load_config(g);
  apply_grid(cfg, flags);
  const auto inputs = load_inputs(g);
  const auto sweep = scenario::sweep_guard_bands(cfg.scenario, cfg.cell, inputs, parse_list(years_text),
                                                 parse_list(guards_text), parse_list(rates_text));
  if (g.out_dir.empty()) {
    report::write_guard_sweep_csv(std::cout, cfg, sweep);
    return;
  }
  report::emit_guard_sweep(out_file(g, "sweep_guard.csv"), cfg, sweep);
  report::emit_guard_sweep(out_file(g, "sweep_guard.json"), cfg, sweep);
  std::cout << "year  guard_MHz  max_rate_Mbps\n";
  for (const auto& row : sweep.rows) {
    std::cout << std::left << std::setw(6) << fmt(row.year, 0) << std::setw(11) << fmt(row.guard_mhz, 1)
              << fmt(row.max_rate_bps / 1e6, 0) << '\n';
  }
}

int cmd_compliance(const Globals& g, const GridFlags& flags, const std::string& years_text,
                   const std::string& rates_text, bool strict) {
  auto cfg = load_config(g);
  apply_grid(cfg, flags);
  const auto inputs = load_inputs(g);
  const auto years = parse_list(years_text);
  const auto rates = parse_list(rates_text);
  const auto reports = scenario::rate_year_grid(cfg.scenario, cfg.cell, inputs, years, rates);
  emit_reports(g, cfg, "compliance", reports);

  bool all_ok = true;
  std::ostream& log = g.out_dir.empty() ? std::cerr : std::cout;
  for (double y : years) {
    double best = 0.0;
    for (const auto& r : reports) {
      if (r.year != y) continue;
      all_ok = all_ok && r.compliant();
      if (r.compliant()) best = std::max(best, r.rate_bps);
    }
    log << "year " << fmt(y, 0) << ": max feasible rate " << fmt(best / 1e6, 0) << " Mbps at guard "
        << fmt(cfg.scenario.guard_mhz, 1) << " MHz\n";
  }
  return (strict && !all_ok) ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjacent-band terrestrial RFI into passive EESS sensors"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master RNG seed");
  app.add_option("--threads", g.threads, "Worker threads for Monte Carlo trials (0 = all cores)");
  app.add_option("--out-dir", g.out_dir, "Write CSV and JSON outputs into this directory");
  app.add_option("--data-dir", g.data_dir, "Directory with the bundled county tables");
  app.add_option("--catalog", g.catalog_path, "Sensor catalog (.csv or .json); default is built in");
  app.add_option("--counties", g.counties_path, "County demographics CSV");
  app.add_option("--gazetteer", g.gazetteer_path, "County land-area CSV");

  auto add_grid = [](CLI::App* sub, GridFlags& f, bool with_rate, bool with_trials) {
    sub->add_option("--year", f.year, "Deployment year");
    sub->add_option("--scenario", f.scenario_pct, "Adoption growth scenario in percent (50, 100, 150)");
    sub->add_option("--guard", f.guard_mhz, "Guard band width in MHz");
    if (with_rate) sub->add_option("--rate", f.rate_bps, "Per-user rate in bit/s");
    if (with_trials) sub->add_option("--trials", f.trials, "Monte Carlo trials");
    sub->add_option("--county", f.county, "County FIPS or 'auto'");
    sub->add_option("--sensor", f.sensors, "Sensor id (repeatable)");
  };

  // link-budget
  std::string lb_sensor;
  double lb_freq = 6.925;
  std::optional<double> lb_gtx;
  auto* lb = app.add_subcommand("link-budget", "Slant range, losses and net link gain per sensor");
  lb->add_option("--sensor", lb_sensor, "Sensor id (default: all)");
  lb->add_option("--freq", lb_freq, "Evaluation frequency in GHz");
  lb->add_option("--g-tx", lb_gtx, "BS transmit gain toward the sensor in dBi");

  // leakage
  std::vector<std::string> lk_sensors;
  std::string lk_guards = "25";
  std::string lk_orders;
  std::optional<double> lk_edge;
  auto* lk = app.add_subcommand("leakage", "Filter leakage fraction into each sensor's worst 200 MHz window");
  lk->add_option("--sensor", lk_sensors, "Sensor id (repeatable)");
  lk->add_option("--guard", lk_guards, "Guard band(s) in MHz, comma separated");
  lk->add_option("--order", lk_orders, "Filter order(s), comma separated (default: configured order)");
  lk->add_option("--edge-psd", lk_edge, "Also check the emission mask at the EESS edge for this P_tx in dBW");

  // adoption
  double ad_scenario = 100.0;
  std::string ad_years = "2030,2035,2040";
  std::string ad_fit;
  auto* ad = app.add_subcommand("adoption", "Penetration per 100 people from the Gompertz model");
  ad->add_option("--scenario", ad_scenario, "Growth scenario in percent");
  ad->add_option("--year", ad_years, "Year(s), comma separated");
  ad->add_option("--fit", ad_fit, "Fit the curve shape to a year,per_100 series first")->check(CLI::ExistingFile);

  // deploy
  GridFlags dp_flags;
  std::optional<double> dp_rate;
  std::string dp_sensor;
  auto* dp = app.add_subcommand("deploy", "Per-county base-station counts");
  dp->add_option("--year", dp_flags.year, "Deployment year");
  dp->add_option("--scenario", dp_flags.scenario_pct, "Adoption growth scenario in percent");
  dp->add_option("--guard", dp_flags.guard_mhz, "Guard band width in MHz");
  dp->add_option("--rate", dp_rate, "Per-user demand used to size the deployment, bit/s");
  dp->add_option("--footprint-of", dp_sensor, "Add the in-footprint count for this sensor");

  // simulate
  GridFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Aggregate RFI at one grid point");
  add_grid(sim, sim_flags, true, true);

  // sweep-guard
  GridFlags sw_flags;
  std::string sw_years = "2030,2035,2040";
  std::string sw_guards = "0,5,10,15,20,25,30,35,40,45,50";
  std::string sw_rates = "100e6,200e6,300e6,400e6,500e6";
  auto* sw = app.add_subcommand("sweep-guard", "Maximum compliant rate per year and guard band");
  add_grid(sw, sw_flags, false, true);
  sw->add_option("--years", sw_years, "Years, comma separated");
  sw->add_option("--guards", sw_guards, "Guard bands in MHz, comma separated");
  sw->add_option("--rates", sw_rates, "Rates in bit/s, comma separated");

  // compliance
  GridFlags cp_flags;
  std::string cp_years = "2030,2035,2040";
  std::string cp_rates = "100e6,200e6,300e6,400e6,500e6";
  bool cp_strict = false;
  auto* cp = app.add_subcommand("compliance", "RFI per sensor over years x rates and the max feasible rate");
  add_grid(cp, cp_flags, false, true);
  cp->add_option("--years", cp_years, "Years, comma separated");
  cp->add_option("--rates", cp_rates, "Rates in bit/s, comma separated");
  cp->add_flag("--strict", cp_strict, "Exit with status 3 when any grid point exceeds the threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*lb) cmd_link_budget(g, lb_sensor, lb_freq, lb_gtx);
    if (*lk) {
      if (lk_orders.empty()) lk_orders = std::to_string(load_config(g).scenario.filter_order);
      cmd_leakage(g, lk_sensors, lk_guards, lk_orders, lk_edge);
    }
    if (*ad) cmd_adoption(g, ad_scenario, ad_years, ad_fit);
    if (*dp) cmd_deploy(g, dp_flags, dp_rate, dp_sensor);
    if (*sim) cmd_simulate(g, sim_flags);
    if (*sw) cmd_sweep_guard(g, sw_flags, sw_years, sw_guards, sw_rates);
    if (*cp) return cmd_compliance(g, cp_flags, cp_years, cp_rates, cp_strict);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
