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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eessrfi/config.hpp"
#include "eessrfi/report.hpp"
#include "eessrfi/units.hpp"
#include "test_support.hpp"

using namespace eessrfi;
using nlohmann::json;

TEST_CASE("config overrides apply section by section") {
  const auto cfg = config::parse_run_config(json::parse(R"({
    "scenario": {"year": 2040, "guard_mhz": 35, "seed": 7, "sensors": ["B5"], "coupling": "recomputed"},
    "filter": {"order": 9, "ripple_db": 0.5},
    "adoption": {"b3": 0.2, "anchor_mode": "time_shift"},
    "cell": {"n_users": 4, "sampling": "uniform_area", "los_mode": "nlos", "shadowing": false},
    "losses": {"clutter_db": 0.0}
  })"));
  CHECK(cfg.scenario.year == 2040);
  CHECK(cfg.scenario.guard_mhz == 35);
  CHECK(cfg.scenario.seed == 7);
  CHECK(cfg.scenario.sensors == std::vector<std::string>{"B5"});
  CHECK(cfg.scenario.coupling == linkbudget::CouplingSource::Recomputed);
  CHECK(cfg.scenario.filter_order == 9);
  CHECK(cfg.scenario.ripple_db == 0.5);
  CHECK(cfg.scenario.adoption.b3 == 0.2);
  CHECK(cfg.scenario.adoption.anchor_mode == adoption::AnchorMode::TimeShift);
  CHECK(cfg.cell.n_users == 4);
  CHECK(cfg.cell.sampling == airlink::DistanceSampling::UniformArea);
  CHECK(cfg.cell.los_mode == airlink::LosMode::AlwaysNlos);
  CHECK_FALSE(cfg.cell.shadowing);
  CHECK(cfg.scenario.extras.clutter_db == 0.0);
  CHECK(cfg.scenario.extras.polarization_db == 3.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(config::parse_run_config(json::parse(R"({"scenario": {"yaer": 2030}})")), InvalidArgument);
  CHECK_THROWS_AS(config::parse_run_config(json::parse(R"({"extra": {}})")), InvalidArgument);
  CHECK_THROWS_AS(config::parse_run_config(json::parse(R"({"scenario": {"year": "soon"}})")), InvalidArgument);
  CHECK_THROWS_AS(config::parse_run_config(json::parse(R"({"cell": {"los_mode": "sometimes"}})")), InvalidArgument);
  CHECK_THROWS_AS(config::parse_run_config(json::parse(R"({"scenario": {"trials": 0}})")), InvalidArgument);
  CHECK_THROWS_AS(config::parse_run_config(json::parse("[1, 2]")), InvalidArgument);
  CHECK_THROWS_AS(config::load_run_config("/nonexistent/run.json"), IoError);
}

TEST_CASE("config echo round-trips") {
  config::RunConfig cfg;
  cfg.scenario.seed = 12345;
  cfg.scenario.guard_mhz = 30;
  cfg.cell.n_antennas = 64;
  const auto j = config::to_json(cfg);
  const auto back = config::parse_run_config(json::parse(j.dump()));
  CHECK(config::to_json(back).dump() == j.dump());
  CHECK_FALSE(j["scenario"].contains("threads"));
}

TEST_CASE("number formatting") {
  CHECK(report::format_number(0.1) == "0.1");
  CHECK(report::format_number(-166.0) == "-166");
  CHECK(report::format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(report::format_number(std::nan("")) == "nan");
  CHECK(report::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("reports carry the configuration and reject empty input") {
  config::RunConfig cfg;
  cfg.scenario.trials = 10;
  const auto rep = scenario::evaluate(cfg.scenario, cfg.cell, bundled_inputs());

  std::ostringstream csv;
  report::write_rfi_csv(csv, cfg, {rep});
  const std::string c = csv.str();
  CHECK(c.find("# scenario.seed=1\n") != std::string::npos);
  CHECK(c.find("# cell.n_users=8\n") != std::string::npos);
  CHECK(c.find("# filter.ripple_db=0.2\n") != std::string::npos);
  CHECK(c.find("# adoption.anchor_year=2030") != std::string::npos);
  CHECK(c.find("\nyear,adoption_factor,guard_mhz,rate_mbps,") != std::string::npos);
  CHECK(std::count(c.begin(), c.end(), '\n') - std::count(c.begin(), c.end(), '#') == 6);

  std::ostringstream js;
  report::write_rfi_json(js, cfg, {rep});
  const auto doc = json::parse(js.str());
  CHECK(doc["config"]["scenario"]["seed"] == 1);
  CHECK(doc["results"][0]["sensors"].size() == 5);
  CHECK(doc["results"][0]["worst_sensor"] == "B5");

  std::ostringstream sink;
  CHECK_THROWS_AS(report::write_rfi_csv(sink, cfg, {}), InvalidArgument);
  scenario::RfiReport empty = rep;
  empty.sensors.clear();
  CHECK_THROWS_AS(report::write_rfi_json(sink, cfg, {empty}), InvalidArgument);
  CHECK_THROWS_AS(report::emit_report("/tmp/eessrfi_unused.csv", cfg, {}), InvalidArgument);
}

TEST_CASE("unwritable destination names the path") {
  config::RunConfig cfg;
  cfg.scenario.trials = 5;
  const auto rep = scenario::evaluate(cfg.scenario, cfg.cell, bundled_inputs());
  const std::string path = "/nonexistent-dir/sub/report.json";
  try {
    report::emit_report(path, cfg, {rep});
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
}

TEST_CASE("emit_report writes CSV and JSON by extension") {
  config::RunConfig cfg;
  cfg.scenario.trials = 5;
  const auto rep = scenario::evaluate(cfg.scenario, cfg.cell, bundled_inputs());
  const auto dir = std::filesystem::temp_directory_path() / "eessrfi_report_test";
  std::filesystem::create_directories(dir);
  report::emit_report(dir / "r.csv", cfg, {rep});
  report::emit_report(dir / "r.json", cfg, {rep});
  std::ifstream c(dir / "r.csv"), j(dir / "r.json");
  std::string first;
  std::getline(c, first);
  CHECK(first.rfind("# scenario.", 0) == 0);
  CHECK_NOTHROW(json::parse(j));
  std::filesystem::remove_all(dir);
}
