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

#include "eessrfi/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "eessrfi/units.hpp"

namespace eessrfi::report {

Format format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? Format::Json : Format::Csv;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

void write_config_comments(std::ostream& out, const config::RunConfig& cfg) {
  const auto j = config::to_json(cfg);
  for (const auto& [section, body] : j.items()) {
    for (const auto& [key, value] : body.items()) {
      out << "# " << section << '.' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump())
          << '\n';
    }
  }
}

void require_nonempty(const std::vector<scenario::RfiReport>& reports) {
  require(!reports.empty(), "no results to report");
  for (const auto& r : reports) require(!r.sensors.empty(), "report has an empty sensor set");
}

nlohmann::ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file: " + path.string());
  f << body;
  f.close();
  if (!f) throw IoError("failed writing output file: " + path.string());
}

}  // namespace

void write_rfi_csv(std::ostream& out, const config::RunConfig& cfg, const std::vector<scenario::RfiReport>& reports) {
  require_nonempty(reports);
  write_config_comments(out, cfg);
  out << "year,adoption_factor,guard_mhz,rate_mbps,bandwidth_mhz,sinr_target_db,penetration_per_100,"
         "sensor_id,county_fips,county_bs,footprint_bs,delta_db,net_gain_db,p_sum_max_dbw,mean_p_tx_dbw,"
         "infeasibility_rate,aggregate_dbw,margin_db,compliant\n";
  for (const auto& r : reports) {
    for (const auto& s : r.sensors) {
      out << format_number(r.year) << ',' << format_number(r.adoption_factor) << ',' << format_number(r.guard_mhz)
          << ',' << format_number(r.rate_bps / 1e6) << ',' << format_number(r.bandwidth_hz / 1e6) << ','
          << format_number(linear_to_db(r.sinr_target)) << ',' << format_number(r.penetration_per_100) << ','
          << s.sensor_id << ',' << s.county_fips << ',' << s.county_bs << ',' << s.footprint_bs << ','
          << format_number(s.delta_db) << ',' << format_number(s.net_gain_db) << ','
          << format_number(linear_to_db(s.p_sum_max_w)) << ',' << format_number(s.mean_p_tx_dbw) << ','
          << format_number(s.infeasibility_rate) << ',' << format_number(s.aggregate_dbw) << ','
          << format_number(s.margin_db) << ',' << (s.compliant ? "true" : "false") << '\n';
    }
  }
}

void write_rfi_json(std::ostream& out, const config::RunConfig& cfg, const std::vector<scenario::RfiReport>& reports) {
  require_nonempty(reports);
  nlohmann::ordered_json doc;
  doc["config"] = config::to_json(cfg);
  auto& arr = doc["results"];
  arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["year"] = r.year;
    jr["adoption_factor"] = r.adoption_factor;
    jr["guard_mhz"] = r.guard_mhz;
    jr["rate_mbps"] = r.rate_bps / 1e6;
    jr["bandwidth_mhz"] = r.bandwidth_hz / 1e6;
    jr["sinr_target_db"] = linear_to_db(r.sinr_target);
    jr["penetration_per_100"] = r.penetration_per_100;
    jr["threshold_dbw"] = r.threshold_dbw;
    jr["compliant"] = r.compliant();
    jr["worst_sensor"] = r.worst().sensor_id;
    auto& sensors = jr["sensors"];
    sensors = nlohmann::ordered_json::array();
    for (const auto& s : r.sensors) {
      sensors.push_back({{"sensor_id", s.sensor_id},
                         {"county_fips", s.county_fips},
                         {"county_bs", s.county_bs},
                         {"footprint_bs", s.footprint_bs},
                         {"delta_db", number_or_null(s.delta_db)},
                         {"net_gain_db", s.net_gain_db},
                         {"p_sum_max_dbw", number_or_null(linear_to_db(s.p_sum_max_w))},
                         {"mean_p_tx_dbw", number_or_null(s.mean_p_tx_dbw)},
                         {"infeasibility_rate", s.infeasibility_rate},
                         {"degenerate", s.degenerate},
                         {"aggregate_dbw", number_or_null(s.aggregate_dbw)},
                         {"margin_db", number_or_null(s.margin_db)},
                         {"compliant", s.compliant}});
    }
    arr.push_back(std::move(jr));
  }
  out << doc.dump(2) << '\n';
}

void write_guard_sweep_csv(std::ostream& out, const config::RunConfig& cfg, const scenario::GuardSweep& sweep) {
  require(!sweep.rows.empty(), "no results to report");
  write_config_comments(out, cfg);
  out << "year,guard_mhz,bandwidth_mhz,max_delta_db,max_rate_mbps";
  for (double r : sweep.rates) out << ",worst_rfi_dbw_" << format_number(r / 1e6) << "mbps";
  out << '\n';
  for (const auto& row : sweep.rows) {
    out << format_number(row.year) << ',' << format_number(row.guard_mhz) << ','
        << format_number(row.bandwidth_hz / 1e6) << ',' << format_number(row.max_delta_db) << ','
        << format_number(row.max_rate_bps / 1e6);
    for (double v : row.worst_rfi_dbw) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_guard_sweep_json(std::ostream& out, const config::RunConfig& cfg, const scenario::GuardSweep& sweep) {
  require(!sweep.rows.empty(), "no results to report");
  nlohmann::ordered_json doc;
  doc["config"] = config::to_json(cfg);
  nlohmann::ordered_json rates = nlohmann::ordered_json::array();
  for (double r : sweep.rates) rates.push_back(r / 1e6);
  doc["rates_mbps"] = rates;
  auto& arr = doc["rows"];
  arr = nlohmann::ordered_json::array();
  for (const auto& row : sweep.rows) {
    nlohmann::ordered_json worst = nlohmann::ordered_json::array();
    for (double v : row.worst_rfi_dbw) worst.push_back(number_or_null(v));
    arr.push_back({{"year", row.year},
                   {"guard_mhz", row.guard_mhz},
                   {"bandwidth_mhz", row.bandwidth_hz / 1e6},
                   {"max_delta_db", row.max_delta_db},
                   {"max_rate_mbps", row.max_rate_bps / 1e6},
                   {"worst_rfi_dbw", worst}});
  }
  out << doc.dump(2) << '\n';
}

void emit_report(const std::filesystem::path& path, const config::RunConfig& cfg,
                 const std::vector<scenario::RfiReport>& reports) {
  std::ostringstream body;
  if (format_from_path(path) == Format::Json) {
    write_rfi_json(body, cfg, reports);
  } else {
    write_rfi_csv(body, cfg, reports);
  }
  write_file(path, body.str());
}

void emit_guard_sweep(const std::filesystem::path& path, const config::RunConfig& cfg,
                      const scenario::GuardSweep& sweep) {
  std::ostringstream body;
  if (format_from_path(path) == Format::Json) {
    write_guard_sweep_json(body, cfg, sweep);
  } else {
    write_guard_sweep_csv(body, cfg, sweep);
  }
  write_file(path, body.str());
}

}  // namespace eessrfi::report
