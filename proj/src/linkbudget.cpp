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

#include "eessrfi/linkbudget.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eessrfi/csv.hpp"
#include "eessrfi/units.hpp"

namespace eessrfi::linkbudget {

namespace {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double parse_number(const std::string& text, std::size_t line, const char* column) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("sensor catalog line " + std::to_string(line) + ": bad value '" + text +
                          "' in column " + column);
  }
}

}  // namespace

void SensorSpec::validate() const {
  require(!id.empty(), "sensor id must be non-empty");
  require(altitude_km > 0.0 && altitude_km < 2000.0, "sensor " + id + ": altitude out of (0, 2000) km");
  require(incidence_deg > 0.0 && incidence_deg < 90.0, "sensor " + id + ": incidence out of (0, 90) deg");
  require(footprint_km2 > 0.0, "sensor " + id + ": footprint area must be positive");
  require(span_low_ghz > 0.0 && span_low_ghz < span_high_ghz, "sensor " + id + ": bad channel span");
}

const SensorSpec& SensorCatalog::find(const std::string& id) const {
  for (const auto& s : sensors) {
    if (s.id == id) return s;
  }
  throw InvalidArgument("unknown sensor '" + id + "'");
}

SensorCatalog builtin_catalog() {
  // id, H, i, G_rx, span, footprint, published net gain, published slant
  return {"1",
          {
              {"B1", 705.00, 55.0, 38.8, 6.750, 7.100, 3225.0, -145.28, 1124.2},
              {"B3", 830.00, 65.0, 35.5, 6.750, 7.100, 11690.0, -151.70, 1610.3},
              {"B4", 699.60, 55.0, 40.6, 6.750, 7.100, 2170.0, -143.41, 1116.2},
              {"B5", 820.00, 55.0, 51.5, 6.725, 7.125, 209.0, -133.79, 1292.9},
              {"B7", 665.96, 55.0, 40.6, 6.750, 7.100, 1881.0, -143.02, 1066.2},
          }};
}

SensorCatalog read_catalog_csv(std::istream& in) {
  SensorCatalog catalog;
  std::string text;
  std::vector<csv::Row> rows;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::string t = csv::trim(text);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string key = "version:";
      auto pos = t.find(key);
      if (pos != std::string::npos) catalog.version = csv::trim(t.substr(pos + key.size()));
      continue;
    }
    rows.push_back({line, csv::split_line(text)});
  }
  if (rows.empty()) throw InvalidArgument("sensor catalog is empty");

  const auto& header = rows.front().fields;
  const char* names[] = {"sensor_id",        "altitude_km",  "incidence_deg",
                         "slant_km",         "g_rx_dbi",     "net_link_gain_db",
                         "span_low_ghz",     "span_high_ghz", "footprint_km2"};
  int idx[9];
  for (int c = 0; c < 9; ++c) {
    idx[c] = csv::column_index(header, names[c]);
    if (idx[c] < 0) throw InvalidArgument(std::string("sensor catalog missing column ") + names[c]);
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != header.size()) {
      throw InvalidArgument("sensor catalog line " + std::to_string(rows[r].line) +
                            ": expected " + std::to_string(header.size()) + " fields");
    }
    auto num = [&](int c) { return parse_number(f[idx[c]], rows[r].line, names[c]); };
    SensorSpec s;
    s.id = f[idx[0]];
    s.altitude_km = num(1);
    s.incidence_deg = num(2);
    s.published_slant_km = num(3);
    s.g_rx_dbi = num(4);
    s.published_net_gain_db = num(5);
    s.span_low_ghz = num(6);
    s.span_high_ghz = num(7);
    s.footprint_km2 = num(8);
    s.validate();
    catalog.sensors.push_back(std::move(s));
  }
  return catalog;
}

SensorCatalog read_catalog_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("sensor catalog JSON: ") + e.what());
  }
  SensorCatalog catalog;
  catalog.version = doc.value("version", "");
  for (const auto& j : doc.at("sensors")) {
    SensorSpec s;
    s.id = j.at("sensor_id").get<std::string>();
    s.altitude_km = j.at("altitude_km").get<double>();
    s.incidence_deg = j.at("incidence_deg").get<double>();
    s.published_slant_km = j.at("slant_km").get<double>();
    s.g_rx_dbi = j.at("g_rx_dbi").get<double>();
    s.published_net_gain_db = j.at("net_link_gain_db").get<double>();
    s.span_low_ghz = j.at("span_low_ghz").get<double>();
    s.span_high_ghz = j.at("span_high_ghz").get<double>();
    s.footprint_km2 = j.at("footprint_km2").get<double>();
    s.validate();
    catalog.sensors.push_back(std::move(s));
  }
  return catalog;
}

SensorCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sensor catalog: " + path.string());
  if (path.extension() == ".json") return read_catalog_json(in);
  return read_catalog_csv(in);
}

double slant_range_km(double altitude_km, double incidence_deg, double earth_radius_km) {
  require(altitude_km > 0.0, "altitude must be positive");
  require(incidence_deg > 0.0 && incidence_deg < 90.0, "incidence angle must be in (0, 90) deg");
  require(earth_radius_km > 0.0, "earth radius must be positive");
  const double i = deg_to_rad(incidence_deg);
  // Off-nadir angle at the satellite, then Earth-central angle.
  const double eta = std::asin(earth_radius_km * std::sin(i) / (earth_radius_km + altitude_km));
  const double gamma = i - eta;
  return earth_radius_km * std::sin(gamma) / std::sin(eta);
}

double free_space_path_loss_db(double f_ghz, double distance_km) {
  require(f_ghz > 0.0 && distance_km > 0.0, "FSPL needs positive frequency and distance");
  return 92.45 + 20.0 * std::log10(f_ghz) + 20.0 * std::log10(distance_km);
}

LinkBudget build_link_budget(const SensorSpec& sensor, double g_tx_db, double f_ghz,
                             const LossExtras& extras, double earth_radius_km) {
  sensor.validate();
  LinkBudget b;
  b.sensor_id = sensor.id;
  b.eval_freq_ghz = f_ghz;
  b.slant_km = slant_range_km(sensor.altitude_km, sensor.incidence_deg, earth_radius_km);
  b.fspl_db = free_space_path_loss_db(f_ghz, b.slant_km);
  b.l_pol_db = extras.polarization_db;
  b.l_atm_db = extras.atmospheric_db;
  b.l_clut_db = extras.clutter_db;
  b.l_tot_db = b.fspl_db + b.l_pol_db + b.l_atm_db + b.l_clut_db;
  b.g_tx_db = g_tx_db;
  b.g_rx_dbi = sensor.g_rx_dbi;
  b.net_gain_db = g_tx_db + sensor.g_rx_dbi - b.l_tot_db;
  b.published_net_gain_db = sensor.published_net_gain_db;
  b.discrepancy_db = b.net_gain_db - b.published_net_gain_db;
  return b;
}

double coupling_gain_db(const LinkBudget& budget, CouplingSource source) {
  return source == CouplingSource::Published ? budget.published_net_gain_db : budget.net_gain_db;
}

std::string to_json(const LinkBudget& b) {
  nlohmann::ordered_json j;
  j["sensor_id"] = b.sensor_id;
  j["eval_freq_ghz"] = b.eval_freq_ghz;
  j["slant_km"] = b.slant_km;
  j["fspl_db"] = b.fspl_db;
  j["l_pol_db"] = b.l_pol_db;
  j["l_atm_db"] = b.l_atm_db;
  j["l_clut_db"] = b.l_clut_db;
  j["l_tot_db"] = b.l_tot_db;
  j["g_tx_db"] = b.g_tx_db;
  j["g_rx_dbi"] = b.g_rx_dbi;
  j["net_gain_db"] = b.net_gain_db;
  j["published_net_gain_db"] = b.published_net_gain_db;
  j["discrepancy_db"] = b.discrepancy_db;
  return j.dump(2);
}

void write_link_budget_csv(std::ostream& out, const std::vector<LinkBudget>& rows) {
  out << "sensor_id,eval_freq_ghz,slant_km,fspl_db,l_pol_db,l_atm_db,l_clut_db,l_tot_db,"
         "g_tx_db,g_rx_dbi,net_gain_db,published_net_gain_db,discrepancy_db\n";
  for (const auto& b : rows) {
    std::ostringstream s;
    s << std::fixed << csv::escape(b.sensor_id) << ',' << std::setprecision(4) << b.eval_freq_ghz
      << ',' << std::setprecision(3) << b.slant_km << ',' << std::setprecision(4) << b.fspl_db << ','
      << b.l_pol_db << ',' << b.l_atm_db << ',' << b.l_clut_db << ',' << b.l_tot_db << ','
      << b.g_tx_db << ',' << b.g_rx_dbi << ',' << b.net_gain_db << ',' << b.published_net_gain_db
      << ',' << b.discrepancy_db;
    out << s.str() << '\n';
  }
}

}  // namespace eessrfi::linkbudget
