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

#include "eessrfi/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "eessrfi/units.hpp"

namespace eessrfi::config {

using nlohmann::json;

std::string to_string(linkbudget::CouplingSource source) {
  return source == linkbudget::CouplingSource::Published ? "published" : "recomputed";
}

std::string to_string(airlink::DistanceSampling sampling) {
  return sampling == airlink::DistanceSampling::UniformDistance ? "uniform_distance" : "uniform_area";
}

std::string to_string(airlink::LosMode mode) {
  switch (mode) {
    case airlink::LosMode::Random: return "random";
    case airlink::LosMode::AlwaysLos: return "los";
    case airlink::LosMode::AlwaysNlos: return "nlos";
  }
  return "random";
}

std::string to_string(adoption::AnchorMode mode) {
  return mode == adoption::AnchorMode::TemplateOffset ? "template_offset" : "time_shift";
}

namespace {

using Setter = std::function<void(const json&)>;

template <typename T>
Setter set(T& field) {
  return [&field](const json& v) { field = v.get<T>(); };
}

template <typename E>
Setter set_enum(E& field, std::map<std::string, E> names) {
  return [&field, names = std::move(names)](const json& v) {
    const auto s = v.get<std::string>();
    const auto it = names.find(s);
    if (it == names.end()) throw InvalidArgument("unrecognised value '" + s + "'");
    field = it->second;
  };
}

void apply(const json& doc, const std::string& section, const std::map<std::string, Setter>& setters) {
  if (!doc.contains(section)) return;
  const auto& obj = doc.at(section);
  if (!obj.is_object()) throw InvalidArgument("config section '" + section + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw InvalidArgument("unknown config key '" + section + "." + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw InvalidArgument("bad value for '" + section + "." + key + "': " + e.what());
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("bad value for '" + section + "." + key + "': " + e.what());
    }
  }
}

}  // namespace

RunConfig parse_run_config(const json& doc, const RunConfig& defaults) {
  if (!doc.is_object()) throw InvalidArgument("config root must be a JSON object");
  static const char* const sections[] = {"scenario", "filter", "adoption", "cell", "losses"};
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* s : sections) known = known || key == s;
    if (!known) throw InvalidArgument("unknown config section '" + key + "'");
  }

  RunConfig cfg = defaults;
  auto& sc = cfg.scenario;
  auto& cell = cfg.cell;
  auto& ad = sc.adoption;

  apply(doc, "scenario",
        {{"year", set(sc.year)},
         {"adoption_factor", set(sc.adoption_factor)},
         {"guard_mhz", set(sc.guard_mhz)},
         {"rate_bps", set(sc.rate_bps)},
         {"demand_rate_bps", set(sc.demand_rate_bps)},
         {"trials", set(sc.trials)},
         {"seed", set(sc.seed)},
         {"sensors", set(sc.sensors)},
         {"threshold_dbw", set(sc.threshold_dbw)},
         {"reference_bw_mhz", set(sc.reference_bw_mhz)},
         {"p_bs_dbw", set(sc.p_bs_dbw)},
         {"spectral_efficiency", set(sc.spectral_efficiency)},
         {"county_fips", set(sc.county_fips)},
         {"coupling", set_enum(sc.coupling, {{"published", linkbudget::CouplingSource::Published},
                                             {"recomputed", linkbudget::CouplingSource::Recomputed}})},
         {"g_tx_db", set(sc.g_tx_db)},
         {"link_eval_ghz", set(sc.link_eval_ghz)},
         {"earth_radius_km", set(sc.earth_radius_km)},
         {"threads", set(sc.threads)}});
  apply(doc, "filter",
        {{"order", set(sc.filter_order)},
         {"ripple_db", set(sc.ripple_db)},
         {"grid_step_mhz", set(sc.grid_step_mhz)},
         {"eess_edge_ghz", set(sc.eess_edge_ghz)},
         {"tn_top_ghz", set(sc.tn_top_ghz)}});
  apply(doc, "adoption",
        {{"b1", set(ad.b1)},
         {"b2", set(ad.b2)},
         {"b3", set(ad.b3)},
         {"anchor_year", set(ad.anchor_year)},
         {"anchor_penetration", set(ad.anchor_penetration)},
         {"anchor_mode", set_enum(ad.anchor_mode, {{"template_offset", adoption::AnchorMode::TemplateOffset},
                                                   {"time_shift", adoption::AnchorMode::TimeShift}})}});
  apply(doc, "cell",
        {{"n_antennas", set(cell.n_antennas)},
         {"n_users", set(cell.n_users)},
         {"r_min_m", set(cell.r_min_m)},
         {"r_cell_m", set(cell.r_cell_m)},
         {"carrier_ghz", set(cell.carrier_ghz)},
         {"bs_height_m", set(cell.bs_height_m)},
         {"ut_height_m", set(cell.ut_height_m)},
         {"tx_gain_db", set(cell.tx_gain_db)},
         {"noise_temp_k", set(cell.noise_temp_k)},
         {"shadowing", set(cell.shadowing)},
         {"sampling", set_enum(cell.sampling, {{"uniform_distance", airlink::DistanceSampling::UniformDistance},
                                               {"uniform_area", airlink::DistanceSampling::UniformArea}})},
         {"los_mode", set_enum(cell.los_mode, {{"random", airlink::LosMode::Random},
                                               {"los", airlink::LosMode::AlwaysLos},
                                               {"nlos", airlink::LosMode::AlwaysNlos}})}});
  apply(doc, "losses",
        {{"polarization_db", set(sc.extras.polarization_db)},
         {"atmospheric_db", set(sc.extras.atmospheric_db)},
         {"clutter_db", set(sc.extras.clutter_db)}});

  sc.validate();
  cell.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& defaults) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(doc, defaults);
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  const auto& sc = cfg.scenario;
  const auto& cell = cfg.cell;
  const auto& ad = sc.adoption;
  nlohmann::ordered_json j;
  j["scenario"] = {{"year", sc.year},
                   {"adoption_factor", sc.adoption_factor},
                   {"guard_mhz", sc.guard_mhz},
                   {"rate_bps", sc.rate_bps},
                   {"demand_rate_bps", sc.demand_rate_bps},
                   {"trials", sc.trials},
                   {"seed", sc.seed},
                   {"sensors", sc.sensors},
                   {"threshold_dbw", sc.threshold_dbw},
                   {"reference_bw_mhz", sc.reference_bw_mhz},
                   {"p_bs_dbw", sc.p_bs_dbw},
                   {"spectral_efficiency", sc.spectral_efficiency},
                   {"county_fips", sc.county_fips},
                   {"coupling", to_string(sc.coupling)},
                   {"g_tx_db", sc.g_tx_db},
                   {"link_eval_ghz", sc.link_eval_ghz},
                   {"earth_radius_km", sc.earth_radius_km}};
  j["filter"] = {{"order", sc.filter_order},
                 {"ripple_db", sc.ripple_db},
                 {"grid_step_mhz", sc.grid_step_mhz},
                 {"eess_edge_ghz", sc.eess_edge_ghz},
                 {"tn_top_ghz", sc.tn_top_ghz}};
  j["adoption"] = {{"b1", ad.b1},
                   {"b2", ad.b2},
                   {"b3", ad.b3},
                   {"anchor_year", ad.anchor_year},
                   {"anchor_penetration", ad.anchor_penetration},
                   {"anchor_mode", to_string(ad.anchor_mode)}};
  j["cell"] = {{"n_antennas", cell.n_antennas},
               {"n_users", cell.n_users},
               {"r_min_m", cell.r_min_m},
               {"r_cell_m", cell.r_cell_m},
               {"carrier_ghz", cell.carrier_ghz},
               {"bs_height_m", cell.bs_height_m},
               {"ut_height_m", cell.ut_height_m},
               {"tx_gain_db", cell.tx_gain_db},
               {"noise_temp_k", cell.noise_temp_k},
               {"shadowing", cell.shadowing},
               {"sampling", to_string(cell.sampling)},
               {"los_mode", to_string(cell.los_mode)}};
  j["losses"] = {{"polarization_db", sc.extras.polarization_db},
                 {"atmospheric_db", sc.extras.atmospheric_db},
                 {"clutter_db", sc.extras.clutter_db}};
  return j;
}

}  // namespace eessrfi::config
