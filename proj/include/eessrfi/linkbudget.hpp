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

// BS -> EESS sensor geometry and partial link budget.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace eessrfi::linkbudget {

struct SensorSpec {
  std::string id;
  double altitude_km = 0.0;
  double incidence_deg = 0.0;
  double g_rx_dbi = 0.0;
  double span_low_ghz = 0.0;
  double span_high_ghz = 0.0;
  double footprint_km2 = 0.0;
  double published_net_gain_db = 0.0;
  double published_slant_km = 0.0;

  void validate() const;
};

struct SensorCatalog {
  std::string version;
  std::vector<SensorSpec> sensors;

  const SensorSpec& find(const std::string& id) const;
};

/// Five-sensor catalog compiled into the library (matches data/sensors_v1.csv).
SensorCatalog builtin_catalog();

// Columns: sensor_id,altitude_km,incidence_deg,slant_km,g_rx_dbi,net_link_gain_db,
//          span_low_ghz,span_high_ghz,footprint_km2
// A leading "# version: <tag>" comment sets the catalog version.
SensorCatalog read_catalog_csv(std::istream& in);
SensorCatalog read_catalog_json(std::istream& in);
SensorCatalog load_catalog(const std::filesystem::path& path);  // by extension

/// Ground-to-sensor slant range from spherical-Earth geometry (law of sines).
double slant_range_km(double altitude_km, double incidence_deg,
                      double earth_radius_km = 6371.0);

double free_space_path_loss_db(double f_ghz, double distance_km);

struct LossExtras {
  double polarization_db = 3.0;
  double atmospheric_db = 0.3;
  double clutter_db = 5.5;

  double total() const { return polarization_db + atmospheric_db + clutter_db; }
};

struct LinkBudget {
  std::string sensor_id;
  double eval_freq_ghz = 0.0;
  double slant_km = 0.0;
  double fspl_db = 0.0;
  double l_pol_db = 0.0;
  double l_atm_db = 0.0;
  double l_clut_db = 0.0;
  double l_tot_db = 0.0;
  double g_tx_db = 0.0;
  double g_rx_dbi = 0.0;
  double net_gain_db = 0.0;
  double published_net_gain_db = 0.0;
  double discrepancy_db = 0.0;  // net_gain_db - published_net_gain_db
};

LinkBudget build_link_budget(const SensorSpec& sensor, double g_tx_db = -10.0,
                             double f_ghz = 6.925, const LossExtras& extras = {},
                             double earth_radius_km = 6371.0);

enum class CouplingSource { Published, Recomputed };

/// Net gain consumers should use: the catalog value, or the recomputed one.
double coupling_gain_db(const LinkBudget& budget, CouplingSource source);

std::string to_json(const LinkBudget& budget);
void write_link_budget_csv(std::ostream& out, const std::vector<LinkBudget>& rows);

}  // namespace eessrfi::linkbudget
