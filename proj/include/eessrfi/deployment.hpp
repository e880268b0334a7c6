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

// County demographics -> base-station counts -> counts inside a sensor footprint.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eessrfi/linkbudget.hpp"
#include "eessrfi/units.hpp"

namespace eessrfi::deployment {

struct CountyRecord {
  std::string fips;  // 5 digits, state + county
  std::string name;
  std::string state;
  std::int64_t population = 0;
  double land_area_km2 = 0.0;
  int rucc_code = 0;

  bool is_metro() const { return rucc_code >= 1 && rucc_code <= 3; }
};

struct Diagnostic {
  std::string source;
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<CountyRecord> records;  // metro counties only, input order
  std::vector<Diagnostic> diagnostics;
  std::size_t non_metro_excluded = 0;
};

/// Raised for input that invalidates the whole ingestion (e.g. duplicate FIPS).
class IngestError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// County CSV: fips,name,state,rucc_code,population (any column order, header required).
// Gazetteer CSV: fips,land_area_km2.
// Malformed rows are skipped with a per-line diagnostic; a duplicate FIPS
// in either file throws IngestError.
IngestResult ingest_counties(std::istream& counties, std::istream& gazetteer,
                             const std::string& counties_name = "counties",
                             const std::string& gazetteer_name = "gazetteer");
IngestResult ingest_counties(const std::filesystem::path& counties,
                             const std::filesystem::path& gazetteer);

const CountyRecord& find_county(const std::vector<CountyRecord>& records, const std::string& fips);

/// ceil(users * rate / (eta * B)); users = population * penetration / 100.
std::int64_t bs_count(const CountyRecord& county, double penetration_per_100, double rate_bps,
                      double spectral_efficiency, double bandwidth_hz);

/// floor(overlap * n_bs). Without an explicit overlap the footprint is taken to
/// lie inside the county: overlap = min(a_sat, a_county) / a_county.
std::int64_t footprint_bs_count(std::int64_t n_bs, double a_sat_km2, double a_county_km2,
                                std::optional<double> overlap_fraction = std::nullopt);

struct CountyDeployment {
  std::string fips;
  std::string name;
  std::string state;
  std::int64_t population = 0;
  double land_area_km2 = 0.0;
  std::int64_t n_bs = 0;
};

struct DeploymentSnapshot {
  double year = 0.0;
  double scenario_factor = 1.0;
  double penetration_per_100 = 0.0;
  double rate_bps = 0.0;
  double spectral_efficiency = 0.0;
  double bandwidth_hz = 0.0;
  std::vector<CountyDeployment> counties;

  const CountyDeployment& find(const std::string& fips) const;
};

DeploymentSnapshot build_snapshot(const std::vector<CountyRecord>& records, double year,
                                  double scenario_factor, double penetration_per_100,
                                  double rate_bps, double spectral_efficiency, double bandwidth_hz);

struct FootprintPick {
  CountyDeployment county;
  std::int64_t count = 0;
  bool footprint_fits_in_county = false;
};

// Argmax of the footprint count over counties that can contain the whole
// footprint; falls back to every county when none can. Ties go to the lower FIPS.
FootprintPick worst_case_footprint(const DeploymentSnapshot& snapshot,
                                   const linkbudget::SensorSpec& sensor);

void write_snapshot_csv(std::ostream& out, const DeploymentSnapshot& snapshot,
                        double footprint_km2 = 0.0);

}  // namespace eessrfi::deployment
