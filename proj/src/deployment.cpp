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

#include "eessrfi/deployment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "eessrfi/csv.hpp"

namespace eessrfi::deployment {

namespace {

bool valid_fips(const std::string& s) {
  return s.size() == 5 && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::optional<double> to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::int64_t> to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) return std::nullopt;
    return static_cast<std::int64_t>(v);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Integer-valued products such as 1e5 * 1e8 / 1.25e10 can land a few ulps off;
// values this close to an integer are treated as that integer.
constexpr double integer_snap = 1e-9;

std::int64_t safe_ceil(double x) {
  double r = std::round(x);
  if (std::abs(x - r) <= integer_snap * std::abs(x)) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(x));
}

std::int64_t safe_floor(double x) {
  double r = std::round(x);
  if (std::abs(x - r) <= integer_snap * std::abs(x)) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(x));
}

}  // namespace

IngestResult ingest_counties(std::istream& counties, std::istream& gazetteer,
                             const std::string& counties_name, const std::string& gazetteer_name) {
  IngestResult out;

  std::map<std::string, double> areas;
  {
    auto rows = csv::read_rows(gazetteer);
    if (rows.empty()) throw IngestError(gazetteer_name + ": empty file");
    const auto& header = rows.front().fields;
    const int c_fips = csv::column_index(header, "fips");
    const int c_area = csv::column_index(header, "land_area_km2");
    if (c_fips < 0 || c_area < 0) throw IngestError(gazetteer_name + ": header must contain fips,land_area_km2");
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.fields.size() != header.size()) {
        out.diagnostics.push_back({gazetteer_name, row.line, "wrong field count"});
        continue;
      }
      const std::string& fips = row.fields[c_fips];
      auto area = to_double(row.fields[c_area]);
      if (!valid_fips(fips)) {
        out.diagnostics.push_back({gazetteer_name, row.line, "invalid FIPS '" + fips + "'"});
        continue;
      }
      if (!area || *area <= 0.0) {
        out.diagnostics.push_back({gazetteer_name, row.line, "invalid land area for " + fips});
        continue;
      }
      if (!areas.emplace(fips, *area).second) {
        throw IngestError(gazetteer_name + " line " + std::to_string(row.line) + ": duplicate FIPS " + fips);
      }
    }
  }

  auto rows = csv::read_rows(counties);
  if (rows.empty()) throw IngestError(counties_name + ": empty file");
  const auto& header = rows.front().fields;
  const int c_fips = csv::column_index(header, "fips");
  const int c_name = csv::column_index(header, "name");
  const int c_state = csv::column_index(header, "state");
  const int c_rucc = csv::column_index(header, "rucc_code");
  const int c_pop = csv::column_index(header, "population");
  if (c_fips < 0 || c_name < 0 || c_state < 0 || c_rucc < 0 || c_pop < 0) {
    throw IngestError(counties_name + ": header must contain fips,name,state,rucc_code,population");
  }

  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto diag = [&](const std::string& msg) { out.diagnostics.push_back({counties_name, row.line, msg}); };
    if (row.fields.size() != header.size()) {
      diag("wrong field count");
      continue;
    }
    CountyRecord rec;
    rec.fips = row.fields[c_fips];
    rec.name = row.fields[c_name];
    rec.state = row.fields[c_state];
    if (!valid_fips(rec.fips)) {
      diag("invalid FIPS '" + rec.fips + "'");
      continue;
    }
    if (!seen.insert(rec.fips).second) {
      throw IngestError(counties_name + " line " + std::to_string(row.line) + ": duplicate FIPS " + rec.fips);
    }
    auto rucc = to_int(row.fields[c_rucc]);
    if (!rucc || *rucc < 1 || *rucc > 9) {
      diag("invalid rucc_code for " + rec.fips);
      continue;
    }
    rec.rucc_code = static_cast<int>(*rucc);
    auto pop = to_int(row.fields[c_pop]);
    if (!pop || *pop < 0) {
      diag("invalid population for " + rec.fips);
      continue;
    }
    rec.population = *pop;
    if (!rec.is_metro()) {
      ++out.non_metro_excluded;
      continue;
    }
    auto area = areas.find(rec.fips);
    if (area == areas.end()) {
      diag("no land area for " + rec.fips + "; record rejected");
      continue;
    }
    rec.land_area_km2 = area->second;
    out.records.push_back(std::move(rec));
  }
  return out;
}

IngestResult ingest_counties(const std::filesystem::path& counties, const std::filesystem::path& gazetteer) {
  std::ifstream c(counties);
  if (!c) throw IoError("cannot open county file: " + counties.string());
  std::ifstream g(gazetteer);
  if (!g) throw IoError("cannot open gazetteer file: " + gazetteer.string());
  return ingest_counties(c, g, counties.filename().string(), gazetteer.filename().string());
}

const CountyRecord& find_county(const std::vector<CountyRecord>& records, const std::string& fips) {
  for (const auto& r : records) {
    if (r.fips == fips) return r;
  }
  throw InvalidArgument("county " + fips + " not in the record set");
}

std::int64_t bs_count(const CountyRecord& county, double penetration_per_100, double rate_bps,
                      double spectral_efficiency, double bandwidth_hz) {
  require(penetration_per_100 >= 0.0 && rate_bps >= 0.0, "penetration and rate must be non-negative");
  require(spectral_efficiency > 0.0 && bandwidth_hz > 0.0, "spectral efficiency and bandwidth must be positive");
  const double users = static_cast<double>(county.population) * penetration_per_100 / 100.0;
  return safe_ceil(users * rate_bps / (spectral_efficiency * bandwidth_hz));
}

std::int64_t footprint_bs_count(std::int64_t n_bs, double a_sat_km2, double a_county_km2,
                                std::optional<double> overlap_fraction) {
  require(n_bs >= 0, "base-station count must be non-negative");
  require(a_sat_km2 > 0.0 && a_county_km2 > 0.0, "areas must be positive");
  const double max_fraction = std::min(a_sat_km2, a_county_km2) / a_county_km2;
  double fraction = max_fraction;
  if (overlap_fraction) {
    require(*overlap_fraction >= 0.0 && *overlap_fraction <= max_fraction * (1.0 + 1e-12),
            "overlap fraction outside [0, min(a_sat, a_county) / a_county]");
    fraction = *overlap_fraction;
  }
  return safe_floor(fraction * static_cast<double>(n_bs));
}

const CountyDeployment& DeploymentSnapshot::find(const std::string& fips) const {
  for (const auto& c : counties) {
    if (c.fips == fips) return c;
  }
  throw InvalidArgument("county " + fips + " not in the snapshot");
}

DeploymentSnapshot build_snapshot(const std::vector<CountyRecord>& records, double year,
                                  double scenario_factor, double penetration_per_100,
                                  double rate_bps, double spectral_efficiency, double bandwidth_hz) {
  DeploymentSnapshot snap;
  snap.year = year;
  snap.scenario_factor = scenario_factor;
  snap.penetration_per_100 = penetration_per_100;
  snap.rate_bps = rate_bps;
  snap.spectral_efficiency = spectral_efficiency;
  snap.bandwidth_hz = bandwidth_hz;
  snap.counties.reserve(records.size());
  for (const auto& r : records) {
    snap.counties.push_back({r.fips, r.name, r.state, r.population, r.land_area_km2,
                             bs_count(r, penetration_per_100, rate_bps, spectral_efficiency, bandwidth_hz)});
  }
  return snap;
}

FootprintPick worst_case_footprint(const DeploymentSnapshot& snapshot, const linkbudget::SensorSpec& sensor) {
  require(!snapshot.counties.empty(), "worst-case footprint needs at least one county");
  require(sensor.footprint_km2 > 0.0, "sensor footprint area must be positive");
  const double a_sat = sensor.footprint_km2;
  const bool any_fits = std::any_of(snapshot.counties.begin(), snapshot.counties.end(),
                                    [&](const CountyDeployment& c) { return c.land_area_km2 >= a_sat; });
  std::optional<FootprintPick> best;
  for (const auto& c : snapshot.counties) {
    const bool fits = c.land_area_km2 >= a_sat;
    if (any_fits && !fits) continue;
    const auto count = footprint_bs_count(c.n_bs, a_sat, c.land_area_km2);
    if (!best || count > best->count || (count == best->count && c.fips < best->county.fips)) {
      best = FootprintPick{c, count, fits};
    }
  }
  return *best;
}

void write_snapshot_csv(std::ostream& out, const DeploymentSnapshot& snap, double footprint_km2) {
  out << "fips,name,state,population,land_area_km2,n_bs";
  if (footprint_km2 > 0.0) out << ",footprint_bs";
  out << '\n';
  for (const auto& c : snap.counties) {
    std::ostringstream s;
    s << c.fips << ',' << csv::escape(c.name) << ',' << csv::escape(c.state) << ',' << c.population << ','
      << std::fixed << std::setprecision(2) << c.land_area_km2 << ',' << c.n_bs;
    if (footprint_km2 > 0.0) s << ',' << footprint_bs_count(c.n_bs, footprint_km2, c.land_area_km2);
    out << s.str() << '\n';
  }
}

}  // namespace eessrfi::deployment
