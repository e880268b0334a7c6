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

#include "eessrfi/filterbank.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "eessrfi/csv.hpp"
#include "eessrfi/units.hpp"

namespace eessrfi::filterbank {

double FilterSpec::center_ghz() const { return std::sqrt(passband_low_ghz * passband_high_ghz); }

double FilterSpec::bandwidth_mhz() const { return (passband_high_ghz - passband_low_ghz) * 1e3; }

void FilterSpec::validate() const {
  require(order >= 1, "filter order must be >= 1");
  require(passband_ripple_db > 0.0 && std::isfinite(passband_ripple_db),
          "passband ripple must be positive");
  require(passband_low_ghz > 0.0 && passband_low_ghz < passband_high_ghz,
          "passband must satisfy 0 < low < high");
  require(grid_step_mhz > 0.0, "grid step must be positive");
}

double LeakageProfile::delta_db() const { return linear_to_db(delta); }

double prototype_frequency(const FilterSpec& spec, double f_ghz) {
  const double f0 = spec.center_ghz();
  const double fractional_bw = (spec.passband_high_ghz - spec.passband_low_ghz) / f0;
  return (f_ghz / f0 - f0 / f_ghz) / fractional_bw;
}

double chebyshev_t(int order, double x) {
  if (std::abs(x) <= 1.0) return std::cos(order * std::acos(x));
  const double magnitude = std::cosh(order * std::acosh(std::abs(x)));
  return (x < 0.0 && order % 2 != 0) ? -magnitude : magnitude;
}

double power_response(const FilterSpec& spec, double f_ghz) {
  spec.validate();
  require(f_ghz > 0.0 && std::isfinite(f_ghz), "frequency must be positive");
  const double eps2 = std::pow(10.0, spec.passband_ripple_db / 10.0) - 1.0;
  const double t = chebyshev_t(spec.order, prototype_frequency(spec, f_ghz));
  return 1.0 / (1.0 + eps2 * t * t);
}

VictimWindow worst_victim_window(double span_low_ghz, double span_high_ghz, double ref_bw_mhz,
                                 double bs_low_ghz, double bs_high_ghz) {
  require(ref_bw_mhz > 0.0, "reference bandwidth must be positive");
  require(span_low_ghz < span_high_ghz, "sensor span must satisfy low < high");
  require(bs_low_ghz < bs_high_ghz, "BS band must satisfy low < high");
  const double ref_ghz = ref_bw_mhz / 1e3;
  // 1 Hz slack so a span of exactly ref_bw is accepted despite rounding.
  require(span_high_ghz - span_low_ghz >= ref_ghz - 1e-9,
          "sensor span is narrower than the reference bandwidth");
  if (bs_low_ghz >= span_high_ghz) {
    return {span_high_ghz - ref_ghz, span_high_ghz};
  }
  require(bs_high_ghz <= span_low_ghz, "BS band overlaps the sensor span");
  return {span_low_ghz, span_low_ghz + ref_ghz};
}

LeakageProfile leakage_fraction(const FilterSpec& spec, const VictimWindow& window,
                                double bs_bandwidth_mhz, std::string sensor_id) {
  spec.validate();
  require(bs_bandwidth_mhz > 0.0, "BS bandwidth must be positive");
  require(window.f_low_ghz > 0.0 && window.f_low_ghz < window.f_high_ghz,
          "victim window must satisfy 0 < low < high");
  constexpr double touch_tol_ghz = 1e-12;
  const bool overlaps = window.f_high_ghz > spec.passband_low_ghz + touch_tol_ghz &&
                        window.f_low_ghz < spec.passband_high_ghz - touch_tol_ghz;
  require(!overlaps, "victim window overlaps the filter passband (co-channel case not modelled)");

  const double width_mhz = window.width_mhz();
  const auto intervals =
      static_cast<long>(std::max(1.0, std::ceil(width_mhz / spec.grid_step_mhz - 1e-9)));
  const double h_mhz = width_mhz / static_cast<double>(intervals);
  double sum = 0.5 * (power_response(spec, window.f_low_ghz) + power_response(spec, window.f_high_ghz));
  for (long i = 1; i < intervals; ++i) {
    sum += power_response(spec, window.f_low_ghz + i * h_mhz / 1e3);
  }

  LeakageProfile out;
  out.sensor_id = std::move(sensor_id);
  out.delta = sum * h_mhz / bs_bandwidth_mhz;
  out.window = window;
  out.bs_bandwidth_mhz = bs_bandwidth_mhz;
  return out;
}

EdgePsd edge_psd_margin(const FilterSpec& spec, double p_tx_dbw, double eval_f_ghz,
                        double limit_dbm_per_mhz) {
  spec.validate();
  require(std::isfinite(p_tx_dbw), "transmit power must be finite");
  EdgePsd out;
  out.in_band_psd_dbm_per_mhz = dbw_to_dbm(p_tx_dbw) - 10.0 * std::log10(spec.bandwidth_mhz());
  out.leaked_psd_dbm_per_mhz = out.in_band_psd_dbm_per_mhz + linear_to_db(power_response(spec, eval_f_ghz));
  out.limit_dbm_per_mhz = limit_dbm_per_mhz;
  out.margin_db = limit_dbm_per_mhz - out.leaked_psd_dbm_per_mhz;
  return out;
}

void write_leakage_csv(std::ostream& out, const std::vector<LeakageRow>& rows) {
  out << "sensor_id,order,guard_mhz,delta,delta_db\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line << csv::escape(r.sensor_id) << ',' << r.order << ',' << std::setprecision(6) << r.guard_mhz
         << ',' << std::setprecision(10) << r.delta << ',' << std::fixed << std::setprecision(4)
         << linear_to_db(r.delta);
    out << line.str() << '\n';
  }
}

}  // namespace eessrfi::filterbank
