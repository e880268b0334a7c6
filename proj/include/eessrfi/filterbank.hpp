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

// Band-pass (filtenna) spectral response of a terrestrial base station and
// the out-of-band leakage it produces inside a passive sensor's channel.

#include <iosfwd>
#include <string>
#include <vector>

namespace eessrfi::filterbank {

/// Chebyshev Type-I band-pass design. Frequencies in GHz, grid step in MHz.
struct FilterSpec {
  int order = 7;
  double passband_ripple_db = 0.2;
  double passband_low_ghz = 7.15;
  double passband_high_ghz = 7.40;
  double grid_step_mhz = 0.01;

  double center_ghz() const;     // geometric mean of the band edges
  double bandwidth_mhz() const;  // passband width
  void validate() const;
};

struct VictimWindow {
  double f_low_ghz = 0.0;
  double f_high_ghz = 0.0;

  double width_mhz() const { return (f_high_ghz - f_low_ghz) * 1e3; }
};

struct LeakageProfile {
  std::string sensor_id;
  double delta = 0.0;  // fraction of BS power landing in the window
  VictimWindow window;
  double bs_bandwidth_mhz = 0.0;

  double delta_db() const;
};

/// Normalised low-pass prototype frequency for f. |Omega| <= 1 inside the passband.
double prototype_frequency(const FilterSpec& spec, double f_ghz);

/// Chebyshev polynomial of the first kind, valid for all real x.
double chebyshev_t(int order, double x);

/// |H(f)|^2 of the band-pass response; peaks at 1.
double power_response(const FilterSpec& spec, double f_ghz);

/// Worst-case `ref_bw_mhz` window of a sensor channel: the slice abutting the
/// channel edge nearest the BS band.
VictimWindow worst_victim_window(double span_low_ghz, double span_high_ghz, double ref_bw_mhz,
                                 double bs_low_ghz, double bs_high_ghz);

/// Trapezoidal integral of the power response over the window, divided by
/// the BS bandwidth. Window and passband must be disjoint.
LeakageProfile leakage_fraction(const FilterSpec& spec, const VictimWindow& window,
                                double bs_bandwidth_mhz, std::string sensor_id = {});

struct EdgePsd {
  double in_band_psd_dbm_per_mhz = 0.0;
  double leaked_psd_dbm_per_mhz = 0.0;
  double limit_dbm_per_mhz = 0.0;
  double margin_db = 0.0;  // positive means compliant
};

// Flat in-band PSD: total power p_tx spread over the passband width.
EdgePsd edge_psd_margin(const FilterSpec& spec, double p_tx_dbw, double eval_f_ghz,
                        double limit_dbm_per_mhz = -13.0);

struct LeakageRow {
  std::string sensor_id;
  int order = 0;
  double guard_mhz = 0.0;
  double delta = 0.0;
};

void write_leakage_csv(std::ostream& out, const std::vector<LeakageRow>& rows);

}  // namespace eessrfi::filterbank
