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

// Gompertz technology-diffusion model: evaluation, anchoring onto a
// deployment calendar, fitting, and growth-rate scenarios.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace eessrfi::adoption {

// How the fitted curve is placed on the deployment calendar.
//
// TemplateOffset: the curve is started at the anchor year (t = year - anchor)
//   and its rise above Y(0) is rescaled so Y(anchor) = anchor_penetration while
//   the saturation b1 is kept.
// TimeShift: t is shifted so the unmodified curve passes through the anchor.
enum class AnchorMode { TemplateOffset, TimeShift };

struct AdoptionModel {
  double b1 = 38.100;  // saturation, subscriptions per 100 people
  double b2 = 3.272;   // displacement
  double b3 = 0.186;   // growth rate, 1/year
  double anchor_year = 2030.0;
  double anchor_penetration = 1.0;
  AnchorMode anchor_mode = AnchorMode::TemplateOffset;

  void validate() const;
};

/// Fitted landline-internet shape, anchored at 1 per 100 in 2030.
AdoptionModel baseline_model();

/// b1 * exp(-b2 * exp(-b3 * t))
double gompertz_curve(double b1, double b2, double b3, double t);

/// Penetration (per 100 people) in a calendar year. Years before the anchor
/// are outside the deployment window; the result is floored at zero there.
double penetration(const AdoptionModel& model, double year);

/// Scales the growth rate b3; b1, b2 and the anchor are kept.
AdoptionModel scale_scenario(const AdoptionModel& model, double factor);

AdoptionModel reanchor(const AdoptionModel& model, double year, double value);

struct PenetrationSeries {
  std::vector<double> years;
  std::vector<double> values;

  void validate() const;
  std::size_t size() const { return years.size(); }
};

// Two columns: year, per-100 value. A header row is optional.
PenetrationSeries read_series_csv(std::istream& in);
PenetrationSeries load_series(const std::filesystem::path& path);

enum class FitStatus { Converged, MaxIterations, Degenerate };

std::string to_string(FitStatus status);

struct FitResult {
  FitStatus status = FitStatus::Degenerate;
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double time_origin = 0.0;    // t = year - time_origin (first year of the series)
  double residual_norm = 0.0;  // Euclidean norm of residuals at the returned point
  double initial_residual_norm = 0.0;
  int iterations = 0;
  std::string message;

  bool ok() const { return status == FitStatus::Converged; }
};

struct FitOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-8;
};

/// Levenberg-Marquardt least squares on log-parameters. The init model's
/// b1..b3 are the starting point, in the series' own time index.
FitResult fit_gompertz(const PenetrationSeries& series, const AdoptionModel& init,
                       const FitOptions& options = {});

}  // namespace eessrfi::adoption
