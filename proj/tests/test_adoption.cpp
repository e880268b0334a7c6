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

#include <cmath>
#include <random>
#include <sstream>

#include "eessrfi/adoption.hpp"
#include "eessrfi/units.hpp"

using namespace eessrfi;
using namespace eessrfi::adoption;

namespace {

PenetrationSeries synthetic(double b1, double b2, double b3, int first, int last, double noise = 0.0,
                            unsigned seed = 0) {
  PenetrationSeries s;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, noise > 0.0 ? noise : 1.0);
  for (int y = first; y <= last; ++y) {
    s.years.push_back(y);
    const double v = gompertz_curve(b1, b2, b3, y - first) + (noise > 0.0 ? n(rng) : 0.0);
    s.values.push_back(std::clamp(v, 0.0, 100.0));
  }
  return s;
}

AdoptionModel start_point() {
  AdoptionModel m;
  m.b1 = 30.0;
  m.b2 = 2.5;
  m.b3 = 0.25;
  return m;
}

}  // namespace

TEST_CASE("anchored baseline and growth scenarios") {
  const auto base = baseline_model();
  CHECK(penetration(base, 2030) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(penetration(base, 2035) == doctest::Approx(10.0).epsilon(1.0 / 10.0));
  CHECK(penetration(base, 2040) == doctest::Approx(22.5).epsilon(1.0 / 22.5));

  const auto slow = scale_scenario(base, 0.5);
  CHECK(penetration(slow, 2030) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(penetration(slow, 2035) == doctest::Approx(5.0).epsilon(1.0 / 5.0));
  CHECK(penetration(slow, 2040) == doctest::Approx(10.5).epsilon(1.0 / 10.5));

  const auto fast = scale_scenario(base, 1.5);
  CHECK(penetration(fast, 2030) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(penetration(fast, 2035) == doctest::Approx(17.0).epsilon(1.5 / 17.0));
  CHECK(penetration(fast, 2040) == doctest::Approx(30.0).epsilon(1.5 / 30.0));
}

TEST_CASE("unit scenario factor is the identity") {
  const auto base = baseline_model();
  const auto same = scale_scenario(base, 1.0);
  for (double y = 2030; y <= 2060; y += 1.0) CHECK(penetration(same, y) == penetration(base, y));
}

TEST_CASE("both anchor modes hit the anchor and saturate at b1") {
  for (auto mode : {AnchorMode::TemplateOffset, AnchorMode::TimeShift}) {
    auto m = baseline_model();
    m.anchor_mode = mode;
    CHECK(penetration(m, m.anchor_year) == doctest::Approx(m.anchor_penetration).epsilon(1e-12));
    CHECK(penetration(m, 2300) == doctest::Approx(m.b1).epsilon(1e-9));
    m = reanchor(m, 2028, 3.0);
    CHECK(penetration(m, 2028) == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("penetration is increasing in year and in the growth rate") {
  for (auto mode : {AnchorMode::TemplateOffset, AnchorMode::TimeShift}) {
    auto base = baseline_model();
    base.anchor_mode = mode;
    double prev = -1.0;
    for (double y = 2030; y <= 2080; y += 0.5) {
      const double v = penetration(base, y);
      CHECK(v > prev);
      prev = v;
    }
    for (double y : {2031.0, 2035.0, 2040.0, 2050.0}) {
      double last = 0.0;
      for (double f : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        const double v = penetration(scale_scenario(base, f), y);
        CHECK(v > last);
        last = v;
      }
    }
  }
}

TEST_CASE("model validation") {
  auto m = baseline_model();
  m.anchor_penetration = m.b1;
  CHECK_THROWS_AS(penetration(m, 2035), InvalidArgument);
  CHECK_THROWS_AS(scale_scenario(baseline_model(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(scale_scenario(baseline_model(), -1.0), InvalidArgument);
  m = baseline_model();
  m.b3 = 0.0;
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
}

TEST_CASE("noiseless fit recovers the generating parameters") {
  const auto series = synthetic(38.100, 3.272, 0.186, 2000, 2040);
  const auto fit = fit_gompertz(series, start_point());
  REQUIRE(fit.ok());
  CHECK(fit.b1 == doctest::Approx(38.100).epsilon(1e-4));
  CHECK(fit.b2 == doctest::Approx(3.272).epsilon(1e-4));
  CHECK(fit.b3 == doctest::Approx(0.186).epsilon(1e-4));
  CHECK(fit.time_origin == 2000.0);
  CHECK(fit.residual_norm < 1e-6);
  CHECK(fit.residual_norm <= fit.initial_residual_norm);
}

TEST_CASE("noisy fits recover b1 within 5% over 100 seeds") {
  int within = 0;
  for (unsigned seed = 0; seed < 100; ++seed) {
    const auto series = synthetic(38.100, 3.272, 0.186, 2000, 2040, 0.5, seed);
    const auto fit = fit_gompertz(series, start_point());
    CHECK(fit.residual_norm <= fit.initial_residual_norm);
    if (fit.ok() && std::abs(fit.b1 / 38.100 - 1.0) < 0.05) ++within;
  }
  CHECK(within == 100);
}

TEST_CASE("degenerate inputs are reported") {
  PenetrationSeries flat;
  for (int y = 2000; y < 2010; ++y) {
    flat.years.push_back(y);
    flat.values.push_back(5.0);
  }
  const auto fit = fit_gompertz(flat, start_point());
  CHECK(fit.status == FitStatus::Degenerate);
  CHECK_FALSE(fit.ok());
  CHECK_FALSE(fit.message.empty());

  PenetrationSeries short_series{{2000, 2001, 2002}, {1, 2, 3}};
  CHECK_THROWS_AS(fit_gompertz(short_series, start_point()), InvalidArgument);
}

TEST_CASE("series CSV ingestion") {
  std::istringstream in("year,per_100\n2000,1.5\n2001,2.5\n# note\n2002,4\n");
  const auto s = read_series_csv(in);
  REQUIRE(s.size() == 3);
  CHECK(s.years[2] == 2002.0);
  CHECK(s.values[1] == 2.5);

  std::istringstream noheader("2000,1\n2001,2\n");
  CHECK(read_series_csv(noheader).size() == 2);

  std::istringstream bad("year,v\n2000,1\n2001,x\n");
  CHECK_THROWS_AS(read_series_csv(bad), InvalidArgument);
  std::istringstream unordered("2001,1\n2000,2\n");
  CHECK_THROWS_AS(read_series_csv(unordered), InvalidArgument);
  CHECK_THROWS_AS(load_series("/nonexistent/series.csv"), IoError);
}
