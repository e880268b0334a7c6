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

#include "eessrfi/adoption.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Dense>

#include "eessrfi/csv.hpp"
#include "eessrfi/units.hpp"

namespace eessrfi::adoption {

void AdoptionModel::validate() const {
  require(b1 > 0.0 && b2 > 0.0 && b3 > 0.0, "Gompertz parameters must be positive");
  require(std::isfinite(b1) && std::isfinite(b2) && std::isfinite(b3), "Gompertz parameters must be finite");
  require(anchor_penetration > 0.0, "anchor penetration must be positive");
  require(anchor_penetration < b1, "anchor penetration must be below the saturation level b1");
}

AdoptionModel baseline_model() { return {}; }

double gompertz_curve(double b1, double b2, double b3, double t) {
  return b1 * std::exp(-b2 * std::exp(-b3 * t));
}

double penetration(const AdoptionModel& m, double year) {
  m.validate();
  const double dt = year - m.anchor_year;
  if (m.anchor_mode == AnchorMode::TimeShift) {
    // Curve time at which Y equals the anchor value.
    const double t_anchor = -std::log(std::log(m.b1 / m.anchor_penetration) / m.b2) / m.b3;
    return gompertz_curve(m.b1, m.b2, m.b3, t_anchor + dt);
  }
  const double start = gompertz_curve(m.b1, m.b2, m.b3, 0.0);
  const double rise = gompertz_curve(m.b1, m.b2, m.b3, dt) - start;
  const double y = m.anchor_penetration + (m.b1 - m.anchor_penetration) * rise / (m.b1 - start);
  return std::max(0.0, y);
}

AdoptionModel scale_scenario(const AdoptionModel& model, double factor) {
  require(factor > 0.0 && std::isfinite(factor), "scenario factor must be positive");
  AdoptionModel out = model;
  out.b3 *= factor;
  out.validate();
  return out;
}

AdoptionModel reanchor(const AdoptionModel& model, double year, double value) {
  AdoptionModel out = model;
  out.anchor_year = year;
  out.anchor_penetration = value;
  out.validate();
  return out;
}

void PenetrationSeries::validate() const {
  require(years.size() == values.size(), "series years/values length mismatch");
  for (std::size_t i = 0; i < years.size(); ++i) {
    require(values[i] >= 0.0 && values[i] <= 100.0, "series values must lie in [0, 100]");
    if (i > 0) require(years[i] > years[i - 1], "series years must be strictly increasing");
  }
}

PenetrationSeries read_series_csv(std::istream& in) {
  PenetrationSeries s;
  const auto rows = csv::read_rows(in);
  for (const auto& row : rows) {
    if (row.fields.size() < 2) {
      throw InvalidArgument("series line " + std::to_string(row.line) + ": expected year,value");
    }
    try {
      double year = std::stod(row.fields[0]);
      double value = std::stod(row.fields[1]);
      s.years.push_back(year);
      s.values.push_back(value);
    } catch (const std::exception&) {
      if (&row == &rows.front()) continue;  // header
      throw InvalidArgument("series line " + std::to_string(row.line) + ": non-numeric field");
    }
  }
  s.validate();
  return s;
}

PenetrationSeries load_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open penetration series: " + path.string());
  return read_series_csv(in);
}

std::string to_string(FitStatus status) {
  switch (status) {
    case FitStatus::Converged: return "converged";
    case FitStatus::MaxIterations: return "max_iterations";
    case FitStatus::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

struct Problem {
  Eigen::VectorXd t;
  Eigen::VectorXd y;

  // Residuals and Jacobian w.r.t. theta = log(b).
  double evaluate(const Eigen::Vector3d& theta, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
    const double b1 = std::exp(theta[0]), b2 = std::exp(theta[1]), b3 = std::exp(theta[2]);
    r.resize(t.size());
    if (jac) jac->resize(t.size(), 3);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double e = std::exp(-b3 * t[i]);
      const double g = b1 * std::exp(-b2 * e);
      r[i] = g - y[i];
      if (jac) {
        (*jac)(i, 0) = g;
        (*jac)(i, 1) = -g * b2 * e;
        (*jac)(i, 2) = g * b2 * e * t[i] * b3;
      }
    }
    return r.squaredNorm();
  }
};

}  // namespace

FitResult fit_gompertz(const PenetrationSeries& series, const AdoptionModel& init,
                       const FitOptions& options) {
  series.validate();
  require(series.size() >= 4, "Gompertz fit needs at least 4 data points");
  require(init.b1 > 0.0 && init.b2 > 0.0 && init.b3 > 0.0, "initial Gompertz parameters must be positive");

  Problem p;
  const auto n = static_cast<Eigen::Index>(series.size());
  p.t.resize(n);
  p.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.t[i] = series.years[i] - series.years.front();
    p.y[i] = series.values[i];
  }

  FitResult out;
  out.time_origin = series.years.front();
  Eigen::Vector3d theta(std::log(init.b1), std::log(init.b2), std::log(init.b3));
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  double ssr = p.evaluate(theta, r, &jac);
  out.initial_residual_norm = std::sqrt(ssr);

  auto finish = [&](FitStatus status, std::string message) {
    out.status = status;
    out.b1 = std::exp(theta[0]);
    out.b2 = std::exp(theta[1]);
    out.b3 = std::exp(theta[2]);
    out.residual_norm = std::sqrt(ssr);
    out.message = std::move(message);
    return out;
  };

  if (p.y.maxCoeff() - p.y.minCoeff() <= 1e-12 * std::max(1.0, p.y.cwiseAbs().maxCoeff())) {
    return finish(FitStatus::Degenerate, "series is constant; growth parameters are not identifiable");
  }

  double mu = 1e-3;
  Eigen::VectorXd r_trial;
  for (int it = 1; it <= options.max_iterations; ++it) {
    out.iterations = it;
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d grad = jac.transpose() * r;
    bool accepted = false;
    Eigen::Vector3d step = Eigen::Vector3d::Zero();
    while (mu < 1e20) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += mu * jtj.diagonal().cwiseMax(1e-12);
      step = a.ldlt().solve(-grad);
      const double ssr_trial = p.evaluate(theta + step, r_trial, nullptr);
      if (std::isfinite(ssr_trial) && ssr_trial <= ssr) {
        theta += step;
        ssr = ssr_trial;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) {
      p.evaluate(theta, r, &jac);
      return finish(FitStatus::Converged, "no further decrease of the residual is possible");
    }
    p.evaluate(theta, r, &jac);

    const double b2 = std::exp(theta[1]), b3 = std::exp(theta[2]);
    if (b3 < 1e-6 || b2 < 1e-6) {
      return finish(FitStatus::Degenerate, "growth parameters ran to the b2/b3 -> 0 boundary");
    }
    // In log-parameters, |step| is the relative parameter change.
    if (step.cwiseAbs().maxCoeff() < options.relative_tolerance) {
      return finish(FitStatus::Converged, "relative parameter change below tolerance");
    }
  }
  return finish(FitStatus::MaxIterations, "iteration limit reached");
}

}  // namespace eessrfi::adoption
