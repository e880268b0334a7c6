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

#include "eessrfi/precoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eessrfi/units.hpp"

namespace eessrfi::precoder {

double sinr_target(double rate_bps, double bandwidth_hz) {
  require(rate_bps >= 0.0, "rate must be non-negative");
  require(bandwidth_hz > 0.0, "bandwidth must be positive");
  return std::exp2(rate_bps / bandwidth_hz) - 1.0;
}

SinrTargets SinrTargets::uniform(int users, double gamma) {
  require(users >= 1, "need at least one user");
  return {std::vector<double>(static_cast<std::size_t>(users), gamma)};
}

SinrTargets SinrTargets::from_rate(int users, double rate_bps, double bandwidth_hz) {
  return uniform(users, sinr_target(rate_bps, bandwidth_hz));
}

void SinrTargets::validate() const {
  require(!gamma.empty(), "SINR targets must not be empty");
  for (double g : gamma) require(g >= 0.0 && std::isfinite(g), "SINR targets must be finite and >= 0");
}

double RfiBudget::p_sat_max_w() const {
  const double coupling = g_sat * delta;
  if (coupling <= 0.0) return std::numeric_limits<double>::infinity();
  return i_sat_max_w / coupling;
}

double RfiBudget::p_sum_max_w() const { return std::min(p_bs_w, p_sat_max_w()); }

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::BudgetExceeded: return "budget_exceeded";
    case SolveStatus::TargetsInfeasible: return "targets_infeasible";
    case SolveStatus::NotConverged: return "not_converged";
  }
  return "unknown";
}

std::vector<double> evaluate_sinr(const Eigen::MatrixXcd& h, std::span<const double> gains,
                                  const Eigen::MatrixXcd& w, double noise_power_w) {
  const Eigen::MatrixXcd coupling = h.adjoint() * w;  // (k, j) = h_k^H w_j
  const auto k_users = static_cast<Eigen::Index>(gains.size());
  std::vector<double> out(gains.size());
  for (Eigen::Index k = 0; k < k_users; ++k) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < coupling.cols(); ++j) {
      if (j != k) interference += std::norm(coupling(k, j));
    }
    out[k] = gains[k] * std::norm(coupling(k, k)) / (noise_power_w + gains[k] * interference);
  }
  return out;
}

PrecodeSolution solve_power_min(const Eigen::MatrixXcd& h, std::span<const double> gains,
                                const SinrTargets& targets, double noise_power_w,
                                const RfiBudget& budget, const SolverOptions& options) {
  const auto n = h.rows();
  const auto k_users = h.cols();
  require(k_users >= 1, "channel must have at least one user");
  require(k_users <= n, "more users than transmit antennas (K > N)");
  require(static_cast<Eigen::Index>(gains.size()) == k_users, "gains size must equal K");
  require(static_cast<Eigen::Index>(targets.gamma.size()) == k_users, "targets size must equal K");
  require(noise_power_w > 0.0, "noise power must be positive");
  for (double g : gains) require(g > 0.0 && std::isfinite(g), "large-scale gains must be positive");
  targets.validate();

  PrecodeSolution sol;
  sol.w = Eigen::MatrixXcd::Zero(n, k_users);
  sol.dual_powers_w.assign(static_cast<std::size_t>(k_users), 0.0);

  // Users with a zero target get no beam.
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (targets.gamma[k] > 0.0) active.push_back(k);
  }
  const auto m = static_cast<Eigen::Index>(active.size());
  if (m == 0) {
    sol.status = SolveStatus::Optimal;
    sol.feasible = true;
    sol.sinr = evaluate_sinr(h, gains, sol.w, noise_power_w);
    return sol;
  }

  // Noise-normalised effective channels a_k = sqrt(g_k / sigma^2) h_k.
  Eigen::MatrixXcd a(n, m);
  Eigen::VectorXd gamma(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a.col(i) = h.col(active[i]) * std::sqrt(gains[active[i]] / noise_power_w);
    gamma[i] = targets.gamma[active[i]];
  }
  const Eigen::MatrixXcd gram = a.adjoint() * a;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m, m);

  // a_k^H (I + A diag(lambda) A^H)^-1 a_k == diag(G (I + diag(lambda) G)^-1).
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXcd c_mat;
  bool converged = false;
  bool diverged = false;
  int it = 0;
  for (it = 1; it <= options.max_iterations; ++it) {
    c_mat = (eye + lambda.cast<std::complex<double>>().asDiagonal() * gram).partialPivLu().inverse();
    const Eigen::MatrixXcd quad = gram * c_mat;
    Eigen::VectorXd next(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double q = quad(i, i).real();
      if (!(q > 0.0) || !std::isfinite(q)) {
        diverged = true;
        break;
      }
      next[i] = gamma[i] / ((1.0 + gamma[i]) * q);
    }
    // Infeasible targets make the dual powers grow without bound.
    if (diverged || !next.allFinite() || next.maxCoeff() > 1e250) {
      diverged = true;
      break;
    }
    const double change = ((next - lambda).array().abs() / next.array()).maxCoeff();
    lambda = next;
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }
  sol.iterations = std::min(it, options.max_iterations);
  for (Eigen::Index i = 0; i < m; ++i) sol.dual_powers_w[active[i]] = lambda[i];

  if (!converged) {
    sol.status = diverged ? SolveStatus::TargetsInfeasible : SolveStatus::NotConverged;
    return sol;
  }

  // Beam directions from the converged dual point.
  c_mat = (eye + lambda.cast<std::complex<double>>().asDiagonal() * gram).partialPivLu().inverse();
  const Eigen::MatrixXcd t = gram * c_mat;                        // a_k^H v_j
  const Eigen::MatrixXcd vnorm2 = c_mat.adjoint() * gram * c_mat;  // v_j^H v_j on the diagonal
  Eigen::MatrixXd system(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double coupling = std::norm(t(k, j)) / vnorm2(j, j).real();
      system(k, j) = (k == j) ? coupling / gamma[k] : -coupling;
    }
  }
  const Eigen::VectorXd p = system.partialPivLu().solve(Eigen::VectorXd::Ones(m));
  if (!p.allFinite() || (p.array() <= 0.0).any()) {
    sol.status = SolveStatus::TargetsInfeasible;
    return sol;
  }

  const Eigen::MatrixXcd v = a * c_mat;
  for (Eigen::Index j = 0; j < m; ++j) {
    sol.w.col(active[j]) = v.col(j) * std::sqrt(p[j] / vnorm2(j, j).real());
  }
  sol.p_tx_w = sol.w.squaredNorm();
  const double dual_sum = lambda.sum();
  sol.duality_gap = std::abs(sol.p_tx_w - dual_sum) / sol.p_tx_w;
  sol.sinr = evaluate_sinr(h, gains, sol.w, noise_power_w);

  const double cap = budget.p_sum_max_w();
  sol.feasible = sol.p_tx_w <= cap * (1.0 + 1e-12);
  sol.status = sol.feasible ? SolveStatus::Optimal : SolveStatus::BudgetExceeded;
  return sol;
}

double per_bs_rfi(double p_tx_w, double delta, double g_sat) {
  require(p_tx_w >= 0.0 && delta >= 0.0 && g_sat >= 0.0, "RFI inputs must be non-negative");
  return g_sat * delta * p_tx_w;
}

void PowerModel::validate() const {
  require(alpha0 >= 0.0 && alpha1 >= 0.0 && beta0 >= 0.0 && beta1 >= 0.0,
          "power-model coefficients must be non-negative");
}

double total_consumed_power(double p_tx_w, const PowerModel& pm, double bandwidth_hz, int order, double delta) {
  pm.validate();
  require(p_tx_w >= 0.0 && bandwidth_hz >= 0.0 && order >= 0 && delta >= 0.0,
          "consumed-power inputs must be non-negative");
  const double alpha = pm.alpha0 + pm.alpha1 * bandwidth_hz;
  const double beta = pm.beta0 + pm.beta1 * order;
  return p_tx_w * (1.0 + alpha + beta + delta);
}

}  // namespace eessrfi::precoder
