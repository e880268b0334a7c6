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

// RFI-aware minimum-power downlink beamforming under perfect CSI, and the
// consumed-power / satellite-RFI accounting that goes with it.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eessrfi::precoder {

/// Full-band Shannon mapping: gamma = 2^(rate / B) - 1.
double sinr_target(double rate_bps, double bandwidth_hz);

struct SinrTargets {
  std::vector<double> gamma;  // linear, one per user

  static SinrTargets uniform(int users, double gamma);
  static SinrTargets from_rate(int users, double rate_bps, double bandwidth_hz);
  void validate() const;
};

// P_sum,max = min(P_BS, I_sat,max / (g_sat * delta)).
struct RfiBudget {
  double i_sat_max_w = 0.0;
  double g_sat = 0.0;
  double delta = 0.0;
  double p_bs_w = 0.0;

  double p_sat_max_w() const;  // +inf when g_sat * delta == 0
  double p_sum_max_w() const;
  bool rfi_limited() const { return p_sat_max_w() < p_bs_w; }
};

enum class SolveStatus {
  Optimal,            // targets met, power within budget
  BudgetExceeded,     // optimum found but above P_sum,max
  TargetsInfeasible,  // no beamformers meet the SINR targets at any power
  NotConverged,
};

std::string to_string(SolveStatus status);

struct PrecodeSolution {
  Eigen::MatrixXcd w;  // N x K, column k is w_k
  double p_tx_w = 0.0;
  bool feasible = false;
  SolveStatus status = SolveStatus::NotConverged;
  std::vector<double> sinr;           // achieved, exact downlink expression
  std::vector<double> dual_powers_w;  // uplink powers of the dual problem
  double duality_gap = 0.0;           // |sum p - sum lambda| / sum p
  int iterations = 0;
};

struct SolverOptions {
  int max_iterations = 1000;
  double tolerance = 1e-10;  // relative change of the dual powers
};

/// Minimises sum ||w_k||^2 subject to SINR_k >= gamma_k and the active budget.
///
/// Uses the uplink-downlink duality fixed point: dual powers are iterated to
/// the unique solution of lambda_k = gamma_k / ((1 + gamma_k) a_k^H M^-1 a_k),
/// receive (MMSE) directions give the downlink beam directions, and the
/// downlink powers are solved from the K x K linear system that makes every
/// SINR constraint tight. All K-sized algebra runs on the Gram matrix, so the
/// cost per iteration does not depend on the number of antennas.
///
/// `h` is N x K small-scale fading; `gains` holds the large-scale g_k. When
/// the optimum exceeds the budget, the unconstrained optimum is still returned
/// with feasible = false.
PrecodeSolution solve_power_min(const Eigen::MatrixXcd& h, std::span<const double> gains,
                                const SinrTargets& targets, double noise_power_w,
                                const RfiBudget& budget, const SolverOptions& options = {});

std::vector<double> evaluate_sinr(const Eigen::MatrixXcd& h, std::span<const double> gains,
                                  const Eigen::MatrixXcd& w, double noise_power_w);

/// g_sat * delta * P_tx
double per_bs_rfi(double p_tx_w, double delta, double g_sat);

struct PowerModel {
  double alpha0 = 0.0;
  double alpha1 = 0.0;  // per Hz
  double beta0 = 0.0;
  double beta1 = 0.0;  // per filter stage

  void validate() const;
};

/// P_Tx * (1 + alpha(B) + beta(order) + delta)
double total_consumed_power(double p_tx_w, const PowerModel& pm, double bandwidth_hz, int order, double delta);

}  // namespace eessrfi::precoder
