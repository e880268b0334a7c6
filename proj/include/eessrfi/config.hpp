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

// JSON run configuration. Every key is optional; unknown keys are rejected.
//
//   { "scenario": {...}, "filter": {...}, "adoption": {...},
//     "cell": {...}, "losses": {...} }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "eessrfi/airlink.hpp"
#include "eessrfi/scenario.hpp"

namespace eessrfi::config {

struct RunConfig {
  scenario::ScenarioConfig scenario;
  airlink::CellConfig cell;
};

RunConfig parse_run_config(const nlohmann::json& doc, const RunConfig& defaults = {});
RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& defaults = {});

/// Full configuration echo in the same layout parse_run_config accepts.
/// Thread count is left out: it never changes results.
nlohmann::ordered_json to_json(const RunConfig& cfg);

std::string to_string(linkbudget::CouplingSource source);
std::string to_string(airlink::DistanceSampling sampling);
std::string to_string(airlink::LosMode mode);
std::string to_string(adoption::AnchorMode mode);

}  // namespace eessrfi::config
