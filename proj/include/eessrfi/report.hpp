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

// CSV / JSON serialisation of RFI results. Output carries the full run
// configuration and nothing time- or host-dependent, so identical inputs
// give byte-identical files.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eessrfi/config.hpp"
#include "eessrfi/scenario.hpp"

namespace eessrfi::report {

enum class Format { Csv, Json };

Format format_from_path(const std::filesystem::path& path);  // .json -> Json, else Csv

/// Shortest round-trip-safe text for a double; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);

void write_rfi_csv(std::ostream& out, const config::RunConfig& cfg, const std::vector<scenario::RfiReport>& reports);
void write_rfi_json(std::ostream& out, const config::RunConfig& cfg, const std::vector<scenario::RfiReport>& reports);

void write_guard_sweep_csv(std::ostream& out, const config::RunConfig& cfg, const scenario::GuardSweep& sweep);
void write_guard_sweep_json(std::ostream& out, const config::RunConfig& cfg, const scenario::GuardSweep& sweep);

/// Throws InvalidArgument for an empty result set (or a report without
/// sensors) and IoError naming the path when the file cannot be written.
void emit_report(const std::filesystem::path& path, const config::RunConfig& cfg,
                 const std::vector<scenario::RfiReport>& reports);
void emit_guard_sweep(const std::filesystem::path& path, const config::RunConfig& cfg,
                      const scenario::GuardSweep& sweep);

}  // namespace eessrfi::report
