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

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace eessrfi::csv {

// One parsed line. `line` is 1-based within the source.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Splits one CSV record. Handles double-quoted fields with "" escapes;
// embedded newlines are not supported.
std::vector<std::string> split_line(const std::string& text);

// Reads all non-blank records. Lines starting with '#' are comments.
std::vector<Row> read_rows(std::istream& in);

std::string trim(const std::string& s);

// Quotes a field when it contains a comma, quote or leading/trailing space.
std::string escape(const std::string& field);

// Column index by header name, or -1.
int column_index(const std::vector<std::string>& header, const std::string& name);

}  // namespace eessrfi::csv
