// Copyright 2026 The qestim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QESTIM_IO_HPP
#define QESTIM_IO_HPP

#include <string>

#include "qestim/errors.hpp"
#include "qestim/estimation.hpp"
#include "qestim/sweep.hpp"

namespace qestim {

/// Raised when a file cannot be read or written.
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

/// 17-significant-digit decimal rendering; round-trips doubles exactly.
std::string format_double(double value);

/// Comma-separated dataset with a header row and LF line endings. Missing
/// fields are empty cells. Identical results render to identical bytes.
std::string to_csv(const SweepResult& result);

/// The resolved spec as a JSON document (also a valid input spec, so a
/// run can be reproduced from its own metadata echo).
std::string spec_to_json(const SweepSpec& spec);
SweepSpec spec_from_json(const std::string& text);
SweepSpec spec_from_file(const std::string& path);

std::string report_to_json(const EstimationReport& report);

/// JSON rendering of a Hermitian matrix as rows of [re, im] pairs.
std::string matrix_to_json(const ComplexMatrix& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qestim

#endif  // QESTIM_IO_HPP
