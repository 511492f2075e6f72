// Copyright 2026 The bellmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Machine-readable report formats. Both serializations are byte-deterministic
// for identical reports.

#pragma once

#include <string>

#include "bellmc/analysis.hpp"

namespace bellmc::report_io {

/// Single JSON document with fixed key order, newline terminated.
std::string to_json(const analysis::Report& report);

/// Header row `name,value,std_error,count`, then one row per quantity,
/// verdict and the status.
std::string to_csv(const analysis::Report& report);

}  // namespace bellmc::report_io
