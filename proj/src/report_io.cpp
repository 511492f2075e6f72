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

#include "bellmc/report_io.hpp"

#include <cstdio>

#include "json.hpp"

namespace bellmc::report_io {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

std::string to_json(const analysis::Report& report) {
  nlohmann::ordered_json doc;
  doc["experiment"] = report.experiment;
  doc["status"] = report.status;

  if (report.config) {
    nlohmann::ordered_json config;
    config["trials_per_setting"] = report.config->trials_per_setting;
    config["eta"] = report.config->eta;
    config["seed"] = report.config->seed;
    config["state"] = report.config->state;
    config["selection"] = report.config->selection;
    doc["config"] = std::move(config);
  }

  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const auto& quantity : report.quantities) {
    nlohmann::ordered_json row;
    row["value"] = quantity.value;
    row["std_error"] = quantity.std_error
                           ? nlohmann::ordered_json(*quantity.std_error)
                           : nlohmann::ordered_json(nullptr);
    row["count"] = quantity.count ? nlohmann::ordered_json(*quantity.count)
                                  : nlohmann::ordered_json(nullptr);
    results[quantity.name] = std::move(row);
  }
  doc["results"] = std::move(results);

  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  for (const auto& [name, verdict] : report.verdicts) {
    verdicts[name] = verdict;
  }
  doc["verdicts"] = std::move(verdicts);

  return doc.dump(2) + "\n";
}

std::string to_csv(const analysis::Report& report) {
  std::string out = "name,value,std_error,count\n";
  for (const auto& quantity : report.quantities) {
    out += quantity.name;
    out += ',';
    out += format_double(quantity.value);
    out += ',';
    if (quantity.std_error) out += format_double(*quantity.std_error);
    out += ',';
    if (quantity.count) out += std::to_string(*quantity.count);
    out += '\n';
  }
  for (const auto& [name, verdict] : report.verdicts) {
    out += "verdict." + name + ',' + verdict + ",,\n";
  }
  out += "status," + report.status + ",,\n";
  return out;
}

}  // namespace bellmc::report_io
