// Copyright 2026 The msat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: argument parsing, dispatch and reports.

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace msat::cli {

inline constexpr const char* kSchema = "msat.report/1";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kUnknown = 3 };

struct Options {
  std::string verb;

  // Inputs.
  std::string theory;
  std::string model;
  std::string diagram;
  std::string out;
  std::string format = "json";

  // Bounds.
  std::size_t size = 2;
  std::size_t object_bound = 2;
  std::size_t dim_cap = 3;
  std::size_t model_bound = 3;
  std::size_t budget = 8;
  std::size_t depth = 3;
  std::size_t generators = 2;
  std::string arrows = "generating";
  std::uint64_t seed = 20260;

  // Verb arguments.
  std::string term;
  std::string context;
  std::string against;
  std::vector<std::string> assign;
  std::string from;
  std::string to;
  std::string g;
  std::string f;
  std::string identity;
  std::string projection;
  std::vector<std::size_t> select;
  std::string product;
  std::string with;
  std::vector<std::string> tuple;
  std::string sort;
  std::string simplex;
  std::string target_model;
  std::string step;
  std::string target;
  bool approximate = false;
};

struct Report {
  std::string verb;
  std::string verdict = "pass";  // pass, fail or unknown
  std::string summary;
  nlohmann::json bounds = nlohmann::json::object();
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json counterexamples = nlohmann::json::array();
  nlohmann::json trace;

  int exit_code() const;
};

/// All verbs, in a fixed order.
const std::vector<std::string>& verbs();

/// Engine operations reached by each verb.
const std::map<std::string, std::vector<std::string>>& verb_operations();

/// Runs one command. Engine errors propagate as msat::Error.
Report run(const Options& options);

/// Byte-stable JSON, or a one-line text summary.
std::string emit_report(const Report& report, const std::string& format);

/// Parses argv, runs, writes the report and returns the exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msat::cli
