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

#pragma once

#include <functional>
#include <map>
#include <string>

#include "msat/cli.hpp"

namespace msat::cli::detail {

using Verb = std::function<void(const Options&, Report&)>;

/// Verb name -> implementation.
const std::map<std::string, Verb>& verb_table();

/// FNV-1a 64, hex.
std::string digest(const std::string& bytes);

}  // namespace msat::cli::detail
