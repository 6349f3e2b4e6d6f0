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

// Text form of theories:
//
//   theory <name>
//   sorts a, b
//   op <name> : <sort>* -> <sort>
//   eq (<var>:<sort> ...) <term> = <term>
//   end
//
// The full grammar is in docs/theory_dsl.md.

#pragma once

#include <string>
#include <string_view>

#include "msat/signature.hpp"

namespace msat {

/// Parses one theory. A theory whose name and presentation coincide with a
/// built-in doctrine receives that doctrine's exact engine; every other theory
/// uses BoundedGeneric. Throws ParseError with a 1-based position.
DoctrinePtr parse_theory(std::string_view text);

/// Canonical text form; parse_theory(print_theory(d)) reproduces d.
std::string print_theory(const Doctrine& doctrine);

/// Prefix term over `context`. A bare name is a variable when bound in the
/// context and a constant otherwise.
Term parse_term(std::string_view text, const Context& context, const Doctrine& doctrine);

/// `a:G, s:X` (commas optional).
Context parse_context(std::string_view text);

/// `builtin:<spec>` or a path to a theory file.
DoctrinePtr load_theory(const std::string& source);

std::string read_file(const std::string& path);

}  // namespace msat
