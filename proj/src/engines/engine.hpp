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

// Internal interface of the exact normal-form engines.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "msat/signature.hpp"

namespace msat::detail {

/// `perm3_213` for the permutation 1->2, 2->1, 3->3 (one-line notation).
std::string perm_op_name(const std::vector<int>& p);

// Free monoid, free group, and the (word, point) pairs of a free action.
Term normalize_words(const Term& t, const Doctrine& d);
std::size_t words_size(const Term& nf, const Doctrine& d);
std::vector<Term> enumerate_words(const Context& ctx, const Sort& s, const Doctrine& d,
                                  std::size_t bound);

// Commutative ring with a module: integer polynomials and linear combinations.
Term normalize_ring(const Term& t, const Doctrine& d);
std::size_t ring_size(const Term& nf, const Doctrine& d);
std::vector<Term> enumerate_ring(const Context& ctx, const Sort& s, const Doctrine& d,
                                 std::size_t bound);

// Planar and symmetric operads: trees with (optionally) labelled leaves.
Term normalize_operad(const Term& t, const Doctrine& d);
std::size_t operad_size(const Term& nf, const Doctrine& d);
std::vector<Term> enumerate_operad(const Context& ctx, const Sort& s, const Doctrine& d,
                                   std::size_t bound);

// Categories with a fixed object set: composable edge paths.
Term normalize_ocat(const Term& t, const Doctrine& d);
std::size_t ocat_size(const Term& nf, const Doctrine& d);
std::vector<Term> enumerate_ocat(const Context& ctx, const Sort& s, const Doctrine& d,
                                 std::size_t bound);

}  // namespace msat::detail
