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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "msat/signature.hpp"

namespace msat {

/// A finite multiset of sorts, stored sorted by name. The empty object is the
/// terminal object T_0.
class TheoryObject {
 public:
  TheoryObject() = default;
  /// Any order; the list is sorted.
  explicit TheoryObject(std::vector<Sort> sorts);

  /// Comma separated sort names, e.g. `G,G`; the empty string is T_0.
  static TheoryObject parse(std::string_view text);

  const std::vector<Sort>& sorts() const { return sorts_; }
  std::size_t size() const { return sorts_.size(); }
  bool empty() const { return sorts_.empty(); }
  const Sort& operator[](std::size_t i) const { return sorts_[i]; }

  /// Canonical context v1:s1, ..., vn:sn.
  Context context() const;
  std::string to_string() const;

  friend bool operator==(const TheoryObject&, const TheoryObject&) = default;
  friend auto operator<=>(const TheoryObject&, const TheoryObject&) = default;

 private:
  std::vector<Sort> sorts_;
};

/// A morphism source -> target: one normal-form term per target entry, over
/// the source's canonical context.
struct TheoryMorphism {
  TheoryObject source;
  TheoryObject target;
  std::vector<Term> terms;

  friend bool operator==(const TheoryMorphism&, const TheoryMorphism&) = default;
};

/// Validates sorts against the source context and normalizes every term.
TheoryMorphism make_morphism(const TheoryObject& source, const TheoryObject& target,
                             std::vector<Term> terms, const Doctrine& doctrine);

/// g . f. Throws ObjectMismatch when f.target != g.source.
TheoryMorphism compose(const TheoryMorphism& g, const TheoryMorphism& f,
                       const Doctrine& doctrine);

TheoryMorphism identity(const TheoryObject& obj);

/// Morphism selecting the listed (0-based) entries; the target is the induced
/// multiset. Throws IndexOutOfRange.
TheoryMorphism projection(const TheoryObject& obj, const std::vector<std::size_t>& selection);

struct ProductCone {
  TheoryObject object;
  TheoryMorphism first;
  TheoryMorphism second;
};

/// Multiset union with its two projections. Entries of `a` precede equal
/// entries of `b`.
ProductCone product(const TheoryObject& a, const TheoryObject& b);

/// The morphism into the product of the targets whose projections are `fs`.
/// Throws SourceMismatch. `source` is used when `fs` is empty.
TheoryMorphism tuple(const std::vector<TheoryMorphism>& fs,
                     const TheoryObject& source = TheoryObject());

/// Cartesian product of componentwise enumerate_terms.
std::vector<TheoryMorphism> hom_enumerate(const TheoryObject& source, const TheoryObject& target,
                                          const Doctrine& doctrine, std::size_t bound);

/// All objects with at most `bound` entries, in canonical order.
std::vector<TheoryObject> objects_up_to(const Doctrine& doctrine, std::size_t bound);

nlohmann::json to_json(const TheoryObject& obj);
nlohmann::json to_json(const TheoryMorphism& m);
TheoryObject object_from_json(const nlohmann::json& j);
TheoryMorphism morphism_from_json(const nlohmann::json& j, const Doctrine& doctrine);

/// Interned morphisms with memoized composition. Composite components are
/// cached per (term, right factor), which keeps exhaustive law checks cheap.
class CompositionTable {
 public:
  using Id = std::uint32_t;

  explicit CompositionTable(const Doctrine& doctrine) : doctrine_(doctrine) {}

  /// Interns a morphism whose terms are already normal.
  Id intern(const TheoryMorphism& m);
  const TheoryMorphism& morphism(Id id) const { return morphisms_[id].value; }
  Id compose(Id g, Id f);
  std::size_t size() const { return morphisms_.size(); }

 private:
  struct Entry {
    TheoryMorphism value;
    std::uint32_t source;
    std::uint32_t target;
    std::vector<std::uint32_t> comps;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const;
  };
  std::uint32_t intern_term(const Term& t);
  std::uint32_t intern_object(const TheoryObject& o);

  const Doctrine& doctrine_;
  std::unordered_map<Term, std::uint32_t, TermHash> term_ids_;
  std::vector<Term> terms_;
  std::vector<TheoryObject> objects_;
  std::unordered_map<std::vector<std::uint32_t>, Id, KeyHash> morphism_ids_;
  std::vector<Entry> morphisms_;
  std::unordered_map<std::uint64_t, std::uint32_t> subst_;
  std::vector<std::uint32_t> key_;
};

}  // namespace msat
