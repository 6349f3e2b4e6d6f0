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

// Set-valued functors on a finite truncation of a theory category.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "msat/theory_cat.hpp"

namespace msat {

enum class ArrowKind {
  /// Identities, projections onto sub-multisets, diagonals a -> a + a_i
  /// (when a + a_i fits), and one arrow per operation symbol.
  Generating,
  /// Every morphism whose components have size <= the term bound.
  Full,
};

std::string_view to_string(ArrowKind kind);

struct Arrow {
  enum class Role { Identity, Projection, Diagonal, Operation, Other };
  TheoryMorphism morphism;
  std::size_t source;  // object index
  std::size_t target;
  Role role;
};

/// Objects of size <= object_bound, a fixed arrow set among them, and the
/// composition relations holding inside that set.
class Truncation {
 public:
  static std::shared_ptr<const Truncation> make(DoctrinePtr doctrine, std::size_t object_bound,
                                                std::size_t term_bound,
                                                ArrowKind kind = ArrowKind::Generating);

  const Doctrine& doctrine() const { return *doctrine_; }
  const DoctrinePtr& doctrine_ptr() const { return doctrine_; }
  std::size_t object_bound() const { return object_bound_; }
  std::size_t term_bound() const { return term_bound_; }
  ArrowKind kind() const { return kind_; }

  const std::vector<TheoryObject>& objects() const { return objects_; }
  std::optional<std::size_t> object_index(const TheoryObject& o) const;
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::optional<std::size_t> arrow_index(const TheoryMorphism& m) const;
  std::size_t identity_arrow(std::size_t object) const { return identity_[object]; }
  /// Arrow index of the projection of object `o` onto its i-th entry.
  std::size_t entry_projection(std::size_t o, std::size_t i) const { return entry_proj_[o][i]; }
  /// Index of the object holding the single sort `s`.
  std::size_t singleton(const Sort& s) const;

  /// (f, g, h) with arrows[g] . arrows[f] == arrows[h].
  struct Relation {
    std::size_t first;
    std::size_t second;
    std::size_t composite;
  };
  const std::vector<Relation>& relations() const { return relations_; }

 private:
  Truncation() = default;
  DoctrinePtr doctrine_;
  std::size_t object_bound_ = 0;
  std::size_t term_bound_ = 0;
  ArrowKind kind_ = ArrowKind::Generating;
  std::vector<TheoryObject> objects_;
  std::vector<Arrow> arrows_;
  std::map<std::pair<std::size_t, std::vector<std::string>>, std::size_t> arrow_lookup_;
  std::vector<std::size_t> identity_;
  std::vector<std::vector<std::size_t>> entry_proj_;
  std::vector<Relation> relations_;
};

using TruncationPtr = std::shared_ptr<const Truncation>;

/// A functor from a truncation to finite sets. Arrow maps may be partial
/// (entry -1), which representables restricted to a term bound need.
class DiagramOnTruncation {
 public:
  using Map = std::vector<std::int32_t>;

  /// Validates shapes and functoriality; throws InvalidDiagram.
  DiagramOnTruncation(TruncationPtr truncation, std::vector<std::vector<std::string>> values,
                      std::vector<Map> maps);

  const Truncation& truncation() const { return *trunc_; }
  const TruncationPtr& truncation_ptr() const { return trunc_; }
  const Doctrine& doctrine() const { return trunc_->doctrine(); }
  std::size_t size(std::size_t object) const { return values_[object].size(); }
  const std::vector<std::string>& values(std::size_t object) const { return values_[object]; }
  const std::vector<std::vector<std::string>>& all_values() const { return values_; }
  const Map& map(std::size_t arrow) const { return maps_[arrow]; }
  const std::vector<Map>& all_maps() const { return maps_; }
  std::int32_t apply(std::size_t arrow, std::int32_t x) const { return maps_[arrow][x]; }

  /// Empty when functorial; otherwise a description of the first violation.
  static std::optional<std::string> functoriality_error(
      const Truncation& t, const std::vector<std::vector<std::string>>& values,
      const std::vector<Map>& maps);

 private:
  TruncationPtr trunc_;
  std::vector<std::vector<std::string>> values_;
  std::vector<Map> maps_;
};

/// Component per object: value index of the target for each source value.
using NatTrans = std::vector<std::vector<std::int32_t>>;

/// All natural transformations X => Y (naturality along every truncation
/// arrow, wherever X's map is defined). Stops after `cap` solutions and sets
/// `complete` to false.
std::vector<NatTrans> natural_transformations(const DiagramOnTruncation& x,
                                              const DiagramOnTruncation& y,
                                              std::size_t cap = 1000000,
                                              bool* complete = nullptr);

/// Hom_T(T_source, -) with values the morphisms of component size <= the
/// truncation's term bound. With `reachable_only`, keeps just the morphisms
/// reachable from the identity along truncation arrows. `source` need not be
/// an object of the truncation (then reachable_only is unavailable).
DiagramOnTruncation representable(const TruncationPtr& t, const TheoryObject& source,
                                  bool reachable_only = false);

/// Objectwise disjoint union; labels are prefixed with the summand index.
DiagramOnTruncation coproduct(const std::vector<DiagramOnTruncation>& parts);

/// The canonical maps X(a) -> prod_i X(a_i) and X(T_0) -> point.
struct ProductFailure {
  TheoryObject object;
  std::size_t value_count;
  std::size_t product_count;
  bool injective;
  bool surjective;
};
struct ProductReport {
  bool strict() const { return failures.empty(); }
  std::vector<ProductFailure> failures;
};
ProductReport check_product_preservation(const DiagramOnTruncation& x);

/// JSON form (see docs/formats.md).
nlohmann::json to_json(const DiagramOnTruncation& x);
DiagramOnTruncation diagram_from_json(const nlohmann::json& j, DoctrinePtr doctrine);
/// Reads values and tables only, onto an existing truncation.
DiagramOnTruncation diagram_from_json(const nlohmann::json& j, const TruncationPtr& t);

}  // namespace msat
