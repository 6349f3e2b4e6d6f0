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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "msat/error.hpp"
#include "msat/term.hpp"

namespace msat {

/// Which normal-form engine decides equality for a doctrine.
enum class EngineKind {
  Trivial,
  Monoid,
  Group,
  GroupAction,
  RingModule,
  OperadPlanar,
  OperadSymmetric,
  OCat,
  BoundedGeneric,
};

std::string_view to_string(EngineKind kind);

/// An edge of the generating graph of an ocat doctrine.
struct GraphEdge {
  std::string name;
  std::string source;
  std::string target;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// A sorted equational presentation plus the engine that normalizes its terms.
class Doctrine {
 public:
  Doctrine(std::string name, std::vector<Sort> sorts, std::vector<OpSymbol> ops,
           std::vector<Equation> equations,
           EngineKind engine = EngineKind::BoundedGeneric);

  const std::string& name() const { return name_; }
  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<OpSymbol>& ops() const { return ops_; }
  const std::vector<Equation>& equations() const { return equations_; }
  EngineKind engine() const { return engine_; }
  bool exact() const { return engine_ != EngineKind::BoundedGeneric; }

  bool has_sort(const Sort& s) const;
  std::optional<std::size_t> sort_index(const Sort& s) const;
  const OpSymbol* find_op(const std::string& name) const;
  std::optional<std::size_t> op_index(const std::string& name) const;

  // Parameters of the parametrized built-ins.
  int level_cap() const { return level_cap_; }
  const std::vector<std::string>& ocat_objects() const { return ocat_objects_; }
  const std::vector<GraphEdge>& ocat_edges() const { return ocat_edges_; }
  /// Source and target object of an ocat sort `x_y`.
  std::pair<std::string, std::string> ocat_ends(const Sort& s) const;
  /// Level of an operad sort `pK`.
  int operad_level(const Sort& s) const;

  void set_level_cap(int cap) { level_cap_ = cap; }
  void set_ocat(std::vector<std::string> objects, std::vector<GraphEdge> edges);
  void set_engine(EngineKind engine) { engine_ = engine; }

  /// Structural equality of the presentation (name, sorts, ops, equations).
  bool same_presentation(const Doctrine& other) const;

 private:
  std::string name_;
  std::vector<Sort> sorts_;
  std::vector<OpSymbol> ops_;
  std::vector<Equation> equations_;
  EngineKind engine_;
  int level_cap_ = -1;
  std::vector<std::string> ocat_objects_;
  std::vector<GraphEdge> ocat_edges_;
  std::unordered_map<std::string, std::size_t> op_lookup_;
  std::unordered_map<std::string, std::size_t> sort_lookup_;
};

using DoctrinePtr = std::shared_ptr<const Doctrine>;

/// Identifier of a built-in doctrine, e.g. `group-action`, `operad-nonsigma:3`,
/// `ocat:x,y;f:x->x`.
struct BuiltinSpec {
  enum class Id {
    Trivial,
    Monoid,
    Group,
    GroupAction,
    RingModule,
    OperadNonSigma,
    OperadSymmetric,
    OCat,
  };
  Id id = Id::Trivial;
  int level_cap = 0;
  std::vector<std::string> objects;
  std::vector<GraphEdge> edges;

  static BuiltinSpec parse(const std::string& text);
  std::string to_string() const;
};

DoctrinePtr builtin_doctrine(const BuiltinSpec& spec);
DoctrinePtr builtin_doctrine(const std::string& spec);

/// Specs of the fixed-parameter built-ins exercised by the test corpus.
std::vector<std::string> default_builtin_specs();

// ---------------------------------------------------------------------------
// Term operations

/// Returns the sort of `term`; throws UnknownSymbol, SortMismatch or
/// UnboundVariable.
Sort typecheck(const Term& term, const Context& context, const Doctrine& doctrine);

/// Builds `op(args...)` after checking the argument sorts.
Term make_apply(const Doctrine& doctrine, const std::string& op,
                std::vector<Term> args);

/// Simultaneous substitution. Throws MissingAssignment / SortMismatch.
Term substitute(const Term& term, const Assignment& assignment);

/// Canonical representative under the doctrine's equations. Throws
/// UnsupportedDoctrine for BoundedGeneric doctrines.
Term normalize(const Term& term, const Doctrine& doctrine);

/// Size measure used by enumeration bounds (word length, node count, path
/// length, or coefficient weight depending on the engine). Takes a normal form.
std::size_t term_size(const Term& normal_form, const Doctrine& doctrine);

enum class Verdict { Equal, Distinct, Unknown };
std::string_view to_string(Verdict v);

/// Decides equality. Exact engines never answer Unknown; BoundedGeneric runs
/// congruence closure over equation instances closed to `depth_budget`.
Verdict terms_equal(const Term& a, const Term& b, const Doctrine& doctrine,
                    int depth_budget = 2);

/// All distinct normal forms of `sort` over `context` with size at most
/// `bound`, ordered by (size, printed form).
std::vector<Term> enumerate_terms(const Context& context, const Sort& sort,
                                  const Doctrine& doctrine, std::size_t bound);

/// All raw (unnormalized) terms up to `max_depth`, capped at `limit` per sort.
/// Deterministic order. Used by the law checkers.
std::vector<Term> enumerate_raw_terms(const Context& context, const Sort& sort,
                                      const Doctrine& doctrine,
                                      std::size_t max_depth, std::size_t limit);

}  // namespace msat
