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

// Projection maps, strict locality, localization steps and the rigidified
// presentation K_T X.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "msat/diagram.hpp"
#include "msat/models.hpp"

namespace msat {

/// p : coprod_i Hom(T_{a_i}, -) -> Hom(T_a, -) for a = [a_1..a_n]; the i-th
/// summand's identity goes to the i-th projection.
struct ProjectionMap {
  TheoryObject target;
};

/// One map per object of size 2..bound. Throws InvalidParameter if bound < 2.
std::vector<ProjectionMap> projection_map_set(const Doctrine& doctrine, std::size_t bound);

struct LocalityFailure {
  TheoryObject object;
  std::size_t maps_from_target = 0;   // |Nat(Hom(T_a,-), X)|
  std::size_t maps_from_factors = 0;  // prod_i |Nat(Hom(T_{a_i},-), X)|
  bool injective = false;
  bool surjective = false;
};

struct LocalityReport {
  bool local() const { return failures.empty(); }
  std::vector<LocalityFailure> failures;
};

/// Restriction along p is a bijection for every object of size 0 or >= 2,
/// using the sub-functors of representables reachable from the identity.
LocalityReport check_strictly_local(const DiagramOnTruncation& x);

struct StepResult {
  DiagramOnTruncation diagram;
  /// Per object, the new value of each old value.
  std::vector<std::vector<std::int32_t>> unit;
  bool approximate = false;
};

/// Pushout of X <- coprod A -> coprod B over all maps A -> X, objectwise.
/// Needs a full truncation. Throws HomEnumerationIncomplete unless the hom
/// sets are stable under a larger term bound or `allow_approximate` is set.
StepResult surjectivity_step(const DiagramOnTruncation& x, const ProjectionMap& p,
                             bool allow_approximate = false);

/// Pushout along the fold B +_A B -> B over all maps B +_A B -> X.
StepResult injectivity_step(const DiagramOnTruncation& x, const ProjectionMap& p,
                            bool allow_approximate = false);

struct StepRecord {
  std::string kind;  // "surjectivity" or "injectivity"
  TheoryObject target;
  std::vector<std::size_t> sizes;  // per object after the step
};

struct LocalizationTrace {
  std::vector<StepRecord> steps;
  std::size_t rounds = 0;
  bool fixed_point = false;
  bool approximate = false;
};

nlohmann::json to_json(const LocalizationTrace& trace);

/// Carries the trace of a localization that did not converge.
class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(const std::string& message, LocalizationTrace trace)
      : Error(ErrorKind::BudgetExhausted, message), trace_(std::move(trace)) {}
  const LocalizationTrace& trace() const { return trace_; }

 private:
  LocalizationTrace trace_;
};

struct Localization {
  DiagramOnTruncation diagram;
  std::vector<std::vector<std::int32_t>> unit;
  LocalizationTrace trace;
};

/// Rounds of surjectivity then injectivity steps over the projection maps
/// (plus the one for T_0) until strictly local. `budget` caps the rounds.
Localization localize(const DiagramOnTruncation& x, std::size_t budget,
                      bool allow_approximate = false);

/// K_T X: one generator per value at a size-1 object, one relation per
/// arrow component and value where X is defined.
AlgebraPresentation rigidify_presentation(const DiagramOnTruncation& x);

/// Name of the generator for value `element` at the size-1 object of `sort`.
std::string generator_name(const DiagramOnTruncation& x, const Sort& sort, std::int32_t element);

struct ModelCheck {
  std::string model;
  std::size_t homs = 0;  // Hom(P, A) or the left side
  std::size_t nats = 0;  // Nat(X, H_A) or the right side
  bool ok = false;
};

struct UniversalPropertyReport {
  bool ok() const;
  std::vector<ModelCheck> checks;
};

/// Restriction Nat(X, H_A) -> Hom(P, A) is a bijection for each model.
UniversalPropertyReport verify_universal_property(const DiagramOnTruncation& x,
                                                  const AlgebraPresentation& p,
                                                  const std::vector<FiniteAlgebra>& models);

/// Hom(K_T Hom(T_a,-), A) and Hom(K_T coprod Hom(T_{a_i},-), A) both biject
/// with prod_i A(a_i) for each model. Representables live on a truncation
/// whose objects hold every operation's arity.
UniversalPropertyReport verify_ktk(DoctrinePtr doctrine, const ProjectionMap& p,
                                   const std::vector<FiniteAlgebra>& models,
                                   std::size_t term_bound = 2);

}  // namespace msat
