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

// Finite strict algebras in sets.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msat/diagram.hpp"
#include "msat/signature.hpp"

namespace msat {

/// Index into a carrier.
using Element = std::int32_t;

/// Carriers indexed like doctrine().sorts(), tables like doctrine().ops().
/// A table lists op(args) for every argument tuple, first argument slowest.
class FiniteAlgebra {
 public:
  /// Checks shapes and ranges (InvalidModel, ElementNotInCarrier), not equations.
  FiniteAlgebra(DoctrinePtr doctrine, std::vector<std::vector<std::string>> carriers,
                std::vector<std::vector<Element>> tables, std::string name = "");

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Doctrine& doctrine() const { return *doctrine_; }
  const DoctrinePtr& doctrine_ptr() const { return doctrine_; }

  const std::vector<std::string>& carrier(std::size_t sort) const { return carriers_[sort]; }
  const std::vector<std::string>& carrier(const Sort& s) const;
  std::size_t size(std::size_t sort) const { return carriers_[sort].size(); }
  std::size_t max_carrier() const;
  const std::vector<std::vector<std::string>>& carriers() const { return carriers_; }

  const std::vector<Element>& table(std::size_t op) const { return tables_[op]; }
  const std::vector<std::vector<Element>>& tables() const { return tables_; }
  std::size_t row(std::size_t op, std::span<const Element> args) const;
  Element apply(std::size_t op, std::span<const Element> args) const {
    return tables_[op][row(op, args)];
  }
  /// Argument tuple of a table row.
  std::vector<Element> row_args(std::size_t op, std::size_t row) const;
  std::optional<Element> find(const Sort& s, const std::string& label) const;

  /// Copy with one table entry replaced.
  FiniteAlgebra with_entry(std::size_t op, std::size_t row, Element value) const;

 private:
  DoctrinePtr doctrine_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::vector<std::size_t>> strides_;
  std::string name_;
};

/// Variable name -> element.
using Environment = std::map<std::string, Element>;

/// Recursive table application. Throws UnboundVariable, ElementNotInCarrier.
Element evaluate(const FiniteAlgebra& alg, const Term& term, const Environment& env);

/// A term flattened for repeated evaluation; variables bind to context slots.
class CompiledTerm {
 public:
  CompiledTerm(const FiniteAlgebra& alg, const Term& term, const Context& context);
  Element operator()(std::span<const Element> env) const;

 private:
  struct Step {
    int op;    // -1 for a variable
    int slot;  // context slot of a variable
    std::vector<int> args;
  };
  const FiniteAlgebra* alg_;
  std::vector<Step> steps_;
};

struct EquationViolation {
  std::size_t equation;
  /// (variable, element label)
  std::vector<std::pair<std::string, std::string>> assignment;
  std::string lhs_value;
  std::string rhs_value;
};

struct EquationReport {
  bool ok() const { return violations.empty(); }
  std::size_t instances = 0;
  std::vector<EquationViolation> violations;
};

/// Exhaustive over all assignments; keeps the first `max_violations`.
EquationReport check_equations(const FiniteAlgebra& alg, std::size_t max_violations = 16);

struct MonadLawOptions {
  std::size_t depth = 3;
  /// Outer terms per sort, inner tuples per outer term, environments per check.
  std::size_t outer_cap = 80;
  std::size_t inner_cap = 24;
  std::size_t env_cap = 27;
  std::uint64_t seed = 20260;
};

struct MonadLawFailure {
  std::string law;  // "unit" or "multiplication"
  std::string detail;
};

struct MonadLawReport {
  bool ok() const { return failures.empty(); }
  std::size_t unit_checks = 0;
  std::size_t multiplication_checks = 0;
  std::vector<MonadLawFailure> failures;
};

/// Unit: every raw term whose normal form is the variable v evaluates to v's
/// value. Multiplication: for normal forms s(y_1..y_k) and t_i(x),
/// eval(nf(s[t/y])) = eval(s, y_i := eval(t_i)). Terms have size <= depth.
MonadLawReport check_monad_laws(const FiniteAlgebra& alg, const MonadLawOptions& options = {});

/// H_A on a truncation: tuples of elements, arrows act by evaluation.
DiagramOnTruncation as_functor(const FiniteAlgebra& alg, const TruncationPtr& truncation);

struct Homomorphism {
  /// Per sort, image of each source element.
  std::vector<std::vector<Element>> components;
  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;
};

/// All homomorphisms; throws DoctrineMismatch.
std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                         std::size_t cap = 1000000, bool* complete = nullptr);

/// Generators (a context) and relations among terms over them.
class AlgebraPresentation {
 public:
  AlgebraPresentation(DoctrinePtr doctrine, Context generators,
                      std::vector<std::pair<Term, Term>> relations = {});

  const Doctrine& doctrine() const { return *doctrine_; }
  const DoctrinePtr& doctrine_ptr() const { return doctrine_; }
  const Context& generators() const { return generators_; }
  const std::vector<std::pair<Term, Term>>& relations() const { return relations_; }
  bool is_free() const { return relations_.empty(); }

  bool contains(const Term& t) const;
  /// Free presentations over exact engines decide equality; otherwise
  /// Unknown unless the normal forms agree.
  Verdict equal(const Term& a, const Term& b) const;
  /// Elements of size <= bound (free presentations only).
  std::vector<Term> enumerate(const Sort& s, std::size_t bound) const;

  /// Generator assignments into `alg` satisfying every relation.
  std::vector<std::vector<Element>> homs_into(const FiniteAlgebra& alg,
                                              std::size_t cap = 1000000,
                                              bool* complete = nullptr) const;

 private:
  DoctrinePtr doctrine_;
  Context generators_;
  std::vector<std::pair<Term, Term>> relations_;
};

nlohmann::json to_json(const AlgebraPresentation& p);

/// Free algebra on named generators; throws UnsupportedDoctrine for
/// non-exact engines.
AlgebraPresentation free_algebra(DoctrinePtr doctrine, Context generators);

/// Generator names y1..yn, all of sort `alpha`.
Context generator_context(const Sort& alpha, std::size_t n);

struct AdjunctionReport {
  bool ok = false;
  std::size_t fragment_elements = 0;
  std::size_t homs = 0;       // Hom(F_alpha(Y), X) on the fragment
  std::size_t functions = 0;  // |X_alpha|^|Y|
  std::string detail;
};

/// Homomorphisms from the fragment of F_alpha(Y) with normal forms of size
/// <= fragment_bound, restricted to the generators, versus Set(Y, U_alpha X).
AdjunctionReport adjunction_check(DoctrinePtr doctrine, const Sort& alpha, std::size_t y_size,
                                  const FiniteAlgebra& x, std::size_t fragment_bound = 2);

// ---------------------------------------------------------------------------
// Model files

/// `model <name> of <theory>` / `carrier S = {..}` / `table op = [(..)->v, ..]`
/// / `end`. With `validate`, a model violating an equation is InvalidModel.
FiniteAlgebra parse_model(std::string_view text, DoctrinePtr doctrine, bool validate = true);
std::string print_model(const FiniteAlgebra& alg);
nlohmann::json to_json(const FiniteAlgebra& alg);

// ---------------------------------------------------------------------------
// Model supply

/// All models with the given carrier sizes, up to isomorphism.
std::vector<FiniteAlgebra> find_models(DoctrinePtr doctrine, const std::vector<std::size_t>& sizes);

/// Hand-built models for operad and ocat doctrines (validated).
std::vector<FiniteAlgebra> catalog_models(DoctrinePtr doctrine);

/// Models with every carrier of size <= bound: found by search, or taken
/// from the catalog for operad and ocat doctrines.
std::vector<FiniteAlgebra> models_up_to(DoctrinePtr doctrine, std::size_t bound);

}  // namespace msat
