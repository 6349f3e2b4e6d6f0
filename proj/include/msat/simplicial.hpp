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

// Truncated simplicial sets, simplicial diagrams on a truncation, the strict
// and homotopy product conditions, and degreewise free simplicial algebras.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "msat/diagram.hpp"
#include "msat/models.hpp"

namespace msat {

/// Levels X_0..X_N with faces d_i : X_k -> X_{k-1} (0 <= i <= k) and
/// degeneracies s_j : X_k -> X_{k+1} (0 <= j <= k, k < N).
class TruncSimplicialSet {
 public:
  using Map = std::vector<std::int32_t>;

  /// faces[k][i] for k = 1..N (faces[0] empty); degeneracies[k][j] for
  /// k = 0..N-1. Checks shapes and every simplicial identity; throws
  /// InvalidParameter.
  TruncSimplicialSet(std::vector<std::vector<std::string>> levels,
                     std::vector<std::vector<Map>> faces,
                     std::vector<std::vector<Map>> degeneracies);

  std::size_t dim_cap() const { return levels_.size() - 1; }
  std::size_t size(std::size_t k) const { return levels_[k].size(); }
  const std::vector<std::string>& level(std::size_t k) const { return levels_[k]; }
  const Map& face(std::size_t k, std::size_t i) const { return faces_[k][i]; }
  const Map& degeneracy(std::size_t k, std::size_t j) const { return degens_[k][j]; }
  const std::vector<std::vector<Map>>& faces() const { return faces_; }
  const std::vector<std::vector<Map>>& degeneracies() const { return degens_; }

  /// Simplices at level k outside the image of every degeneracy.
  std::vector<std::int32_t> nondegenerate(std::size_t k) const;

  /// Empty when the data is a truncated simplicial set.
  static std::optional<std::string> identity_error(
      const std::vector<std::vector<std::string>>& levels,
      const std::vector<std::vector<Map>>& faces,
      const std::vector<std::vector<Map>>& degeneracies);

 private:
  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<Map>> faces_;
  std::vector<std::vector<Map>> degens_;
};

enum class StandardKind { Delta, Boundary, Horn };

/// Delta[n], its boundary, or the horn V[n,k] (face k removed), truncated at
/// `cap`. Simplices are monotone maps [m] -> [n], labelled by their values.
TruncSimplicialSet standard(StandardKind kind, std::size_t n, std::size_t cap,
                            std::size_t k = 0);

/// A discrete simplicial set: every level is `values`, structure maps identities.
TruncSimplicialSet constant(const std::vector<std::string>& values, std::size_t cap);

/// Levelwise cartesian product; the empty product is the point.
TruncSimplicialSet product(const std::vector<TruncSimplicialSet>& factors, std::size_t cap);

/// Number of components: classes of X_0 under d_0 x ~ d_1 x.
std::size_t pi0(const TruncSimplicialSet& x);

/// Integral homology group Z^rank + sum Z/t.
struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<std::string> torsion;  // invariant factors > 1, decimal
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

std::string to_string(const HomologyGroup& h);

/// H_0..H_{N-1} of the normalized chain complex, via Smith normal form.
std::vector<HomologyGroup> homology(const TruncSimplicialSet& x);

/// Invariant factors (nonzero diagonal of the Smith normal form) of an
/// integer matrix given row by row.
std::vector<std::string> smith_invariants(const std::vector<std::vector<long long>>& matrix);

nlohmann::json to_json(const TruncSimplicialSet& x);
TruncSimplicialSet simplicial_set_from_json(const nlohmann::json& j);

/// A functor Delta^op x T_{<=B} -> Sets: one diagram per level, with faces
/// and degeneracies as natural transformations.
class SimplicialDiagram {
 public:
  /// faces[k][i] : levels[k] => levels[k-1]; degeneracies[k][j] : levels[k]
  /// => levels[k+1]. Checks naturality and the simplicial identities; throws
  /// InvalidDiagram.
  SimplicialDiagram(std::vector<DiagramOnTruncation> levels,
                    std::vector<std::vector<NatTrans>> faces,
                    std::vector<std::vector<NatTrans>> degeneracies);

  std::size_t dim_cap() const { return levels_.size() - 1; }
  const Truncation& truncation() const { return levels_[0].truncation(); }
  const DiagramOnTruncation& level(std::size_t k) const { return levels_[k]; }
  const NatTrans& face(std::size_t k, std::size_t i) const { return faces_[k][i]; }
  const NatTrans& degeneracy(std::size_t k, std::size_t j) const { return degens_[k][j]; }

  /// The simplicial set X(T_a) for object index `object`.
  TruncSimplicialSet at(std::size_t object) const;

 private:
  std::vector<DiagramOnTruncation> levels_;
  std::vector<std::vector<NatTrans>> faces_;
  std::vector<std::vector<NatTrans>> degens_;
};

/// Finite algebras A_0..A_N with faces and degeneracies as homomorphisms.
class SimplicialAlgebra {
 public:
  /// Checks the equations at every level, that each structure map is a
  /// homomorphism, and the simplicial identities; throws InvalidModel.
  SimplicialAlgebra(std::vector<FiniteAlgebra> levels, std::vector<std::vector<Homomorphism>> faces,
                    std::vector<std::vector<Homomorphism>> degeneracies);

  std::size_t dim_cap() const { return levels_.size() - 1; }
  const FiniteAlgebra& level(std::size_t k) const { return levels_[k]; }
  const Homomorphism& face(std::size_t k, std::size_t i) const { return faces_[k][i]; }
  const Homomorphism& degeneracy(std::size_t k, std::size_t j) const { return degens_[k][j]; }

  /// The simplicial set of elements of one sort.
  TruncSimplicialSet carrier(std::size_t sort) const;

  /// Levelwise H_{A_k}; strict by construction.
  SimplicialDiagram to_diagram(const TruncationPtr& t) const;

 private:
  std::vector<FiniteAlgebra> levels_;
  std::vector<std::vector<Homomorphism>> faces_;
  std::vector<std::vector<Homomorphism>> degens_;
};

/// The algebra constant in the simplicial direction.
SimplicialAlgebra constant(const FiniteAlgebra& alg, std::size_t cap);

/// The diagram constant in the simplicial direction.
SimplicialDiagram constant(const DiagramOnTruncation& x, std::size_t cap);

/// Objectwise product X(a) x K.
SimplicialDiagram tensor(const DiagramOnTruncation& x, const TruncSimplicialSet& k);

/// Levelwise H_{A^(k+1)}: k-simplices are (k+1)-tuples of elements, faces
/// delete and degeneracies repeat an entry. Strict and contractible.
SimplicialDiagram codiscrete(const FiniteAlgebra& alg, const TruncationPtr& t, std::size_t cap);

struct StrictFailure {
  std::size_t level = 0;
  TheoryObject object;
  std::size_t value_count = 0;
  std::size_t product_count = 0;
};

struct StrictReport {
  bool strict() const { return failures.empty(); }
  std::vector<StrictFailure> failures;
};

/// Levelwise bijectivity of X(T_a) -> prod_i X(T_{a_i}).
StrictReport check_strict(const SimplicialDiagram& x);

struct Refutation {
  TheoryObject object;
  std::string invariant;  // "pi0" or "H<i>"
  std::string value;      // at X(T_a)
  std::string expected;   // at the product
};

/// One-sided: a refutation disproves the weak equivalence, passing does not
/// prove it. The T_0 condition (X(T_0) against the point) is reported
/// separately from the objects of size >= 2.
struct HomotopyProbeReport {
  bool passed() const { return refutations.empty(); }
  bool terminal_passed() const { return terminal_refutations.empty(); }
  std::vector<Refutation> refutations;
  std::vector<Refutation> terminal_refutations;
};

/// Compares pi_0 and H_i (i < N) of X(T_a) with those of prod_i X(T_{a_i}).
/// Throws InvalidParameter when N < 1.
HomotopyProbeReport homotopy_probe(const SimplicialDiagram& x);

nlohmann::json to_json(const SimplicialDiagram& x);
SimplicialDiagram simplicial_diagram_from_json(const nlohmann::json& j, DoctrinePtr doctrine);

/// F_alpha(Y) levelwise: level k is the free algebra on generators y1..yn
/// of sort alpha, one per k-simplex of Y, in level order. Structure maps
/// act on generators and extend to terms.
class FreeSimplicialAlgebra {
 public:
  /// Throws UnsupportedDoctrine for non-exact engines.
  FreeSimplicialAlgebra(DoctrinePtr doctrine, Sort alpha, TruncSimplicialSet y);

  const TruncSimplicialSet& base() const { return y_; }
  const Sort& alpha() const { return alpha_; }
  std::size_t dim_cap() const { return y_.dim_cap(); }
  const AlgebraPresentation& level(std::size_t k) const { return levels_[k]; }

  /// Normal form of d_i (resp. s_j) applied to a level-k element.
  Term face(std::size_t k, std::size_t i, const Term& t) const;
  Term degeneracy(std::size_t k, std::size_t j, const Term& t) const;

  /// Empty when every simplicial identity holds on the elements of size
  /// <= bound at every level and sort.
  std::optional<std::string> identity_error(std::size_t bound) const;

 private:
  Term apply(const std::vector<std::int32_t>& map, std::size_t from, std::size_t to,
             const Term& t) const;

  DoctrinePtr doctrine_;
  Sort alpha_;
  TruncSimplicialSet y_;
  std::vector<AlgebraPresentation> levels_;
};

FreeSimplicialAlgebra degreewise_free(DoctrinePtr doctrine, const Sort& alpha,
                                      const TruncSimplicialSet& y);

}  // namespace msat
