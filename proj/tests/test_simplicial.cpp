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

#include <map>
#include <random>
#include <set>

#include "diagram_gen.hpp"
#include "doctest.h"
#include "msat/dsl.hpp"
#include "msat/simplicial.hpp"
#include "msat/signature.hpp"

using namespace msat;

namespace {

/// Values aa, bb, m over a, b; m projects to a and b.
const char* kThree = R"({
  "values": {"t": ["a", "b"], "t,t": ["aa", "bb", "m"]},
  "tables": [
    {"morphism": {"source": ["t", "t"], "target": ["t"], "terms": ["v1"]},
     "map": {"aa": "a", "bb": "b", "m": "a"}},
    {"morphism": {"source": ["t", "t"], "target": ["t"], "terms": ["v2"]},
     "map": {"aa": "a", "bb": "b", "m": "b"}},
    {"morphism": {"source": ["t"], "target": ["t", "t"], "terms": ["v1", "v1"]},
     "map": {"a": "aa", "b": "bb"}}
  ]
})";

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DiagramOnTruncation h_two(const TruncationPtr& t) {
  for (const auto& a : models_up_to(t->doctrine_ptr(), 2))
    if (a.size(0) == 2) return as_functor(a, t);
  throw std::logic_error("no two-element model");
}

/// Cap-1 diagram whose level 1 holds two copies of x folded by both faces.
SimplicialDiagram doubled(const DiagramOnTruncation& x) {
  auto two = coproduct({x, x});
  NatTrans fold, inc;
  for (std::size_t o = 0; o < x.truncation().objects().size(); ++o) {
    std::vector<std::int32_t> f, g;
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t e = 0; e < x.size(o); ++e) f.push_back(static_cast<std::int32_t>(e));
    for (std::size_t e = 0; e < x.size(o); ++e) g.push_back(static_cast<std::int32_t>(e));
    fold.push_back(f);
    inc.push_back(g);
  }
  return SimplicialDiagram({x, two}, {{}, {fold, fold}}, {{inc}});
}

}  // namespace

TEST_CASE("standard simplicial sets") {
  auto d1 = standard(StandardKind::Delta, 1, 3);
  CHECK(d1.size(0) == 2);
  for (std::size_t n = 0; n <= 3; ++n) {
    auto d = standard(StandardKind::Delta, n, 3);
    for (std::size_t m = 0; m <= 3; ++m) CHECK(d.size(m) == binomial(n + m + 1, m + 1));
    for (std::size_t m = 0; m <= std::min<std::size_t>(n, 3); ++m)
      CHECK(d.nondegenerate(m).size() == binomial(n + 1, m + 1));
  }
  auto b1 = standard(StandardKind::Boundary, 1, 3);
  CHECK(b1.size(0) == 2);
  CHECK(b1.nondegenerate(1).empty());
  // The horn drops the face opposite vertex 1 from the boundary.
  auto b2 = standard(StandardKind::Boundary, 2, 3);
  auto h21 = standard(StandardKind::Horn, 2, 3, 1);
  CHECK(b2.nondegenerate(1).size() == 3);
  CHECK(h21.nondegenerate(1).size() == 2);
  for (auto s : h21.nondegenerate(1)) CHECK(h21.level(1)[s] != "02");
  CHECK_THROWS_AS(standard(StandardKind::Horn, 0, 3), Error);
  CHECK_THROWS_AS(standard(StandardKind::Horn, 2, 3, 3), Error);
}

TEST_CASE("simplicial identities are enforced") {
  auto d = standard(StandardKind::Delta, 2, 2);
  auto faces = d.faces();
  std::swap(faces[2][0], faces[2][1]);
  CHECK(TruncSimplicialSet::identity_error(
            {d.level(0), d.level(1), d.level(2)}, faces, d.degeneracies())
            .has_value());
  CHECK_THROWS_AS(TruncSimplicialSet({d.level(0), d.level(1), d.level(2)}, faces, d.degeneracies()),
                  Error);
  auto j = to_json(d);
  CHECK(to_json(simplicial_set_from_json(j)) == j);
}

TEST_CASE("homology via Smith normal form") {
  CHECK(smith_invariants({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) ==
        std::vector<std::string>{"2", "6", "12"});
  CHECK(smith_invariants({{2, 0}, {0, 3}}) == std::vector<std::string>{"1", "6"});
  auto point = HomologyGroup{1, {}};
  auto zero = HomologyGroup{0, {}};
  CHECK(homology(standard(StandardKind::Delta, 2, 3)) == std::vector<HomologyGroup>{point, zero, zero});
  CHECK(homology(standard(StandardKind::Horn, 2, 3, 0)) == std::vector<HomologyGroup>{point, zero, zero});
  auto circle = standard(StandardKind::Boundary, 2, 3);
  CHECK(homology(circle) == std::vector<HomologyGroup>{point, point, zero});
  CHECK(homology(standard(StandardKind::Boundary, 3, 3)) == std::vector<HomologyGroup>{point, zero, point});
  auto torus = product({circle, circle}, 3);
  CHECK(homology(torus) == std::vector<HomologyGroup>{point, HomologyGroup{2, {}}, point});
  CHECK(pi0(standard(StandardKind::Boundary, 1, 3)) == 2);
  CHECK(pi0(product({standard(StandardKind::Boundary, 1, 2), standard(StandardKind::Boundary, 1, 2)}, 2)) == 4);
  CHECK(to_string(HomologyGroup{2, {"2"}}) == "Z^2 + Z/2");
}

TEST_CASE("check_strict") {
  auto t = Truncation::make(builtin_doctrine("trivial"), 2, 1);
  auto h = h_two(t);
  CHECK(check_strict(constant(h, 3)).strict());
  CHECK(check_strict(codiscrete(models_up_to(t->doctrine_ptr(), 2).back(), t, 3)).strict());
  auto r = check_strict(doubled(h));
  REQUIRE(r.failures.size() >= 1);
  bool pair = false;
  for (const auto& f : r.failures) {
    CHECK(f.level == 1);
    pair = pair || f.object.to_string() == "[t,t]";
  }
  CHECK(pair);
  // Cap 0 is the set-level check.
  auto x = gen::merge(h, *t->object_index(TheoryObject::parse("t,t")), 0, 3);
  CHECK(check_strict(constant(x, 0)).failures.size() ==
        check_product_preservation(x).failures.size());
}

TEST_CASE("homotopy probe") {
  auto t = Truncation::make(builtin_doctrine("trivial"), 2, 1);
  auto h = h_two(t);
  CHECK_THROWS_AS(homotopy_probe(constant(h, 0)), Error);
  CHECK(homotopy_probe(constant(h, 3)).passed());
  // Three components against four.
  auto tt = *t->object_index(TheoryObject::parse("t,t"));
  auto x = diagram_from_json(nlohmann::json::parse(kThree), t);
  REQUIRE(x.size(tt) == 3);
  auto r = homotopy_probe(constant(x, 2));
  REQUIRE_FALSE(r.passed());
  CHECK(r.refutations[0].invariant == "pi0");
  CHECK(r.refutations[0].value == "3");
  CHECK(r.refutations[0].expected == "4");
  // A contractible thickening passes without being strict.
  auto thick = tensor(h, standard(StandardKind::Delta, 1, 3));
  CHECK_FALSE(check_strict(thick).strict());
  CHECK(homotopy_probe(thick).passed());
  CHECK(homotopy_probe(thick).terminal_passed());
  // Two points at T_0 show up in the terminal check.
  auto split = homotopy_probe(tensor(h, standard(StandardKind::Boundary, 1, 2)));
  CHECK_FALSE(split.terminal_passed());
  CHECK_FALSE(split.passed());
  // A circle factor is caught by H1 but not by pi0.
  auto loop = homotopy_probe(tensor(h, standard(StandardKind::Boundary, 2, 3)));
  REQUIRE_FALSE(loop.passed());
  bool h1 = false;
  for (const auto& f : loop.refutations) h1 = h1 || f.invariant == "H1";
  CHECK(h1);
}

TEST_CASE("strict diagrams are never refuted") {
  std::mt19937 rng(5);
  int strict = 0, total = 0;
  for (const char* spec : {"trivial", "monoid", "group"}) {
    auto d = builtin_doctrine(spec);
    auto t = Truncation::make(d, 2, 1);
    auto models = models_up_to(d, 2);
    for (int i = 0; i < 20; ++i) {
      auto x = gen::random_simplicial(t, models, rng, 3, std::string(spec) == "trivial");
      bool s = check_strict(x).strict();
      if (s) {
        ++strict;
        CHECK(homotopy_probe(x).passed());
        CHECK(homotopy_probe(x).terminal_passed());
      }
      ++total;
    }
  }
  CHECK(total >= 50);
  CHECK(strict >= 10);
}

TEST_CASE("simplicial diagram JSON") {
  auto t = Truncation::make(builtin_doctrine("trivial"), 2, 1);
  auto x = tensor(h_two(t), standard(StandardKind::Horn, 2, 2, 1));
  auto j = to_json(x);
  auto y = simplicial_diagram_from_json(j, builtin_doctrine("trivial"));
  CHECK(to_json(y) == j);
  j["faces"][1][0]["t"][0] = 1;
  CHECK_THROWS_AS(simplicial_diagram_from_json(j, builtin_doctrine("trivial")), Error);
}

TEST_CASE("degreewise free algebra on a point") {
  for (const auto& spec : default_builtin_specs()) {
    auto d = builtin_doctrine(spec);
    if (!d->exact()) continue;
    for (const auto& alpha : d->sorts()) {
      auto f = degreewise_free(d, alpha, standard(StandardKind::Delta, 0, 3));
      auto ref = free_algebra(d, generator_context(alpha, 1));
      for (std::size_t k = 0; k <= 3; ++k) {
        for (const auto& beta : d->sorts()) {
          CHECK(f.level(k).enumerate(beta, 2) == ref.enumerate(beta, 2));
        }
      }
      CHECK_FALSE(f.identity_error(2).has_value());
    }
  }
  auto monoid = builtin_doctrine("monoid");
  auto f = degreewise_free(monoid, Sort("m"), standard(StandardKind::Delta, 0, 3));
  CHECK(f.level(2).enumerate(Sort("m"), 3).size() == 4);
}

TEST_CASE("degreewise free structure maps") {
  auto monoid = builtin_doctrine("monoid");
  auto y = standard(StandardKind::Delta, 1, 3);
  auto f = degreewise_free(monoid, Sort("m"), y);
  CHECK_FALSE(f.identity_error(2).has_value());
  // Level 1 simplices 00, 01, 11 are y1, y2, y3; d0 deletes the first vertex.
  auto ctx1 = f.level(1).generators();
  auto ctx0 = f.level(0).generators();
  auto t = parse_term("mul(y2, y3)", ctx1, *monoid);
  CHECK(f.face(1, 0, t) == normalize(parse_term("mul(y2, y2)", ctx0, *monoid), *monoid));
  CHECK(f.face(1, 1, t) == normalize(parse_term("mul(y1, y2)", ctx0, *monoid), *monoid));
  CHECK_THROWS_AS(f.face(0, 0, t), Error);
}

TEST_CASE("degreewise free level matches the coend quotient") {
  // Pairs (w, ys): w a word over letters 1..n (n <= 2) of length <= 3 and
  // ys in Y^n, identified along reindexings phi : n -> n'.
  using Elem = std::pair<std::string, std::string>;
  std::map<Elem, Elem> parent;
  std::function<Elem(const Elem&)> find = [&](const Elem& e) {
    return parent[e] == e ? e : parent[e] = find(parent[e]);
  };
  auto words = [](int n) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i].size() < 3)
        for (int c = 1; c <= n; ++c) out.push_back(out[i] + char('0' + c));
    return out;
  };
  auto tuples = [](int n) {
    std::vector<std::string> out{""};
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> next;
      for (const auto& s : out)
        for (char y : {'a', 'b'}) next.push_back(s + y);
      out = next;
    }
    return out;
  };
  for (int n = 0; n <= 2; ++n)
    for (const auto& w : words(n))
      for (const auto& ys : tuples(n)) parent[{w, ys}] = {w, ys};
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      std::vector<std::vector<int>> phis{{}};
      for (int i = 0; i < n; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& p : phis)
          for (int v = 1; v <= m; ++v) {
            auto q = p;
            q.push_back(v);
            next.push_back(q);
          }
        phis = next;
      }
      for (const auto& phi : phis) {
        for (const auto& w : words(n)) {
          std::string renamed;
          for (char c : w) renamed += char('0' + phi[c - '1']);
          for (const auto& ys : tuples(m)) {
            std::string pulled;
            for (int v : phi) pulled += ys[v - 1];
            auto a = find({renamed, ys}), b = find({w, pulled});
            if (a != b) parent[a] = b;
          }
        }
      }
    }
  }
  std::set<Elem> classes;
  for (const auto& [e, p] : parent) classes.insert(find(e));
  auto monoid = builtin_doctrine("monoid");
  auto f = degreewise_free(monoid, Sort("m"), standard(StandardKind::Boundary, 1, 1));
  CHECK(classes.size() == 15);
  CHECK(f.level(0).enumerate(Sort("m"), 3).size() == classes.size());
}

TEST_CASE("simplicial algebras") {
  auto group = builtin_doctrine("group");
  auto models = models_up_to(group, 3);
  auto t = Truncation::make(group, 2, 1);
  for (const auto& a : models) {
    auto s = constant(a, 2);
    auto x = s.to_diagram(t);
    CHECK(check_strict(x).strict());
    CHECK(homotopy_probe(x).passed());
    CHECK(pi0(s.carrier(0)) == a.size(0));
  }
  const auto& z3 = models.back();
  REQUIRE(z3.size(0) == 3);
  // A face that is not a homomorphism.
  Homomorphism id{{{0, 1, 2}}}, bad{{{1, 2, 0}}};
  CHECK_THROWS_AS(SimplicialAlgebra({z3, z3}, {{}, {bad, id}}, {{id}}), Error);
  CHECK_NOTHROW(SimplicialAlgebra({z3, z3}, {{}, {id, id}}, {{id}}));
}
