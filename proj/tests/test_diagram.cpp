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

#include <set>

#include "doctest.h"
#include "msat/diagram.hpp"
#include "msat/signature.hpp"

using namespace msat;

namespace {

/// Terminal diagram: one point everywhere.
DiagramOnTruncation point(const TruncationPtr& t) {
  std::vector<std::vector<std::string>> values(t->objects().size(), {"*"});
  std::vector<DiagramOnTruncation::Map> maps(t->arrows().size(), {0});
  return DiagramOnTruncation(t, values, maps);
}

}  // namespace

TEST_CASE("generating truncation of the group theory") {
  auto t = Truncation::make(builtin_doctrine("group"), 2, 2);
  REQUIRE(t->objects().size() == 3);
  std::map<Arrow::Role, int> roles;
  for (const auto& a : t->arrows()) roles[a.role]++;
  CHECK(roles[Arrow::Role::Identity] == 3);
  CHECK(roles[Arrow::Role::Projection] == 4);
  CHECK(roles[Arrow::Role::Diagonal] == 1);
  CHECK(roles[Arrow::Role::Operation] == 3);
  for (const auto& r : t->relations()) {
    const auto& arrows = t->arrows();
    auto c = compose(arrows[r.second].morphism, arrows[r.first].morphism, t->doctrine());
    CHECK(to_json(c) == to_json(arrows[r.composite].morphism));
  }
  // mul . diagonal is not in the arrow set, proj . diagonal is.
  auto g = t->singleton(Sort("G"));
  CHECK(t->entry_projection(g, 0) == t->identity_arrow(g));
}

TEST_CASE("operation arrows list arguments in object order") {
  auto t = Truncation::make(builtin_doctrine("ring-module"), 2, 1);
  bool found = false;
  for (const auto& a : t->arrows()) {
    if (a.role != Arrow::Role::Operation || a.morphism.source.to_string() != "[M,R]") continue;
    CHECK(to_string(a.morphism.terms[0]) == "smul(v2,v1)");
    found = true;
  }
  CHECK(found);
}

TEST_CASE("representables are functorial and Yoneda holds on the reachable part") {
  auto t = Truncation::make(builtin_doctrine("group"), 2, 2);
  auto h = representable(t, TheoryObject::parse("G"));
  auto g = t->singleton(Sort("G"));
  // e, v1, inv(v1), mul(v1, v1), mul(inv(v1), inv(v1))
  CHECK(h.size(g) == 5);
  auto r = representable(t, TheoryObject::parse("G"), true);
  bool complete = false;
  auto nat = natural_transformations(r, h, 1000, &complete);
  CHECK(complete);
  // Each transformation is fixed by the image of the identity.
  std::set<std::int32_t> images;
  auto id = std::find(r.values(g).begin(), r.values(g).end(), "(v1)") - r.values(g).begin();
  for (const auto& eta : nat) images.insert(eta[g][id]);
  CHECK(images.size() == nat.size());
  CHECK(nat.size() <= h.size(g));
  // Component-wise term bounds keep representables strict.
  CHECK(check_product_preservation(h).strict());
}

TEST_CASE("terminal diagram preserves products; coproducts do not") {
  auto t = Truncation::make(builtin_doctrine("monoid"), 2, 2);
  auto p = point(t);
  CHECK(check_product_preservation(p).strict());
  auto two = coproduct({p, p});
  auto report = check_product_preservation(two);
  REQUIRE(!report.strict());
  CHECK(report.failures[0].object.size() == 0);
  CHECK(natural_transformations(p, two).size() == 2);
  CHECK(natural_transformations(two, p).size() == 1);
}

TEST_CASE("functoriality violations are reported") {
  auto t = Truncation::make(builtin_doctrine("trivial"), 2, 1);
  auto p = point(t);
  auto maps = p.all_maps();
  auto values = p.all_values();
  auto tt = *t->object_index(TheoryObject::parse("t,t"));
  values[tt] = {"a", "b"};
  for (std::size_t a = 0; a < maps.size(); ++a) {
    if (t->arrows()[a].source == tt) maps[a] = {0, 0};
    if (t->arrows()[a].target == tt) maps[a] = {0};
  }
  for (std::size_t a = 0; a < maps.size(); ++a)
    if (t->arrows()[a].role == Arrow::Role::Identity && t->arrows()[a].source == tt) maps[a] = {0, 1};
  CHECK(!DiagramOnTruncation::functoriality_error(*t, values, maps));
  for (std::size_t a = 0; a < maps.size(); ++a)
    if (t->arrows()[a].role == Arrow::Role::Identity && t->arrows()[a].source == tt) maps[a] = {1, 0};
  CHECK(DiagramOnTruncation::functoriality_error(*t, values, maps));
  CHECK_THROWS_AS(DiagramOnTruncation(t, values, maps), Error);
}

TEST_CASE("full truncation matches hom enumeration") {
  auto d = builtin_doctrine("monoid");
  auto t = Truncation::make(d, 2, 2, ArrowKind::Full);
  std::size_t total = 0;
  for (const auto& a : t->objects())
    for (const auto& b : t->objects()) total += hom_enumerate(a, b, *d, 2).size();
  CHECK(t->arrows().size() == total);
}

TEST_CASE("diagram JSON round trip") {
  auto d = builtin_doctrine("group");
  auto t = Truncation::make(d, 2, 2);
  auto h = representable(t, TheoryObject::parse("G"));
  auto j = to_json(h);
  auto back = diagram_from_json(j, d);
  CHECK(back.all_values() == h.all_values());
  CHECK(back.all_maps() == h.all_maps());
  j["values"].erase("G");
  CHECK_THROWS_AS(diagram_from_json(j, d), Error);
}
