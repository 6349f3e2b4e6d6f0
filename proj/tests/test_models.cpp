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

#include <random>
#include <set>

#include "doctest.h"
#include "msat/dsl.hpp"
#include "msat/models.hpp"
#include "oracles.hpp"

using namespace msat;

namespace {

const char* kZ2 = R"(model z2 of group
carrier G = {0, 1}
table mul = [(0,0)->0, (0,1)->1, (1,0)->1, (1,1)->0]
table inv = [(0)->0, (1)->1]
table e = [()->0]
end
)";

const char* kSwap = R"(model swap of group_action
carrier G = {0, 1}
carrier X = {p, q}
table mul = [(0,0)->0, (0,1)->1, (1,0)->1, (1,1)->0]
table inv = [(0)->0, (1)->1]
table e = [()->0]
table act = [(0,p)->p, (0,q)->q, (1,p)->q, (1,q)->p]
end
)";

const char* kMax = R"(model max of monoid
carrier m = {0, 1}
table mul = [(0,0)->0, (0,1)->1, (1,0)->1, (1,1)->1]
table e = [()->0]
end
)";

FiniteAlgebra load(const char* text, const std::string& theory) {
  return parse_model(text, builtin_doctrine(theory));
}

}  // namespace

TEST_CASE("model files name their theory") {
  auto g = builtin_doctrine("group");
  CHECK(g->name() == "group");
  CHECK(builtin_doctrine("group-action")->name() == "group_action");
  CHECK(builtin_doctrine("monoid")->sorts()[0].name == "m");
}

TEST_CASE("evaluate follows the tables") {
  auto z2 = load(kZ2, "group");
  Context ctx{{"a", Sort("G")}};
  auto t = parse_term("mul(inv(a), a)", ctx, z2.doctrine());
  CHECK(evaluate(z2, t, {{"a", 1}}) == 0);
  CHECK(evaluate(z2, Term::variable("a", Sort("G")), {{"a", 1}}) == 1);
  CHECK_THROWS_AS(evaluate(z2, t, {}), Error);
  CHECK_THROWS_AS(evaluate(z2, t, {{"a", 5}}), Error);

  auto sw = load(kSwap, "group-action");
  Context c2{{"g", Sort("G")}, {"s", Sort("X")}};
  auto u = parse_term("act(mul(g, g), s)", c2, sw.doctrine());
  Environment env{{"g", 1}, {"s", *sw.find(Sort("X"), "p")}};
  // Oracle: direct table lookups.
  Element gg = sw.table(0)[1 * 2 + 1];
  Element expect = sw.table(3)[gg * 2 + env["s"]];
  CHECK(evaluate(sw, u, env) == expect);
  CHECK(sw.carrier(Sort("X"))[evaluate(sw, u, env)] == "p");
}

TEST_CASE("check_equations finds injected faults") {
  auto z2 = load(kZ2, "group");
  CHECK(check_equations(z2).ok());
  auto bad = z2.with_entry(1, 1, 0);  // inv(1) = 0
  auto report = check_equations(bad);
  REQUIRE(!report.ok());
  bool inverse = false;
  for (const auto& v : report.violations) {
    auto eq = bad.doctrine().equations()[v.equation];
    inverse = inverse || to_string(eq.lhs).find("inv") != std::string::npos ||
              to_string(eq.rhs).find("inv") != std::string::npos;
  }
  CHECK(inverse);
  auto triv = builtin_doctrine("trivial");
  FiniteAlgebra any(triv, {{"a", "b", "c"}}, {});
  CHECK(check_equations(any).ok());
}

TEST_CASE("model files round trip and reject bad input") {
  auto z2 = load(kZ2, "group");
  auto again = parse_model(print_model(z2), z2.doctrine_ptr());
  CHECK(again.carriers() == z2.carriers());
  CHECK(again.tables() == z2.tables());
  CHECK(print_model(again) == print_model(z2));
  auto g = builtin_doctrine("group");
  std::string faulted = kZ2;
  faulted.replace(faulted.find("(1)->1"), 6, "(1)->0");
  CHECK_THROWS_AS(parse_model(faulted, g), Error);
  CHECK(!check_equations(parse_model(faulted, g, false)).ok());
  for (const char* text : {"model z of group\ncarrier G = {0}\nend\n",
                           "model z of monoid\nend\n",
                           "model z of group\ncarrier G = {0}\ntable mul = [(0,0)->1]\n",
                           "model z of group\ncarrier H = {0}\nend\n",
                           "model z of group\ncarrier G = {0 0}\nend\n"}) {
    try {
      parse_model(text, g);
      FAIL("accepted malformed model");
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
    }
  }
}

TEST_CASE("monad laws hold on valid models and catch faults") {
  auto z2 = load(kZ2, "group");
  auto r = check_monad_laws(z2);
  CHECK(r.ok());
  CHECK(r.unit_checks > 0);
  CHECK(r.multiplication_checks > 0);
  CHECK(check_monad_laws(load(kMax, "monoid")).ok());
  auto broken = z2.with_entry(0, 1, 0);  // mul(0,1) = 0
  auto b = check_monad_laws(broken);
  CHECK(!b.ok());
  CHECK(!b.failures.empty());
}

TEST_CASE("H_A on a truncation") {
  auto z2 = load(kZ2, "group");
  auto t = Truncation::make(z2.doctrine_ptr(), 2, 2);
  auto h = as_functor(z2, t);
  CHECK(h.size(*t->object_index(TheoryObject::parse("G,G"))) == 4);
  CHECK(h.size(*t->object_index(TheoryObject(std::vector<Sort>{}))) == 1);
  CHECK(check_product_preservation(h).strict());
  auto mul = make_morphism(TheoryObject::parse("G,G"), TheoryObject::parse("G"),
                           {parse_term("mul(v1, v2)", TheoryObject::parse("G,G").context(),
                                       z2.doctrine())},
                           z2.doctrine());
  auto a = *t->arrow_index(mul);
  for (Element x = 0; x < 2; ++x)
    for (Element y = 0; y < 2; ++y) CHECK(h.apply(a, x * 2 + y) == z2.table(0)[x * 2 + y]);
  // Functoriality against every composable pair of the full truncation.
  auto full = Truncation::make(z2.doctrine_ptr(), 2, 2, ArrowKind::Full);
  CHECK_NOTHROW(as_functor(z2, full));
}

TEST_CASE("homomorphism enumeration") {
  auto z2 = load(kZ2, "group");
  auto homs = enumerate_homs(z2, z2);
  CHECK(homs.size() == 2);
  Homomorphism id{{{0, 1}}};
  CHECK(std::find(homs.begin(), homs.end(), id) != homs.end());
  auto triv = builtin_doctrine("trivial");
  FiniteAlgebra a(triv, {{"a", "b"}}, {}), b(triv, {{"0", "1", "2"}}, {});
  CHECK(enumerate_homs(a, b).size() == 9);
  CHECK_THROWS_AS(enumerate_homs(z2, a), Error);
}

TEST_CASE("model finder agrees with brute force") {
  auto count = [](const std::string& theory, std::size_t n) {
    auto d = builtin_doctrine(theory);
    return find_models(d, std::vector<std::size_t>(d->sorts().size(), n)).size();
  };
  for (int n = 1; n <= 3; ++n) {
    CHECK(count("monoid", n) == oracle::monoid_classes(n, false));
    CHECK(count("group", n) == oracle::monoid_classes(n, true));
  }
  CHECK(count("monoid", 0) == 0);
  for (const auto& spec : default_builtin_specs()) {
    for (const auto& m : models_up_to(builtin_doctrine(spec), 2)) CHECK(check_equations(m).ok());
  }
  CHECK(catalog_models(builtin_doctrine("operad-symmetric:3")).size() == 6);
  CHECK(catalog_models(builtin_doctrine("ocat:x,y;f:x->x")).size() >= 6);
}

TEST_CASE("evaluation is invariant under normalization") {
  std::mt19937 rng(oracle::seed());
  for (const auto& spec : default_builtin_specs()) {
    auto d = builtin_doctrine(spec);
    Context ctx;
    for (const auto& s : d->sorts())
      for (int i = 0; i < 2; ++i) ctx.add("x" + std::to_string(ctx.size() + 1), s);
    for (const auto& alg : models_up_to(d, 3)) {
      Context live;
      for (std::size_t i = 0; i < ctx.size(); ++i)
        if (!alg.carrier(ctx.sort(i)).empty()) live.add(ctx.name(i), ctx.sort(i));
      for (const auto& s : d->sorts()) {
        if (alg.carrier(s).empty()) continue;
        for (const auto& t : enumerate_raw_terms(live, s, *d, 3, 40)) {
          Term nf = normalize(t, *d);
          for (int k = 0; k < 4; ++k) {
            Environment env;
            for (std::size_t i = 0; i < live.size(); ++i)
              env[live.name(i)] = static_cast<Element>(rng() % alg.carrier(live.sort(i)).size());
            CHECK(evaluate(alg, t, env) == evaluate(alg, nf, env));
          }
        }
      }
    }
  }
}

TEST_CASE("free algebras") {
  auto ga = builtin_doctrine("group-action");
  auto p = free_algebra(ga, Context{{"a", Sort("G")}, {"s", Sort("X")}});
  // Elements a^k . s, sized by the word length |k|.
  auto xs = p.enumerate(Sort("X"), 3);
  CHECK(xs.size() == 7);
  for (const auto& t : xs) CHECK(p.contains(t));

  auto rm = builtin_doctrine("ring-module");
  auto q = free_algebra(rm, Context{{"a", Sort("R")}, {"m", Sort("M")}});
  // Z-combinations of a^k.m with weight sum |c|(k+1) <= 2: 0, +-m, +-2m, +-am.
  CHECK(q.enumerate(Sort("M"), 2).size() == 7);

  auto op = builtin_doctrine("operad-nonsigma:4");
  auto r = free_algebra(op, Context{{"x", Sort("p2")}});
  CHECK(r.enumerate(Sort("p4"), 3).size() == oracle::planar_binary_trees(4));
  CHECK(r.equal(Term::variable("x", Sort("p2")), Term::variable("x", Sort("p2"))) ==
        Verdict::Equal);
}

TEST_CASE("per-sort adjunction") {
  auto mono = builtin_doctrine("monoid");
  auto mx = parse_model(kMax, mono);
  auto r = adjunction_check(mono, Sort("m"), 1, mx);
  CHECK(r.ok);
  CHECK(r.homs == 2);
  auto r0 = adjunction_check(mono, Sort("m"), 0, mx);
  CHECK(r0.ok);
  CHECK(r0.homs == 1);
  auto ga = builtin_doctrine("group-action");
  auto sw = parse_model(kSwap, ga);
  auto r2 = adjunction_check(ga, Sort("X"), 1, sw);
  CHECK(r2.ok);
  CHECK(r2.functions == 2);
}
