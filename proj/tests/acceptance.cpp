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

// Acceptance criteria 1-11. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "diagram_gen.hpp"
#include "msat/dsl.hpp"
#include "msat/rigidify.hpp"
#include "msat/signature.hpp"
#include "msat/simplicial.hpp"
#include "msat/theory_cat.hpp"
#include "oracles.hpp"
#include "pushout_oracle.hpp"

using namespace msat;

namespace {

const std::string kRoot = MSAT_SOURCE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first few failures and counts the rest.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  std::size_t checks() const { return checks_; }
  Outcome outcome(const std::string& detail) const {
    if (failures_ == 0) return {true, detail};
    return {false, std::to_string(failures_) + " failures: " + first_};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string n(std::size_t v) { return std::to_string(v); }

// 1. Theory-category laws.
Outcome category_laws() {
  Tally tally;
  std::size_t triples = 0;
  for (const char* spec : {"trivial", "monoid", "group", "group-action", "ocat:x,y;f:x->x"}) {
    auto d = builtin_doctrine(spec);
    auto objects = objects_up_to(*d, 2);
    CompositionTable table(*d);
    std::vector<std::vector<std::vector<CompositionTable::Id>>> hom(objects.size());
    for (std::size_t a = 0; a < objects.size(); ++a) {
      hom[a].resize(objects.size());
      for (std::size_t b = 0; b < objects.size(); ++b)
        for (const auto& m : hom_enumerate(objects[a], objects[b], *d, 2))
          hom[a][b].push_back(table.intern(m));
    }
    std::vector<CompositionTable::Id> ids;
    for (const auto& o : objects) ids.push_back(table.intern(identity(o)));
    for (std::size_t a = 0; a < objects.size(); ++a)
      for (std::size_t b = 0; b < objects.size(); ++b)
        for (auto f : hom[a][b])
          tally.check(table.compose(ids[b], f) == f && table.compose(f, ids[a]) == f,
                      std::string(spec) + " unit");
    // h(gf) = (hg)f, with gf and hg computed once each.
    for (std::size_t b = 0; b < objects.size(); ++b)
      for (std::size_t c = 0; c < objects.size(); ++c)
        for (auto g : hom[b][c]) {
          std::vector<std::pair<CompositionTable::Id, CompositionTable::Id>> fg;
          for (std::size_t a = 0; a < objects.size(); ++a)
            for (auto f : hom[a][b]) fg.emplace_back(f, table.compose(g, f));
          for (std::size_t e = 0; e < objects.size(); ++e)
            for (auto h : hom[c][e]) {
              auto hg = table.compose(h, g);
              bool ok = true;
              for (const auto& [f, gf] : fg) ok = ok && table.compose(h, gf) == table.compose(hg, f);
              triples += fg.size();
              tally.check(ok, std::string(spec) + " associativity");
            }
        }
    // Product cones: existence and uniqueness of mediating maps.
    for (const auto& a : objects)
      for (const auto& b : objects) {
        auto cone = product(a, b);
        for (const auto& c : objects) {
          tally.check(hom_enumerate(c, TheoryObject(), *d, 2).size() == 1, "terminal");
          for (const auto& f : hom_enumerate(c, a, *d, 2))
            for (const auto& g : hom_enumerate(c, b, *d, 2)) {
              auto u = tuple({f, g}, c);
              tally.check(u.target == cone.object, "tuple target");
              tally.check(compose(cone.first, u, *d) == f && compose(cone.second, u, *d) == g,
                          std::string(spec) + " product existence");
            }
          for (const auto& h : hom_enumerate(c, cone.object, *d, 2)) {
            auto back = tuple({compose(cone.first, h, *d), compose(cone.second, h, *d)}, c);
            tally.check(back == h, std::string(spec) + " product uniqueness");
          }
        }
      }
  }
  return tally.outcome(n(triples) + " triples, " + n(tally.checks()) + " checks");
}

// 2. Free-object counts.
Outcome free_counts() {
  Tally tally;
  auto g = builtin_doctrine("group");
  Context ab{{"a", Sort("G")}, {"b", Sort("G")}};
  auto f2 = enumerate_terms(ab, Sort("G"), *g, 2).size();
  auto f3 = enumerate_terms(ab, Sort("G"), *g, 3).size();
  tally.check(f2 == oracle::reduced_word_count(2, 2) && f2 == 17, "F2 length 2: " + n(f2));
  tally.check(f3 == oracle::reduced_word_count(2, 3) && f3 == 53, "F2 length 3: " + n(f3));
  auto m = builtin_doctrine("monoid");
  Context xy{{"x", Sort("m")}, {"y", Sort("m")}};
  auto m2 = enumerate_terms(xy, Sort("m"), *m, 2).size();
  tally.check(m2 == oracle::monoid_word_count(2, 2) && m2 == 7, "monoid words: " + n(m2));
  auto op = builtin_doctrine("operad-nonsigma:5");
  Context mc{{"m", Sort("p2")}};
  const std::size_t catalan[] = {1, 2, 5, 14};
  std::string trees;
  for (int k = 2; k <= 5; ++k) {
    auto c = enumerate_terms(mc, Sort("p" + std::to_string(k)), *op, k).size();
    tally.check(c == oracle::planar_binary_trees(k) && c == catalan[k - 2], "P(" + n(k) + ")");
    trees += (trees.empty() ? "" : ",") + n(c);
  }
  return tally.outcome("F2 " + n(f2) + "/" + n(f3) + ", monoid " + n(m2) + ", trees " + trees);
}

// 3. Set-level Yoneda.
Outcome yoneda() {
  Tally tally;
  std::size_t cases = 0;
  for (const auto& spec : default_builtin_specs()) {
    auto d = builtin_doctrine(spec);
    auto t = Truncation::make(d, 2, 2, ArrowKind::Full);
    auto models = models_up_to(d, 3);
    for (const auto& alpha : d->sorts()) {
      TheoryObject a(std::vector<Sort>{alpha});
      auto r = representable(t, a);
      auto o = *t->object_index(a);
      auto id = std::find(r.values(o).begin(), r.values(o).end(), "(v1)") - r.values(o).begin();
      for (const auto& model : models) {
        auto h = as_functor(model, t);
        bool complete = true;
        auto nat = natural_transformations(r, h, 1000000, &complete);
        std::set<std::int32_t> images;
        for (const auto& eta : nat) images.insert(eta[o][id]);
        tally.check(complete && nat.size() == model.carrier(alpha).size() &&
                        images.size() == nat.size(),
                    spec + " " + alpha.name + " " + model.name() + ": " + n(nat.size()));
        ++cases;
      }
    }
  }
  return tally.outcome(n(cases) + " (doctrine, sort, model) cases");
}

// 4. Strict iff strictly local.
Outcome strict_local() {
  Tally tally;
  std::mt19937 rng(oracle::seed());
  std::size_t checked = 0, rejected = 0;
  for (const char* spec : {"trivial", "monoid", "group"}) {
    auto d = builtin_doctrine(spec);
    auto t = Truncation::make(d, 2, 2, ArrowKind::Full);
    auto models = models_up_to(d, 2);
    bool total = std::string(spec) == "trivial";
    for (int i = 0; i < 40; ++i) {
      auto x = gen::random_diagram(t, models, rng, 2, 2, total);
      tally.check(check_strictly_local(x).local() == check_product_preservation(x).strict(),
                  std::string(spec) + " diagram " + n(i));
      ++checked;
      auto maps = x.all_maps();
      for (std::size_t a = 0; a < maps.size(); ++a) {
        auto s = t->arrows()[a].source, tg = t->arrows()[a].target;
        if (t->arrows()[a].role == Arrow::Role::Identity && x.size(s) >= 2 && x.size(tg) >= 2) {
          maps[a][0] = 1;
          bool threw = false;
          try {
            DiagramOnTruncation(t, x.all_values(), maps);
          } catch (const Error&) {
            threw = true;
          }
          tally.check(threw, "non-functorial accepted");
          ++rejected;
          break;
        }
      }
    }
  }
  tally.check(checked >= 100, "too few diagrams");
  return tally.outcome(n(checked) + " diagrams, " + n(rejected) + " non-functorial rejects");
}

// 5. Per-sort adjunction.
Outcome adjunction() {
  Tally tally;
  std::size_t cases = 0;
  for (const auto& spec : default_builtin_specs()) {
    auto d = builtin_doctrine(spec);
    auto models = models_up_to(d, 3);
    for (const auto& alpha : d->sorts())
      for (std::size_t y = 0; y <= 2; ++y)
        for (const auto& model : models) {
          auto r = adjunction_check(d, alpha, y, model);
          tally.check(r.ok && r.homs == r.functions,
                      spec + " " + alpha.name + " |Y|=" + n(y) + " " + model.name());
          ++cases;
        }
  }
  return tally.outcome(n(cases) + " cases");
}

// 6. Monad-algebra laws.
Outcome monad_laws() {
  Tally tally;
  std::vector<FiniteAlgebra> valid;
  for (const char* spec : {"trivial", "monoid", "group", "group-action", "ring-module"})
    for (const auto& m : models_up_to(builtin_doctrine(spec), 2)) valid.push_back(m);
  std::vector<FiniteAlgebra> faulted;
  for (const auto& m : valid) {
    for (std::size_t op = 0; op < m.doctrine().ops().size() && faulted.size() < 12; ++op) {
      auto sort = *m.doctrine().sort_index(m.doctrine().ops()[op].codomain);
      if (m.size(sort) < 2 || m.table(op).empty()) continue;
      auto bad = m.with_entry(op, 0, (m.table(op)[0] + 1) % static_cast<Element>(m.size(sort)));
      if (!check_equations(bad).ok()) {
        faulted.push_back(bad);
        break;
      }
    }
  }
  for (const auto& m : valid) tally.check(check_monad_laws(m).ok(), "valid " + m.name());
  for (const auto& m : faulted) {
    auto r = check_monad_laws(m);
    tally.check(!r.ok() && !r.failures.empty() && !r.failures[0].detail.empty(),
                "faulted " + m.name());
  }
  tally.check(valid.size() >= 10 && faulted.size() >= 5, "catalog too small");
  return tally.outcome(n(valid.size()) + " valid, " + n(faulted.size()) + " faulted");
}

// 7. Rigidification universal property.
Outcome universal_property() {
  Tally tally;
  auto trivial = builtin_doctrine("trivial");
  auto t = Truncation::make(trivial, 2, 1, ArrowKind::Full);
  auto toy = gen::toy(t);
  auto models = models_up_to(trivial, 3);
  auto r = verify_universal_property(toy, rigidify_presentation(toy), models);
  tally.check(r.ok(), "toy");
  for (const auto& c : r.checks)
    if (c.model.find('2') != std::string::npos) tally.check(c.homs == 4 && c.nats == 4, "toy 4=4");
  std::size_t roundtrips = 0;
  for (const char* spec : {"trivial", "monoid", "group", "group-action"}) {
    auto d = builtin_doctrine(spec);
    auto tt = Truncation::make(d, 2, 2);
    for (const auto& a : models_up_to(d, 2)) {
      auto h = as_functor(a, tt);
      auto p = rigidify_presentation(h);
      tally.check(p.homs_into(a).size() == enumerate_homs(a, a).size() &&
                      verify_universal_property(h, p, {a}).ok(),
                  std::string(spec) + " H_A " + a.name());
      ++roundtrips;
    }
  }
  std::mt19937 rng(oracle::seed() + 7);
  std::size_t fuzzed = 0;
  for (const char* spec : {"trivial", "ocat:x,y;f:x->x"}) {
    auto d = builtin_doctrine(spec);
    bool is_trivial = std::string(spec) == "trivial";
    auto ft = Truncation::make(d, 2, is_trivial ? 2 : 1, ArrowKind::Full);
    auto ms = models_up_to(d, is_trivial ? 3 : 2);
    for (int i = 0; i < 30; ++i) {
      auto x = gen::random_diagram(ft, ms, rng, 2, 2, is_trivial);
      auto report = verify_universal_property(x, rigidify_presentation(x), ms);
      tally.check(report.ok(), std::string(spec) + " fuzz " + n(i));
      ++fuzzed;
    }
  }
  return tally.outcome("toy ok, " + n(roundtrips) + " H_A round trips, " + n(fuzzed) + " fuzzed");
}

// 8. K_T preserves the projection maps.
Outcome ktk() {
  Tally tally;
  std::size_t cases = 0;
  for (const char* spec : {"trivial", "monoid", "group"}) {
    auto d = builtin_doctrine(spec);
    auto models = models_up_to(d, 3);
    for (const auto& p : projection_map_set(*d, 3)) {
      auto r = verify_ktk(d, p, models);
      tally.check(r.ok(), std::string(spec) + " " + p.target.to_string());
      for (std::size_t i = 0; i < r.checks.size(); ++i) {
        std::size_t expect = 1;
        for (std::size_t k = 0; k < p.target.size(); ++k) expect *= models[i].carrier(p.target[k]).size();
        tally.check(r.checks[i].homs == expect && r.checks[i].nats == expect,
                    std::string(spec) + " |A|^n");
        ++cases;
      }
    }
  }
  return tally.outcome(n(cases) + " (map, model) cases");
}

/// Precomposition with `unit` maps Nat(Y, H) bijectively onto Nat(X, H).
bool restriction_bijective(const DiagramOnTruncation& x, const DiagramOnTruncation& y,
                           const std::vector<std::vector<std::int32_t>>& unit,
                           const DiagramOnTruncation& h) {
  auto nx = natural_transformations(x, h);
  auto ny = natural_transformations(y, h);
  std::set<NatTrans> image;
  for (const auto& eta : ny) {
    NatTrans r(unit.size());
    for (std::size_t o = 0; o < unit.size(); ++o)
      for (auto e : unit[o]) r[o].push_back(eta[o][e]);
    image.insert(r);
  }
  return image.size() == ny.size() && image == std::set<NatTrans>(nx.begin(), nx.end());
}

std::vector<std::set<std::pair<int, int>>> merged(const std::vector<std::vector<std::int32_t>>& u) {
  std::vector<std::set<std::pair<int, int>>> out;
  for (const auto& c : u) {
    std::set<std::pair<int, int>> m;
    for (int a = 0; a < static_cast<int>(c.size()); ++a)
      for (int b = a + 1; b < static_cast<int>(c.size()); ++b)
        if (c[a] == c[b]) m.emplace(a, b);
    out.push_back(m);
  }
  return out;
}

// 9. Localization steps against objectwise pushouts.
Outcome localization_steps() {
  Tally tally;
  auto d = builtin_doctrine("trivial");
  auto t = Truncation::make(d, 2, 2, ArrowKind::Full);
  auto models = models_up_to(d, 3);
  std::vector<DiagramOnTruncation> hs;
  for (const auto& a : models) hs.push_back(as_functor(a, t));
  std::mt19937 rng(oracle::seed() + 9);
  auto p = projection_map_set(*d, 2).front();
  std::size_t diagrams = 0;
  for (int i = 0; i < 24; ++i) {
    auto x = i == 0 ? gen::toy(t) : gen::random_diagram(t, models, rng, 2, 2);
    oracle::TrivialDiagram ox(x);
    auto s = surjectivity_step(x, p);
    auto os = oracle::surjectivity(ox, 2);
    auto js = injectivity_step(x, p);
    auto oj = oracle::injectivity(ox, 2);
    for (int m = 0; m <= 2; ++m) {
      auto o = ox.object(m);
      tally.check(s.diagram.size(o) == os.sizes[m] && merged(s.unit)[o] == os.merged[m],
                  "surjectivity " + n(i));
      tally.check(js.diagram.size(o) == oj.sizes[m] && merged(js.unit)[o] == oj.merged[m],
                  "injectivity " + n(i));
    }
    for (const auto& h : hs) {
      tally.check(restriction_bijective(x, s.diagram, s.unit, h), "surjectivity restriction");
      tally.check(restriction_bijective(x, js.diagram, js.unit, h), "injectivity restriction");
    }
    ++diagrams;
  }
  return tally.outcome(n(diagrams) + " diagrams, " + n(hs.size()) + " models");
}

// 10. Simplicial consistency.
Outcome simplicial() {
  Tally tally;
  std::mt19937 rng(oracle::seed() + 10);
  std::size_t strict = 0, total = 0;
  for (const char* spec : {"trivial", "monoid", "group"}) {
    auto d = builtin_doctrine(spec);
    auto t = Truncation::make(d, 2, 1);
    auto models = models_up_to(d, 2);
    for (int i = 0; i < 20; ++i) {
      auto x = gen::random_simplicial(t, models, rng, 3, std::string(spec) == "trivial");
      if (check_strict(x).strict()) {
        auto probe = homotopy_probe(x);
        tally.check(probe.passed() && probe.terminal_passed(), std::string(spec) + " strict refuted");
        ++strict;
      }
      ++total;
    }
  }
  tally.check(total >= 50, "too few simplicial diagrams");
  std::size_t levels = 0;
  for (const auto& spec : default_builtin_specs()) {
    auto d = builtin_doctrine(spec);
    for (const auto& alpha : d->sorts()) {
      auto f = degreewise_free(d, alpha, standard(StandardKind::Delta, 0, 3));
      auto ref = free_algebra(d, generator_context(alpha, 1));
      for (std::size_t k = 0; k <= 3; ++k) {
        for (const auto& beta : d->sorts())
          tally.check(f.level(k).enumerate(beta, 2) == ref.enumerate(beta, 2),
                      spec + " level " + n(k));
        ++levels;
      }
    }
  }
  return tally.outcome(n(total) + " diagrams (" + n(strict) + " strict), " + n(levels) +
                       " free levels");
}

// 11. Parser corpus.
Outcome parser_corpus() {
  Tally tally;
  auto round_trip = [&](const std::string& text, const std::string& what) {
    try {
      auto p = print_theory(*parse_theory(text));
      tally.check(print_theory(*parse_theory(p)) == p, what);
    } catch (const std::exception& e) {
      tally.check(false, what + ": " + e.what());
    }
  };
  std::size_t valid = 0, builtin = 0, malformed = 0;
  namespace fs = std::filesystem;
  for (const auto& spec : default_builtin_specs()) {
    round_trip(print_theory(*builtin_doctrine(spec)), spec);
    ++builtin;
  }
  for (const char* dir : {"builtin", "valid"}) {
    for (const auto& e : fs::directory_iterator(kRoot + "/tests/corpus/" + dir)) {
      round_trip(read_file(e.path().string()), e.path().filename().string());
      ++(std::string(dir) == "builtin" ? builtin : valid);
    }
  }
  for (const auto& e : fs::directory_iterator(kRoot + "/tests/corpus/malformed")) {
    auto text = read_file(e.path().string());
    std::string expect = text.substr(0, text.find('\n'));
    expect = expect.substr(expect.find_last_of(' ') + 1);
    std::string got = "accepted";
    try {
      parse_theory(text);
    } catch (const ParseError& err) {
      got = n(err.line()) + ":" + n(err.column());
    } catch (const std::exception& err) {
      got = std::string("unpositioned ") + err.what();
    }
    tally.check(got == expect, e.path().filename().string() + " " + got);
    ++malformed;
  }
  tally.check(valid >= 20, "fewer than 20 hand-written files");
  return tally.outcome(n(builtin) + " built-in, " + n(valid) + " hand-written, " + n(malformed) +
                       " malformed");
}

struct Criterion {
  int id;
  const char* name;
  double ceiling;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "theory-category laws", 30, category_laws},
      {2, "free-object counts", 10, free_counts},
      {3, "set-level Yoneda", 60, yoneda},
      {4, "strict iff strictly local", 30, strict_local},
      {5, "per-sort adjunction", 60, adjunction},
      {6, "monad-algebra laws", 60, monad_laws},
      {7, "rigidification universal property", 120, universal_property},
      {8, "projection maps under K_T", 60, ktk},
      {9, "localization steps", 120, localization_steps},
      {10, "simplicial consistency", 120, simplicial},
      {11, "parser corpus", 10, parser_corpus},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.ceiling) o = {false, o.detail + ", over time"};
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << " ["
              << std::fixed << std::setprecision(2) << secs << "s <= " << std::setprecision(0)
              << c.ceiling << "s] " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
