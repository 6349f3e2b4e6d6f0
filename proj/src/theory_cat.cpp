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

#include <algorithm>
#include <numeric>

#include "lexer.hpp"
#include "msat/dsl.hpp"
#include "msat/theory_cat.hpp"

namespace msat {

TheoryObject::TheoryObject(std::vector<Sort> sorts) : sorts_(std::move(sorts)) {
  std::stable_sort(sorts_.begin(), sorts_.end());
}

TheoryObject TheoryObject::parse(std::string_view text) {
  std::vector<Sort> sorts;
  detail::Lexer lx(text);
  while (lx.peek().kind != detail::Token::Kind::End) {
    sorts.emplace_back(lx.expect_ident("a sort name").text);
    if (!lx.accept(",")) break;
  }
  if (lx.peek().kind != detail::Token::Kind::End) lx.fail("expected ',' between sorts");
  return TheoryObject(std::move(sorts));
}

Context TheoryObject::context() const { return Context::canonical(sorts_); }

std::string TheoryObject::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < sorts_.size(); ++i) out += (i ? "," : "") + sorts_[i].name;
  return out + "]";
}

TheoryMorphism make_morphism(const TheoryObject& source, const TheoryObject& target,
                             std::vector<Term> terms, const Doctrine& doctrine) {
  if (terms.size() != target.size()) {
    throw Error(ErrorKind::ObjectMismatch, "morphism into " + target.to_string() + " needs " +
                                               std::to_string(target.size()) + " terms");
  }
  Context ctx = source.context();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (typecheck(terms[i], ctx, doctrine) != target[i]) {
      throw Error(ErrorKind::SortMismatch, "component " + std::to_string(i + 1) +
                                               " has sort " + terms[i].sort().name +
                                               ", expected " + target[i].name);
    }
    if (doctrine.exact()) terms[i] = normalize(terms[i], doctrine);
  }
  return {source, target, std::move(terms)};
}

namespace {

Assignment assignment_from(const TheoryMorphism& f) {
  Assignment a;
  for (std::size_t i = 0; i < f.terms.size(); ++i) a.emplace("v" + std::to_string(i + 1), f.terms[i]);
  return a;
}

Term maybe_normalize(const Term& t, const Doctrine& d) {
  return d.exact() ? normalize(t, d) : t;
}

}  // namespace

TheoryMorphism compose(const TheoryMorphism& g, const TheoryMorphism& f, const Doctrine& doctrine) {
  if (f.target != g.source) {
    throw Error(ErrorKind::ObjectMismatch, "cannot compose: " + f.target.to_string() +
                                               " is not " + g.source.to_string());
  }
  Assignment a = assignment_from(f);
  std::vector<Term> terms;
  terms.reserve(g.terms.size());
  for (const auto& t : g.terms) terms.push_back(maybe_normalize(substitute(t, a), doctrine));
  return {f.source, g.target, std::move(terms)};
}

TheoryMorphism identity(const TheoryObject& obj) {
  TheoryMorphism m{obj, obj, {}};
  for (std::size_t i = 0; i < obj.size(); ++i)
    m.terms.push_back(Term::variable("v" + std::to_string(i + 1), obj[i]));
  return m;
}

TheoryMorphism projection(const TheoryObject& obj, const std::vector<std::size_t>& selection) {
  for (auto i : selection) {
    if (i >= obj.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i + 1) +
                                                  " outside " + obj.to_string());
    }
  }
  std::vector<std::size_t> order = selection;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return obj[x] < obj[y]; });
  std::vector<Sort> sorts;
  std::vector<Term> terms;
  for (auto i : order) {
    sorts.push_back(obj[i]);
    terms.push_back(Term::variable("v" + std::to_string(i + 1), obj[i]));
  }
  return {obj, TheoryObject(std::move(sorts)), std::move(terms)};
}

ProductCone product(const TheoryObject& a, const TheoryObject& b) {
  std::vector<Sort> all = a.sorts();
  all.insert(all.end(), b.sorts().begin(), b.sorts().end());
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return all[x] < all[y]; });
  TheoryObject ab(all);
  // position[k] = slot of concatenated entry k in the product.
  std::vector<std::size_t> position(all.size());
  for (std::size_t slot = 0; slot < order.size(); ++slot) position[order[slot]] = slot;
  ProductCone cone{ab, {ab, a, {}}, {ab, b, {}}};
  for (std::size_t k = 0; k < all.size(); ++k) {
    Term v = Term::variable("v" + std::to_string(position[k] + 1), all[k]);
    (k < a.size() ? cone.first : cone.second).terms.push_back(v);
  }
  return cone;
}

TheoryMorphism tuple(const std::vector<TheoryMorphism>& fs, const TheoryObject& source) {
  TheoryObject src = fs.empty() ? source : fs.front().source;
  std::vector<Term> terms;
  for (const auto& f : fs) {
    if (f.source != src) {
      throw Error(ErrorKind::SourceMismatch, "tuple components have sources " +
                                                 src.to_string() + " and " + f.source.to_string());
    }
    terms.insert(terms.end(), f.terms.begin(), f.terms.end());
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& x, const Term& y) { return x.sort() < y.sort(); });
  std::vector<Sort> sorts;
  for (const auto& t : terms) sorts.push_back(t.sort());
  return {src, TheoryObject(std::move(sorts)), std::move(terms)};
}

std::vector<TheoryMorphism> hom_enumerate(const TheoryObject& source, const TheoryObject& target,
                                          const Doctrine& doctrine, std::size_t bound) {
  if (!doctrine.exact()) {
    throw Error(ErrorKind::UnsupportedDoctrine,
                "hom enumeration needs an exact engine; '" + doctrine.name() + "' has none");
  }
  Context ctx = source.context();
  std::vector<std::vector<Term>> pools;
  for (const auto& s : target.sorts()) pools.push_back(enumerate_terms(ctx, s, doctrine, bound));
  std::vector<TheoryMorphism> out;
  std::vector<std::size_t> idx(pools.size(), 0);
  for (const auto& p : pools)
    if (p.empty()) return out;
  while (true) {
    TheoryMorphism m{source, target, {}};
    for (std::size_t i = 0; i < pools.size(); ++i) m.terms.push_back(pools[i][idx[i]]);
    out.push_back(std::move(m));
    // Last component varies fastest.
    std::size_t i = pools.size();
    while (i > 0 && ++idx[i - 1] == pools[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<TheoryObject> objects_up_to(const Doctrine& doctrine, std::size_t bound) {
  std::vector<TheoryObject> out{TheoryObject()};
  std::vector<std::vector<Sort>> frontier{{}};
  std::vector<Sort> sorts = doctrine.sorts();
  std::sort(sorts.begin(), sorts.end());
  for (std::size_t n = 1; n <= bound; ++n) {
    std::vector<std::vector<Sort>> next;
    for (const auto& f : frontier) {
      for (const auto& s : sorts) {
        if (!f.empty() && s < f.back()) continue;
        auto x = f;
        x.push_back(s);
        out.emplace_back(x);
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

nlohmann::json to_json(const TheoryObject& obj) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : obj.sorts()) j.push_back(s.name);
  return j;
}

nlohmann::json to_json(const TheoryMorphism& m) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : m.terms) terms.push_back(to_string(t));
  return {{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"terms", terms}};
}

TheoryObject object_from_json(const nlohmann::json& j) {
  std::vector<Sort> sorts;
  for (const auto& s : j) sorts.emplace_back(s.get<std::string>());
  return TheoryObject(std::move(sorts));
}

TheoryMorphism morphism_from_json(const nlohmann::json& j, const Doctrine& doctrine) {
  TheoryObject src = object_from_json(j.at("source"));
  TheoryObject tgt = object_from_json(j.at("target"));
  Context ctx = src.context();
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) terms.push_back(parse_term(t.get<std::string>(), ctx, doctrine));
  return make_morphism(src, tgt, std::move(terms), doctrine);
}

// ---------------------------------------------------------------------------

std::size_t CompositionTable::KeyHash::operator()(const std::vector<std::uint32_t>& k) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : k) h = (h ^ x) * 1099511628211ULL;
  return h;
}

std::uint32_t CompositionTable::intern_term(const Term& t) {
  auto [it, fresh] = term_ids_.try_emplace(t, static_cast<std::uint32_t>(terms_.size()));
  if (fresh) terms_.push_back(t);
  return it->second;
}

std::uint32_t CompositionTable::intern_object(const TheoryObject& o) {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == o) return static_cast<std::uint32_t>(i);
  objects_.push_back(o);
  return static_cast<std::uint32_t>(objects_.size() - 1);
}

CompositionTable::Id CompositionTable::intern(const TheoryMorphism& m) {
  std::vector<std::uint32_t> key{intern_object(m.source)};
  for (const auto& t : m.terms) key.push_back(intern_term(t));
  auto [it, fresh] = morphism_ids_.try_emplace(key, static_cast<Id>(morphisms_.size()));
  if (fresh) {
    morphisms_.push_back({m, key[0], intern_object(m.target),
                          std::vector<std::uint32_t>(key.begin() + 1, key.end())});
  }
  return it->second;
}

CompositionTable::Id CompositionTable::compose(Id g, Id f) {
  if (morphisms_[f].target != morphisms_[g].source) {
    throw Error(ErrorKind::ObjectMismatch, "cannot compose: " +
                                               morphisms_[f].value.target.to_string() + " is not " +
                                               morphisms_[g].value.source.to_string());
  }
  auto& key = key_;
  key.assign(1, morphisms_[f].source);
  std::optional<Assignment> assign;
  const std::size_t ncomp = morphisms_[g].comps.size();
  for (std::size_t i = 0; i < ncomp; ++i) {
    std::uint32_t t = morphisms_[g].comps[i];
    std::uint64_t sk = (static_cast<std::uint64_t>(t) << 32) | f;
    auto it = subst_.find(sk);
    if (it == subst_.end()) {
      if (!assign) assign = assignment_from(morphisms_[f].value);
      Term r = maybe_normalize(substitute(terms_[t], *assign), doctrine_);
      it = subst_.emplace(sk, intern_term(r)).first;
    }
    key.push_back(it->second);
  }
  if (auto it = morphism_ids_.find(key); it != morphism_ids_.end()) return it->second;
  TheoryMorphism m{morphisms_[f].value.source, morphisms_[g].value.target, {}};
  for (std::size_t i = 1; i < key.size(); ++i) m.terms.push_back(terms_[key[i]]);
  Id id = static_cast<Id>(morphisms_.size());
  morphism_ids_.emplace(key, id);
  morphisms_.push_back({std::move(m), key[0], morphisms_[g].target,
                        std::vector<std::uint32_t>(key.begin() + 1, key.end())});
  return id;
}

}  // namespace msat
