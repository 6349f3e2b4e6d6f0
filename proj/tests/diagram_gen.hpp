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

// Random functorial diagrams: coproducts of H_A and representables, then
// random identifications closed under the arrows.

#pragma once

#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "msat/models.hpp"
#include "msat/simplicial.hpp"

namespace gen {

/// Two-point diagram of the trivial theory: values {a,b} at [t], {z,w} at
/// [t,t], a point at T_0; every arrow into a nonempty object keeps the index.
inline msat::DiagramOnTruncation toy(const msat::TruncationPtr& t) {
  std::vector<std::vector<std::string>> values;
  for (const auto& o : t->objects()) {
    if (o.size() == 0) values.push_back({"*"});
    else if (o.size() == 1) values.push_back({"a", "b"});
    else values.push_back({"z", "w"});
  }
  std::vector<msat::DiagramOnTruncation::Map> maps;
  for (const auto& a : t->arrows()) {
    if (t->objects()[a.target].size() == 0) maps.push_back(std::vector<std::int32_t>(values[a.source].size(), 0));
    else maps.push_back({0, 1});
  }
  return msat::DiagramOnTruncation(t, values, maps);
}

/// Identifies values e1, e2 at `object` and closes under the arrows.
inline msat::DiagramOnTruncation merge(const msat::DiagramOnTruncation& x, std::size_t object,
                                       std::int32_t e1, std::int32_t e2) {
  const auto& t = x.truncation();
  std::vector<std::vector<std::int32_t>> p(t.objects().size());
  for (std::size_t o = 0; o < p.size(); ++o) {
    p[o].resize(x.size(o));
    std::iota(p[o].begin(), p[o].end(), 0);
  }
  std::function<std::int32_t(std::size_t, std::int32_t)> find = [&](std::size_t o, std::int32_t e) {
    return p[o][e] == e ? e : p[o][e] = find(o, p[o][e]);
  };
  auto unite = [&](std::size_t o, std::int32_t a, std::int32_t b) {
    a = find(o, a);
    b = find(o, b);
    if (a == b) return false;
    p[o][std::max(a, b)] = std::min(a, b);
    return true;
  };
  unite(object, e1, e2);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < t.arrows().size(); ++a) {
      auto s = t.arrows()[a].source, d = t.arrows()[a].target;
      for (std::int32_t u = 0; u < static_cast<std::int32_t>(x.size(s)); ++u) {
        for (std::int32_t v = u + 1; v < static_cast<std::int32_t>(x.size(s)); ++v) {
          if (find(s, u) != find(s, v)) continue;
          auto fu = x.apply(a, u), fv = x.apply(a, v);
          if (fu >= 0 && fv >= 0) changed |= unite(d, fu, fv);
        }
      }
    }
  }
  std::vector<std::vector<std::string>> values(p.size());
  std::vector<std::vector<std::int32_t>> cls(p.size());
  for (std::size_t o = 0; o < p.size(); ++o) {
    std::vector<std::int32_t> num(x.size(o), -1);
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(x.size(o)); ++e) {
      auto r = find(o, e);
      if (num[r] < 0) {
        num[r] = static_cast<std::int32_t>(values[o].size());
        values[o].push_back(x.values(o)[e]);
      }
      cls[o].push_back(num[r]);
    }
  }
  std::vector<msat::DiagramOnTruncation::Map> maps(t.arrows().size());
  for (std::size_t a = 0; a < maps.size(); ++a) {
    auto s = t.arrows()[a].source, d = t.arrows()[a].target;
    maps[a].assign(values[s].size(), -1);
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(x.size(s)); ++e) {
      auto img = x.apply(a, e);
      if (img >= 0) maps[a][cls[s][e]] = cls[d][img];
    }
  }
  return msat::DiagramOnTruncation(x.truncation_ptr(), values, maps);
}

/// Coproduct of 1..max_parts summands (H_A for a listed model, or a
/// representable at an object of the truncation), then up to `merges`
/// random identifications. Without `representables` only H_A summands are used.
inline msat::DiagramOnTruncation random_diagram(const msat::TruncationPtr& t,
                                                const std::vector<msat::FiniteAlgebra>& models,
                                                std::mt19937& rng, int max_parts = 2,
                                                int merges = 1, bool representables = true) {
  std::vector<msat::DiagramOnTruncation> parts;
  int n = 1 + static_cast<int>(rng() % max_parts);
  for (int i = 0; i < n; ++i) {
    if (!models.empty() && (!representables || rng() % 2 == 0)) {
      parts.push_back(msat::as_functor(models[rng() % models.size()], t));
    } else {
      const auto& o = t->objects()[rng() % t->objects().size()];
      parts.push_back(msat::representable(t, o));
    }
  }
  auto x = msat::coproduct(parts);
  int m = static_cast<int>(rng() % (merges + 1));
  for (int i = 0; i < m; ++i) {
    std::size_t o = rng() % t->objects().size();
    if (x.size(o) < 2) continue;
    auto a = static_cast<std::int32_t>(rng() % x.size(o));
    auto b = static_cast<std::int32_t>(rng() % x.size(o));
    x = merge(x, o, a, b);
  }
  return x;
}

/// A simplicial diagram with dim cap `cap`: constant on a random diagram,
/// a random diagram tensored with a standard simplicial set, or the
/// codiscrete diagram of a model.
inline msat::SimplicialDiagram random_simplicial(const msat::TruncationPtr& t,
                                                 const std::vector<msat::FiniteAlgebra>& models,
                                                 std::mt19937& rng, std::size_t cap,
                                                 bool representables = true) {
  auto x = random_diagram(t, models, rng, 2, 1, representables);
  switch (rng() % 4) {
    case 0:
      return msat::constant(x, cap);
    case 1: {
      std::vector<msat::TruncSimplicialSet> ks{
          msat::standard(msat::StandardKind::Delta, 0, cap),
          msat::standard(msat::StandardKind::Delta, 1, cap),
          msat::standard(msat::StandardKind::Boundary, 1, cap),
          msat::standard(msat::StandardKind::Horn, 2, cap, rng() % 3),
          msat::standard(msat::StandardKind::Boundary, 2, cap)};
      return msat::tensor(x, ks[rng() % ks.size()]);
    }
    case 2:
      if (!models.empty()) return msat::codiscrete(models[rng() % models.size()], t, cap);
      return msat::constant(x, cap);
    default:
      return msat::tensor(models.empty() ? x : msat::as_functor(models[rng() % models.size()], t),
                          msat::standard(msat::StandardKind::Delta, 1, cap));
  }
}

}  // namespace gen
