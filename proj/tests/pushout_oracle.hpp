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

// Objectwise pushouts for the trivial theory, computed on finite sets and
// functions directly. A morphism [n] -> [m] is a function f : m -> n whose
// entry j names the variable in position j.

#pragma once

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "msat/diagram.hpp"

namespace oracle {

using Fn = std::vector<int>;

/// All functions {0..m-1} -> {0..n-1}.
inline std::vector<Fn> functions(int m, int n) {
  std::vector<Fn> out;
  if (m > 0 && n == 0) return out;
  Fn f(m, 0);
  while (true) {
    out.push_back(f);
    int i = m;
    while (i > 0 && ++f[i - 1] == n) f[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

class TrivialDiagram {
 public:
  explicit TrivialDiagram(const msat::DiagramOnTruncation& x) : x_(x) {}

  int bound() const { return static_cast<int>(x_.truncation().object_bound()); }
  std::size_t object(int m) const {
    return *x_.truncation().object_index(
        msat::TheoryObject(std::vector<msat::Sort>(m, msat::Sort("t"))));
  }
  std::size_t size(int m) const { return x_.size(object(m)); }

  /// X(f)(e) for f : [n] -> [m].
  int apply(int n, const Fn& f, int e) const {
    std::vector<msat::Term> terms;
    for (int j : f) terms.push_back(msat::Term::variable("v" + std::to_string(j + 1), msat::Sort("t")));
    msat::TheoryMorphism m{msat::TheoryObject(std::vector<msat::Sort>(n, msat::Sort("t"))),
                           msat::TheoryObject(std::vector<msat::Sort>(f.size(), msat::Sort("t"))),
                           terms};
    return x_.apply(*x_.truncation().arrow_index(m), e);
  }

 private:
  const msat::DiagramOnTruncation& x_;
};

class UnionFind {
 public:
  int add() {
    p_.push_back(static_cast<int>(p_.size()));
    return p_.back();
  }
  int find(int a) { return p_[a] == a ? a : p_[a] = find(p_[a]); }
  void unite(int a, int b) { p_[find(a)] = find(b); }
  std::size_t classes() {
    std::set<int> r;
    for (int i = 0; i < static_cast<int>(p_.size()); ++i) r.insert(find(i));
    return r.size();
  }

 private:
  std::vector<int> p_;
};

struct PushoutResult {
  std::vector<std::size_t> sizes;  // by arity 0..B
  /// Per arity, pairs of old values that became equal.
  std::vector<std::set<std::pair<int, int>>> merged;
};

inline PushoutResult finish(std::vector<UnionFind>& uf, const TrivialDiagram& x) {
  PushoutResult r;
  for (int m = 0; m <= x.bound(); ++m) {
    r.sizes.push_back(uf[m].classes());
    std::set<std::pair<int, int>> merged;
    for (int a = 0; a < static_cast<int>(x.size(m)); ++a)
      for (int b = a + 1; b < static_cast<int>(x.size(m)); ++b)
        if (uf[m].find(a) == uf[m].find(b)) merged.emplace(a, b);
    r.merged.push_back(merged);
  }
  return r;
}

/// Pushout of X <- coprod A -> coprod B for the projection map at [n].
inline PushoutResult surjectivity(const TrivialDiagram& x, int n) {
  std::vector<UnionFind> uf(x.bound() + 1);
  for (int m = 0; m <= x.bound(); ++m)
    for (std::size_t e = 0; e < x.size(m); ++e) uf[m].add();
  for (const auto& tuple : functions(n, static_cast<int>(x.size(1)))) {
    for (int m = 0; m <= x.bound(); ++m) {
      std::map<Fn, int> copy;
      for (const auto& g : functions(m, n)) copy[g] = uf[m].add();
      // A(m) = coprod_i Hom([1],[m]); f o pi_i is the constant map to i.
      for (int i = 0; i < n; ++i) {
        for (const auto& f : functions(m, 1)) {
          int xi = x.apply(1, f, tuple[i]);
          uf[m].unite(xi, copy[Fn(m, i)]);
        }
      }
    }
  }
  return finish(uf, x);
}

/// Pushout along the fold B +_A B -> B for the projection map at [n].
inline PushoutResult injectivity(const TrivialDiagram& x, int n) {
  std::vector<UnionFind> uf(x.bound() + 1);
  for (int m = 0; m <= x.bound(); ++m)
    for (std::size_t e = 0; e < x.size(m); ++e) uf[m].add();
  int sz = static_cast<int>(x.size(n));
  for (int u = 0; u < sz; ++u) {
    for (int v = 0; v < sz; ++v) {
      bool agree = true;
      for (int i = 0; i < n; ++i) agree = agree && x.apply(n, Fn{i}, u) == x.apply(n, Fn{i}, v);
      if (!agree) continue;
      for (int m = 0; m <= x.bound(); ++m) {
        for (const auto& g : functions(m, n)) {
          int c = uf[m].add();
          uf[m].unite(c, x.apply(n, g, u));
          uf[m].unite(c, x.apply(n, g, v));
        }
      }
    }
  }
  return finish(uf, x);
}

}  // namespace oracle
