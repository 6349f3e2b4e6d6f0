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

#include "msat/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace msat {
namespace {

using Int = boost::multiprecision::cpp_int;
using Map = TruncSimplicialSet::Map;

std::string object_key(const TheoryObject& o) {
  std::string s;
  for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + o[i].name;
  return s;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
  std::size_t find(std::size_t a) { return p_[a] == a ? a : p_[a] = find(p_[a]); }
  void unite(std::size_t a, std::size_t b) { p_[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) n += find(i) == i;
    return n;
  }

 private:
  std::vector<std::size_t> p_;
};

/// Nonzero diagonal of a diagonalization by unimodular row/column operations.
std::vector<Int> diagonalize(std::vector<std::vector<Int>> a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<Int> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // Move the smallest remainder in row or column t to the pivot.
      std::size_t br = t, bc = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[br][bc])) br = i, bc = t;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[br][bc])) br = t, bc = j;
      std::swap(a[t], a[br]);
      for (auto& row : a) std::swap(row[t], row[bc]);
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

/// Invariant factors from a diagonal: repeated (gcd, lcm) exchange.
std::vector<Int> invariant_factors(std::vector<Int> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Int g = gcd(d[i], d[j]);
      Int l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

/// Normalized boundary d_k = sum_i (-1)^i d_i on nondegenerate simplices,
/// dropping degenerate faces; rows indexed by nondegenerate (k-1)-simplices.
std::vector<std::vector<Int>> boundary(const TruncSimplicialSet& x, std::size_t k) {
  auto rows = x.nondegenerate(k - 1), cols = x.nondegenerate(k);
  std::map<std::int32_t, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
  std::vector<std::vector<Int>> m(rows.size(), std::vector<Int>(cols.size(), 0));
  for (std::size_t i = 0; i <= k; ++i) {
    const auto& f = x.face(k, i);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto it = row_of.find(f[cols[c]]);
      if (it != row_of.end()) m[it->second][c] += (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

std::optional<std::string> shape_error(const std::vector<std::vector<std::string>>& levels,
                                       const std::vector<std::vector<Map>>& faces,
                                       const std::vector<std::vector<Map>>& degens) {
  if (levels.empty()) return "no levels";
  std::size_t n = levels.size() - 1;
  if (faces.size() != n + 1) return "expected face lists for levels 0.." + std::to_string(n);
  if (degens.size() != n) return "expected degeneracy lists for levels 0.." + std::to_string(n - 1);
  auto check = [&](const Map& m, std::size_t from, std::size_t to, const std::string& what)
      -> std::optional<std::string> {
    if (m.size() != levels[from].size()) return what + " has the wrong length";
    for (auto e : m)
      if (e < 0 || static_cast<std::size_t>(e) >= levels[to].size()) return what + " leaves level " + std::to_string(to);
    return std::nullopt;
  };
  if (!faces[0].empty()) return "level 0 has no faces";
  for (std::size_t k = 1; k <= n; ++k) {
    if (faces[k].size() != k + 1) return "level " + std::to_string(k) + " needs " + std::to_string(k + 1) + " faces";
    for (std::size_t i = 0; i <= k; ++i)
      if (auto e = check(faces[k][i], k, k - 1, "d" + std::to_string(i) + " at level " + std::to_string(k))) return e;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (degens[k].size() != k + 1) return "level " + std::to_string(k) + " needs " + std::to_string(k + 1) + " degeneracies";
    for (std::size_t j = 0; j <= k; ++j)
      if (auto e = check(degens[k][j], k, k + 1, "s" + std::to_string(j) + " at level " + std::to_string(k))) return e;
  }
  return std::nullopt;
}

/// Checks the simplicial identities through callbacks d(k, i, x), s(k, j, x).
template <typename Eq, typename D, typename S, typename Each>
std::optional<std::string> identities(std::size_t n, Each each, D d, S s, Eq eq) {
  std::optional<std::string> err;
  auto fail = [&](const std::string& what, std::size_t k) {
    if (!err) err = what + " fails at level " + std::to_string(k);
  };
  for (std::size_t k = 0; k <= n && !err; ++k) {
    each(k, [&](const auto& x) {
      if (err) return;
      if (k >= 2) {
        for (std::size_t j = 1; j <= k; ++j)
          for (std::size_t i = 0; i < j; ++i)
            if (!eq(d(k - 1, i, d(k, j, x)), d(k - 1, j - 1, d(k, i, x))))
              fail("d" + std::to_string(i) + "d" + std::to_string(j) + " = d" + std::to_string(j - 1) + "d" + std::to_string(i), k);
      }
      if (k + 2 <= n) {
        for (std::size_t j = 0; j <= k; ++j)
          for (std::size_t i = 0; i <= j; ++i)
            if (!eq(s(k + 1, i, s(k, j, x)), s(k + 1, j + 1, s(k, i, x))))
              fail("s" + std::to_string(i) + "s" + std::to_string(j) + " = s" + std::to_string(j + 1) + "s" + std::to_string(i), k);
      }
      if (k + 1 <= n) {
        for (std::size_t j = 0; j <= k; ++j) {
          for (std::size_t i = 0; i <= k + 1; ++i) {
            auto lhs = d(k + 1, i, s(k, j, x));
            std::string name = "d" + std::to_string(i) + "s" + std::to_string(j);
            if (i < j) {
              if (!eq(lhs, s(k - 1, j - 1, d(k, i, x)))) fail(name, k);
            } else if (i == j || i == j + 1) {
              if (!eq(lhs, x)) fail(name + " = id", k);
            } else if (!eq(lhs, s(k - 1, j, d(k, i - 1, x)))) {
              fail(name, k);
            }
          }
        }
      }
    });
  }
  return err;
}

std::string sequence_label(const std::vector<std::size_t>& v, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (n >= 10 && i) s += ".";
    s += std::to_string(v[i]);
  }
  return s;
}

/// All length-`len` tuples over sizes, first entry slowest.
void for_each_code(const std::vector<std::size_t>& sizes,
                   const std::function<void(const std::vector<std::size_t>&)>& f) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> c(sizes.size(), 0);
  while (true) {
    f(c);
    std::size_t i = sizes.size();
    while (i > 0 && ++c[i - 1] == sizes[i - 1]) c[--i] = 0;
    if (i == 0) return;
  }
}

std::size_t encode(const std::vector<std::size_t>& c, const std::vector<std::size_t>& sizes) {
  std::size_t code = 0;
  for (std::size_t i = 0; i < c.size(); ++i) code = code * sizes[i] + c[i];
  return code;
}

NatTrans identity_nat(const DiagramOnTruncation& x) {
  NatTrans n;
  for (std::size_t o = 0; o < x.truncation().objects().size(); ++o) {
    n.emplace_back(x.size(o));
    std::iota(n.back().begin(), n.back().end(), 0);
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Truncated simplicial sets

TruncSimplicialSet::TruncSimplicialSet(std::vector<std::vector<std::string>> levels,
                                       std::vector<std::vector<Map>> faces,
                                       std::vector<std::vector<Map>> degeneracies)
    : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
  if (auto e = identity_error(levels_, faces_, degens_)) {
    throw Error(ErrorKind::InvalidParameter, "not a simplicial set: " + *e);
  }
}

std::optional<std::string> TruncSimplicialSet::identity_error(
    const std::vector<std::vector<std::string>>& levels,
    const std::vector<std::vector<Map>>& faces,
    const std::vector<std::vector<Map>>& degeneracies) {
  if (auto e = shape_error(levels, faces, degeneracies)) return e;
  auto each = [&](std::size_t k, auto f) {
    for (std::int32_t x = 0; x < static_cast<std::int32_t>(levels[k].size()); ++x) f(x);
  };
  auto d = [&](std::size_t k, std::size_t i, std::int32_t x) { return faces[k][i][x]; };
  auto s = [&](std::size_t k, std::size_t j, std::int32_t x) { return degeneracies[k][j][x]; };
  return identities(levels.size() - 1, each, d, s, std::equal_to<std::int32_t>());
}

std::vector<std::int32_t> TruncSimplicialSet::nondegenerate(std::size_t k) const {
  std::vector<bool> degenerate(size(k), false);
  if (k > 0)
    for (const auto& s : degens_[k - 1])
      for (auto x : s) degenerate[x] = true;
  std::vector<std::int32_t> out;
  for (std::size_t x = 0; x < size(k); ++x)
    if (!degenerate[x]) out.push_back(static_cast<std::int32_t>(x));
  return out;
}

TruncSimplicialSet standard(StandardKind kind, std::size_t n, std::size_t cap, std::size_t k) {
  if (kind == StandardKind::Horn && (n < 1 || k > n)) {
    throw Error(ErrorKind::InvalidParameter, "horn V[n,k] needs n >= 1 and 0 <= k <= n");
  }
  auto keep = [&](const std::vector<std::size_t>& seq) {
    std::vector<bool> hit(n + 1, false);
    for (auto v : seq) hit[v] = true;
    switch (kind) {
      case StandardKind::Delta:
        return true;
      case StandardKind::Boundary:
        return std::find(hit.begin(), hit.end(), false) != hit.end();
      case StandardKind::Horn:
        for (std::size_t i = 0; i <= n; ++i)
          if (i != k && !hit[i]) return true;
        return false;
    }
    return false;
  };
  std::vector<std::vector<std::vector<std::size_t>>> seqs(cap + 1);
  std::vector<std::map<std::vector<std::size_t>, std::int32_t>> index(cap + 1);
  for (std::size_t m = 0; m <= cap; ++m) {
    std::vector<std::size_t> seq(m + 1, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t lo) {
      if (pos == m + 1) {
        if (keep(seq)) {
          index[m][seq] = static_cast<std::int32_t>(seqs[m].size());
          seqs[m].push_back(seq);
        }
        return;
      }
      for (std::size_t v = lo; v <= n; ++v) {
        seq[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
  std::vector<std::vector<std::string>> levels(cap + 1);
  std::vector<std::vector<Map>> faces(cap + 1), degens(cap);
  for (std::size_t m = 0; m <= cap; ++m) {
    for (const auto& s : seqs[m]) levels[m].push_back(sequence_label(s, n));
    if (m > 0) {
      for (std::size_t i = 0; i <= m; ++i) {
        Map f;
        for (auto s : seqs[m]) {
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
          f.push_back(index[m - 1].at(s));
        }
        faces[m].push_back(std::move(f));
      }
    }
    if (m < cap) {
      for (std::size_t j = 0; j <= m; ++j) {
        Map g;
        for (auto s : seqs[m]) {
          s.insert(s.begin() + static_cast<std::ptrdiff_t>(j), s[j]);
          g.push_back(index[m + 1].at(s));
        }
        degens[m].push_back(std::move(g));
      }
    }
  }
  return TruncSimplicialSet(std::move(levels), std::move(faces), std::move(degens));
}

TruncSimplicialSet constant(const std::vector<std::string>& values, std::size_t cap) {
  Map id(values.size());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<Map>> faces(cap + 1), degens(cap);
  for (std::size_t k = 1; k <= cap; ++k) faces[k].assign(k + 1, id);
  for (std::size_t k = 0; k < cap; ++k) degens[k].assign(k + 1, id);
  return TruncSimplicialSet(std::vector<std::vector<std::string>>(cap + 1, values),
                            std::move(faces), std::move(degens));
}

TruncSimplicialSet product(const std::vector<TruncSimplicialSet>& factors, std::size_t cap) {
  for (const auto& f : factors) {
    if (f.dim_cap() < cap) throw Error(ErrorKind::InvalidParameter, "factor truncated below the cap");
  }
  std::vector<std::vector<std::string>> levels(cap + 1);
  std::vector<std::vector<std::size_t>> sizes(cap + 1);
  for (std::size_t k = 0; k <= cap; ++k) {
    for (const auto& f : factors) sizes[k].push_back(f.size(k));
    for_each_code(sizes[k], [&](const std::vector<std::size_t>& c) {
      std::string s = "(";
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + factors[i].level(k)[c[i]];
      levels[k].push_back(s + ")");
    });
  }
  auto lift = [&](std::size_t from, std::size_t to, auto component) {
    Map m;
    for_each_code(sizes[from], [&](const std::vector<std::size_t>& c) {
      std::vector<std::size_t> out(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) out[i] = static_cast<std::size_t>(component(i, c[i]));
      m.push_back(static_cast<std::int32_t>(encode(out, sizes[to])));
    });
    return m;
  };
  std::vector<std::vector<Map>> faces(cap + 1), degens(cap);
  for (std::size_t k = 1; k <= cap; ++k)
    for (std::size_t i = 0; i <= k; ++i)
      faces[k].push_back(lift(k, k - 1, [&](std::size_t f, std::size_t x) { return factors[f].face(k, i)[x]; }));
  for (std::size_t k = 0; k < cap; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      degens[k].push_back(lift(k, k + 1, [&](std::size_t f, std::size_t x) { return factors[f].degeneracy(k, j)[x]; }));
  return TruncSimplicialSet(std::move(levels), std::move(faces), std::move(degens));
}

std::size_t pi0(const TruncSimplicialSet& x) {
  UnionFind uf(x.size(0));
  if (x.dim_cap() >= 1) {
    for (std::size_t e = 0; e < x.size(1); ++e) uf.unite(x.face(1, 0)[e], x.face(1, 1)[e]);
  }
  return uf.classes();
}

std::string to_string(const HomologyGroup& h) {
  std::string s;
  if (h.rank > 0) s = h.rank == 1 ? "Z" : "Z^" + std::to_string(h.rank);
  for (const auto& t : h.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t);
  return s.empty() ? "0" : s;
}

std::vector<std::string> smith_invariants(const std::vector<std::vector<long long>>& matrix) {
  std::vector<std::vector<Int>> a;
  for (const auto& row : matrix) a.emplace_back(row.begin(), row.end());
  std::vector<std::string> out;
  for (const auto& d : invariant_factors(diagonalize(std::move(a)))) out.push_back(d.str());
  return out;
}

std::vector<HomologyGroup> homology(const TruncSimplicialSet& x) {
  std::size_t n = x.dim_cap();
  // rank[k] and torsion[k] of d_k, k = 1..n.
  std::vector<std::size_t> rank(n + 2, 0);
  std::vector<std::vector<std::string>> torsion(n + 2);
  for (std::size_t k = 1; k <= n; ++k) {
    auto inv = invariant_factors(diagonalize(boundary(x, k)));
    rank[k] = inv.size();
    for (const auto& d : inv)
      if (d > 1) torsion[k].push_back(d.str());
  }
  std::vector<HomologyGroup> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({x.nondegenerate(i).size() - rank[i] - rank[i + 1], torsion[i + 1]});
  }
  return out;
}

nlohmann::json to_json(const TruncSimplicialSet& x) {
  nlohmann::json j;
  j["dim_cap"] = x.dim_cap();
  j["levels"] = nlohmann::json::array();
  j["nondegenerate"] = nlohmann::json::array();
  for (std::size_t k = 0; k <= x.dim_cap(); ++k) {
    j["levels"].push_back(x.level(k));
    j["nondegenerate"].push_back(x.nondegenerate(k));
  }
  j["faces"] = x.faces();
  j["degeneracies"] = x.degeneracies();
  return j;
}

TruncSimplicialSet simplicial_set_from_json(const nlohmann::json& j) {
  try {
    auto levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
    if (j.contains("dim_cap") && j["dim_cap"].get<std::size_t>() + 1 != levels.size()) {
      throw Error(ErrorKind::InvalidParameter, "dim_cap does not match the number of levels");
    }
    auto faces = j.value("faces", std::vector<std::vector<Map>>{});
    if (faces.empty()) faces.resize(1);
    TruncSimplicialSet x(std::move(levels), std::move(faces),
                         j.value("degeneracies", std::vector<std::vector<Map>>{}));
    if (j.contains("nondegenerate")) {
      for (std::size_t k = 0; k <= x.dim_cap(); ++k) {
        if (j["nondegenerate"].at(k).get<std::vector<std::int32_t>>() != x.nondegenerate(k)) {
          throw Error(ErrorKind::InvalidParameter,
                      "nondegenerate list at level " + std::to_string(k) + " is wrong");
        }
      }
    }
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParameter, std::string("malformed simplicial set JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Simplicial diagrams

SimplicialDiagram::SimplicialDiagram(std::vector<DiagramOnTruncation> levels,
                                     std::vector<std::vector<NatTrans>> faces,
                                     std::vector<std::vector<NatTrans>> degeneracies)
    : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
  if (levels_.empty()) throw Error(ErrorKind::InvalidDiagram, "no levels");
  const auto& t = levels_[0].truncation();
  for (const auto& l : levels_) {
    if (&l.truncation() != &t) throw Error(ErrorKind::InvalidDiagram, "levels on different truncations");
  }
  std::size_t n = levels_.size() - 1;
  if (faces_.size() != n + 1 || degens_.size() != n) {
    throw Error(ErrorKind::InvalidDiagram, "wrong number of face or degeneracy lists");
  }
  auto natural = [&](const NatTrans& m, std::size_t from, std::size_t to, const std::string& what) {
    const auto& x = levels_[from];
    const auto& y = levels_[to];
    if (m.size() != t.objects().size()) throw Error(ErrorKind::InvalidDiagram, what + ": wrong number of components");
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (m[o].size() != x.size(o)) throw Error(ErrorKind::InvalidDiagram, what + ": component size at " + t.objects()[o].to_string());
      for (auto e : m[o])
        if (e < 0 || static_cast<std::size_t>(e) >= y.size(o)) throw Error(ErrorKind::InvalidDiagram, what + ": value out of range");
    }
    for (std::size_t a = 0; a < t.arrows().size(); ++a) {
      auto s = t.arrows()[a].source, d = t.arrows()[a].target;
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(x.size(s)); ++e) {
        auto fe = x.apply(a, e);
        if (fe < 0) continue;
        auto g = y.apply(a, m[s][e]);
        if (g >= 0 && g != m[d][fe]) {
          throw Error(ErrorKind::InvalidDiagram,
                      what + " is not natural along " + t.arrows()[a].morphism.source.to_string() +
                          " -> " + t.arrows()[a].morphism.target.to_string());
        }
      }
    }
  };
  for (std::size_t k = 0; k <= n; ++k) {
    if (faces_[k].size() != (k == 0 ? 0 : k + 1)) throw Error(ErrorKind::InvalidDiagram, "wrong number of faces at level " + std::to_string(k));
    for (std::size_t i = 0; i < faces_[k].size(); ++i)
      natural(faces_[k][i], k, k - 1, "d" + std::to_string(i) + " at level " + std::to_string(k));
    if (k < n) {
      if (degens_[k].size() != k + 1) throw Error(ErrorKind::InvalidDiagram, "wrong number of degeneracies at level " + std::to_string(k));
      for (std::size_t j = 0; j <= k; ++j)
        natural(degens_[k][j], k, k + 1, "s" + std::to_string(j) + " at level " + std::to_string(k));
    }
  }
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    try {
      at(o);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidDiagram, "at " + t.objects()[o].to_string() + ": " + e.what());
    }
  }
}

TruncSimplicialSet SimplicialDiagram::at(std::size_t object) const {
  std::size_t n = dim_cap();
  std::vector<std::vector<std::string>> levels;
  std::vector<std::vector<Map>> faces(n + 1), degens(n);
  for (std::size_t k = 0; k <= n; ++k) {
    levels.push_back(levels_[k].values(object));
    for (const auto& f : faces_[k]) faces[k].push_back(f[object]);
    if (k < n)
      for (const auto& s : degens_[k]) degens[k].push_back(s[object]);
  }
  return TruncSimplicialSet(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialDiagram constant(const DiagramOnTruncation& x, std::size_t cap) {
  auto id = identity_nat(x);
  std::vector<std::vector<NatTrans>> faces(cap + 1), degens(cap);
  for (std::size_t k = 1; k <= cap; ++k) faces[k].assign(k + 1, id);
  for (std::size_t k = 0; k < cap; ++k) degens[k].assign(k + 1, id);
  return SimplicialDiagram(std::vector<DiagramOnTruncation>(cap + 1, x), std::move(faces),
                           std::move(degens));
}

SimplicialDiagram tensor(const DiagramOnTruncation& x, const TruncSimplicialSet& k) {
  const auto& t = x.truncation();
  std::size_t n = k.dim_cap();
  std::vector<DiagramOnTruncation> levels;
  for (std::size_t m = 0; m <= n; ++m) {
    std::vector<std::vector<std::string>> values(t.objects().size());
    for (std::size_t o = 0; o < values.size(); ++o)
      for (const auto& v : x.values(o))
        for (const auto& s : k.level(m)) values[o].push_back(v + "|" + s);
    std::vector<DiagramOnTruncation::Map> maps;
    for (std::size_t a = 0; a < t.arrows().size(); ++a) {
      DiagramOnTruncation::Map map;
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(x.size(t.arrows()[a].source)); ++e) {
        auto img = x.apply(a, e);
        for (std::size_t s = 0; s < k.size(m); ++s)
          map.push_back(img < 0 ? -1 : static_cast<std::int32_t>(img * k.size(m) + s));
      }
      maps.push_back(std::move(map));
    }
    levels.emplace_back(x.truncation_ptr(), std::move(values), std::move(maps));
  }
  auto lift = [&](std::size_t from, std::size_t to, const Map& f) {
    NatTrans nat;
    for (std::size_t o = 0; o < t.objects().size(); ++o) {
      std::vector<std::int32_t> c;
      for (std::size_t e = 0; e < x.size(o); ++e)
        for (std::size_t s = 0; s < k.size(from); ++s)
          c.push_back(static_cast<std::int32_t>(e * k.size(to) + f[s]));
      nat.push_back(std::move(c));
    }
    return nat;
  };
  std::vector<std::vector<NatTrans>> faces(n + 1), degens(n);
  for (std::size_t m = 1; m <= n; ++m)
    for (std::size_t i = 0; i <= m; ++i) faces[m].push_back(lift(m, m - 1, k.face(m, i)));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j <= m; ++j) degens[m].push_back(lift(m, m + 1, k.degeneracy(m, j)));
  return SimplicialDiagram(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialDiagram codiscrete(const FiniteAlgebra& alg, const TruncationPtr& t, std::size_t cap) {
  auto h = as_functor(alg, t);
  std::size_t objects = t->objects().size();
  // sizes[m][o]: (m+1) copies of |H(o)|.
  auto sizes = [&](std::size_t m, std::size_t o) { return std::vector<std::size_t>(m + 1, h.size(o)); };
  std::vector<DiagramOnTruncation> levels;
  for (std::size_t m = 0; m <= cap; ++m) {
    std::vector<std::vector<std::string>> values(objects);
    for (std::size_t o = 0; o < objects; ++o) {
      for_each_code(sizes(m, o), [&](const std::vector<std::size_t>& c) {
        std::string s = "[";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ";" : "") + h.values(o)[c[i]];
        values[o].push_back(s + "]");
      });
    }
    std::vector<DiagramOnTruncation::Map> maps;
    for (std::size_t a = 0; a < t->arrows().size(); ++a) {
      auto s = t->arrows()[a].source, d = t->arrows()[a].target;
      DiagramOnTruncation::Map map;
      for_each_code(sizes(m, s), [&](const std::vector<std::size_t>& c) {
        std::vector<std::size_t> out;
        bool defined = true;
        for (auto e : c) {
          auto img = h.apply(a, static_cast<std::int32_t>(e));
          defined = defined && img >= 0;
          out.push_back(img < 0 ? 0 : static_cast<std::size_t>(img));
        }
        map.push_back(defined ? static_cast<std::int32_t>(encode(out, sizes(m, d))) : -1);
      });
      maps.push_back(std::move(map));
    }
    levels.emplace_back(t, std::move(values), std::move(maps));
  }
  auto reindex = [&](std::size_t from, std::size_t to,
                     const std::function<std::vector<std::size_t>(const std::vector<std::size_t>&)>& f) {
    NatTrans nat;
    for (std::size_t o = 0; o < objects; ++o) {
      std::vector<std::int32_t> c;
      for_each_code(sizes(from, o), [&](const std::vector<std::size_t>& code) {
        c.push_back(static_cast<std::int32_t>(encode(f(code), sizes(to, o))));
      });
      nat.push_back(std::move(c));
    }
    return nat;
  };
  std::vector<std::vector<NatTrans>> faces(cap + 1), degens(cap);
  for (std::size_t m = 1; m <= cap; ++m)
    for (std::size_t i = 0; i <= m; ++i)
      faces[m].push_back(reindex(m, m - 1, [i](std::vector<std::size_t> c) {
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
        return c;
      }));
  for (std::size_t m = 0; m < cap; ++m)
    for (std::size_t j = 0; j <= m; ++j)
      degens[m].push_back(reindex(m, m + 1, [j](std::vector<std::size_t> c) {
        c.insert(c.begin() + static_cast<std::ptrdiff_t>(j), c[j]);
        return c;
      }));
  return SimplicialDiagram(std::move(levels), std::move(faces), std::move(degens));
}

namespace {

std::optional<std::string> homomorphism_error(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                              const Homomorphism& h) {
  const auto& d = a.doctrine();
  if (h.components.size() != d.sorts().size()) return "wrong number of components";
  for (std::size_t s = 0; s < d.sorts().size(); ++s) {
    if (h.components[s].size() != a.size(s)) return "component " + d.sorts()[s].name + " has the wrong length";
    for (auto e : h.components[s])
      if (e < 0 || static_cast<std::size_t>(e) >= b.size(s)) return "component " + d.sorts()[s].name + " leaves the carrier";
  }
  for (std::size_t op = 0; op < d.ops().size(); ++op) {
    const auto& sym = d.ops()[op];
    auto out = *d.sort_index(sym.codomain);
    for (std::size_t r = 0; r < a.table(op).size(); ++r) {
      auto args = a.row_args(op, r);
      std::vector<Element> mapped;
      for (std::size_t i = 0; i < args.size(); ++i)
        mapped.push_back(h.components[*d.sort_index(sym.domain[i])][args[i]]);
      if (h.components[out][a.table(op)[r]] != b.apply(op, mapped)) return "does not commute with " + sym.name;
    }
  }
  return std::nullopt;
}

}  // namespace

SimplicialAlgebra::SimplicialAlgebra(std::vector<FiniteAlgebra> levels,
                                     std::vector<std::vector<Homomorphism>> faces,
                                     std::vector<std::vector<Homomorphism>> degeneracies)
    : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
  if (levels_.empty()) throw Error(ErrorKind::InvalidModel, "no levels");
  std::size_t n = levels_.size() - 1;
  for (const auto& a : levels_) {
    if (!a.doctrine().same_presentation(levels_[0].doctrine())) {
      throw Error(ErrorKind::DoctrineMismatch, "levels of different theories");
    }
    if (!check_equations(a, 1).ok()) {
      throw Error(ErrorKind::InvalidModel, "level algebra '" + a.name() + "' violates an equation");
    }
  }
  if (faces_.size() != n + 1 || degens_.size() != n) {
    throw Error(ErrorKind::InvalidModel, "wrong number of face or degeneracy lists");
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (faces_[k].size() != (k == 0 ? 0 : k + 1) || (k < n && degens_[k].size() != k + 1)) {
      throw Error(ErrorKind::InvalidModel, "wrong number of structure maps at level " + std::to_string(k));
    }
    for (std::size_t i = 0; i < faces_[k].size(); ++i)
      if (auto e = homomorphism_error(levels_[k], levels_[k - 1], faces_[k][i]))
        throw Error(ErrorKind::InvalidModel, "d" + std::to_string(i) + " at level " + std::to_string(k) + ": " + *e);
    for (std::size_t j = 0; k < n && j <= k; ++j)
      if (auto e = homomorphism_error(levels_[k], levels_[k + 1], degens_[k][j]))
        throw Error(ErrorKind::InvalidModel, "s" + std::to_string(j) + " at level " + std::to_string(k) + ": " + *e);
  }
  for (std::size_t s = 0; s < levels_[0].doctrine().sorts().size(); ++s) {
    try {
      carrier(s);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidModel, e.what());
    }
  }
}

TruncSimplicialSet SimplicialAlgebra::carrier(std::size_t sort) const {
  std::size_t n = dim_cap();
  std::vector<std::vector<std::string>> levels;
  std::vector<std::vector<Map>> faces(n + 1), degens(n);
  for (std::size_t k = 0; k <= n; ++k) {
    levels.push_back(levels_[k].carrier(sort));
    for (const auto& h : faces_[k]) faces[k].push_back(h.components[sort]);
    for (std::size_t j = 0; k < n && j <= k; ++j) degens[k].push_back(degens_[k][j].components[sort]);
  }
  return TruncSimplicialSet(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialDiagram SimplicialAlgebra::to_diagram(const TruncationPtr& t) const {
  std::vector<DiagramOnTruncation> levels;
  for (const auto& a : levels_) levels.push_back(as_functor(a, t));
  const auto& d = levels_[0].doctrine();
  auto sizes = [&](std::size_t k, const TheoryObject& o) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < o.size(); ++i) out.push_back(levels_[k].size(*d.sort_index(o[i])));
    return out;
  };
  auto nat = [&](const Homomorphism& h, std::size_t from, std::size_t to) {
    NatTrans out;
    for (const auto& o : t->objects()) {
      std::vector<std::int32_t> c;
      for_each_code(sizes(from, o), [&](const std::vector<std::size_t>& code) {
        std::vector<std::size_t> img;
        for (std::size_t i = 0; i < code.size(); ++i)
          img.push_back(static_cast<std::size_t>(h.components[*d.sort_index(o[i])][code[i]]));
        c.push_back(static_cast<std::int32_t>(encode(img, sizes(to, o))));
      });
      out.push_back(std::move(c));
    }
    return out;
  };
  std::size_t n = dim_cap();
  std::vector<std::vector<NatTrans>> faces(n + 1), degens(n);
  for (std::size_t k = 1; k <= n; ++k)
    for (const auto& h : faces_[k]) faces[k].push_back(nat(h, k, k - 1));
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& h : degens_[k]) degens[k].push_back(nat(h, k, k + 1));
  return SimplicialDiagram(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialAlgebra constant(const FiniteAlgebra& alg, std::size_t cap) {
  Homomorphism id;
  for (std::size_t s = 0; s < alg.doctrine().sorts().size(); ++s) {
    id.components.emplace_back(alg.size(s));
    std::iota(id.components.back().begin(), id.components.back().end(), 0);
  }
  std::vector<std::vector<Homomorphism>> faces(cap + 1), degens(cap);
  for (std::size_t k = 1; k <= cap; ++k) faces[k].assign(k + 1, id);
  for (std::size_t k = 0; k < cap; ++k) degens[k].assign(k + 1, id);
  return SimplicialAlgebra(std::vector<FiniteAlgebra>(cap + 1, alg), std::move(faces),
                           std::move(degens));
}

StrictReport check_strict(const SimplicialDiagram& x) {
  StrictReport report;
  for (std::size_t k = 0; k <= x.dim_cap(); ++k) {
    for (const auto& f : check_product_preservation(x.level(k)).failures) {
      report.failures.push_back({k, f.object, f.value_count, f.product_count});
    }
  }
  return report;
}

HomotopyProbeReport homotopy_probe(const SimplicialDiagram& x) {
  if (x.dim_cap() < 1) throw Error(ErrorKind::InvalidParameter, "homotopy probe needs dim cap >= 1");
  const auto& t = x.truncation();
  std::size_t n = x.dim_cap();
  HomotopyProbeReport report;
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    const auto& a = t.objects()[o];
    if (a.size() == 1) continue;
    auto value = x.at(o);
    std::vector<TruncSimplicialSet> factors;
    for (std::size_t i = 0; i < a.size(); ++i) factors.push_back(x.at(t.singleton(a[i])));
    auto prod = product(factors, n);
    auto& out = a.empty() ? report.terminal_refutations : report.refutations;
    auto p0 = pi0(value), q0 = pi0(prod);
    if (p0 != q0) out.push_back({a, "pi0", std::to_string(p0), std::to_string(q0)});
    auto hv = homology(value), hp = homology(prod);
    for (std::size_t i = 0; i < n; ++i) {
      if (hv[i] != hp[i]) out.push_back({a, "H" + std::to_string(i), to_string(hv[i]), to_string(hp[i])});
    }
  }
  return report;
}

nlohmann::json to_json(const SimplicialDiagram& x) {
  const auto& t = x.truncation();
  auto nat_json = [&](const NatTrans& n) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t o = 0; o < t.objects().size(); ++o) j[object_key(t.objects()[o])] = n[o];
    return j;
  };
  nlohmann::json j;
  j["theory"] = t.doctrine().name();
  j["object_bound"] = t.object_bound();
  j["term_bound"] = t.term_bound();
  j["arrows"] = std::string(to_string(t.kind()));
  j["dim_cap"] = x.dim_cap();
  j["levels"] = nlohmann::json::array();
  j["faces"] = nlohmann::json::array();
  j["degeneracies"] = nlohmann::json::array();
  for (std::size_t k = 0; k <= x.dim_cap(); ++k) {
    auto level = to_json(x.level(k));
    for (const auto* key : {"theory", "object_bound", "term_bound", "arrows"}) level.erase(key);
    j["levels"].push_back(std::move(level));
    nlohmann::json fs = nlohmann::json::array();
    for (std::size_t i = 0; k > 0 && i <= k; ++i) fs.push_back(nat_json(x.face(k, i)));
    j["faces"].push_back(std::move(fs));
    if (k < x.dim_cap()) {
      nlohmann::json ds = nlohmann::json::array();
      for (std::size_t s = 0; s <= k; ++s) ds.push_back(nat_json(x.degeneracy(k, s)));
      j["degeneracies"].push_back(std::move(ds));
    }
  }
  return j;
}

SimplicialDiagram simplicial_diagram_from_json(const nlohmann::json& j, DoctrinePtr doctrine) {
  try {
    if (j.contains("theory") && j["theory"].get<std::string>() != doctrine->name()) {
      throw Error(ErrorKind::DoctrineMismatch, "diagram is for theory '" +
                                                   j["theory"].get<std::string>() + "', not '" +
                                                   doctrine->name() + "'");
    }
    std::string kind = j.value("arrows", std::string("generating"));
    if (kind != "generating" && kind != "full") {
      throw Error(ErrorKind::InvalidDiagram, "unknown arrow kind '" + kind + "'");
    }
    auto t = Truncation::make(doctrine, j.at("object_bound").get<std::size_t>(),
                              j.value("term_bound", std::size_t{2}),
                              kind == "full" ? ArrowKind::Full : ArrowKind::Generating);
    std::vector<DiagramOnTruncation> levels;
    for (const auto& l : j.at("levels")) levels.push_back(diagram_from_json(l, t));
    if (levels.empty()) throw Error(ErrorKind::InvalidDiagram, "no levels");
    if (j.contains("dim_cap") && j["dim_cap"].get<std::size_t>() + 1 != levels.size()) {
      throw Error(ErrorKind::InvalidDiagram, "dim_cap does not match the number of levels");
    }
    auto nat = [&](const nlohmann::json& n) {
      NatTrans out(t->objects().size());
      for (std::size_t o = 0; o < out.size(); ++o) {
        auto key = object_key(t->objects()[o]);
        if (!n.contains(key)) throw Error(ErrorKind::InvalidDiagram, "no component at " + t->objects()[o].to_string());
        out[o] = n[key].get<std::vector<std::int32_t>>();
      }
      return out;
    };
    std::size_t cap = levels.size() - 1;
    std::vector<std::vector<NatTrans>> faces(cap + 1), degens(cap);
    const auto& jf = j.at("faces");
    const auto& jd = j.at("degeneracies");
    for (std::size_t k = 0; k <= cap && k < jf.size(); ++k)
      for (const auto& n : jf[k]) faces[k].push_back(nat(n));
    for (std::size_t k = 0; k < cap && k < jd.size(); ++k)
      for (const auto& n : jd[k]) degens[k].push_back(nat(n));
    return SimplicialDiagram(std::move(levels), std::move(faces), std::move(degens));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidDiagram, std::string("malformed simplicial diagram JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Degreewise free simplicial algebras

FreeSimplicialAlgebra::FreeSimplicialAlgebra(DoctrinePtr doctrine, Sort alpha, TruncSimplicialSet y)
    : doctrine_(std::move(doctrine)), alpha_(std::move(alpha)), y_(std::move(y)) {
  if (!doctrine_->has_sort(alpha_)) {
    throw Error(ErrorKind::UnknownSymbol, "unknown sort '" + alpha_.name + "'");
  }
  for (std::size_t k = 0; k <= y_.dim_cap(); ++k) {
    levels_.push_back(free_algebra(doctrine_, generator_context(alpha_, y_.size(k))));
  }
}

Term FreeSimplicialAlgebra::apply(const std::vector<std::int32_t>& map, std::size_t from,
                                  std::size_t to, const Term& t) const {
  Assignment a;
  const auto& src = levels_[from].generators();
  const auto& dst = levels_[to].generators();
  for (std::size_t i = 0; i < src.size(); ++i) {
    a[src.name(i)] = Term::variable(dst.name(static_cast<std::size_t>(map[i])), alpha_);
  }
  return normalize(substitute(t, a), *doctrine_);
}

Term FreeSimplicialAlgebra::face(std::size_t k, std::size_t i, const Term& t) const {
  if (k == 0 || k > dim_cap() || i > k) throw Error(ErrorKind::IndexOutOfRange, "no face d" + std::to_string(i) + " at level " + std::to_string(k));
  return apply(y_.face(k, i), k, k - 1, t);
}

Term FreeSimplicialAlgebra::degeneracy(std::size_t k, std::size_t j, const Term& t) const {
  if (k >= dim_cap() || j > k) throw Error(ErrorKind::IndexOutOfRange, "no degeneracy s" + std::to_string(j) + " at level " + std::to_string(k));
  return apply(y_.degeneracy(k, j), k, k + 1, t);
}

std::optional<std::string> FreeSimplicialAlgebra::identity_error(std::size_t bound) const {
  for (const auto& sort : doctrine_->sorts()) {
    auto each = [&](std::size_t k, auto f) {
      for (const auto& t : levels_[k].enumerate(sort, bound)) f(t);
    };
    auto d = [&](std::size_t k, std::size_t i, const Term& t) { return face(k, i, t); };
    auto s = [&](std::size_t k, std::size_t j, const Term& t) { return degeneracy(k, j, t); };
    auto eq = [](const Term& a, const Term& b) { return a == b; };
    if (auto e = identities(dim_cap(), each, d, s, eq)) return "sort " + sort.name + ": " + *e;
  }
  return std::nullopt;
}

FreeSimplicialAlgebra degreewise_free(DoctrinePtr doctrine, const Sort& alpha,
                                      const TruncSimplicialSet& y) {
  return FreeSimplicialAlgebra(std::move(doctrine), alpha, y);
}

}  // namespace msat
