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
#include <functional>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "engines/engine.hpp"

namespace msat::detail {
namespace {

using Int = boost::multiprecision::cpp_int;

/// Sorted multiset of ring variable names.
using Monomial = std::vector<std::string>;

/// Graded lexicographic order.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using Poly = std::map<Monomial, Int, MonomialLess>;

/// Key (module variable, ring monomial).
struct PairLess {
  bool operator()(const std::pair<std::string, Monomial>& a,
                  const std::pair<std::string, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return MonomialLess{}(a.second, b.second);
  }
};
using ModPoly = std::map<std::pair<std::string, Monomial>, Int, PairLess>;

const Sort kR("R");
const Sort kM("M");

template <typename Map>
void add_into(Map& acc, const typename Map::key_type& k, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

Poly to_poly(const Term& t) {
  if (t.is_variable()) return Poly{{Monomial{t.head()}, Int(1)}};
  const auto& h = t.head();
  if (h == "zero") return {};
  if (h == "one") return Poly{{Monomial{}, Int(1)}};
  if (h == "neg") {
    Poly p = to_poly(t.arg(0));
    for (auto& [m, c] : p) c = -c;
    return p;
  }
  if (h == "add") {
    Poly p = to_poly(t.arg(0));
    for (const auto& [m, c] : to_poly(t.arg(1))) add_into(p, m, c);
    return p;
  }
  if (h == "mul") {
    Poly a = to_poly(t.arg(0)), b = to_poly(t.arg(1)), p;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) add_into(p, mono_mul(ma, mb), ca * cb);
    return p;
  }
  throw Error(ErrorKind::UnknownSymbol, "ring engine cannot interpret '" + h + "'");
}

ModPoly to_modpoly(const Term& t) {
  if (t.is_variable()) return ModPoly{{{t.head(), Monomial{}}, Int(1)}};
  const auto& h = t.head();
  if (h == "mzero") return {};
  if (h == "mneg") {
    ModPoly p = to_modpoly(t.arg(0));
    for (auto& [k, c] : p) c = -c;
    return p;
  }
  if (h == "madd") {
    ModPoly p = to_modpoly(t.arg(0));
    for (const auto& [k, c] : to_modpoly(t.arg(1))) add_into(p, k, c);
    return p;
  }
  if (h == "smul") {
    Poly r = to_poly(t.arg(0));
    ModPoly x = to_modpoly(t.arg(1)), p;
    for (const auto& [mr, cr] : r)
      for (const auto& [k, cx] : x) add_into(p, {k.first, mono_mul(mr, k.second)}, cr * cx);
    return p;
  }
  throw Error(ErrorKind::UnknownSymbol, "module engine cannot interpret '" + h + "'");
}

Term constant(const char* name) { return Term::apply(name, kR, {}); }

/// Positive integer as a term of logarithmic size.
Term int_term(const Int& k) {
  if (k == 1) return constant("one");
  Term two = Term::apply("add", kR, {constant("one"), constant("one")});
  if (k == 2) return two;
  Term half = Term::apply("mul", kR, {two, int_term(k / 2)});
  if (k % 2 == 1) return Term::apply("add", kR, {constant("one"), half});
  return half;
}

Term mono_term(const Monomial& m) {
  Term acc = Term::variable(m.back(), kR);
  for (std::size_t i = m.size() - 1; i-- > 0;) {
    acc = Term::apply("mul", kR, {Term::variable(m[i], kR), acc});
  }
  return acc;
}

/// c * m for a nonzero coefficient.
Term scaled_term(const Monomial& m, const Int& c) {
  Int a = abs(c);
  Term t = m.empty() ? int_term(a)
           : a == 1  ? mono_term(m)
                     : Term::apply("mul", kR, {int_term(a), mono_term(m)});
  return c < 0 ? Term::apply("neg", kR, {t}) : t;
}

Term poly_term(const Poly& p) {
  if (p.empty()) return constant("zero");
  std::vector<Term> parts;
  for (const auto& [m, c] : p) parts.push_back(scaled_term(m, c));
  Term acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Term::apply("add", kR, {parts[i], acc});
  return acc;
}

Term modpoly_term(const ModPoly& p) {
  if (p.empty()) return Term::apply("mzero", kM, {});
  std::vector<Term> parts;
  for (const auto& [k, c] : p) {
    Term v = Term::variable(k.first, kM);
    if (k.second.empty() && c == 1) {
      parts.push_back(v);
    } else {
      parts.push_back(Term::apply("smul", kM, {scaled_term(k.second, c), v}));
    }
  }
  Term acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Term::apply("madd", kM, {parts[i], acc});
  return acc;
}

template <typename Map>
std::size_t weight(const Map& p, std::size_t extra) {
  std::size_t w = 0;
  for (const auto& [k, c] : p) {
    std::size_t deg;
    if constexpr (std::is_same_v<Map, Poly>) {
      deg = k.size();
    } else {
      deg = k.second.size();
    }
    w += static_cast<std::size_t>(abs(c)) * (deg + 1 + extra);
  }
  return w;
}

/// All multisets of `vars` of size <= max_deg, graded-lex sorted.
std::vector<Monomial> monomials(const std::vector<std::string>& vars, std::size_t max_deg) {
  std::vector<Monomial> out{{}};
  std::vector<Monomial> frontier{{}};
  for (std::size_t d = 1; d <= max_deg; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      for (const auto& v : vars) {
        if (!m.empty() && v < m.back()) continue;
        Monomial x = m;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

Term normalize_ring(const Term& t, const Doctrine&) {
  if (t.sort() == kM) return modpoly_term(to_modpoly(t));
  return poly_term(to_poly(t));
}

/// Sum over terms of |coefficient| * (degree + 1); a module variable counts
/// towards the degree.
std::size_t ring_size(const Term& nf, const Doctrine&) {
  if (nf.sort() == kM) return weight(to_modpoly(nf), 0);
  return weight(to_poly(nf), 0);
}

std::vector<Term> enumerate_ring(const Context& ctx, const Sort& s, const Doctrine&,
                                 std::size_t bound) {
  std::vector<std::string> rvars, mvars;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx.sort(i) == kR) rvars.push_back(ctx.name(i));
    if (ctx.sort(i) == kM) mvars.push_back(ctx.name(i));
  }
  std::sort(rvars.begin(), rvars.end());
  std::sort(mvars.begin(), mvars.end());

  // Each slot is a basis element with its weight per unit coefficient.
  struct Slot {
    Monomial mono;
    std::string mvar;
    std::size_t unit;
  };
  std::vector<Slot> slots;
  if (bound == 0) {
    return {s == kM ? modpoly_term({}) : poly_term({})};
  }
  if (s == kM) {
    for (const auto& mv : mvars)
      for (auto& m : monomials(rvars, bound - 1)) slots.push_back({m, mv, m.size() + 1});
  } else {
    for (auto& m : monomials(rvars, bound - 1)) slots.push_back({m, "", m.size() + 1});
  }

  std::vector<Term> out;
  std::vector<long> coef(slots.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == slots.size()) {
      if (s == kM) {
        ModPoly p;
        for (std::size_t j = 0; j < slots.size(); ++j)
          if (coef[j]) p[{slots[j].mvar, slots[j].mono}] = coef[j];
        out.push_back(modpoly_term(p));
      } else {
        Poly p;
        for (std::size_t j = 0; j < slots.size(); ++j)
          if (coef[j]) p[slots[j].mono] = coef[j];
        out.push_back(poly_term(p));
      }
      return;
    }
    coef[i] = 0;
    rec(i + 1, left);
    for (long c = 1; static_cast<std::size_t>(c) * slots[i].unit <= left; ++c) {
      for (long sign : {1L, -1L}) {
        coef[i] = sign * c;
        rec(i + 1, left - static_cast<std::size_t>(c) * slots[i].unit);
      }
    }
    coef[i] = 0;
  };
  rec(0, bound);
  return out;
}

}  // namespace msat::detail
