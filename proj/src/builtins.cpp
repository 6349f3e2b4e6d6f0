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

// Presentations of the built-in doctrines. The axiom lists are the standard
// ones; the engines in src/engines decide the resulting word problems.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>

#include "engines/engine.hpp"
#include "msat/signature.hpp"

namespace msat {
namespace {

/// Accumulates ops and builds well-sorted terms against them.
class Builder {
 public:
  void sort(const std::string& name) { sorts_.emplace_back(name); }
  void op(const std::string& name, std::vector<std::string> dom, const std::string& cod) {
    OpSymbol o{name, {}, Sort(cod)};
    for (auto& d : dom) o.domain.emplace_back(d);
    index_[name] = ops_.size();
    ops_.push_back(std::move(o));
  }

  Term operator()(const std::string& name, std::vector<Term> args = {}) const {
    const auto& o = ops_.at(index_.at(name));
    return Term::apply(name, o.codomain, std::move(args));
  }

  static Term var(const std::string& name, const std::string& sort) {
    return Term::variable(name, Sort(sort));
  }

  void eq(Context ctx, Term lhs, Term rhs) {
    equations_.push_back({std::move(ctx), std::move(lhs), std::move(rhs)});
  }

  DoctrinePtr finish(const std::string& name, EngineKind engine,
                     std::function<void(Doctrine&)> extra = {}) {
    auto d = std::make_shared<Doctrine>(name, sorts_, ops_, equations_, engine);
    if (extra) extra(*d);
    return d;
  }

 private:
  std::vector<Sort> sorts_;
  std::vector<OpSymbol> ops_;
  std::map<std::string, std::size_t> index_;
  std::vector<Equation> equations_;
};

void add_group_axioms(Builder& b, const std::string& s, bool inverses) {
  auto a = Builder::var("a", s), bb = Builder::var("b", s), c = Builder::var("c", s);
  Context abc{{"a", Sort(s)}, {"b", Sort(s)}, {"c", Sort(s)}};
  Context one{{"a", Sort(s)}};
  b.eq(abc, b("mul", {b("mul", {a, bb}), c}), b("mul", {a, b("mul", {bb, c})}));
  b.eq(one, b("mul", {b("e"), a}), a);
  b.eq(one, b("mul", {a, b("e")}), a);
  if (inverses) {
    b.eq(one, b("mul", {b("inv", {a}), a}), b("e"));
    b.eq(one, b("mul", {a, b("inv", {a})}), b("e"));
  }
}

DoctrinePtr make_trivial() {
  Builder b;
  b.sort("t");
  return b.finish("trivial", EngineKind::Trivial);
}

DoctrinePtr make_monoid() {
  Builder b;
  b.sort("m");
  b.op("mul", {"m", "m"}, "m");
  b.op("e", {}, "m");
  add_group_axioms(b, "m", false);
  return b.finish("monoid", EngineKind::Monoid);
}

DoctrinePtr make_group() {
  Builder b;
  b.sort("G");
  b.op("mul", {"G", "G"}, "G");
  b.op("inv", {"G"}, "G");
  b.op("e", {}, "G");
  add_group_axioms(b, "G", true);
  return b.finish("group", EngineKind::Group);
}

DoctrinePtr make_group_action() {
  Builder b;
  b.sort("G");
  b.sort("X");
  b.op("mul", {"G", "G"}, "G");
  b.op("inv", {"G"}, "G");
  b.op("e", {}, "G");
  b.op("act", {"G", "X"}, "X");
  add_group_axioms(b, "G", true);
  auto g = Builder::var("g", "G"), h = Builder::var("h", "G"), x = Builder::var("x", "X");
  b.eq(Context{{"g", Sort("G")}, {"h", Sort("G")}, {"x", Sort("X")}},
       b("act", {b("mul", {g, h}), x}), b("act", {g, b("act", {h, x})}));
  b.eq(Context{{"x", Sort("X")}}, b("act", {b("e"), x}), x);
  return b.finish("group_action", EngineKind::GroupAction);
}

DoctrinePtr make_ring_module() {
  Builder b;
  b.sort("M");
  b.sort("R");
  b.op("add", {"R", "R"}, "R");
  b.op("mul", {"R", "R"}, "R");
  b.op("neg", {"R"}, "R");
  b.op("zero", {}, "R");
  b.op("one", {}, "R");
  b.op("madd", {"M", "M"}, "M");
  b.op("mneg", {"M"}, "M");
  b.op("mzero", {}, "M");
  b.op("smul", {"R", "M"}, "M");
  auto r = [](const char* n) { return Builder::var(n, "R"); };
  auto m = [](const char* n) { return Builder::var(n, "M"); };
  Context r1{{"a", Sort("R")}};
  Context r2{{"a", Sort("R")}, {"b", Sort("R")}};
  Context r3{{"a", Sort("R")}, {"b", Sort("R")}, {"c", Sort("R")}};
  auto a = r("a"), bb = r("b"), c = r("c");
  b.eq(r3, b("add", {b("add", {a, bb}), c}), b("add", {a, b("add", {bb, c})}));
  b.eq(r2, b("add", {a, bb}), b("add", {bb, a}));
  b.eq(r1, b("add", {a, b("zero")}), a);
  b.eq(r1, b("add", {a, b("neg", {a})}), b("zero"));
  b.eq(r3, b("mul", {b("mul", {a, bb}), c}), b("mul", {a, b("mul", {bb, c})}));
  b.eq(r2, b("mul", {a, bb}), b("mul", {bb, a}));
  b.eq(r1, b("mul", {a, b("one")}), a);
  b.eq(r3, b("mul", {a, b("add", {bb, c})}),
       b("add", {b("mul", {a, bb}), b("mul", {a, c})}));
  auto x = m("x"), y = m("y"), z = m("z");
  Context m1{{"x", Sort("M")}};
  Context m2{{"x", Sort("M")}, {"y", Sort("M")}};
  Context m3{{"x", Sort("M")}, {"y", Sort("M")}, {"z", Sort("M")}};
  b.eq(m3, b("madd", {b("madd", {x, y}), z}), b("madd", {x, b("madd", {y, z})}));
  b.eq(m2, b("madd", {x, y}), b("madd", {y, x}));
  b.eq(m1, b("madd", {x, b("mzero")}), x);
  b.eq(m1, b("madd", {x, b("mneg", {x})}), b("mzero"));
  Context rrm{{"a", Sort("R")}, {"b", Sort("R")}, {"x", Sort("M")}};
  Context rmm{{"a", Sort("R")}, {"x", Sort("M")}, {"y", Sort("M")}};
  b.eq(rrm, b("smul", {b("mul", {a, bb}), x}), b("smul", {a, b("smul", {bb, x})}));
  b.eq(m1, b("smul", {b("one"), x}), x);
  b.eq(rmm, b("smul", {a, b("madd", {x, y})}),
       b("madd", {b("smul", {a, x}), b("smul", {a, y})}));
  b.eq(rrm, b("smul", {b("add", {a, bb}), x}),
       b("madd", {b("smul", {a, x}), b("smul", {bb, x})}));
  return b.finish("ring_module", EngineKind::RingModule);
}

bool valid_object_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isalnum(c);
         }) && std::isalpha(static_cast<unsigned char>(s[0]));
}

DoctrinePtr make_ocat(const BuiltinSpec& spec) {
  auto objects = spec.objects;
  if (objects.empty()) throw Error(ErrorKind::InvalidParameter, "ocat needs objects");
  for (const auto& o : objects) {
    if (!valid_object_name(o)) {
      throw Error(ErrorKind::InvalidParameter, "ocat object names must be alphanumeric: '" + o + "'");
    }
  }
  std::sort(objects.begin(), objects.end());
  if (std::adjacent_find(objects.begin(), objects.end()) != objects.end()) {
    throw Error(ErrorKind::InvalidParameter, "duplicate ocat object");
  }
  for (const auto& e : spec.edges) {
    if (!std::binary_search(objects.begin(), objects.end(), e.source) ||
        !std::binary_search(objects.begin(), objects.end(), e.target)) {
      throw Error(ErrorKind::InvalidParameter, "edge '" + e.name + "' leaves the object set");
    }
  }
  auto srt = [](const std::string& x, const std::string& y) { return x + "_" + y; };
  Builder b;
  for (const auto& x : objects)
    for (const auto& y : objects) b.sort(srt(x, y));
  for (const auto& x : objects) b.op("id_" + x, {}, srt(x, x));
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects)
        b.op("comp_" + x + "_" + y + "_" + z, {srt(y, z), srt(x, y)}, srt(x, z));
  for (const auto& x : objects) {
    for (const auto& y : objects) {
      auto f = Builder::var("f", srt(x, y));
      Context c{{"f", Sort(srt(x, y))}};
      b.eq(c, b("comp_" + x + "_" + y + "_" + y, {b("id_" + y), f}), f);
      b.eq(c, b("comp_" + x + "_" + x + "_" + y, {f, b("id_" + x)}), f);
    }
  }
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects)
        for (const auto& w : objects) {
          auto f = Builder::var("f", srt(x, y));
          auto g = Builder::var("g", srt(y, z));
          auto h = Builder::var("h", srt(z, w));
          Context c{{"f", Sort(srt(x, y))}, {"g", Sort(srt(y, z))}, {"h", Sort(srt(z, w))}};
          b.eq(c,
               b("comp_" + x + "_" + z + "_" + w,
                 {h, b("comp_" + x + "_" + y + "_" + z, {g, f})}),
               b("comp_" + x + "_" + y + "_" + w,
                 {b("comp_" + y + "_" + z + "_" + w, {h, g}), f}));
        }
  std::string name = "ocat";
  for (const auto& o : objects) name += "_" + o;
  auto edges = spec.edges;
  return b.finish(name, EngineKind::OCat, [&](Doctrine& d) { d.set_ocat(objects, edges); });
}

// --- operads --------------------------------------------------------------

std::string level_sort(int k) { return "p" + std::to_string(k); }

std::string gamma_name(const std::vector<int>& js) {
  std::string n = "g" + std::to_string(js.size());
  for (int j : js) n += "_" + std::to_string(j);
  return n;
}

/// All vectors of length `len` with entries in [0, cap] summing to at most `cap`.
void for_each_levels(int len, int cap, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> v(len, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == len) {
      f(v);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      v[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, cap);
}

std::vector<std::vector<int>> permutations_of(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool is_identity(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i) + 1) return false;
  return true;
}

DoctrinePtr make_operad(int cap, bool symmetric) {
  if (cap < 0 || cap > 9) {
    throw Error(ErrorKind::InvalidParameter, "operad level cap must lie in [0, 9]");
  }
  Builder b;
  for (int k = 0; k <= cap; ++k) b.sort(level_sort(k));
  if (cap >= 1) b.op("one", {}, level_sort(1));
  for (int k = 1; k <= cap; ++k) {
    for_each_levels(k, cap, [&](const std::vector<int>& js) {
      std::vector<std::string> dom{level_sort(k)};
      int sum = 0;
      for (int j : js) {
        dom.push_back(level_sort(j));
        sum += j;
      }
      b.op(gamma_name(js), dom, level_sort(sum));
    });
  }
  if (symmetric) {
    for (int k = 2; k <= cap; ++k)
      for (const auto& p : permutations_of(k))
        if (!is_identity(p)) b.op(detail::perm_op_name(p), {level_sort(k)}, level_sort(k));
  }

  auto gamma = [&](Term c, std::vector<Term> ds, const std::vector<int>& js) {
    std::vector<Term> args{std::move(c)};
    for (auto& d : ds) args.push_back(std::move(d));
    return b(gamma_name(js), std::move(args));
  };
  auto perm = [&](const std::vector<int>& p, Term x) {
    return is_identity(p) ? x : b(detail::perm_op_name(p), {std::move(x)});
  };

  if (cap >= 1) {
    for (int j = 0; j <= cap; ++j) {
      auto x = Builder::var("x", level_sort(j));
      b.eq(Context{{"x", Sort(level_sort(j))}}, gamma(b("one"), {x}, {j}), x);
    }
    for (int k = 1; k <= cap; ++k) {
      auto c = Builder::var("c", level_sort(k));
      std::vector<Term> ones(k, b("one"));
      b.eq(Context{{"c", Sort(level_sort(k))}}, gamma(c, ones, std::vector<int>(k, 1)), c);
    }
  }

  // Associativity: gamma(gamma(c; d..); e..) = gamma(c; gamma(d_i; block_i)..).
  for (int k = 1; k <= cap; ++k) {
    for_each_levels(k, cap, [&](const std::vector<int>& js) {
      int m = std::accumulate(js.begin(), js.end(), 0);
      if (m == 0) return;
      for_each_levels(m, cap, [&](const std::vector<int>& ls) {
        Context ctx;
        ctx.add("c", Sort(level_sort(k)));
        std::vector<Term> ds, es;
        for (int i = 0; i < k; ++i) {
          std::string n = "d" + std::to_string(i + 1);
          ctx.add(n, Sort(level_sort(js[i])));
          ds.push_back(Builder::var(n, level_sort(js[i])));
        }
        for (int t = 0; t < m; ++t) {
          std::string n = "e" + std::to_string(t + 1);
          ctx.add(n, Sort(level_sort(ls[t])));
          es.push_back(Builder::var(n, level_sort(ls[t])));
        }
        auto c = Builder::var("c", level_sort(k));
        Term lhs = gamma(gamma(c, ds, js), es, ls);
        std::vector<Term> inner;
        std::vector<int> inner_levels;
        int off = 0;
        for (int i = 0; i < k; ++i) {
          if (js[i] == 0) {
            inner.push_back(ds[i]);
            inner_levels.push_back(0);
            continue;
          }
          std::vector<Term> block(es.begin() + off, es.begin() + off + js[i]);
          std::vector<int> block_levels(ls.begin() + off, ls.begin() + off + js[i]);
          inner_levels.push_back(std::accumulate(block_levels.begin(), block_levels.end(), 0));
          inner.push_back(gamma(ds[i], block, block_levels));
          off += js[i];
        }
        Term rhs = gamma(c, inner, inner_levels);
        b.eq(ctx, lhs, rhs);
      });
    });
  }

  if (symmetric) {
    for (int k = 2; k <= cap; ++k) {
      auto perms = permutations_of(k);
      auto x = Builder::var("x", level_sort(k));
      Context cx{{"x", Sort(level_sort(k))}};
      for (const auto& s : perms) {
        if (is_identity(s)) continue;
        for (const auto& t : perms) {
          if (is_identity(t)) continue;
          std::vector<int> ts(k);
          for (int i = 0; i < k; ++i) ts[i] = t[s[i] - 1];
          b.eq(cx, perm(t, perm(s, x)), perm(ts, x));
        }
      }
    }
    for (int k = 1; k <= cap; ++k) {
      auto perms = permutations_of(k);
      for_each_levels(k, cap, [&](const std::vector<int>& js) {
        Context ctx;
        ctx.add("c", Sort(level_sort(k)));
        std::vector<Term> ds;
        for (int i = 0; i < k; ++i) {
          std::string n = "d" + std::to_string(i + 1);
          ctx.add(n, Sort(level_sort(js[i])));
          ds.push_back(Builder::var(n, level_sort(js[i])));
        }
        auto c = Builder::var("c", level_sort(k));
        std::vector<int> start(k, 0);
        for (int i = 1; i < k; ++i) start[i] = start[i - 1] + js[i - 1];
        int m = std::accumulate(js.begin(), js.end(), 0);
        // gamma(c.s; d) = gamma(c; d_s(1), ..., d_s(k)) . pi
        for (const auto& s : perms) {
          if (is_identity(s)) continue;
          std::vector<Term> dsig;
          std::vector<int> jsig;
          for (int i = 0; i < k; ++i) {
            dsig.push_back(ds[s[i] - 1]);
            jsig.push_back(js[s[i] - 1]);
          }
          std::vector<int> pi(m);
          int pos = 0;
          for (int i = 0; i < k; ++i)
            for (int t = 0; t < jsig[i]; ++t) pi[pos++] = start[s[i] - 1] + t + 1;
          b.eq(ctx, gamma(perm(s, c), ds, js), perm(pi, gamma(c, dsig, jsig)));
        }
        // gamma(c; d_1.t_1, ..., d_k.t_k) = gamma(c; d) . (t_1 + ... + t_k)
        std::vector<std::vector<std::vector<int>>> choices(k);
        for (int i = 0; i < k; ++i) choices[i] = permutations_of(js[i]);
        std::vector<std::size_t> pick(k, 0);
        std::function<void(int)> rec = [&](int i) {
          if (i == k) {
            bool all_id = true;
            for (int q = 0; q < k; ++q) all_id = all_id && is_identity(choices[q][pick[q]]);
            if (all_id) return;
            std::vector<Term> dt;
            std::vector<int> sum(m);
            for (int q = 0; q < k; ++q) {
              const auto& t = choices[q][pick[q]];
              dt.push_back(perm(t, ds[q]));
              for (int u = 0; u < js[q]; ++u) sum[start[q] + u] = start[q] + t[u];
            }
            b.eq(ctx, gamma(c, dt, js), perm(sum, gamma(c, ds, js)));
            return;
          }
          for (pick[i] = 0; pick[i] < choices[i].size(); ++pick[i]) rec(i + 1);
        };
        rec(0);
      });
    }
  }

  std::string name = std::string(symmetric ? "operad_symmetric_" : "operad_nonsigma_") +
                     std::to_string(cap);
  return b.finish(name, symmetric ? EngineKind::OperadSymmetric : EngineKind::OperadPlanar,
                  [&](Doctrine& d) { d.set_level_cap(cap); });
}

}  // namespace

DoctrinePtr builtin_doctrine(const BuiltinSpec& spec) {
  switch (spec.id) {
    case BuiltinSpec::Id::Trivial: return make_trivial();
    case BuiltinSpec::Id::Monoid: return make_monoid();
    case BuiltinSpec::Id::Group: return make_group();
    case BuiltinSpec::Id::GroupAction: return make_group_action();
    case BuiltinSpec::Id::RingModule: return make_ring_module();
    case BuiltinSpec::Id::OperadNonSigma: return make_operad(spec.level_cap, false);
    case BuiltinSpec::Id::OperadSymmetric: return make_operad(spec.level_cap, true);
    case BuiltinSpec::Id::OCat: return make_ocat(spec);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown built-in");
}

DoctrinePtr builtin_doctrine(const std::string& spec) {
  return builtin_doctrine(BuiltinSpec::parse(spec));
}

}  // namespace msat
