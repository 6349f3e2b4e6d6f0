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
#include <numeric>
#include <set>

#include "msat/models.hpp"

namespace msat {

namespace {

/// Table cells filled in a fixed order; each equation instance waits on the
/// first unset cell it needs.
class Finder {
 public:
  Finder(const Doctrine& d, const std::vector<std::size_t>& sizes) : d_(d), sizes_(sizes) {
    std::vector<std::size_t> order(d.ops().size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d.ops()[a].arity() < d.ops()[b].arity();
    });
    offset_.resize(d.ops().size());
    strides_.resize(d.ops().size());
    for (std::size_t op : order) {
      const auto& sym = d.ops()[op];
      std::size_t rows = 1;
      strides_[op].resize(sym.arity());
      for (std::size_t i = sym.arity(); i-- > 0;) {
        strides_[op][i] = rows;
        rows *= sizes[*d.sort_index(sym.domain[i])];
      }
      offset_[op] = domain_.size();
      for (std::size_t r = 0; r < rows; ++r) {
        domain_.push_back(static_cast<Element>(sizes[*d.sort_index(sym.codomain)]));
      }
    }
    value_.assign(domain_.size(), -1);
    watch_.resize(domain_.size());
    for (const auto& eq : d.equations()) {
      Program lhs = compile(eq.lhs, eq.context), rhs = compile(eq.rhs, eq.context);
      std::size_t p = programs_.size();
      programs_.push_back({std::move(lhs), std::move(rhs)});
      std::vector<std::size_t> ctx_sizes;
      for (std::size_t i = 0; i < eq.context.size(); ++i) {
        ctx_sizes.push_back(sizes[*d.sort_index(eq.context.sort(i))]);
      }
      if (std::find(ctx_sizes.begin(), ctx_sizes.end(), 0) != ctx_sizes.end()) continue;
      std::vector<Element> env(ctx_sizes.size(), 0);
      while (true) {
        instances_.push_back({p, env});
        std::size_t i = env.size();
        while (i > 0 && static_cast<std::size_t>(++env[i - 1]) == ctx_sizes[i - 1]) env[--i] = 0;
        if (i == 0) break;
      }
    }
  }

  std::vector<std::vector<Element>> run() {
    for (Element dom : domain_)
      if (dom == 0) return {};
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      int r = check(i);
      if (r == kFail) return {};
      if (r >= 0) watch_[r].push_back(i);
    }
    dfs(0);
    return found_;
  }

  std::vector<std::vector<Element>> split(const std::vector<Element>& cells) const {
    std::vector<std::vector<Element>> tables(d_.ops().size());
    for (std::size_t op = 0; op < tables.size(); ++op) {
      std::size_t n = 1;
      for (const auto& s : d_.ops()[op].domain) n *= sizes_[*d_.sort_index(s)];
      tables[op].assign(cells.begin() + offset_[op], cells.begin() + offset_[op] + n);
    }
    return tables;
  }

 private:
  static constexpr int kPass = -1;
  static constexpr int kFail = -2;

  struct Step {
    int op;
    int slot;
    std::vector<int> args;
  };
  using Program = std::vector<Step>;
  struct Instance {
    std::size_t program;
    std::vector<Element> env;
  };

  Program compile(const Term& t, const Context& ctx) {
    Program p;
    std::function<int(const Term&)> emit = [&](const Term& u) -> int {
      Step s{-1, -1, {}};
      if (u.is_variable()) {
        s.slot = static_cast<int>(*ctx.index_of(u.head()));
      } else {
        s.op = static_cast<int>(*d_.op_index(u.head()));
        for (const auto& a : u.args()) s.args.push_back(emit(a));
      }
      p.push_back(std::move(s));
      return static_cast<int>(p.size()) - 1;
    };
    emit(t);
    return p;
  }

  /// Value, or -(cell + 1) when blocked on an unset cell.
  long long eval(const Program& p, const std::vector<Element>& env) {
    scratch_.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Step& s = p[i];
      if (s.op < 0) {
        scratch_[i] = env[s.slot];
        continue;
      }
      std::size_t cell = offset_[s.op];
      for (std::size_t k = 0; k < s.args.size(); ++k) {
        cell += static_cast<std::size_t>(scratch_[s.args[k]]) * strides_[s.op][k];
      }
      if (value_[cell] < 0) return -static_cast<long long>(cell) - 1;
      scratch_[i] = value_[cell];
    }
    return scratch_.back();
  }

  /// kPass, kFail, or the blocking cell.
  int check(std::size_t i) {
    const auto& inst = instances_[i];
    const auto& [lhs, rhs] = programs_[inst.program];
    long long a = eval(lhs, inst.env);
    if (a < 0) return static_cast<int>(-a - 1);
    long long b = eval(rhs, inst.env);
    if (b < 0) return static_cast<int>(-b - 1);
    return a == b ? kPass : kFail;
  }

  void dfs(std::size_t k) {
    if (k == domain_.size()) {
      found_.push_back(value_);
      return;
    }
    std::vector<std::size_t> waiting = std::move(watch_[k]);
    watch_[k].clear();
    for (Element v = 0; v < domain_[k]; ++v) {
      value_[k] = v;
      std::vector<int> moved;
      bool ok = true;
      for (std::size_t i : waiting) {
        int r = check(i);
        if (r == kFail) {
          ok = false;
          break;
        }
        if (r >= 0) {
          watch_[r].push_back(i);
          moved.push_back(r);
        }
      }
      if (ok) dfs(k + 1);
      for (auto it = moved.rbegin(); it != moved.rend(); ++it) watch_[*it].pop_back();
    }
    value_[k] = -1;
    watch_[k] = std::move(waiting);
  }

  const Doctrine& d_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::size_t>> strides_;
  std::vector<Element> domain_;
  std::vector<Element> value_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<std::pair<Program, Program>> programs_;
  std::vector<Instance> instances_;
  std::vector<Element> scratch_;
  std::vector<std::vector<Element>> found_;
};

std::vector<std::vector<Element>> permutations(std::size_t n) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Element>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Smallest relabelled encoding of the tables over all carrier permutations.
std::vector<Element> canonical(const FiniteAlgebra& alg) {
  const Doctrine& d = alg.doctrine();
  std::vector<std::vector<std::vector<Element>>> perms;
  for (std::size_t s = 0; s < d.sorts().size(); ++s) perms.push_back(permutations(alg.size(s)));
  std::vector<std::size_t> pick(perms.size(), 0);
  std::vector<Element> best;
  while (true) {
    std::vector<Element> code;
    for (std::size_t op = 0; op < d.ops().size(); ++op) {
      const auto& sym = d.ops()[op];
      std::size_t out = *d.sort_index(sym.codomain);
      std::vector<Element> t(alg.table(op).size());
      for (std::size_t r = 0; r < t.size(); ++r) {
        auto args = alg.row_args(op, r);
        for (std::size_t i = 0; i < args.size(); ++i) {
          args[i] = perms[*d.sort_index(sym.domain[i])][pick[*d.sort_index(sym.domain[i])]][args[i]];
        }
        t[alg.row(op, args)] = perms[out][pick[out]][alg.table(op)[r]];
      }
      code.insert(code.end(), t.begin(), t.end());
    }
    if (best.empty() || code < best) best = std::move(code);
    std::size_t i = pick.size();
    while (i > 0 && ++pick[i - 1] == perms[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::string size_tag(const std::vector<std::size_t>& sizes) {
  std::string s;
  for (auto n : sizes) s += (s.empty() ? "" : "x") + std::to_string(n);
  return s;
}

}  // namespace

std::vector<FiniteAlgebra> find_models(DoctrinePtr doctrine, const std::vector<std::size_t>& sizes) {
  const Doctrine& d = *doctrine;
  if (sizes.size() != d.sorts().size()) {
    throw Error(ErrorKind::InvalidParameter, "expected one carrier size per sort");
  }
  Finder finder(d, sizes);
  std::vector<std::vector<std::string>> carriers;
  for (auto n : sizes) carriers.push_back(labels(n));
  std::set<std::vector<Element>> seen;
  std::vector<FiniteAlgebra> out;
  for (const auto& cells : finder.run()) {
    FiniteAlgebra alg(doctrine, carriers, finder.split(cells));
    if (!seen.insert(canonical(alg)).second) continue;
    alg.set_name(d.name() + "_" + size_tag(sizes) + "_" + std::to_string(out.size()));
    out.push_back(std::move(alg));
  }
  return out;
}

namespace {

std::vector<FiniteAlgebra> operad_catalog(const DoctrinePtr& doctrine) {
  const Doctrine& d = *doctrine;
  std::vector<FiniteAlgebra> out;
  for (int m = 1; m <= 3; ++m) {
    for (bool arity_zero : {true, false}) {
      std::vector<std::vector<std::string>> carriers;
      for (const auto& s : d.sorts()) {
        carriers.push_back(d.operad_level(s) == 0 && !arity_zero ? std::vector<std::string>{}
                                                                  : labels(m));
      }
      std::vector<std::vector<Element>> tables;
      for (const auto& sym : d.ops()) {
        std::size_t rows = 1;
        std::vector<std::size_t> dims;
        for (const auto& s : sym.domain) dims.push_back(carriers[*d.sort_index(s)].size());
        for (auto n : dims) rows *= n;
        std::vector<Element> t(rows);
        for (std::size_t r = 0; r < rows; ++r) {
          // Decode the row; labels add up.
          std::size_t rest = r, sum = 0, first = 0;
          for (std::size_t i = dims.size(); i-- > 0;) {
            std::size_t a = rest % dims[i];
            rest /= dims[i];
            sum += a;
            if (i == 0) first = a;
          }
          t[r] = static_cast<Element>(sym.name.rfind("perm", 0) == 0 ? first : sum % m);
        }
        tables.push_back(std::move(t));
      }
      std::string name = std::string(arity_zero ? "sum" : "sum_pos") + "_z" + std::to_string(m);
      out.emplace_back(doctrine, std::move(carriers), std::move(tables), name);
    }
  }
  return out;
}

std::vector<FiniteAlgebra> ocat_catalog(const DoctrinePtr& doctrine) {
  const Doctrine& d = *doctrine;
  const auto& objs = d.ocat_objects();
  auto pos = [&](const std::string& o) {
    return static_cast<std::size_t>(std::find(objs.begin(), objs.end(), o) - objs.begin());
  };
  struct Shape {
    std::string name;
    std::function<std::size_t(std::size_t, std::size_t)> size;
    std::function<Element(Element, Element, std::size_t)> comp;  // (g, f, hom size)
  };
  std::vector<Shape> shapes{
      {"discrete", [](std::size_t x, std::size_t y) -> std::size_t { return x == y; },
       [](Element, Element, std::size_t) { return Element{0}; }},
      {"chaotic", [](std::size_t, std::size_t) -> std::size_t { return 1; },
       [](Element, Element, std::size_t) { return Element{0}; }},
      {"order", [](std::size_t x, std::size_t y) -> std::size_t { return x <= y; },
       [](Element, Element, std::size_t) { return Element{0}; }},
      {"max_loop", [](std::size_t x, std::size_t y) -> std::size_t { return x != y ? 0 : x == 0 ? 2 : 1; },
       [](Element g, Element f, std::size_t) { return std::max(g, f); }},
  };
  for (std::size_t m : {2, 3}) {
    shapes.push_back({"loop_z" + std::to_string(m),
                      [m](std::size_t x, std::size_t y) -> std::size_t { return x != y ? 0 : x == 0 ? m : 1; },
                      [](Element g, Element f, std::size_t n) { return static_cast<Element>((g + f) % n); }});
    shapes.push_back({"groupoid_z" + std::to_string(m),
                      [m](std::size_t, std::size_t) -> std::size_t { return m; },
                      [](Element g, Element f, std::size_t n) { return static_cast<Element>((g + f) % n); }});
  }
  std::vector<FiniteAlgebra> out;
  std::set<std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<Element>>>> seen;
  for (const auto& shape : shapes) {
    std::vector<std::vector<std::string>> carriers;
    for (const auto& s : d.sorts()) {
      auto [x, y] = d.ocat_ends(s);
      carriers.push_back(labels(shape.size(pos(x), pos(y))));
    }
    std::vector<std::vector<Element>> tables;
    for (const auto& sym : d.ops()) {
      if (sym.arity() == 0) {
        tables.push_back({0});
        continue;
      }
      std::size_t gs = carriers[*d.sort_index(sym.domain[0])].size();
      std::size_t fs = carriers[*d.sort_index(sym.domain[1])].size();
      std::size_t n = carriers[*d.sort_index(sym.codomain)].size();
      std::vector<Element> t;
      for (std::size_t g = 0; g < gs; ++g)
        for (std::size_t f = 0; f < fs; ++f)
          t.push_back(shape.comp(static_cast<Element>(g), static_cast<Element>(f), n));
      tables.push_back(std::move(t));
    }
    if (!seen.insert({carriers, tables}).second) continue;
    out.emplace_back(doctrine, std::move(carriers), std::move(tables), shape.name);
  }
  return out;
}

}  // namespace

std::vector<FiniteAlgebra> catalog_models(DoctrinePtr doctrine) {
  std::vector<FiniteAlgebra> all;
  switch (doctrine->engine()) {
    case EngineKind::OperadPlanar:
    case EngineKind::OperadSymmetric: all = operad_catalog(doctrine); break;
    case EngineKind::OCat: all = ocat_catalog(doctrine); break;
    default: return {};
  }
  std::vector<FiniteAlgebra> out;
  for (auto& a : all)
    if (check_equations(a, 1).ok()) out.push_back(std::move(a));
  return out;
}

std::vector<FiniteAlgebra> models_up_to(DoctrinePtr doctrine, std::size_t bound) {
  std::vector<FiniteAlgebra> out;
  auto engine = doctrine->engine();
  if (engine == EngineKind::OperadPlanar || engine == EngineKind::OperadSymmetric ||
      engine == EngineKind::OCat) {
    for (auto& a : catalog_models(doctrine))
      if (a.max_carrier() <= bound) out.push_back(std::move(a));
    return out;
  }
  std::size_t n = doctrine->sorts().size();
  std::vector<std::size_t> sizes(n, 0);
  while (true) {
    for (auto& a : find_models(doctrine, sizes)) out.push_back(std::move(a));
    std::size_t i = n;
    while (i > 0 && ++sizes[i - 1] > bound) sizes[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace msat
