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
#include <random>
#include <set>

#include "msat/models.hpp"
#include "search.hpp"

namespace msat {

FiniteAlgebra::FiniteAlgebra(DoctrinePtr doctrine, std::vector<std::vector<std::string>> carriers,
                             std::vector<std::vector<Element>> tables, std::string name)
    : doctrine_(std::move(doctrine)),
      carriers_(std::move(carriers)),
      tables_(std::move(tables)),
      name_(std::move(name)) {
  const Doctrine& d = *doctrine_;
  if (carriers_.size() != d.sorts().size()) {
    throw Error(ErrorKind::InvalidModel, "expected one carrier per sort");
  }
  if (tables_.size() != d.ops().size()) {
    throw Error(ErrorKind::InvalidModel, "expected one table per operation");
  }
  for (std::size_t op = 0; op < d.ops().size(); ++op) {
    const auto& sym = d.ops()[op];
    std::vector<std::size_t> strides(sym.arity());
    std::size_t rows = 1;
    for (std::size_t i = sym.arity(); i-- > 0;) {
      strides[i] = rows;
      rows *= size(*d.sort_index(sym.domain[i]));
    }
    strides_.push_back(std::move(strides));
    if (tables_[op].size() != rows) {
      throw Error(ErrorKind::InvalidModel, "table '" + sym.name + "' has " +
                                               std::to_string(tables_[op].size()) +
                                               " rows, expected " + std::to_string(rows));
    }
    auto out = static_cast<Element>(size(*d.sort_index(sym.codomain)));
    for (Element v : tables_[op]) {
      if (v < 0 || v >= out) {
        throw Error(ErrorKind::ElementNotInCarrier,
                    "table '" + sym.name + "' leaves the carrier of " + sym.codomain.name);
      }
    }
  }
}

const std::vector<std::string>& FiniteAlgebra::carrier(const Sort& s) const {
  auto i = doctrine_->sort_index(s);
  if (!i) throw Error(ErrorKind::UnknownSymbol, "unknown sort '" + s.name + "'");
  return carriers_[*i];
}

std::size_t FiniteAlgebra::max_carrier() const {
  std::size_t m = 0;
  for (const auto& c : carriers_) m = std::max(m, c.size());
  return m;
}

std::size_t FiniteAlgebra::row(std::size_t op, std::span<const Element> args) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < args.size(); ++i) r += static_cast<std::size_t>(args[i]) * strides_[op][i];
  return r;
}

std::vector<Element> FiniteAlgebra::row_args(std::size_t op, std::size_t row) const {
  const auto& strides = strides_[op];
  std::vector<Element> args(strides.size());
  for (std::size_t i = 0; i < strides.size(); ++i) {
    args[i] = static_cast<Element>(row / strides[i]);
    row %= strides[i];
  }
  return args;
}

std::optional<Element> FiniteAlgebra::find(const Sort& s, const std::string& label) const {
  const auto& c = carrier(s);
  auto it = std::find(c.begin(), c.end(), label);
  if (it == c.end()) return std::nullopt;
  return static_cast<Element>(it - c.begin());
}

FiniteAlgebra FiniteAlgebra::with_entry(std::size_t op, std::size_t row, Element value) const {
  auto tables = tables_;
  tables.at(op).at(row) = value;
  return FiniteAlgebra(doctrine_, carriers_, std::move(tables), name_);
}

Element evaluate(const FiniteAlgebra& alg, const Term& term, const Environment& env) {
  if (term.is_variable()) {
    auto it = env.find(term.head());
    if (it == env.end()) {
      throw Error(ErrorKind::UnboundVariable, "no value for '" + term.head() + "'");
    }
    auto s = alg.doctrine().sort_index(term.sort());
    if (!s) throw Error(ErrorKind::UnknownSymbol, "unknown sort '" + term.sort().name + "'");
    if (it->second < 0 || static_cast<std::size_t>(it->second) >= alg.size(*s)) {
      throw Error(ErrorKind::ElementNotInCarrier,
                  "value of '" + term.head() + "' is not in the carrier of " + term.sort().name);
    }
    return it->second;
  }
  auto op = alg.doctrine().op_index(term.head());
  if (!op) throw Error(ErrorKind::UnknownSymbol, "unknown operation '" + term.head() + "'");
  std::vector<Element> args;
  for (const auto& a : term.args()) args.push_back(evaluate(alg, a, env));
  return alg.apply(*op, args);
}

CompiledTerm::CompiledTerm(const FiniteAlgebra& alg, const Term& term, const Context& context)
    : alg_(&alg) {
  std::function<int(const Term&)> emit = [&](const Term& t) -> int {
    Step step{-1, -1, {}};
    if (t.is_variable()) {
      auto slot = context.index_of(t.head());
      if (!slot) throw Error(ErrorKind::UnboundVariable, "no slot for '" + t.head() + "'");
      step.slot = static_cast<int>(*slot);
    } else {
      auto op = alg.doctrine().op_index(t.head());
      if (!op) throw Error(ErrorKind::UnknownSymbol, "unknown operation '" + t.head() + "'");
      step.op = static_cast<int>(*op);
      for (const auto& a : t.args()) step.args.push_back(emit(a));
    }
    steps_.push_back(std::move(step));
    return static_cast<int>(steps_.size()) - 1;
  };
  emit(term);
}

Element CompiledTerm::operator()(std::span<const Element> env) const {
  std::vector<Element> val(steps_.size());
  Element args[16];
  std::vector<Element> big;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& s = steps_[i];
    if (s.op < 0) {
      val[i] = env[s.slot];
      continue;
    }
    std::span<Element> a;
    if (s.args.size() <= 16) {
      a = std::span<Element>(args, s.args.size());
    } else {
      big.resize(s.args.size());
      a = big;
    }
    for (std::size_t k = 0; k < s.args.size(); ++k) a[k] = val[s.args[k]];
    val[i] = alg_->apply(static_cast<std::size_t>(s.op), a);
  }
  return val.back();
}

namespace {

std::vector<std::size_t> context_sizes(const FiniteAlgebra& alg, const Context& ctx) {
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    auto s = alg.doctrine().sort_index(ctx.sort(i));
    if (!s) throw Error(ErrorKind::UnknownSymbol, "unknown sort '" + ctx.sort(i).name + "'");
    sizes.push_back(alg.size(*s));
  }
  return sizes;
}

/// Calls visit on every tuple in the product of [0, sizes[i]); last varies fastest.
template <typename Visit>
void for_each_tuple(const std::vector<std::size_t>& sizes, Visit visit) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<Element> t(sizes.size(), 0);
  while (true) {
    if (!visit(std::span<const Element>(t))) return;
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++t[i]) < sizes[i]) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (sizes.empty()) return;
  }
}

std::size_t product(const std::vector<std::size_t>& sizes) {
  std::size_t p = 1;
  for (auto s : sizes) p *= s;
  return p;
}

std::string label_of(const FiniteAlgebra& alg, const Sort& s, Element e) {
  return alg.carrier(s)[e];
}

std::string env_text(const FiniteAlgebra& alg, const Context& ctx, std::span<const Element> env) {
  std::string out = "{";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    out += (i ? ", " : "") + ctx.name(i) + "=" + label_of(alg, ctx.sort(i), env[i]);
  }
  return out + "}";
}

}  // namespace

EquationReport check_equations(const FiniteAlgebra& alg, std::size_t max_violations) {
  EquationReport report;
  const auto& eqs = alg.doctrine().equations();
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const auto& eq = eqs[e];
    CompiledTerm lhs(alg, eq.lhs, eq.context), rhs(alg, eq.rhs, eq.context);
    for_each_tuple(context_sizes(alg, eq.context), [&](std::span<const Element> env) {
      ++report.instances;
      Element a = lhs(env), b = rhs(env);
      if (a != b) {
        EquationViolation v{e, {}, label_of(alg, eq.lhs.sort(), a), label_of(alg, eq.rhs.sort(), b)};
        for (std::size_t i = 0; i < eq.context.size(); ++i) {
          v.assignment.emplace_back(eq.context.name(i),
                                    label_of(alg, eq.context.sort(i), env[i]));
        }
        report.violations.push_back(std::move(v));
        return report.violations.size() < max_violations;
      }
      return true;
    });
    if (report.violations.size() >= max_violations) break;
  }
  return report;
}

MonadLawReport check_monad_laws(const FiniteAlgebra& alg, const MonadLawOptions& opt) {
  const Doctrine& d = alg.doctrine();
  MonadLawReport report;
  constexpr std::size_t kMaxFailures = 8;
  auto fail = [&](std::string law, std::string detail) {
    if (report.failures.size() < kMaxFailures) report.failures.push_back({std::move(law), std::move(detail)});
  };
  std::vector<Sort> live;
  for (std::size_t s = 0; s < d.sorts().size(); ++s)
    if (alg.size(s) > 0) live.push_back(d.sorts()[s]);

  // Unit law on representatives of the variable's class.
  for (const auto& s : live) {
    Context ctx{{"v", s}};
    Term v = Term::variable("v", s);
    auto raw = enumerate_raw_terms(ctx, s, d, opt.depth, opt.outer_cap * 4);
    for (const auto& t : raw) {
      if (normalize(t, d) != v) continue;
      CompiledTerm ct(alg, t, ctx);
      for (Element x = 0; x < static_cast<Element>(alg.carrier(s).size()); ++x) {
        ++report.unit_checks;
        Element got = ct(std::span<const Element>(&x, 1));
        if (got != x) {
          fail("unit", to_string(t) + " normalizes to v but evaluates to " +
                           label_of(alg, s, got) + " at v=" + label_of(alg, s, x));
        }
      }
    }
  }

  // Multiplication law on terms of terms.
  Context outer_ctx, inner_ctx;
  for (const auto& s : live) {
    for (int i = 1; i <= 2; ++i) outer_ctx.add("y" + std::to_string(outer_ctx.size() + 1), s);
    for (int i = 1; i <= 3; ++i) inner_ctx.add("x" + std::to_string(inner_ctx.size() + 1), s);
  }
  std::map<Sort, std::vector<Term>> inner;
  std::size_t inner_bound = opt.depth > 1 ? opt.depth - 1 : 1;
  for (const auto& s : live) {
    auto ts = enumerate_terms(inner_ctx, s, d, inner_bound);
    if (ts.size() > 40) ts.resize(40);
    inner[s] = std::move(ts);
  }
  auto inner_sizes = context_sizes(alg, inner_ctx);
  std::size_t env_total = product(inner_sizes);
  std::mt19937_64 rng(opt.seed);
  auto pick_env = [&](std::vector<Element>& env) {
    for (std::size_t i = 0; i < env.size(); ++i) env[i] = static_cast<Element>(rng() % inner_sizes[i]);
  };
  for (const auto& s : live) {
    auto outers = enumerate_terms(outer_ctx, s, d, opt.depth);
    if (outers.size() > opt.outer_cap) outers.resize(opt.outer_cap);
    for (const auto& outer : outers) {
      std::vector<std::size_t> ys;
      std::set<std::string> names;
      std::function<void(const Term&)> collect = [&](const Term& t) {
        if (t.is_variable()) names.insert(t.head());
        for (const auto& a : t.args()) collect(a);
      };
      collect(outer);
      for (std::size_t i = 0; i < outer_ctx.size(); ++i)
        if (names.count(outer_ctx.name(i))) ys.push_back(i);
      CompiledTerm outer_c(alg, outer, outer_ctx);
      std::size_t combos = 1;
      for (auto y : ys) combos = std::min<std::size_t>(combos * inner[outer_ctx.sort(y)].size(), 1u << 20);
      std::size_t rounds = std::min(combos, opt.inner_cap);
      for (std::size_t r = 0; r < rounds; ++r) {
        Assignment sub;
        std::vector<Term> chosen;
        std::size_t code = rounds == combos ? r : rng();
        for (auto y : ys) {
          const auto& pool = inner[outer_ctx.sort(y)];
          chosen.push_back(pool[code % pool.size()]);
          code /= pool.size();
          sub[outer_ctx.name(y)] = chosen.back();
        }
        Term flat = normalize(substitute(outer, sub), d);
        CompiledTerm flat_c(alg, flat, inner_ctx);
        std::vector<CompiledTerm> inner_c;
        for (const auto& t : chosen) inner_c.emplace_back(alg, t, inner_ctx);
        std::vector<Element> env(inner_ctx.size()), yenv(outer_ctx.size(), 0);
        auto check = [&](std::span<const Element> e) {
          ++report.multiplication_checks;
          for (std::size_t k = 0; k < ys.size(); ++k) yenv[ys[k]] = inner_c[k](e);
          Element lhs = flat_c(e), rhs = outer_c(yenv);
          if (lhs != rhs) {
            std::string ts;
            for (std::size_t k = 0; k < ys.size(); ++k)
              ts += (k ? ", " : "") + outer_ctx.name(ys[k]) + ":=" + to_string(chosen[k]);
            fail("multiplication", to_string(outer) + " with " + ts + " at " +
                                       env_text(alg, inner_ctx, e) + ": flattened " +
                                       to_string(flat) + " gives " + label_of(alg, s, lhs) +
                                       ", outer after inner gives " + label_of(alg, s, rhs));
          }
          return report.failures.size() < kMaxFailures;
        };
        if (env_total <= opt.env_cap) {
          for_each_tuple(inner_sizes, check);
        } else {
          for (std::size_t k = 0; k < opt.env_cap; ++k) {
            pick_env(env);
            if (!check(env)) break;
          }
        }
        if (report.failures.size() >= kMaxFailures) return report;
      }
    }
  }
  return report;
}

namespace {

std::string tuple_text(const FiniteAlgebra& alg, const TheoryObject& o,
                       std::span<const Element> entries) {
  if (o.size() == 1) return alg.carrier(o[0])[entries[0]];
  std::string s = "(";
  for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + alg.carrier(o[i])[entries[i]];
  return s + ")";
}

}  // namespace

DiagramOnTruncation as_functor(const FiniteAlgebra& alg, const TruncationPtr& t) {
  if (t->doctrine_ptr() != alg.doctrine_ptr() &&
      !t->doctrine().same_presentation(alg.doctrine())) {
    throw Error(ErrorKind::DoctrineMismatch, "model and truncation use different theories");
  }
  std::vector<std::vector<std::string>> values;
  std::vector<std::vector<std::size_t>> sizes;
  for (const auto& o : t->objects()) {
    Context ctx = o.context();
    sizes.push_back(context_sizes(alg, ctx));
    std::vector<std::string> vals;
    for_each_tuple(sizes.back(), [&](std::span<const Element> e) {
      vals.push_back(tuple_text(alg, o, e));
      return true;
    });
    values.push_back(std::move(vals));
  }
  std::vector<DiagramOnTruncation::Map> maps;
  for (const auto& a : t->arrows()) {
    Context ctx = a.morphism.source.context();
    std::vector<CompiledTerm> comps;
    for (const auto& term : a.morphism.terms) comps.emplace_back(alg, term, ctx);
    const auto& out_sizes = sizes[a.target];
    DiagramOnTruncation::Map map;
    for_each_tuple(sizes[a.source], [&](std::span<const Element> e) {
      std::size_t code = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) code = code * out_sizes[i] + comps[i](e);
      map.push_back(static_cast<std::int32_t>(code));
      return true;
    });
    maps.push_back(std::move(map));
  }
  return DiagramOnTruncation(t, std::move(values), std::move(maps));
}

std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                         std::size_t cap, bool* complete) {
  if (a.doctrine_ptr() != b.doctrine_ptr() && !a.doctrine().same_presentation(b.doctrine())) {
    throw Error(ErrorKind::DoctrineMismatch, "algebras of different theories");
  }
  const Doctrine& d = a.doctrine();
  detail::Search search;
  std::vector<std::vector<int>> var(d.sorts().size());
  for (std::size_t s = 0; s < var.size(); ++s)
    for (std::size_t x = 0; x < a.size(s); ++x) var[s].push_back(search.add_var(static_cast<int>(b.size(s))));
  for (std::size_t op = 0; op < d.ops().size(); ++op) {
    const auto& sym = d.ops()[op];
    std::size_t out_sort = *d.sort_index(sym.codomain);
    std::vector<std::size_t> arg_sorts;
    for (const auto& s : sym.domain) arg_sorts.push_back(*d.sort_index(s));
    for (std::size_t r = 0; r < a.table(op).size(); ++r) {
      auto args = a.row_args(op, r);
      std::vector<int> inputs;
      for (std::size_t i = 0; i < args.size(); ++i) inputs.push_back(var[arg_sorts[i]][args[i]]);
      search.add_function(inputs, var[out_sort][a.table(op)[r]],
                          [&b, op, inputs](const detail::Search::Values& v) {
                            Element buf[16];
                            std::vector<Element> big;
                            std::span<Element> xs(buf, std::min<std::size_t>(inputs.size(), 16));
                            if (inputs.size() > 16) {
                              big.resize(inputs.size());
                              xs = big;
                            }
                            for (std::size_t i = 0; i < inputs.size(); ++i) xs[i] = v[inputs[i]];
                            return static_cast<int>(b.apply(op, xs));
                          });
    }
  }
  std::vector<Homomorphism> out;
  bool done = search.solve([&](const detail::Search::Values& v) {
    Homomorphism h;
    for (const auto& vs : var) {
      h.components.emplace_back();
      for (int id : vs) h.components.back().push_back(v[id]);
    }
    out.push_back(std::move(h));
    return out.size() < cap;
  });
  if (complete) *complete = done;
  return out;
}

}  // namespace msat
