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
#include <set>
#include <unordered_map>

#include "msat/models.hpp"
#include "search.hpp"

namespace msat {

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.head());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

std::vector<int> slots_of(const Term& t, const Context& ctx) {
  std::set<std::string> names;
  collect_vars(t, names);
  std::vector<int> out;
  for (const auto& n : names) out.push_back(static_cast<int>(*ctx.index_of(n)));
  return out;
}

}  // namespace

AlgebraPresentation::AlgebraPresentation(DoctrinePtr doctrine, Context generators,
                                         std::vector<std::pair<Term, Term>> relations)
    : doctrine_(std::move(doctrine)),
      generators_(std::move(generators)),
      relations_(std::move(relations)) {
  for (const auto& [l, r] : relations_) {
    if (typecheck(l, generators_, *doctrine_) != typecheck(r, generators_, *doctrine_)) {
      throw Error(ErrorKind::SortMismatch,
                  "relation " + to_string(l) + " = " + to_string(r) + " mixes sorts");
    }
  }
}

bool AlgebraPresentation::contains(const Term& t) const {
  try {
    typecheck(t, generators_, *doctrine_);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Verdict AlgebraPresentation::equal(const Term& a, const Term& b) const {
  for (const auto* t : {&a, &b}) {
    if (!contains(*t)) throw Error(ErrorKind::UnknownSymbol, to_string(*t) + " is not an element");
  }
  if (is_free()) return terms_equal(a, b, *doctrine_);
  return normalize(a, *doctrine_) == normalize(b, *doctrine_) ? Verdict::Equal : Verdict::Unknown;
}

std::vector<Term> AlgebraPresentation::enumerate(const Sort& s, std::size_t bound) const {
  if (!is_free()) {
    throw Error(ErrorKind::InvalidParameter, "enumeration needs a presentation without relations");
  }
  if (!doctrine_->exact()) {
    throw Error(ErrorKind::UnsupportedDoctrine,
                "theory '" + doctrine_->name() + "' has no normal forms");
  }
  return enumerate_terms(generators_, s, *doctrine_, bound);
}

std::vector<std::vector<Element>> AlgebraPresentation::homs_into(const FiniteAlgebra& alg,
                                                                 std::size_t cap,
                                                                 bool* complete) const {
  detail::Search search;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    search.add_var(static_cast<int>(alg.carrier(generators_.sort(i)).size()));
  }
  std::vector<std::shared_ptr<CompiledTerm>> keep;
  auto compile = [&](const Term& t) {
    keep.push_back(std::make_shared<CompiledTerm>(alg, t, generators_));
    return keep.back();
  };
  for (const auto& [l, r] : relations_) {
    const Term* gen = r.is_variable() ? &r : l.is_variable() ? &l : nullptr;
    if (gen) {
      const Term& other = gen == &r ? l : r;
      auto c = compile(other);
      search.add_function(slots_of(other, generators_),
                          static_cast<int>(*generators_.index_of(gen->head())),
                          [c](const detail::Search::Values& v) { return (*c)(v); });
    } else {
      auto lc = compile(l), rc = compile(r);
      auto vars = slots_of(l, generators_);
      auto more = slots_of(r, generators_);
      vars.insert(vars.end(), more.begin(), more.end());
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      search.add_check(vars, [lc, rc](const detail::Search::Values& v) {
        return (*lc)(v) == (*rc)(v);
      });
    }
  }
  std::vector<std::vector<Element>> out;
  bool done = search.solve([&](const detail::Search::Values& v) {
    out.emplace_back(v.begin(), v.end());
    return out.size() < cap;
  });
  if (complete) *complete = done;
  return out;
}

nlohmann::json to_json(const AlgebraPresentation& p) {
  nlohmann::json gens = nlohmann::json::object();
  for (const auto& s : p.doctrine().sorts()) gens[s.name] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    gens[p.generators().sort(i).name].push_back(p.generators().name(i));
  }
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& [l, r] : p.relations()) rels.push_back({to_string(l), to_string(r)});
  return {{"theory", p.doctrine().name()}, {"generators", gens}, {"relations", rels}};
}

AlgebraPresentation free_algebra(DoctrinePtr doctrine, Context generators) {
  if (!doctrine->exact()) {
    throw Error(ErrorKind::UnsupportedDoctrine,
                "free algebras need normal forms; theory '" + doctrine->name() + "' has none");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!doctrine->has_sort(generators.sort(i))) {
      throw Error(ErrorKind::UnknownSymbol, "unknown sort '" + generators.sort(i).name + "'");
    }
  }
  return AlgebraPresentation(std::move(doctrine), std::move(generators));
}

Context generator_context(const Sort& alpha, std::size_t n) {
  Context ctx;
  for (std::size_t i = 1; i <= n; ++i) ctx.add("y" + std::to_string(i), alpha);
  return ctx;
}

AdjunctionReport adjunction_check(DoctrinePtr doctrine, const Sort& alpha, std::size_t y_size,
                                  const FiniteAlgebra& x, std::size_t fragment_bound) {
  const Doctrine& d = *doctrine;
  auto presentation = free_algebra(doctrine, generator_context(alpha, y_size));
  AdjunctionReport report;

  // Fragment of F_alpha(Y): normal forms of size <= fragment_bound.
  std::vector<std::vector<Term>> elems(d.sorts().size());
  std::vector<std::unordered_map<Term, int, TermHash>> index(d.sorts().size());
  detail::Search search;
  std::vector<std::vector<int>> var(d.sorts().size());
  for (std::size_t s = 0; s < d.sorts().size(); ++s) {
    elems[s] = presentation.enumerate(d.sorts()[s], fragment_bound);
    for (const auto& t : elems[s]) {
      index[s].emplace(t, static_cast<int>(var[s].size()));
      var[s].push_back(search.add_var(static_cast<int>(x.size(s))));
    }
    report.fragment_elements += elems[s].size();
  }
  for (std::size_t op = 0; op < d.ops().size(); ++op) {
    const auto& sym = d.ops()[op];
    std::size_t out = *d.sort_index(sym.codomain);
    std::vector<std::size_t> arg_sorts, sizes;
    for (const auto& s : sym.domain) {
      arg_sorts.push_back(*d.sort_index(s));
      sizes.push_back(elems[arg_sorts.back()].size());
    }
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) continue;
    std::vector<std::size_t> pick(sizes.size(), 0);
    while (true) {
      std::vector<Term> args;
      std::vector<int> inputs;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        args.push_back(elems[arg_sorts[i]][pick[i]]);
        inputs.push_back(var[arg_sorts[i]][pick[i]]);
      }
      Term nf = normalize(Term::apply(sym.name, sym.codomain, args), d);
      if (auto it = index[out].find(nf); it != index[out].end()) {
        search.add_function(inputs, var[out][it->second],
                            [&x, op, inputs](const detail::Search::Values& v) {
                              std::vector<Element> xs;
                              for (int i : inputs) xs.push_back(v[i]);
                              return static_cast<int>(x.apply(op, xs));
                            });
      }
      std::size_t i = pick.size();
      while (i > 0 && ++pick[i - 1] == sizes[i - 1]) pick[--i] = 0;
      if (i == 0) break;
    }
  }

  std::size_t a = *d.sort_index(alpha);
  std::vector<int> gen_vars;
  for (std::size_t i = 0; i < y_size; ++i) {
    auto it = index[a].find(Term::variable("y" + std::to_string(i + 1), alpha));
    if (it == index[a].end()) {
      report.detail = "generator outside the fragment";
      return report;
    }
    gen_vars.push_back(var[a][it->second]);
  }
  std::set<std::vector<int>> restricted;
  bool duplicate = false;
  search.solve([&](const detail::Search::Values& v) {
    ++report.homs;
    std::vector<int> r;
    for (int g : gen_vars) r.push_back(v[g]);
    duplicate = duplicate || !restricted.insert(std::move(r)).second;
    return true;
  });
  report.functions = 1;
  for (std::size_t i = 0; i < y_size; ++i) report.functions *= x.size(a);
  report.ok = !duplicate && restricted.size() == report.functions;
  if (duplicate) {
    report.detail = "two homomorphisms agree on the generators";
  } else if (!report.ok) {
    report.detail = "restriction hits " + std::to_string(restricted.size()) + " of " +
                    std::to_string(report.functions) + " functions";
  }
  return report;
}

}  // namespace msat
