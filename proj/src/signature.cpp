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
#include <unordered_map>
#include <unordered_set>

#include "engines/engine.hpp"
#include "msat/signature.hpp"

namespace msat {

Sort typecheck(const Term& term, const Context& context, const Doctrine& doctrine) {
  if (term.is_variable()) {
    const Sort* s = context.find(term.head());
    if (s == nullptr) {
      throw Error(ErrorKind::UnboundVariable, "unbound variable '" + term.head() + "'");
    }
    if (*s != term.sort()) {
      throw Error(ErrorKind::SortMismatch, "variable '" + term.head() + "' has sort " +
                                               s->name + ", used at " + term.sort().name);
    }
    return *s;
  }
  const OpSymbol* op = doctrine.find_op(term.head());
  if (op == nullptr) {
    throw Error(ErrorKind::UnknownSymbol, "unknown operation '" + term.head() + "'");
  }
  if (op->arity() != term.args().size()) {
    throw Error(ErrorKind::SortMismatch, "operation '" + op->name + "' expects " +
                                             std::to_string(op->arity()) + " arguments, got " +
                                             std::to_string(term.args().size()));
  }
  for (std::size_t i = 0; i < op->arity(); ++i) {
    Sort s = typecheck(term.arg(i), context, doctrine);
    if (s != op->domain[i]) {
      throw Error(ErrorKind::SortMismatch, "argument " + std::to_string(i + 1) + " of '" +
                                               op->name + "' has sort " + s.name +
                                               ", expected " + op->domain[i].name);
    }
  }
  if (term.sort() != op->codomain) {
    throw Error(ErrorKind::SortMismatch, "term '" + to_string(term) + "' tagged with sort " +
                                             term.sort().name);
  }
  return op->codomain;
}

Term make_apply(const Doctrine& doctrine, const std::string& op, std::vector<Term> args) {
  const OpSymbol* o = doctrine.find_op(op);
  if (o == nullptr) throw Error(ErrorKind::UnknownSymbol, "unknown operation '" + op + "'");
  if (o->arity() != args.size()) {
    throw Error(ErrorKind::SortMismatch, "operation '" + op + "' expects " +
                                             std::to_string(o->arity()) + " arguments");
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != o->domain[i]) {
      throw Error(ErrorKind::SortMismatch, "argument " + std::to_string(i + 1) + " of '" + op +
                                               "' has sort " + args[i].sort().name +
                                               ", expected " + o->domain[i].name);
    }
  }
  return Term::apply(op, o->codomain, std::move(args));
}

Term substitute(const Term& term, const Assignment& assignment) {
  if (term.is_variable()) {
    auto it = assignment.find(term.head());
    if (it == assignment.end()) {
      throw Error(ErrorKind::MissingAssignment, "no value for variable '" + term.head() + "'");
    }
    if (it->second.sort() != term.sort()) {
      throw Error(ErrorKind::SortMismatch, "value for '" + term.head() + "' has sort " +
                                               it->second.sort().name + ", expected " +
                                               term.sort().name);
    }
    return it->second;
  }
  if (term.args().empty()) return term;
  std::vector<Term> args;
  args.reserve(term.args().size());
  for (const auto& a : term.args()) args.push_back(substitute(a, assignment));
  return Term::apply(term.head(), term.sort(), std::move(args));
}

Term normalize(const Term& term, const Doctrine& doctrine) {
  switch (doctrine.engine()) {
    case EngineKind::Trivial: return term;
    case EngineKind::Monoid:
    case EngineKind::Group:
    case EngineKind::GroupAction: return detail::normalize_words(term, doctrine);
    case EngineKind::RingModule: return detail::normalize_ring(term, doctrine);
    case EngineKind::OperadPlanar:
    case EngineKind::OperadSymmetric: return detail::normalize_operad(term, doctrine);
    case EngineKind::OCat: return detail::normalize_ocat(term, doctrine);
    case EngineKind::BoundedGeneric: break;
  }
  throw Error(ErrorKind::UnsupportedDoctrine,
              "no normal-form engine for doctrine '" + doctrine.name() + "'");
}

std::size_t term_size(const Term& nf, const Doctrine& doctrine) {
  switch (doctrine.engine()) {
    case EngineKind::Trivial: return 1;
    case EngineKind::Monoid:
    case EngineKind::Group:
    case EngineKind::GroupAction: return detail::words_size(nf, doctrine);
    case EngineKind::RingModule: return detail::ring_size(nf, doctrine);
    case EngineKind::OperadPlanar:
    case EngineKind::OperadSymmetric: return detail::operad_size(nf, doctrine);
    case EngineKind::OCat: return detail::ocat_size(nf, doctrine);
    case EngineKind::BoundedGeneric: return nf.size();
  }
  return nf.size();
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Distinct: return "distinct";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

bool match(const Term& pattern, const Term& t, Assignment& bind) {
  if (pattern.is_variable()) {
    if (pattern.sort() != t.sort()) return false;
    auto [it, fresh] = bind.try_emplace(pattern.head(), t);
    return fresh || it->second == t;
  }
  if (t.is_variable() || pattern.head() != t.head() || pattern.args().size() != t.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (!match(pattern.arg(i), t.arg(i), bind)) return false;
  }
  return true;
}

/// Union-find over interned terms with congruence propagation.
class Closure {
 public:
  std::size_t intern(const Term& t) {
    if (auto it = ids_.find(t); it != ids_.end()) return it->second;
    for (const auto& a : t.args()) intern(a);
    std::size_t id = terms_.size();
    ids_.emplace(t, id);
    terms_.push_back(t);
    parent_.push_back(id);
    return id;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::size_t size() const { return terms_.size(); }
  const Term& term(std::size_t i) const { return terms_[i]; }

  void congruence() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::pair<std::string, std::vector<std::size_t>>, std::size_t> sig;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        if (t.is_variable()) continue;
        std::vector<std::size_t> key;
        for (const auto& a : t.args()) key.push_back(find(ids_.at(a)));
        auto [it, fresh] = sig.try_emplace({t.head(), std::move(key)}, i);
        if (!fresh && find(it->second) != find(i)) {
          unite(it->second, i);
          changed = true;
        }
      }
    }
  }

 private:
  std::unordered_map<Term, std::size_t, TermHash> ids_;
  std::vector<Term> terms_;
  std::vector<std::size_t> parent_;
};

constexpr std::size_t kClosureCap = 20000;

}  // namespace

Verdict terms_equal(const Term& a, const Term& b, const Doctrine& doctrine, int depth_budget) {
  if (a.sort() != b.sort()) return Verdict::Distinct;
  if (doctrine.exact()) {
    return normalize(a, doctrine) == normalize(b, doctrine) ? Verdict::Equal : Verdict::Distinct;
  }
  if (a == b) return Verdict::Equal;
  if (doctrine.equations().empty()) return Verdict::Distinct;
  Closure cc;
  std::size_t ia = cc.intern(a), ib = cc.intern(b);
  for (int round = 0; round < depth_budget; ++round) {
    std::size_t n = cc.size();
    for (std::size_t i = 0; i < n && cc.size() < kClosureCap; ++i) {
      Term t = cc.term(i);
      for (const auto& eq : doctrine.equations()) {
        for (int dir = 0; dir < 2; ++dir) {
          const Term& from = dir ? eq.rhs : eq.lhs;
          const Term& to = dir ? eq.lhs : eq.rhs;
          Assignment bind;
          if (!match(from, t, bind)) continue;
          bool bound = true;
          for (const auto& v : free_variables(to)) bound = bound && bind.contains(v);
          if (!bound) continue;
          cc.unite(i, cc.intern(substitute(to, bind)));
        }
      }
    }
    cc.congruence();
    if (cc.find(ia) == cc.find(ib)) return Verdict::Equal;
  }
  cc.congruence();
  return cc.find(ia) == cc.find(ib) ? Verdict::Equal : Verdict::Unknown;
}

std::vector<Term> enumerate_terms(const Context& context, const Sort& sort,
                                  const Doctrine& doctrine, std::size_t bound) {
  if (!doctrine.has_sort(sort)) {
    throw Error(ErrorKind::SortMismatch, "doctrine has no sort '" + sort.name + "'");
  }
  for (const auto& [n, s] : context.vars()) {
    if (!doctrine.has_sort(s)) {
      throw Error(ErrorKind::SortMismatch, "context variable '" + n + "' has unknown sort");
    }
  }
  std::vector<Term> raw;
  switch (doctrine.engine()) {
    case EngineKind::Trivial:
      if (bound >= 1) {
        for (const auto& [n, s] : context.vars())
          if (s == sort) raw.push_back(Term::variable(n, s));
      }
      break;
    case EngineKind::Monoid:
    case EngineKind::Group:
    case EngineKind::GroupAction:
      raw = detail::enumerate_words(context, sort, doctrine, bound);
      break;
    case EngineKind::RingModule: raw = detail::enumerate_ring(context, sort, doctrine, bound); break;
    case EngineKind::OperadPlanar:
    case EngineKind::OperadSymmetric:
      raw = detail::enumerate_operad(context, sort, doctrine, bound);
      break;
    case EngineKind::OCat: raw = detail::enumerate_ocat(context, sort, doctrine, bound); break;
    case EngineKind::BoundedGeneric: {
      // Syntactic terms by node count; classes are not merged.
      for (const auto& t : enumerate_raw_terms(context, sort, doctrine, bound, 100000)) {
        if (t.size() <= bound) raw.push_back(t);
      }
      break;
    }
  }
  struct Keyed {
    std::size_t size;
    std::string printed;
    Term term;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(raw.size());
  for (auto& t : raw) keyed.push_back({term_size(t, doctrine), to_string(t), std::move(t)});
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
    return std::tie(x.size, x.printed) < std::tie(y.size, y.printed);
  });
  std::vector<Term> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (keyed[i].size > bound) continue;
    if (i > 0 && keyed[i].printed == keyed[i - 1].printed) continue;
    out.push_back(std::move(keyed[i].term));
  }
  return out;
}

std::vector<Term> enumerate_raw_terms(const Context& context, const Sort& sort,
                                      const Doctrine& doctrine, std::size_t max_depth,
                                      std::size_t limit) {
  std::map<Sort, std::vector<Term>> all;
  std::map<Sort, std::unordered_set<Term, TermHash>> seen;
  auto push = [&](const Term& t) {
    auto& v = all[t.sort()];
    if (v.size() >= limit) return;
    if (seen[t.sort()].insert(t).second) v.push_back(t);
  };
  for (const auto& [n, s] : context.vars()) push(Term::variable(n, s));
  for (const auto& op : doctrine.ops())
    if (op.arity() == 0) push(Term::apply(op.name, op.codomain, {}));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::map<Sort, std::vector<Term>> prev = all;
    for (const auto& op : doctrine.ops()) {
      if (op.arity() == 0) continue;
      std::vector<const std::vector<Term>*> pools;
      bool empty = false;
      for (const auto& s : op.domain) {
        pools.push_back(&prev[s]);
        empty = empty || prev[s].empty();
      }
      if (empty) continue;
      std::vector<std::size_t> idx(op.arity(), 0);
      while (all[op.codomain].size() < limit) {
        std::vector<Term> args;
        bool fresh = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          args.push_back((*pools[i])[idx[i]]);
          fresh = fresh || args.back().depth() + 1 == d;
        }
        if (fresh) push(Term::apply(op.name, op.codomain, std::move(args)));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == pools[i]->size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
  }
  return all[sort];
}

}  // namespace msat
