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
#include <map>
#include <numeric>
#include <set>

#include "msat/rigidify.hpp"

namespace msat {

namespace {

std::string morphism_label(const TheoryMorphism& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.terms.size(); ++i) s += (i ? "," : "") + to_string(m.terms[i]);
  return s + ")";
}

std::int32_t index_of(const std::vector<std::string>& values, const std::string& label) {
  auto it = std::find(values.begin(), values.end(), label);
  return it == values.end() ? -1 : static_cast<std::int32_t>(it - values.begin());
}

/// Elements of every object before quotienting, with union-find classes.
class PreDiagram {
 public:
  explicit PreDiagram(const TruncationPtr& t)
      : t_(t), labels_(t->objects().size()), maps_(t->arrows().size()), parent_(t->objects().size()) {}

  std::int32_t add(std::size_t object, std::string label) {
    labels_[object].push_back(std::move(label));
    parent_[object].push_back(static_cast<std::int32_t>(parent_[object].size()));
    return static_cast<std::int32_t>(labels_[object].size()) - 1;
  }
  std::size_t size(std::size_t object) const { return labels_[object].size(); }
  /// Image of pre-element e along an arrow, filled by the caller.
  std::vector<std::int32_t>& map(std::size_t arrow) { return maps_[arrow]; }

  std::int32_t find(std::size_t o, std::int32_t e) {
    while (parent_[o][e] != e) e = parent_[o][e] = parent_[o][parent_[o][e]];
    return e;
  }
  bool unite(std::size_t o, std::int32_t a, std::int32_t b) {
    a = find(o, a);
    b = find(o, b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[o][b] = a;
    return true;
  }

  /// Closes the classes under the arrows and returns the quotient diagram;
  /// `cls` receives the class of each pre-element.
  DiagramOnTruncation quotient(std::vector<std::vector<std::int32_t>>& cls) {
    const auto& arrows = t_->arrows();
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < arrows.size(); ++a) {
        std::size_t src = arrows[a].source, tgt = arrows[a].target;
        std::map<std::int32_t, std::int32_t> first;
        for (std::int32_t e = 0; e < static_cast<std::int32_t>(size(src)); ++e) {
          auto img = maps_[a][e];
          if (img < 0) continue;
          auto [it, fresh] = first.emplace(find(src, e), img);
          if (!fresh) changed |= unite(tgt, it->second, img);
        }
      }
    }
    std::vector<std::vector<std::string>> values(labels_.size());
    cls.assign(labels_.size(), {});
    for (std::size_t o = 0; o < labels_.size(); ++o) {
      std::map<std::int32_t, std::int32_t> number;
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(size(o)); ++e) {
        auto [it, fresh] = number.emplace(find(o, e), static_cast<std::int32_t>(values[o].size()));
        if (fresh) values[o].push_back(labels_[o][e]);
        cls[o].push_back(it->second);
      }
    }
    std::vector<DiagramOnTruncation::Map> maps(arrows.size());
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      std::size_t src = arrows[a].source, tgt = arrows[a].target;
      maps[a].assign(values[src].size(), -1);
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(size(src)); ++e) {
        auto img = maps_[a][e];
        auto& slot = maps[a][cls[src][e]];
        if (img >= 0 && slot < 0) slot = cls[tgt][img];
      }
    }
    return DiagramOnTruncation(t_, std::move(values), std::move(maps));
  }

 private:
  TruncationPtr t_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<std::int32_t>> maps_;
  std::vector<std::vector<std::int32_t>> parent_;
};

void require_full(const Truncation& t) {
  if (t.kind() != ArrowKind::Full) {
    throw Error(ErrorKind::InvalidParameter, "localization steps need a full truncation");
  }
}

/// True when no hom set between truncation objects grows with the term bound.
bool homs_stable(const Truncation& t) {
  for (const auto& a : t.objects()) {
    for (const auto& b : t.objects()) {
      if (hom_enumerate(a, b, t.doctrine(), t.term_bound()).size() !=
          hom_enumerate(a, b, t.doctrine(), t.term_bound() + 1).size()) {
        return false;
      }
    }
  }
  return true;
}

bool certify(const Truncation& t, bool allow_approximate) {
  if (homs_stable(t)) return false;
  if (!allow_approximate) {
    throw Error(ErrorKind::HomEnumerationIncomplete,
                "hom sets of '" + t.doctrine().name() + "' grow beyond term bound " +
                    std::to_string(t.term_bound()));
  }
  return true;
}

std::size_t target_index(const Truncation& t, const ProjectionMap& p) {
  auto a = t.object_index(p.target);
  if (!a) {
    throw Error(ErrorKind::InvalidParameter,
                "projection target " + p.target.to_string() + " is outside the truncation");
  }
  return *a;
}

/// Copies X into a pre-diagram, keeping labels and maps.
PreDiagram seed(const DiagramOnTruncation& x) {
  PreDiagram pre(x.truncation_ptr());
  const auto& t = x.truncation();
  for (std::size_t o = 0; o < t.objects().size(); ++o)
    for (const auto& v : x.values(o)) pre.add(o, v);
  for (std::size_t a = 0; a < t.arrows().size(); ++a) pre.map(a) = x.map(a);
  return pre;
}

/// Adds a copy of Hom(T_a, -) (values `homs`) and returns its offsets.
std::vector<std::int32_t> add_copy(PreDiagram& pre, const Truncation& t,
                                   const DiagramOnTruncation& rep, const std::string& tag) {
  std::vector<std::int32_t> offset(t.objects().size());
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    offset[o] = static_cast<std::int32_t>(pre.size(o));
    for (const auto& v : rep.values(o)) pre.add(o, tag + v);
  }
  for (std::size_t a = 0; a < t.arrows().size(); ++a) {
    std::size_t tgt = t.arrows()[a].target;
    for (auto y : rep.map(a)) pre.map(a).push_back(y < 0 ? -1 : y + offset[tgt]);
  }
  return offset;
}

bool has_undefined(const DiagramOnTruncation& d) {
  for (const auto& m : d.all_maps())
    if (std::find(m.begin(), m.end(), -1) != m.end()) return true;
  return false;
}

StepResult finish(PreDiagram& pre, const DiagramOnTruncation& x, bool approximate) {
  std::vector<std::vector<std::int32_t>> cls;
  auto out = pre.quotient(cls);
  std::vector<std::vector<std::int32_t>> unit(cls.size());
  for (std::size_t o = 0; o < cls.size(); ++o) {
    unit[o].assign(cls[o].begin(), cls[o].begin() + static_cast<std::ptrdiff_t>(x.size(o)));
  }
  return {std::move(out), std::move(unit), approximate};
}

}  // namespace

std::vector<ProjectionMap> projection_map_set(const Doctrine& doctrine, std::size_t bound) {
  if (bound < 2) throw Error(ErrorKind::InvalidParameter, "projection maps need bound >= 2");
  std::vector<ProjectionMap> out;
  for (auto& o : objects_up_to(doctrine, bound))
    if (o.size() >= 2) out.push_back({std::move(o)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.target.size() < b.target.size();
  });
  return out;
}

LocalityReport check_strictly_local(const DiagramOnTruncation& x) {
  const auto& tp = x.truncation_ptr();
  const Truncation& t = *tp;
  LocalityReport report;
  // Nat(R_{[s]}, X) by image of the identity, per sort.
  std::map<Sort, std::set<std::int32_t>> factor;
  auto factor_images = [&](const Sort& s) -> const std::set<std::int32_t>& {
    auto it = factor.find(s);
    if (it != factor.end()) return it->second;
    TheoryObject single({s});
    auto rep = representable(tp, single, true);
    auto o = t.singleton(s);
    auto id = index_of(rep.values(o), morphism_label(identity(single)));
    std::set<std::int32_t> images;
    for (const auto& eta : natural_transformations(rep, x)) images.insert(eta[o][id]);
    return factor.emplace(s, std::move(images)).first->second;
  };
  for (std::size_t oi = 0; oi < t.objects().size(); ++oi) {
    const auto& a = t.objects()[oi];
    if (a.size() == 1) continue;
    auto rep = representable(tp, a, true);
    auto nats = natural_transformations(rep, x);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < a.size(); ++i) expected *= factor_images(a[i]).size();
    std::set<std::vector<std::int32_t>> restricted;
    for (const auto& eta : nats) {
      std::vector<std::int32_t> tup;
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto o = t.singleton(a[i]);
        auto pi = index_of(rep.values(o), morphism_label(projection(a, {i})));
        tup.push_back(eta[o][pi]);
      }
      restricted.insert(std::move(tup));
    }
    bool injective = restricted.size() == nats.size();
    bool surjective = restricted.size() == expected;
    if (!injective || !surjective) {
      report.failures.push_back({a, nats.size(), expected, injective, surjective});
    }
  }
  return report;
}

StepResult surjectivity_step(const DiagramOnTruncation& x, const ProjectionMap& p,
                             bool allow_approximate) {
  const auto& tp = x.truncation_ptr();
  const Truncation& t = *tp;
  require_full(t);
  target_index(t, p);
  bool approximate = certify(t, allow_approximate);
  auto rep = representable(tp, p.target);
  approximate = approximate || has_undefined(rep);
  const auto& a = p.target;
  std::vector<std::size_t> single, proj;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    single.push_back(t.singleton(a[i]));
    proj.push_back(static_cast<std::size_t>(
        index_of(rep.values(single[i]), morphism_label(projection(a, {i})))));
    sizes.push_back(x.size(single[i]));
  }
  PreDiagram pre = seed(x);
  // One copy of Hom(T_a, -) per tuple in prod_i X(a_i).
  std::vector<std::int32_t> tup(a.size(), 0);
  bool empty = std::find(sizes.begin(), sizes.end(), 0) != sizes.end();
  while (!empty) {
    std::string tag = "<";
    for (std::size_t i = 0; i < a.size(); ++i) tag += (i ? "," : "") + x.values(single[i])[tup[i]];
    tag += ">";
    auto offset = add_copy(pre, t, rep, tag);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t f = 0; f < t.arrows().size(); ++f) {
        if (t.arrows()[f].source != single[i]) continue;
        std::size_t c = t.arrows()[f].target;
        auto in_copy = rep.apply(f, static_cast<std::int32_t>(proj[i]));
        auto in_x = x.apply(f, tup[i]);
        if (in_copy < 0 || in_x < 0) {
          approximate = true;
          continue;
        }
        pre.unite(c, in_x, in_copy + offset[c]);
      }
    }
    std::size_t i = a.size();
    while (i > 0 && static_cast<std::size_t>(++tup[i - 1]) == sizes[i - 1]) tup[--i] = 0;
    if (i == 0) break;
  }
  return finish(pre, x, approximate);
}

StepResult injectivity_step(const DiagramOnTruncation& x, const ProjectionMap& p,
                            bool allow_approximate) {
  const auto& tp = x.truncation_ptr();
  const Truncation& t = *tp;
  require_full(t);
  std::size_t ai = target_index(t, p);
  bool approximate = certify(t, allow_approximate);
  auto rep = representable(tp, p.target);
  approximate = approximate || has_undefined(rep);
  const auto& a = p.target;
  // Arrow realizing each value b : T_a -> c of the representable.
  std::vector<std::vector<std::int32_t>> arrow_of(t.objects().size());
  for (std::size_t c = 0; c < t.objects().size(); ++c) {
    for (auto& m : hom_enumerate(a, t.objects()[c], t.doctrine(), t.term_bound())) {
      auto idx = t.arrow_index(m);
      arrow_of[c].push_back(idx ? static_cast<std::int32_t>(*idx) : -1);
    }
  }
  PreDiagram pre = seed(x);
  auto n = static_cast<std::int32_t>(x.size(ai));
  for (std::int32_t u = 0; u < n; ++u) {
    for (std::int32_t v = u + 1; v < n; ++v) {
      bool agree = true;
      for (std::size_t i = 0; i < a.size() && agree; ++i) {
        auto pi = t.entry_projection(ai, i);
        agree = x.apply(pi, u) == x.apply(pi, v);
      }
      if (!agree) continue;
      // Both halves of B +_A B land in one copy of B.
      auto offset = add_copy(pre, t, rep, "<" + x.values(ai)[u] + "=" + x.values(ai)[v] + ">");
      for (std::size_t c = 0; c < t.objects().size(); ++c) {
        for (std::size_t b = 0; b < arrow_of[c].size(); ++b) {
          auto w = arrow_of[c][b];
          auto xu = w < 0 ? -1 : x.apply(w, u);
          auto xv = w < 0 ? -1 : x.apply(w, v);
          auto copy = static_cast<std::int32_t>(b) + offset[c];
          if (xu < 0 || xv < 0) approximate = true;
          if (xu >= 0) pre.unite(c, xu, copy);
          if (xv >= 0) pre.unite(c, xv, copy);
        }
      }
    }
  }
  return finish(pre, x, approximate);
}

nlohmann::json to_json(const LocalizationTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"kind", s.kind}, {"target", s.target.to_string()}, {"sizes", s.sizes}});
  }
  return {{"rounds", trace.rounds},
          {"fixed_point", trace.fixed_point},
          {"approximate", trace.approximate},
          {"steps", steps}};
}

Localization localize(const DiagramOnTruncation& x, std::size_t budget, bool allow_approximate) {
  const Truncation& t = x.truncation();
  std::vector<ProjectionMap> maps{{TheoryObject(std::vector<Sort>{})}};
  if (t.object_bound() >= 2) {
    for (auto& p : projection_map_set(t.doctrine(), t.object_bound())) maps.push_back(std::move(p));
  }
  Localization out{x, {}, {}};
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    out.unit.emplace_back(x.size(o));
    std::iota(out.unit.back().begin(), out.unit.back().end(), 0);
  }
  auto sizes = [&](const DiagramOnTruncation& d) {
    std::vector<std::size_t> s;
    for (std::size_t o = 0; o < t.objects().size(); ++o) s.push_back(d.size(o));
    return s;
  };
  if (check_strictly_local(out.diagram).local()) return out;
  for (std::size_t round = 0; round < budget; ++round) {
    auto before = out.diagram;
    for (const auto& p : maps) {
      for (int kind = 0; kind < 2; ++kind) {
        auto step = kind == 0 ? surjectivity_step(out.diagram, p, allow_approximate)
                              : injectivity_step(out.diagram, p, allow_approximate);
        for (std::size_t o = 0; o < out.unit.size(); ++o)
          for (auto& e : out.unit[o]) e = step.unit[o][e];
        out.diagram = std::move(step.diagram);
        out.trace.approximate = out.trace.approximate || step.approximate;
        out.trace.steps.push_back(
            {kind == 0 ? "surjectivity" : "injectivity", p.target, sizes(out.diagram)});
      }
    }
    out.trace.rounds = round + 1;
    if (check_strictly_local(out.diagram).local()) return out;
    if (sizes(before) == sizes(out.diagram) && before.all_maps() == out.diagram.all_maps()) {
      out.trace.fixed_point = true;
      throw BudgetExhaustedError("localization reached a fixed point that is not strictly local",
                                 out.trace);
    }
  }
  throw BudgetExhaustedError("not strictly local after " + std::to_string(budget) + " rounds",
                             out.trace);
}

// ---------------------------------------------------------------------------

namespace {

/// Generator index of (size-1 object, value), in object order.
std::map<std::pair<std::size_t, std::int32_t>, std::size_t> generator_table(
    const DiagramOnTruncation& x) {
  std::map<std::pair<std::size_t, std::int32_t>, std::size_t> out;
  const Truncation& t = x.truncation();
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    if (t.objects()[o].size() != 1) continue;
    for (std::size_t e = 0; e < x.size(o); ++e) {
      out.emplace(std::make_pair(o, static_cast<std::int32_t>(e)), out.size());
    }
  }
  return out;
}

}  // namespace

std::string generator_name(const DiagramOnTruncation& x, const Sort& sort, std::int32_t element) {
  auto table = generator_table(x);
  auto it = table.find({x.truncation().singleton(sort), element});
  if (it == table.end()) throw Error(ErrorKind::IndexOutOfRange, "no such value");
  return "g" + std::to_string(it->second + 1);
}

AlgebraPresentation rigidify_presentation(const DiagramOnTruncation& x) {
  const Truncation& t = x.truncation();
  auto table = generator_table(x);
  Context gens;
  std::vector<std::pair<std::size_t, std::int32_t>> order(table.size());
  for (const auto& [key, idx] : table) order[idx] = key;
  for (std::size_t i = 0; i < order.size(); ++i) {
    gens.add("g" + std::to_string(i + 1), t.objects()[order[i].first][0]);
  }
  auto gen = [&](std::size_t o, std::int32_t e) {
    return Term::variable("g" + std::to_string(table.at({o, e}) + 1), t.objects()[o][0]);
  };
  // Value of entry i of z at object o, or -1.
  auto entry = [&](std::size_t o, std::size_t i, std::int32_t z) {
    return t.objects()[o].size() == 1 ? z : x.apply(t.entry_projection(o, i), z);
  };
  std::vector<std::pair<Term, Term>> relations;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t a = 0; a < t.arrows().size(); ++a) {
    const auto& arrow = t.arrows()[a];
    if (arrow.role == Arrow::Role::Identity) continue;
    const auto& src = t.objects()[arrow.source];
    for (std::int32_t z = 0; z < static_cast<std::int32_t>(x.size(arrow.source)); ++z) {
      auto img = x.apply(a, z);
      if (img < 0) continue;
      Assignment sub;
      bool defined = true;
      for (std::size_t i = 0; i < src.size() && defined; ++i) {
        auto zi = entry(arrow.source, i, z);
        defined = zi >= 0;
        if (defined) sub["v" + std::to_string(i + 1)] = gen(t.singleton(src[i]), zi);
      }
      if (!defined) continue;
      for (std::size_t j = 0; j < arrow.morphism.terms.size(); ++j) {
        auto rj = entry(arrow.target, j, img);
        if (rj < 0) continue;
        Term lhs = substitute(arrow.morphism.terms[j], sub);
        Term rhs = gen(t.singleton(t.objects()[arrow.target][j]), rj);
        if (lhs == rhs) continue;
        if (seen.emplace(to_string(lhs), to_string(rhs)).second) relations.emplace_back(lhs, rhs);
      }
    }
  }
  return AlgebraPresentation(x.truncation().doctrine_ptr(), std::move(gens), std::move(relations));
}

bool UniversalPropertyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

UniversalPropertyReport verify_universal_property(const DiagramOnTruncation& x,
                                                  const AlgebraPresentation& p,
                                                  const std::vector<FiniteAlgebra>& models) {
  const Truncation& t = x.truncation();
  auto table = generator_table(x);
  std::vector<std::pair<std::size_t, std::int32_t>> order(table.size());
  for (const auto& [key, idx] : table) order[idx] = key;
  // Presentation slot of each generator.
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto s = p.generators().index_of("g" + std::to_string(i + 1));
    if (!s || p.generators().sort(*s) != t.objects()[order[i].first][0]) {
      throw Error(ErrorKind::InvalidParameter, "presentation does not match the diagram");
    }
    slot.push_back(*s);
  }
  UniversalPropertyReport report;
  for (const auto& alg : models) {
    auto h = as_functor(alg, x.truncation_ptr());
    bool complete = true;
    auto nats = natural_transformations(x, h, 1000000, &complete);
    auto homs = p.homs_into(alg);
    std::set<std::vector<Element>> hom_set(homs.begin(), homs.end());
    std::set<std::vector<Element>> restricted;
    for (const auto& eta : nats) {
      std::vector<Element> r(p.generators().size(), 0);
      for (std::size_t i = 0; i < order.size(); ++i) r[slot[i]] = eta[order[i].first][order[i].second];
      restricted.insert(std::move(r));
    }
    bool ok = complete && restricted.size() == nats.size() && restricted == hom_set;
    report.checks.push_back({alg.name(), homs.size(), nats.size(), ok});
  }
  return report;
}

UniversalPropertyReport verify_ktk(DoctrinePtr doctrine, const ProjectionMap& p,
                                   const std::vector<FiniteAlgebra>& models,
                                   std::size_t term_bound) {
  if (!doctrine->exact()) {
    throw Error(ErrorKind::UnsupportedDoctrine, "verify_ktk needs normal forms");
  }
  std::size_t bound = 1;
  for (const auto& op : doctrine->ops()) bound = std::max(bound, op.arity());
  auto t = Truncation::make(doctrine, bound, term_bound);
  const auto& a = p.target;
  auto whole = representable(t, a);
  std::vector<DiagramOnTruncation> parts;
  for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(representable(t, TheoryObject({a[i]})));
  UniversalPropertyReport report;
  if (a.size() == 0) {
    // p is the map from the empty coproduct; K_T of both sides is compared by hom count.
    auto pw = rigidify_presentation(whole);
    for (const auto& alg : models) {
      auto homs = pw.homs_into(alg);
      report.checks.push_back({alg.name(), homs.size(), 1, homs.size() == 1});
    }
    return report;
  }
  auto sum = coproduct(parts);
  auto pw = rigidify_presentation(whole);
  auto ps = rigidify_presentation(sum);
  // Generators standing for the projections and for the summand identities.
  std::vector<std::size_t> gw, gs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto o = t->singleton(a[i]);
    auto e = index_of(whole.values(o), morphism_label(projection(a, {i})));
    gw.push_back(*pw.generators().index_of(generator_name(whole, a[i], e)));
    auto f = index_of(sum.values(o), std::to_string(i) + ":(v1)");
    gs.push_back(*ps.generators().index_of(generator_name(sum, a[i], f)));
  }
  auto restrict = [](const std::vector<std::vector<Element>>& homs,
                     const std::vector<std::size_t>& gens, std::size_t expected) {
    std::set<std::vector<Element>> r;
    for (const auto& h : homs) {
      std::vector<Element> v;
      for (auto g : gens) v.push_back(h[g]);
      r.insert(std::move(v));
    }
    return r.size() == homs.size() && r.size() == expected;
  };
  for (const auto& alg : models) {
    std::size_t expected = 1;
    for (std::size_t i = 0; i < a.size(); ++i) expected *= alg.carrier(a[i]).size();
    auto hw = pw.homs_into(alg);
    auto hs = ps.homs_into(alg);
    bool ok = restrict(hw, gw, expected) && restrict(hs, gs, expected);
    report.checks.push_back({alg.name(), hw.size(), hs.size(), ok});
  }
  return report;
}

}  // namespace msat
