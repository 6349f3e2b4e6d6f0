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
#include <deque>
#include <set>

#include "msat/diagram.hpp"
#include "search.hpp"

namespace msat {

std::string_view to_string(ArrowKind kind) {
  return kind == ArrowKind::Generating ? "generating" : "full";
}

namespace {

std::vector<std::string> printed(const TheoryMorphism& m) {
  std::vector<std::string> out;
  for (const auto& t : m.terms) out.push_back(to_string(t));
  return out;
}

std::string morphism_label(const TheoryMorphism& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.terms.size(); ++i) s += (i ? "," : "") + to_string(m.terms[i]);
  return s + ")";
}

std::string object_key(const TheoryObject& o) {
  std::string s;
  for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + o[i].name;
  return s;
}

/// All strictly increasing index lists over [0, n).
std::vector<std::vector<std::size_t>> subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

std::optional<std::size_t> Truncation::object_index(const TheoryObject& o) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), o, [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  if (it == objects_.end() || *it != o) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

std::optional<std::size_t> Truncation::arrow_index(const TheoryMorphism& m) const {
  auto src = object_index(m.source);
  if (!src) return std::nullopt;
  auto it = arrow_lookup_.find({*src, printed(m)});
  if (it == arrow_lookup_.end()) return std::nullopt;
  if (arrows_[it->second].morphism.target != m.target) return std::nullopt;
  return it->second;
}

std::size_t Truncation::singleton(const Sort& s) const {
  auto i = object_index(TheoryObject({s}));
  if (!i) throw Error(ErrorKind::IndexOutOfRange, "sort '" + s.name + "' not in truncation");
  return *i;
}

TruncationPtr Truncation::make(DoctrinePtr doctrine, std::size_t object_bound,
                               std::size_t term_bound, ArrowKind kind) {
  std::shared_ptr<Truncation> t(new Truncation());
  t->doctrine_ = doctrine;
  t->object_bound_ = object_bound;
  t->term_bound_ = term_bound;
  t->kind_ = kind;
  t->objects_ = objects_up_to(*doctrine, object_bound);
  std::stable_sort(t->objects_.begin(), t->objects_.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  const Doctrine& d = *doctrine;

  auto add = [&](TheoryMorphism m, Arrow::Role role) -> std::size_t {
    std::size_t src = *t->object_index(m.source);
    auto tgt = t->object_index(m.target);
    if (!tgt) return SIZE_MAX;
    auto key = std::make_pair(src, printed(m));
    if (auto it = t->arrow_lookup_.find(key); it != t->arrow_lookup_.end()) return it->second;
    t->arrow_lookup_.emplace(key, t->arrows_.size());
    t->arrows_.push_back({std::move(m), src, *tgt, role});
    return t->arrows_.size() - 1;
  };

  for (const auto& o : t->objects_) {
    t->identity_.push_back(add(identity(o), Arrow::Role::Identity));
  }
  for (std::size_t oi = 0; oi < t->objects_.size(); ++oi) {
    const auto& o = t->objects_[oi];
    std::vector<std::size_t> entries(o.size());
    for (const auto& s : subsets(o.size())) {
      if (s.size() == o.size()) continue;
      std::size_t a = add(projection(o, s), Arrow::Role::Projection);
      if (s.size() == 1) entries[s[0]] = a;
    }
    if (o.size() == 1) entries[0] = t->identity_[oi];
    t->entry_proj_.push_back(entries);
  }
  if (kind == ArrowKind::Generating) {
    for (const auto& o : t->objects_) {
      if (o.size() + 1 > object_bound) continue;
      for (std::size_t i = 0; i < o.size(); ++i) {
        std::vector<TheoryMorphism> parts{identity(o), projection(o, {i})};
        add(tuple(parts), Arrow::Role::Diagonal);
      }
    }
    for (const auto& op : d.ops()) {
      if (op.arity() > object_bound) continue;
      TheoryObject dom(op.domain);
      // Entry k of the op's domain is the slot-th entry of the sorted object.
      std::vector<bool> used(dom.size(), false);
      std::vector<Term> args;
      for (const auto& s : op.domain) {
        std::size_t slot = 0;
        while (used[slot] || dom[slot] != s) ++slot;
        used[slot] = true;
        args.push_back(Term::variable("v" + std::to_string(slot + 1), s));
      }
      Term body = Term::apply(op.name, op.codomain, std::move(args));
      add(make_morphism(dom, TheoryObject({op.codomain}), {body}, d), Arrow::Role::Operation);
    }
  } else {
    for (const auto& a : t->objects_)
      for (const auto& b : t->objects_)
        for (auto& m : hom_enumerate(a, b, d, term_bound)) add(std::move(m), Arrow::Role::Other);
  }

  // Relations among the chosen arrows.
  CompositionTable table(d);
  std::vector<CompositionTable::Id> ids;
  std::map<CompositionTable::Id, std::size_t> arrow_of;
  for (std::size_t i = 0; i < t->arrows_.size(); ++i) {
    ids.push_back(table.intern(t->arrows_[i].morphism));
    arrow_of.emplace(ids.back(), i);
  }
  std::vector<std::vector<std::size_t>> out_of(t->objects_.size());
  for (std::size_t i = 0; i < t->arrows_.size(); ++i) out_of[t->arrows_[i].source].push_back(i);
  for (std::size_t f = 0; f < t->arrows_.size(); ++f) {
    for (std::size_t g : out_of[t->arrows_[f].target]) {
      auto it = arrow_of.find(table.compose(ids[g], ids[f]));
      if (it != arrow_of.end()) t->relations_.push_back({f, g, it->second});
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

std::optional<std::string> DiagramOnTruncation::functoriality_error(
    const Truncation& t, const std::vector<std::vector<std::string>>& values,
    const std::vector<Map>& maps) {
  if (values.size() != t.objects().size()) return "value list does not match the object count";
  if (maps.size() != t.arrows().size()) return "map list does not match the arrow count";
  for (std::size_t o = 0; o < values.size(); ++o) {
    std::set<std::string> seen(values[o].begin(), values[o].end());
    if (seen.size() != values[o].size()) {
      return "duplicate value label at " + t.objects()[o].to_string();
    }
  }
  auto name = [&](std::size_t a) { return morphism_label(t.arrows()[a].morphism); };
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const auto& arrow = t.arrows()[a];
    if (maps[a].size() != values[arrow.source].size()) {
      return "map of arrow " + name(a) + " has the wrong length";
    }
    for (std::size_t x = 0; x < maps[a].size(); ++x) {
      auto y = maps[a][x];
      if (y < -1 || y >= static_cast<std::int32_t>(values[arrow.target].size())) {
        return "map of arrow " + name(a) + " leaves its target";
      }
      if (arrow.role == Arrow::Role::Identity && y != static_cast<std::int32_t>(x)) {
        return "identity arrow at " + t.objects()[arrow.source].to_string() +
               " is not the identity";
      }
    }
  }
  for (const auto& r : t.relations()) {
    for (std::size_t x = 0; x < maps[r.first].size(); ++x) {
      auto y = maps[r.first][x];
      if (y < 0) continue;
      auto z = maps[r.second][y];
      if (z < 0) continue;
      auto w = maps[r.composite][x];
      if (w >= 0 && w != z) {
        return "not functorial: " + name(r.second) + " . " + name(r.first) + " != " +
               name(r.composite) + " at '" + values[t.arrows()[r.first].source][x] + "'";
      }
    }
  }
  return std::nullopt;
}

DiagramOnTruncation::DiagramOnTruncation(TruncationPtr truncation,
                                         std::vector<std::vector<std::string>> values,
                                         std::vector<Map> maps)
    : trunc_(std::move(truncation)), values_(std::move(values)), maps_(std::move(maps)) {
  if (auto err = functoriality_error(*trunc_, values_, maps_)) {
    throw Error(ErrorKind::InvalidDiagram, *err);
  }
}

std::vector<NatTrans> natural_transformations(const DiagramOnTruncation& x,
                                              const DiagramOnTruncation& y, std::size_t cap,
                                              bool* complete) {
  if (x.truncation_ptr() != y.truncation_ptr()) {
    throw Error(ErrorKind::InvalidDiagram, "diagrams live on different truncations");
  }
  const Truncation& t = x.truncation();
  detail::Search search;
  std::vector<std::vector<int>> var(t.objects().size());
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    for (std::size_t e = 0; e < x.size(o); ++e) {
      var[o].push_back(search.add_var(static_cast<int>(y.size(o))));
    }
  }
  for (std::size_t a = 0; a < t.arrows().size(); ++a) {
    const auto& arrow = t.arrows()[a];
    if (arrow.role == Arrow::Role::Identity) continue;
    for (std::size_t e = 0; e < x.size(arrow.source); ++e) {
      auto image = x.apply(a, static_cast<std::int32_t>(e));
      if (image < 0) continue;
      int in = var[arrow.source][e];
      const auto& ymap = y.map(a);
      search.add_function({in}, var[arrow.target][image],
                          [in, &ymap](const detail::Search::Values& v) { return ymap[v[in]]; });
    }
  }
  std::vector<NatTrans> out;
  bool done = search.solve([&](const detail::Search::Values& v) {
    NatTrans eta(t.objects().size());
    for (std::size_t o = 0; o < var.size(); ++o)
      for (int id : var[o]) eta[o].push_back(v[id]);
    out.push_back(std::move(eta));
    return out.size() < cap;
  });
  if (complete) *complete = done;
  return out;
}

DiagramOnTruncation representable(const TruncationPtr& t, const TheoryObject& source,
                                  bool reachable_only) {
  const Doctrine& d = t->doctrine();
  CompositionTable table(d);
  std::vector<std::vector<CompositionTable::Id>> ids(t->objects().size());
  std::vector<std::map<CompositionTable::Id, std::int32_t>> index(t->objects().size());
  for (std::size_t o = 0; o < t->objects().size(); ++o) {
    for (const auto& m : hom_enumerate(source, t->objects()[o], d, t->term_bound())) {
      auto id = table.intern(m);
      index[o].emplace(id, static_cast<std::int32_t>(ids[o].size()));
      ids[o].push_back(id);
    }
  }
  std::vector<CompositionTable::Id> arrow_ids;
  for (const auto& a : t->arrows()) arrow_ids.push_back(table.intern(a.morphism));
  std::vector<DiagramOnTruncation::Map> maps(t->arrows().size());
  for (std::size_t a = 0; a < t->arrows().size(); ++a) {
    const auto& arrow = t->arrows()[a];
    for (auto m : ids[arrow.source]) {
      auto c = table.compose(arrow_ids[a], m);
      auto it = index[arrow.target].find(c);
      maps[a].push_back(it == index[arrow.target].end() ? -1 : it->second);
    }
  }
  std::vector<std::vector<bool>> keep(t->objects().size());
  for (std::size_t o = 0; o < keep.size(); ++o) keep[o].assign(ids[o].size(), !reachable_only);
  if (reachable_only) {
    auto src = t->object_index(source);
    if (!src) {
      throw Error(ErrorKind::InvalidParameter,
                  "reachable representable needs " + source.to_string() + " in the truncation");
    }
    auto start = index[*src].at(table.intern(identity(source)));
    std::deque<std::pair<std::size_t, std::int32_t>> queue{{*src, start}};
    keep[*src][start] = true;
    while (!queue.empty()) {
      auto [o, e] = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < t->arrows().size(); ++a) {
        if (t->arrows()[a].source != o) continue;
        auto img = maps[a][e];
        std::size_t tgt = t->arrows()[a].target;
        if (img >= 0 && !keep[tgt][img]) {
          keep[tgt][img] = true;
          queue.emplace_back(tgt, img);
        }
      }
    }
  }
  std::vector<std::vector<std::int32_t>> renum(t->objects().size());
  std::vector<std::vector<std::string>> values(t->objects().size());
  for (std::size_t o = 0; o < ids.size(); ++o) {
    for (std::size_t e = 0; e < ids[o].size(); ++e) {
      renum[o].push_back(keep[o][e] ? static_cast<std::int32_t>(values[o].size()) : -1);
      if (keep[o][e]) values[o].push_back(morphism_label(table.morphism(ids[o][e])));
    }
  }
  std::vector<DiagramOnTruncation::Map> out(maps.size());
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const auto& arrow = t->arrows()[a];
    for (std::size_t e = 0; e < maps[a].size(); ++e) {
      if (!keep[arrow.source][e]) continue;
      auto img = maps[a][e];
      out[a].push_back(img < 0 ? -1 : renum[arrow.target][img]);
    }
  }
  return DiagramOnTruncation(t, std::move(values), std::move(out));
}

DiagramOnTruncation coproduct(const std::vector<DiagramOnTruncation>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidParameter, "empty coproduct");
  const auto& t = parts.front().truncation_ptr();
  std::vector<std::vector<std::string>> values(t->objects().size());
  std::vector<DiagramOnTruncation::Map> maps(t->arrows().size());
  std::vector<std::vector<std::int32_t>> offset(parts.size(),
                                                std::vector<std::int32_t>(values.size(), 0));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].truncation_ptr() != t) {
      throw Error(ErrorKind::InvalidDiagram, "coproduct summands live on different truncations");
    }
    for (std::size_t o = 0; o < values.size(); ++o) {
      offset[p][o] = static_cast<std::int32_t>(values[o].size());
      for (const auto& v : parts[p].values(o)) values[o].push_back(std::to_string(p) + ":" + v);
    }
  }
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t a = 0; a < maps.size(); ++a) {
      std::size_t tgt = t->arrows()[a].target;
      for (auto y : parts[p].map(a)) maps[a].push_back(y < 0 ? -1 : y + offset[p][tgt]);
    }
  }
  return DiagramOnTruncation(t, std::move(values), std::move(maps));
}

ProductReport check_product_preservation(const DiagramOnTruncation& x) {
  const Truncation& t = x.truncation();
  ProductReport report;
  for (std::size_t o = 0; o < t.objects().size(); ++o) {
    const auto& obj = t.objects()[o];
    if (obj.size() == 1) continue;
    std::size_t product = 1;
    for (std::size_t i = 0; i < obj.size(); ++i) product *= x.size(t.singleton(obj[i]));
    std::set<std::vector<std::int32_t>> images;
    bool total = true;
    for (std::size_t e = 0; e < x.size(o); ++e) {
      std::vector<std::int32_t> tup;
      for (std::size_t i = 0; i < obj.size(); ++i) {
        auto y = x.apply(t.entry_projection(o, i), static_cast<std::int32_t>(e));
        total = total && y >= 0;
        tup.push_back(y);
      }
      images.insert(std::move(tup));
    }
    bool injective = total && images.size() == x.size(o);
    bool surjective = total && images.size() == product;
    if (!injective || !surjective) {
      report.failures.push_back({obj, x.size(o), product, injective, surjective});
    }
  }
  return report;
}

nlohmann::json to_json(const DiagramOnTruncation& x) {
  const Truncation& t = x.truncation();
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t o = 0; o < t.objects().size(); ++o) values[object_key(t.objects()[o])] = x.values(o);
  nlohmann::json tables = nlohmann::json::array();
  for (std::size_t a = 0; a < t.arrows().size(); ++a) {
    const auto& arrow = t.arrows()[a];
    if (arrow.role == Arrow::Role::Identity) continue;
    nlohmann::json map = nlohmann::json::object();
    for (std::size_t e = 0; e < x.size(arrow.source); ++e) {
      auto y = x.apply(a, static_cast<std::int32_t>(e));
      map[x.values(arrow.source)[e]] = y < 0 ? nlohmann::json(nullptr)
                                             : nlohmann::json(x.values(arrow.target)[y]);
    }
    tables.push_back({{"morphism", to_json(arrow.morphism)}, {"map", map}});
  }
  return {{"theory", t.doctrine().name()},
          {"object_bound", t.object_bound()},
          {"term_bound", t.term_bound()},
          {"arrows", std::string(to_string(t.kind()))},
          {"values", values},
          {"tables", tables}};
}

DiagramOnTruncation diagram_from_json(const nlohmann::json& j, DoctrinePtr doctrine) {
  try {
    std::size_t bound = j.at("object_bound").get<std::size_t>();
    std::size_t terms = j.value("term_bound", std::size_t{2});
    std::string kind = j.value("arrows", std::string("generating"));
    if (kind != "generating" && kind != "full") {
      throw Error(ErrorKind::InvalidDiagram, "unknown arrow kind '" + kind + "'");
    }
    if (j.contains("theory") && j["theory"].get<std::string>() != doctrine->name()) {
      throw Error(ErrorKind::DoctrineMismatch, "diagram is for theory '" +
                                                   j["theory"].get<std::string>() + "', not '" +
                                                   doctrine->name() + "'");
    }
    return diagram_from_json(
        j, Truncation::make(doctrine, bound, terms,
                            kind == "full" ? ArrowKind::Full : ArrowKind::Generating));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidDiagram, std::string("malformed diagram JSON: ") + e.what());
  }
}

DiagramOnTruncation diagram_from_json(const nlohmann::json& j, const TruncationPtr& t) {
  try {
    const auto& doctrine = t->doctrine_ptr();
    std::vector<std::vector<std::string>> values(t->objects().size());
    std::vector<bool> given(t->objects().size(), false);
    for (const auto& [key, list] : j.at("values").items()) {
      auto o = t->object_index(TheoryObject::parse(key));
      if (!o) throw Error(ErrorKind::InvalidDiagram, "object '" + key + "' outside the truncation");
      values[*o] = list.get<std::vector<std::string>>();
      given[*o] = true;
    }
    for (std::size_t o = 0; o < values.size(); ++o) {
      if (given[o]) continue;
      if (t->objects()[o].empty()) {
        values[o] = {"*"};
      } else {
        throw Error(ErrorKind::InvalidDiagram,
                    "no value for object " + t->objects()[o].to_string());
      }
    }
    auto lookup = [&](std::size_t o, const std::string& label) {
      auto it = std::find(values[o].begin(), values[o].end(), label);
      if (it == values[o].end()) {
        throw Error(ErrorKind::InvalidDiagram,
                    "'" + label + "' is not a value at " + t->objects()[o].to_string());
      }
      return static_cast<std::int32_t>(it - values[o].begin());
    };
    std::vector<DiagramOnTruncation::Map> maps(t->arrows().size());
    std::vector<bool> have(t->arrows().size(), false);
    for (const auto& table : j.value("tables", nlohmann::json::array())) {
      TheoryMorphism m = morphism_from_json(table.at("morphism"), *doctrine);
      auto a = t->arrow_index(m);
      if (!a) {
        throw Error(ErrorKind::InvalidDiagram,
                    "morphism " + morphism_label(m) + " is not a truncation arrow");
      }
      const auto& arrow = t->arrows()[*a];
      maps[*a].assign(values[arrow.source].size(), -1);
      for (const auto& [from, to] : table.at("map").items()) {
        auto x = lookup(arrow.source, from);
        maps[*a][x] = to.is_null() ? -1 : lookup(arrow.target, to.get<std::string>());
      }
      have[*a] = true;
    }
    for (std::size_t a = 0; a < maps.size(); ++a) {
      if (have[a]) continue;
      const auto& arrow = t->arrows()[a];
      if (arrow.role == Arrow::Role::Identity) {
        for (std::size_t e = 0; e < values[arrow.source].size(); ++e)
          maps[a].push_back(static_cast<std::int32_t>(e));
      } else if (t->objects()[arrow.target].empty() && values[arrow.target].size() == 1) {
        maps[a].assign(values[arrow.source].size(), 0);
      } else {
        throw Error(ErrorKind::InvalidDiagram,
                    "no table for arrow " + morphism_label(arrow.morphism) + " : " +
                        arrow.morphism.source.to_string() + " -> " +
                        arrow.morphism.target.to_string());
      }
    }
    return DiagramOnTruncation(t, std::move(values), std::move(maps));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidDiagram, std::string("malformed diagram JSON: ") + e.what());
  }
}

}  // namespace msat
