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
#include <cctype>
#include <sstream>

#include "msat/signature.hpp"

namespace msat {

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Trivial: return "trivial";
    case EngineKind::Monoid: return "monoid";
    case EngineKind::Group: return "group";
    case EngineKind::GroupAction: return "group-action";
    case EngineKind::RingModule: return "ring-module";
    case EngineKind::OperadPlanar: return "operad-nonsigma";
    case EngineKind::OperadSymmetric: return "operad-symmetric";
    case EngineKind::OCat: return "ocat";
    case EngineKind::BoundedGeneric: return "bounded-generic";
  }
  return "?";
}

Doctrine::Doctrine(std::string name, std::vector<Sort> sorts, std::vector<OpSymbol> ops,
                   std::vector<Equation> equations, EngineKind engine)
    : name_(std::move(name)),
      sorts_(std::move(sorts)),
      ops_(std::move(ops)),
      equations_(std::move(equations)),
      engine_(engine) {
  for (std::size_t i = 0; i < sorts_.size(); ++i) {
    if (!sort_lookup_.emplace(sorts_[i].name, i).second) {
      throw Error(ErrorKind::Semantic, "duplicate sort '" + sorts_[i].name + "'");
    }
  }
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (!op_lookup_.emplace(ops_[i].name, i).second) {
      throw Error(ErrorKind::Semantic, "duplicate operation '" + ops_[i].name + "'");
    }
    for (const auto& s : ops_[i].domain) {
      if (!has_sort(s)) {
        throw Error(ErrorKind::Semantic,
                    "operation '" + ops_[i].name + "' uses unknown sort '" + s.name + "'");
      }
    }
    if (!has_sort(ops_[i].codomain)) {
      throw Error(ErrorKind::Semantic, "operation '" + ops_[i].name +
                                           "' uses unknown sort '" +
                                           ops_[i].codomain.name + "'");
    }
  }
  for (const auto& eq : equations_) {
    Sort l = typecheck(eq.lhs, eq.context, *this);
    Sort r = typecheck(eq.rhs, eq.context, *this);
    if (l != r) {
      throw Error(ErrorKind::SortMismatch,
                  "equation sides have sorts " + l.name + " and " + r.name);
    }
  }
}

bool Doctrine::has_sort(const Sort& s) const { return sort_lookup_.contains(s.name); }

std::optional<std::size_t> Doctrine::sort_index(const Sort& s) const {
  auto it = sort_lookup_.find(s.name);
  if (it == sort_lookup_.end()) return std::nullopt;
  return it->second;
}

const OpSymbol* Doctrine::find_op(const std::string& name) const {
  auto it = op_lookup_.find(name);
  return it == op_lookup_.end() ? nullptr : &ops_[it->second];
}

std::optional<std::size_t> Doctrine::op_index(const std::string& name) const {
  auto it = op_lookup_.find(name);
  if (it == op_lookup_.end()) return std::nullopt;
  return it->second;
}

void Doctrine::set_ocat(std::vector<std::string> objects, std::vector<GraphEdge> edges) {
  ocat_objects_ = std::move(objects);
  ocat_edges_ = std::move(edges);
}

std::pair<std::string, std::string> Doctrine::ocat_ends(const Sort& s) const {
  auto pos = s.name.find('_');
  if (pos == std::string::npos) {
    throw Error(ErrorKind::InvalidParameter, "not an ocat sort: " + s.name);
  }
  return {s.name.substr(0, pos), s.name.substr(pos + 1)};
}

int Doctrine::operad_level(const Sort& s) const {
  if (s.name.size() < 2 || s.name[0] != 'p') {
    throw Error(ErrorKind::InvalidParameter, "not an operad sort: " + s.name);
  }
  return std::stoi(s.name.substr(1));
}

bool Doctrine::same_presentation(const Doctrine& other) const {
  return name_ == other.name_ && sorts_ == other.sorts_ && ops_ == other.ops_ &&
         equations_ == other.equations_;
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

int parse_level(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isdigit(c) || c == '-'; })) {
    throw Error(ErrorKind::InvalidParameter, "bad level cap '" + text + "'");
  }
  return std::stoi(text);
}

}  // namespace

BuiltinSpec BuiltinSpec::parse(const std::string& text) {
  BuiltinSpec spec;
  std::string head = text;
  std::string param;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    head = text.substr(0, pos);
    param = text.substr(pos + 1);
  }
  if (head == "trivial") {
    spec.id = Id::Trivial;
  } else if (head == "monoid") {
    spec.id = Id::Monoid;
  } else if (head == "group") {
    spec.id = Id::Group;
  } else if (head == "group-action") {
    spec.id = Id::GroupAction;
  } else if (head == "ring-module") {
    spec.id = Id::RingModule;
  } else if (head == "operad-nonsigma" || head == "operad-symmetric") {
    spec.id = head == "operad-nonsigma" ? Id::OperadNonSigma : Id::OperadSymmetric;
    spec.level_cap = parse_level(param.empty() ? "3" : param);
  } else if (head == "ocat") {
    spec.id = Id::OCat;
    // ocat:x,y;f:x->x,g:x->y
    auto parts = split(param, ';');
    if (parts.empty() || parts[0].empty()) {
      throw Error(ErrorKind::InvalidParameter, "ocat needs a non-empty object set");
    }
    spec.objects = split(parts[0], ',');
    if (parts.size() > 1 && !parts[1].empty()) {
      for (const auto& e : split(parts[1], ',')) {
        auto colon = e.find(':');
        auto arrow = e.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
          throw Error(ErrorKind::InvalidParameter, "bad ocat edge '" + e + "'");
        }
        spec.edges.push_back({trim(e.substr(0, colon)),
                              trim(e.substr(colon + 1, arrow - colon - 1)),
                              trim(e.substr(arrow + 2))});
      }
    }
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown built-in doctrine '" + text + "'");
  }
  return spec;
}

std::string BuiltinSpec::to_string() const {
  switch (id) {
    case Id::Trivial: return "trivial";
    case Id::Monoid: return "monoid";
    case Id::Group: return "group";
    case Id::GroupAction: return "group-action";
    case Id::RingModule: return "ring-module";
    case Id::OperadNonSigma: return "operad-nonsigma:" + std::to_string(level_cap);
    case Id::OperadSymmetric: return "operad-symmetric:" + std::to_string(level_cap);
    case Id::OCat: {
      std::string out = "ocat:";
      for (std::size_t i = 0; i < objects.size(); ++i) out += (i ? "," : "") + objects[i];
      if (!edges.empty()) {
        out += ";";
        for (std::size_t i = 0; i < edges.size(); ++i) {
          out += (i ? "," : "") + edges[i].name + ":" + edges[i].source + "->" +
                 edges[i].target;
        }
      }
      return out;
    }
  }
  return "?";
}

std::vector<std::string> default_builtin_specs() {
  return {"trivial",           "monoid",           "group",
          "group-action",      "ring-module",      "operad-nonsigma:2",
          "operad-nonsigma:3", "operad-symmetric:2", "operad-symmetric:3",
          "ocat:x,y;f:x->x",   "ocat:x;f:x->x"};
}

}  // namespace msat
