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

#include "engines/engine.hpp"

namespace msat::detail {
namespace {

struct Path {
  std::string start;
  std::vector<Term> edges;  // in application order
};

Path to_path(const Term& t, const Doctrine& d) {
  if (t.is_variable()) return {d.ocat_ends(t.sort()).first, {t}};
  const auto& h = t.head();
  if (h.rfind("id_", 0) == 0) return {h.substr(3), {}};
  if (h.rfind("comp_", 0) == 0) {
    Path p = to_path(t.arg(1), d);
    Path q = to_path(t.arg(0), d);
    p.edges.insert(p.edges.end(), q.edges.begin(), q.edges.end());
    return p;
  }
  throw Error(ErrorKind::UnknownSymbol, "ocat engine cannot interpret '" + h + "'");
}

Term path_term(const Path& p) {
  if (p.edges.empty()) return Term::apply("id_" + p.start, Sort(p.start + "_" + p.start), {});
  Term acc = p.edges.front();
  for (std::size_t i = 1; i < p.edges.size(); ++i) {
    const auto& s = p.edges[i].sort().name;
    auto us = s.find('_');
    std::string mid = s.substr(0, us), end = s.substr(us + 1);
    acc = Term::apply("comp_" + p.start + "_" + mid + "_" + end, Sort(p.start + "_" + end),
                      {p.edges[i], acc});
  }
  return acc;
}

}  // namespace

Term normalize_ocat(const Term& t, const Doctrine& d) { return path_term(to_path(t, d)); }

std::size_t ocat_size(const Term& nf, const Doctrine& d) { return to_path(nf, d).edges.size(); }

std::vector<Term> enumerate_ocat(const Context& ctx, const Sort& s, const Doctrine& d,
                                 std::size_t bound) {
  auto [from, to] = d.ocat_ends(s);
  std::vector<Term> out;
  std::vector<Path> frontier{{from, {}}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& p : frontier) {
      std::string at = p.edges.empty() ? from : d.ocat_ends(p.edges.back().sort()).second;
      if (at == to) out.push_back(path_term(p));
    }
    if (len == bound) break;
    std::vector<Path> next;
    for (const auto& p : frontier) {
      std::string at = p.edges.empty() ? from : d.ocat_ends(p.edges.back().sort()).second;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (d.ocat_ends(ctx.sort(i)).first != at) continue;
        Path q = p;
        q.edges.push_back(Term::variable(ctx.name(i), ctx.sort(i)));
        next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace msat::detail
