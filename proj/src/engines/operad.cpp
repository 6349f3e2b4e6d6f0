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

// Free operads on the context variables. A normal form is a planar tree whose
// internal nodes are variables and whose leaves are holes; in the symmetric
// case it carries a leaf relabelling lambda and denotes T . lambda, where
// (f . s)(y_1, ..., y_k) = f(y_s(1), ..., y_s(k)).

#include <algorithm>
#include <cctype>
#include <optional>
#include <functional>
#include <map>
#include <numeric>

#include "engines/engine.hpp"

namespace msat::detail {

std::string perm_op_name(const std::vector<int>& p) {
  std::string n = "perm" + std::to_string(p.size()) + "_";
  for (int x : p) n += std::to_string(x);
  return n;
}

namespace {

struct Tree {
  std::string var;  // empty for a hole
  Sort sort{"p1"};
  std::vector<Tree> kids;
  bool hole() const { return var.empty(); }
};

struct Labelled {
  Tree tree;
  std::vector<int> lambda;  // one-line, 1-based
};

std::size_t holes(const Tree& t) {
  if (t.hole()) return 1;
  std::size_t n = 0;
  for (const auto& k : t.kids) n += holes(k);
  return n;
}

std::size_t nodes(const Tree& t) {
  if (t.hole()) return 0;
  std::size_t n = 1;
  for (const auto& k : t.kids) n += nodes(k);
  return n;
}

std::vector<int> identity(std::size_t k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

bool is_identity(const std::vector<int>& p) { return p == identity(p.size()); }

Tree leaf_node(const Term& v, int level) {
  Tree t{v.head(), v.sort(), {}};
  t.kids.assign(static_cast<std::size_t>(level), Tree{});
  return t;
}

void graft(Tree& t, std::vector<Tree>& subs, std::size_t& next) {
  if (t.hole()) {
    t = std::move(subs[next++]);
    return;
  }
  for (auto& k : t.kids) graft(k, subs, next);
}

std::optional<std::vector<int>> parse_perm(const std::string& name) {
  if (name.rfind("perm", 0) != 0) return std::nullopt;
  auto us = name.find('_');
  if (us == std::string::npos) return std::nullopt;
  std::vector<int> p;
  for (char c : name.substr(us + 1)) {
    if (c < '1' || c > '9') return std::nullopt;
    p.push_back(c - '0');
  }
  return p;
}

Labelled to_labelled(const Term& t, const Doctrine& d) {
  if (t.is_variable()) {
    int level = d.operad_level(t.sort());
    return {leaf_node(t, level), identity(static_cast<std::size_t>(level))};
  }
  const auto& h = t.head();
  if (h == "one") return {Tree{}, {1}};
  if (auto s = parse_perm(h); s && d.engine() == EngineKind::OperadSymmetric) {
    Labelled x = to_labelled(t.arg(0), d);
    std::vector<int> out(s->size());
    for (std::size_t i = 0; i < s->size(); ++i) out[i] = (*s)[static_cast<std::size_t>(x.lambda[i] - 1)];
    x.lambda = std::move(out);
    return x;
  }
  if (h.size() > 1 && h[0] == 'g' && std::isdigit(static_cast<unsigned char>(h[1]))) {
    Labelled c = to_labelled(t.arg(0), d);
    const std::size_t k = t.args().size() - 1;
    std::vector<Labelled> ds;
    for (std::size_t i = 0; i < k; ++i) ds.push_back(to_labelled(t.arg(i + 1), d));
    // Move c's labelling past the gamma, then each argument's labelling.
    std::vector<std::size_t> start(k, 0);
    for (std::size_t i = 1; i < k; ++i) start[i] = start[i - 1] + ds[i - 1].lambda.size();
    const std::size_t m = k ? start[k - 1] + ds[k - 1].lambda.size() : 0;
    std::vector<Labelled> dsig;
    std::vector<int> pi(m);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& src = ds[static_cast<std::size_t>(c.lambda[i] - 1)];
      std::size_t base = start[static_cast<std::size_t>(c.lambda[i] - 1)];
      for (std::size_t u = 0; u < src.lambda.size(); ++u) pi[pos++] = static_cast<int>(base + u + 1);
      dsig.push_back(src);
    }
    std::vector<int> sum(m);
    std::vector<Tree> subs;
    pos = 0;
    for (auto& x : dsig) {
      for (std::size_t u = 0; u < x.lambda.size(); ++u) {
        sum[pos + u] = static_cast<int>(pos) + x.lambda[u];
      }
      pos += x.lambda.size();
      subs.push_back(std::move(x.tree));
    }
    std::size_t next = 0;
    graft(c.tree, subs, next);
    std::vector<int> total(m);
    for (std::size_t i = 0; i < m; ++i) total[i] = pi[static_cast<std::size_t>(sum[i] - 1)];
    return {std::move(c.tree), std::move(total)};
  }
  throw Error(ErrorKind::UnknownSymbol, "operad engine cannot interpret '" + h + "'");
}

Sort level_sort(std::size_t k) { return Sort("p" + std::to_string(k)); }

Term tree_term(const Tree& t) {
  if (t.hole()) return Term::apply("one", Sort("p1"), {});
  Term v = Term::variable(t.var, t.sort);
  if (std::all_of(t.kids.begin(), t.kids.end(), [](const Tree& k) { return k.hole(); })) return v;
  std::string name = "g" + std::to_string(t.kids.size());
  std::vector<Term> args{v};
  for (const auto& k : t.kids) {
    name += "_" + std::to_string(holes(k));
    args.push_back(tree_term(k));
  }
  return Term::apply(name, level_sort(holes(t)), std::move(args));
}

Term labelled_term(const Labelled& x) {
  Term t = tree_term(x.tree);
  if (x.lambda.size() < 2 || is_identity(x.lambda)) return t;
  return Term::apply(perm_op_name(x.lambda), t.sort(), {t});
}

}  // namespace

Term normalize_operad(const Term& t, const Doctrine& d) {
  return labelled_term(to_labelled(t, d));
}

std::size_t operad_size(const Term& nf, const Doctrine& d) {
  return nodes(to_labelled(nf, d).tree);
}

std::vector<Term> enumerate_operad(const Context& ctx, const Sort& s, const Doctrine& d,
                                   std::size_t bound) {
  const std::size_t target = static_cast<std::size_t>(d.operad_level(s));
  std::vector<std::pair<Term, std::size_t>> vars;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    vars.emplace_back(Term::variable(ctx.name(i), ctx.sort(i)),
                      static_cast<std::size_t>(d.operad_level(ctx.sort(i))));
  }
  // exact[(h, n)]: trees with h holes and exactly n nodes.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Tree>> memo;
  std::function<const std::vector<Tree>&(std::size_t, std::size_t)> exact =
      [&](std::size_t h, std::size_t n) -> const std::vector<Tree>& {
    auto key = std::make_pair(h, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Tree> out;
    if (n == 0) {
      if (h == 1) out.push_back(Tree{});
    } else {
      for (const auto& [v, k] : vars) {
        if (k == 0) {
          if (h == 0 && n == 1) out.push_back(leaf_node(v, 0));
          continue;
        }
        // Distribute h holes and n-1 nodes over k children.
        std::vector<Tree> kids(k);
        std::function<void(std::size_t, std::size_t, std::size_t)> rec =
            [&](std::size_t i, std::size_t hl, std::size_t nl) {
              if (i == k) {
                if (hl == 0 && nl == 0) {
                  Tree t = leaf_node(v, static_cast<int>(k));
                  t.kids = kids;
                  out.push_back(std::move(t));
                }
                return;
              }
              for (std::size_t hi = 0; hi <= hl; ++hi) {
                for (std::size_t ni = 0; ni <= nl; ++ni) {
                  for (const auto& sub : exact(hi, ni)) {
                    kids[i] = sub;
                    rec(i + 1, hl - hi, nl - ni);
                  }
                }
              }
            };
        rec(0, h, n - 1);
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  };

  std::vector<std::vector<int>> labels{identity(target)};
  if (d.engine() == EngineKind::OperadSymmetric) {
    labels.clear();
    auto p = identity(target);
    do labels.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<Term> out;
  for (std::size_t n = 0; n <= bound; ++n) {
    for (const auto& t : exact(target, n)) {
      for (const auto& l : labels) out.push_back(labelled_term({t, l}));
    }
  }
  return out;
}

}  // namespace msat::detail
