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

// Backtracking search over finite-domain variables with functional
// constraints `out = fn(inputs)` and plain checks. Used for natural
// transformations, homomorphisms and presentation maps.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace msat::detail {

class Search {
 public:
  using Values = std::vector<int>;  // -1 = unassigned
  /// Returns the forced output value, or -1 when the inputs admit none.
  using Fn = std::function<int(const Values&)>;
  using Check = std::function<bool(const Values&)>;

  int add_var(int domain) {
    domain_.push_back(domain);
    watch_.emplace_back();
    return static_cast<int>(domain_.size()) - 1;
  }

  void add_function(std::vector<int> inputs, int output, Fn fn) {
    add_rule(std::move(inputs), output, std::move(fn), nullptr);
  }

  void add_check(std::vector<int> vars, Check check) {
    add_rule(std::move(vars), -1, nullptr, std::move(check));
  }

  /// Pins a variable before search.
  void fix(int var, int value) { fixed_.emplace_back(var, value); }

  /// Enumerates solutions in lexicographic order of the branching variables;
  /// `visit` returns false to stop. Returns false if stopped early.
  bool solve(const std::function<bool(const Values&)>& visit) {
    values_.assign(domain_.size(), -1);
    pending_.assign(rules_.size(), 0);
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      pending_[r] = static_cast<int>(rules_[r].inputs.size());
    }
    trail_.clear();
    for (auto [v, x] : fixed_) {
      if (values_[v] != -1 && values_[v] != x) return true;
      if (values_[v] == -1 && !assign(v, x)) return true;
    }
    // Rules without inputs fire once up front.
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].inputs.empty() && !fire(r)) return true;
    }
    return dfs(0, visit);
  }

 private:
  struct Rule {
    std::vector<int> inputs;
    int output;
    Fn fn;
    Check check;
  };

  void add_rule(std::vector<int> inputs, int output, Fn fn, Check check) {
    std::size_t r = rules_.size();
    for (int v : inputs) watch_[v].push_back(r);
    rules_.push_back({std::move(inputs), output, std::move(fn), std::move(check)});
  }

  bool fire(std::size_t r) {
    const Rule& rule = rules_[r];
    if (rule.check) return rule.check(values_);
    int out = rule.fn(values_);
    if (out < 0 || out >= domain_[rule.output]) return false;
    if (values_[rule.output] != -1) return values_[rule.output] == out;
    return assign(rule.output, out);
  }

  bool assign(int v, int x) {
    values_[v] = x;
    trail_.push_back(v);
    std::vector<std::size_t> ready;
    for (std::size_t r : watch_[v]) {
      if (--pending_[r] == 0) ready.push_back(r);
    }
    for (std::size_t r : ready) {
      if (!fire(r)) return false;
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int v = trail_.back();
      trail_.pop_back();
      for (std::size_t r : watch_[v]) ++pending_[r];
      values_[v] = -1;
    }
  }

  bool dfs(std::size_t from, const std::function<bool(const Values&)>& visit) {
    std::size_t v = from;
    while (v < values_.size() && values_[v] != -1) ++v;
    if (v == values_.size()) return visit(values_);
    for (int x = 0; x < domain_[v]; ++x) {
      std::size_t mark = trail_.size();
      bool ok = assign(static_cast<int>(v), x);
      if (ok && !dfs(v + 1, visit)) {
        undo_to(mark);
        return false;
      }
      undo_to(mark);
    }
    return true;
  }

  std::vector<int> domain_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<Rule> rules_;
  std::vector<std::pair<int, int>> fixed_;
  Values values_;
  std::vector<int> pending_;
  std::vector<int> trail_;
};

}  // namespace msat::detail
