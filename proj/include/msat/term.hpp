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

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace msat {

/// A sort tag. Compared by name; the lexicographic order on names is the
/// canonical order used for theory objects.
struct Sort {
  std::string name;

  Sort() = default;
  explicit Sort(std::string n) : name(std::move(n)) {}

  friend bool operator==(const Sort&, const Sort&) = default;
  friend auto operator<=>(const Sort&, const Sort&) = default;
};

struct OpSymbol {
  std::string name;
  std::vector<Sort> domain;
  Sort codomain;

  std::size_t arity() const { return domain.size(); }
  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

/// Ordered list of sorted variables.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<std::pair<std::string, Sort>> vars);
  explicit Context(std::vector<std::pair<std::string, Sort>> vars);

  /// The canonical context (v1:s1, ..., vn:sn).
  static Context canonical(std::span<const Sort> sorts);

  void add(std::string name, Sort sort);
  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const std::string& name(std::size_t i) const { return vars_[i].first; }
  const Sort& sort(std::size_t i) const { return vars_[i].second; }
  const std::vector<std::pair<std::string, Sort>>& vars() const { return vars_; }

  std::optional<std::size_t> index_of(const std::string& name) const;
  const Sort* find(const std::string& name) const;

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::vector<std::pair<std::string, Sort>> vars_;
};

/// Immutable, structurally shared term tree. Every node carries its sort.
class Term {
 public:
  enum class Kind { Variable, Apply };

  Term() = default;

  static Term variable(std::string name, Sort sort);
  static Term apply(std::string op, Sort sort, std::vector<Term> args);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  bool is_variable() const { return node_->kind == Kind::Variable; }
  const std::string& head() const { return node_->head; }
  const Sort& sort() const { return node_->sort; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }
  std::size_t hash() const { return node_->hash; }
  /// Node count.
  std::size_t size() const { return node_->size; }
  /// Variables and constants have depth 0.
  std::size_t depth() const { return node_->depth; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string head;
    Sort sort;
    std::vector<Term> args;
    std::size_t hash;
    std::size_t size;
    std::size_t depth;
  };
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Prefix form `op(t1,...,tk)`; constants print bare.
std::string to_string(const Term& term);

/// Free variable names in first-occurrence order.
std::vector<std::string> free_variables(const Term& term);

struct Equation {
  Context context;
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

using Assignment = std::map<std::string, Term>;

}  // namespace msat
