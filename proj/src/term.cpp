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

#include "msat/term.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "msat/error.hpp"

namespace msat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::MissingAssignment: return "MissingAssignment";
    case ErrorKind::UnsupportedDoctrine: return "UnsupportedDoctrine";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::ObjectMismatch: return "ObjectMismatch";
    case ErrorKind::SourceMismatch: return "SourceMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ElementNotInCarrier: return "ElementNotInCarrier";
    case ErrorKind::DoctrineMismatch: return "DoctrineMismatch";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::HomEnumerationIncomplete: return "HomEnumerationIncomplete";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::Semantic: return "Semantic";
  }
  return "Unknown";
}

Context::Context(std::initializer_list<std::pair<std::string, Sort>> vars) {
  for (const auto& [n, s] : vars) add(n, s);
}

Context::Context(std::vector<std::pair<std::string, Sort>> vars) {
  for (auto& [n, s] : vars) add(std::move(n), std::move(s));
}

Context Context::canonical(std::span<const Sort> sorts) {
  Context ctx;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    ctx.vars_.emplace_back("v" + std::to_string(i + 1), sorts[i]);
  }
  return ctx;
}

void Context::add(std::string name, Sort sort) {
  if (index_of(name)) {
    throw Error(ErrorKind::InvalidParameter, "duplicate variable '" + name + "'");
  }
  vars_.emplace_back(std::move(name), std::move(sort));
}

std::optional<std::size_t> Context::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].first == name) return i;
  }
  return std::nullopt;
}

const Sort* Context::find(const std::string& name) const {
  auto i = index_of(name);
  return i ? &vars_[*i].second : nullptr;
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name, Sort sort) {
  Term t;
  std::size_t h = mix(std::hash<std::string>{}(name), 1);
  t.node_ = std::make_shared<const Node>(
      Node{Kind::Variable, std::move(name), std::move(sort), {}, h, 1, 0});
  return t;
}

Term Term::apply(std::string op, Sort sort, std::vector<Term> args) {
  Term t;
  std::size_t h = mix(std::hash<std::string>{}(op), 2);
  std::size_t size = 1;
  std::size_t depth = 0;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    depth = std::max(depth, a.depth() + 1);
  }
  t.node_ = std::make_shared<const Node>(
      Node{Kind::Apply, std::move(op), std::move(sort), std::move(args), h, size, depth});
  return t;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  if (a.node_->kind != b.node_->kind || a.node_->head != b.node_->head ||
      a.node_->sort != b.node_->sort || a.node_->args.size() != b.node_->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.node_->args.size(); ++i) {
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->head <=> b.node_->head; c != 0) return c;
  if (auto c = a.node_->sort <=> b.node_->sort; c != 0) return c;
  if (auto c = a.node_->args.size() <=> b.node_->args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i) {
    if (auto c = a.node_->args[i] <=> b.node_->args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void print_into(const Term& t, std::string& out) {
  out += t.head();
  if (t.is_variable() || t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print_into(t.arg(i), out);
  }
  out += ')';
}

void collect_vars(const Term& t, std::vector<std::string>& out,
                  std::set<std::string>& seen) {
  if (t.is_variable()) {
    if (seen.insert(t.head()).second) out.push_back(t.head());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out, seen);
}

}  // namespace

std::string to_string(const Term& term) {
  std::string out;
  print_into(term, out);
  return out;
}

std::vector<std::string> free_variables(const Term& term) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_vars(term, out, seen);
  return out;
}

}  // namespace msat
