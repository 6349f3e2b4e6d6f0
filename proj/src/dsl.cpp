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

#include <fstream>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "msat/dsl.hpp"

namespace msat {
namespace {

using detail::Lexer;
using detail::Token;

[[noreturn]] void semantic(const Token& at, const std::string& msg) {
  throw ParseError(ErrorKind::Semantic, at.line, at.column, msg);
}

struct OpTable {
  std::vector<OpSymbol> ops;
  std::map<std::string, std::size_t> index;
  const OpSymbol* find(const std::string& n) const {
    auto it = index.find(n);
    return it == index.end() ? nullptr : &ops[it->second];
  }
};

Term parse_term_at(Lexer& lx, const Context& ctx, const OpTable& ops) {
  Token head = lx.expect_ident("a term");
  if (!lx.at("(")) {
    if (const Sort* s = ctx.find(head.text)) return Term::variable(head.text, *s);
    const OpSymbol* c = ops.find(head.text);
    if (c == nullptr) semantic(head, "unknown variable or constant '" + head.text + "'");
    if (c->arity() != 0) {
      semantic(head, "operation '" + head.text + "' expects " + std::to_string(c->arity()) +
                         " arguments");
    }
    return Term::apply(head.text, c->codomain, {});
  }
  const OpSymbol* op = ops.find(head.text);
  if (op == nullptr) semantic(head, "unknown operation '" + head.text + "'");
  lx.expect("(");
  std::vector<Term> args;
  std::vector<Token> starts;
  if (!lx.at(")")) {
    do {
      starts.push_back(lx.peek());
      args.push_back(parse_term_at(lx, ctx, ops));
    } while (lx.accept(","));
  }
  lx.expect(")");
  if (args.size() != op->arity()) {
    semantic(head, "operation '" + op->name + "' expects " + std::to_string(op->arity()) +
                       " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != op->domain[i]) {
      semantic(starts[i], "argument " + std::to_string(i + 1) + " of '" + op->name +
                              "' has sort " + args[i].sort().name + ", expected " +
                              op->domain[i].name);
    }
  }
  return Term::apply(op->name, op->codomain, std::move(args));
}

/// Built-in doctrine whose canonical name is `name`, if any.
DoctrinePtr builtin_named(const std::string& name) {
  try {
    if (name == "trivial") return builtin_doctrine("trivial");
    if (name == "monoid") return builtin_doctrine("monoid");
    if (name == "group") return builtin_doctrine("group");
    if (name == "group_action") return builtin_doctrine("group-action");
    if (name == "ring_module") return builtin_doctrine("ring-module");
    for (const char* p : {"operad_nonsigma_", "operad_symmetric_"}) {
      std::string prefix = p;
      if (name.rfind(prefix, 0) == 0 && name.size() == prefix.size() + 1 &&
          std::isdigit(static_cast<unsigned char>(name.back()))) {
        std::string spec = prefix == "operad_nonsigma_" ? "operad-nonsigma:" : "operad-symmetric:";
        return builtin_doctrine(spec + name.back());
      }
    }
    if (name.rfind("ocat_", 0) == 0) {
      std::string objs = name.substr(5);
      for (char& c : objs)
        if (c == '_') c = ',';
      return builtin_doctrine("ocat:" + objs);
    }
  } catch (const Error&) {
  }
  return nullptr;
}

}  // namespace

DoctrinePtr parse_theory(std::string_view text) {
  Lexer lx(text);
  lx.expect("theory");
  Token name = lx.expect_ident("a theory name");

  std::vector<Sort> sorts;
  std::set<std::string> sort_names;
  if (lx.accept("sorts")) {
    do {
      Token s = lx.expect_ident("a sort name");
      if (!sort_names.insert(s.text).second) semantic(s, "duplicate sort '" + s.text + "'");
      sorts.emplace_back(s.text);
    } while (lx.accept(","));
  }
  auto need_sort = [&](const Token& t) {
    if (!sort_names.contains(t.text)) semantic(t, "unknown sort '" + t.text + "'");
    return Sort(t.text);
  };

  OpTable ops;
  while (lx.accept("op")) {
    Token n = lx.expect_ident("an operation name");
    if (ops.find(n.text)) semantic(n, "duplicate operation '" + n.text + "'");
    lx.expect(":");
    OpSymbol o{n.text, {}, Sort()};
    while (lx.peek().kind == Token::Kind::Ident) o.domain.push_back(need_sort(lx.next()));
    lx.expect("->");
    o.codomain = need_sort(lx.expect_ident("a codomain sort"));
    ops.index[o.name] = ops.ops.size();
    ops.ops.push_back(std::move(o));
  }

  std::vector<Equation> eqs;
  while (lx.at("eq")) {
    Token eq_tok = lx.next();
    Context ctx;
    lx.expect("(");
    while (!lx.at(")")) {
      Token v = lx.expect_ident("a variable name");
      lx.expect(":");
      Sort s = need_sort(lx.expect_ident("a sort name"));
      if (ctx.find(v.text)) semantic(v, "duplicate variable '" + v.text + "'");
      ctx.add(v.text, s);
      lx.accept(",");
    }
    lx.expect(")");
    Term lhs = parse_term_at(lx, ctx, ops);
    lx.expect("=");
    Term rhs = parse_term_at(lx, ctx, ops);
    if (lhs.sort() != rhs.sort()) {
      semantic(eq_tok, "equation sides have sorts " + lhs.sort().name + " and " +
                           rhs.sort().name);
    }
    eqs.push_back({std::move(ctx), std::move(lhs), std::move(rhs)});
  }
  lx.expect("end");
  if (lx.peek().kind != Token::Kind::End) lx.fail("trailing input after 'end'");

  auto parsed = std::make_shared<Doctrine>(name.text, std::move(sorts), std::move(ops.ops),
                                           std::move(eqs));
  if (auto b = builtin_named(name.text); b && b->same_presentation(*parsed)) return b;
  return parsed;
}

std::string print_theory(const Doctrine& d) {
  std::ostringstream out;
  out << "theory " << d.name() << "\n";
  if (!d.sorts().empty()) {
    out << "sorts ";
    for (std::size_t i = 0; i < d.sorts().size(); ++i) out << (i ? ", " : "") << d.sorts()[i].name;
    out << "\n";
  }
  for (const auto& o : d.ops()) {
    out << "op " << o.name << " :";
    for (const auto& s : o.domain) out << " " << s.name;
    out << " -> " << o.codomain.name << "\n";
  }
  for (const auto& eq : d.equations()) {
    out << "eq (";
    for (std::size_t i = 0; i < eq.context.size(); ++i) {
      out << (i ? " " : "") << eq.context.name(i) << ":" << eq.context.sort(i).name;
    }
    out << ") " << to_string(eq.lhs) << " = " << to_string(eq.rhs) << "\n";
  }
  out << "end\n";
  return out.str();
}

Term parse_term(std::string_view text, const Context& context, const Doctrine& doctrine) {
  OpTable ops;
  for (const auto& o : doctrine.ops()) {
    ops.index[o.name] = ops.ops.size();
    ops.ops.push_back(o);
  }
  Lexer lx(text);
  Term t = parse_term_at(lx, context, ops);
  if (lx.peek().kind != Token::Kind::End) lx.fail("trailing input after term");
  return t;
}

Context parse_context(std::string_view text) {
  Lexer lx(text);
  Context ctx;
  while (lx.peek().kind != Token::Kind::End) {
    Token v = lx.expect_ident("a variable name");
    lx.expect(":");
    Token s = lx.expect_ident("a sort name");
    if (ctx.find(v.text)) semantic(v, "duplicate variable '" + v.text + "'");
    ctx.add(v.text, Sort(s.text));
    lx.accept(",");
  }
  return ctx;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DoctrinePtr load_theory(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) return builtin_doctrine(source.substr(8));
  return parse_theory(read_file(source));
}

}  // namespace msat
