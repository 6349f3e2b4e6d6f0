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

#include <optional>

#include "lexer.hpp"
#include "msat/models.hpp"

namespace msat {

namespace {

ParseError semantic(const detail::Token& at, const std::string& msg) {
  return ParseError(ErrorKind::Semantic, at.line, at.column, msg);
}

std::string describe(const Equation& eq) {
  return to_string(eq.lhs) + " = " + to_string(eq.rhs);
}

}  // namespace

FiniteAlgebra parse_model(std::string_view text, DoctrinePtr doctrine, bool validate) {
  const Doctrine& d = *doctrine;
  detail::Lexer lex(text);
  lex.expect("model");
  std::string name = lex.expect_ident("model name").text;
  lex.expect("of");
  auto theory = lex.expect_ident("theory name");
  if (theory.text != d.name()) {
    throw semantic(theory, "model is for theory '" + theory.text + "', not '" + d.name() + "'");
  }
  std::vector<std::optional<std::vector<std::string>>> carriers(d.sorts().size());
  std::vector<std::optional<std::vector<Element>>> tables(d.ops().size());
  auto element = [&](std::size_t sort, const detail::Token& tok) {
    const auto& c = *carriers[sort];
    auto it = std::find(c.begin(), c.end(), tok.text);
    if (it == c.end()) {
      throw semantic(tok, "'" + tok.text + "' is not in the carrier of " + d.sorts()[sort].name);
    }
    return static_cast<Element>(it - c.begin());
  };
  while (!lex.at("end")) {
    if (lex.accept("carrier")) {
      auto stok = lex.expect_ident("sort name");
      auto s = d.sort_index(Sort(stok.text));
      if (!s) throw semantic(stok, "unknown sort '" + stok.text + "'");
      if (carriers[*s]) throw semantic(stok, "second carrier for sort '" + stok.text + "'");
      lex.expect("=");
      lex.expect("{");
      std::vector<std::string> elems;
      if (!lex.at("}")) {
        do {
          auto e = lex.expect_ident("element");
          if (std::find(elems.begin(), elems.end(), e.text) != elems.end()) {
            throw semantic(e, "duplicate element '" + e.text + "'");
          }
          elems.push_back(e.text);
        } while (lex.accept(","));
      }
      lex.expect("}");
      carriers[*s] = std::move(elems);
    } else if (lex.at("table")) {
      auto table_tok = lex.next();
      auto otok = lex.expect_ident("operation name");
      auto op = d.op_index(otok.text);
      if (!op) throw semantic(otok, "unknown operation '" + otok.text + "'");
      if (tables[*op]) throw semantic(otok, "second table for '" + otok.text + "'");
      const auto& sym = d.ops()[*op];
      std::vector<std::size_t> dom;
      for (const auto& s : sym.domain) {
        dom.push_back(*d.sort_index(s));
        if (!carriers[dom.back()]) {
          throw semantic(otok, "table '" + otok.text + "' precedes the carrier of " + s.name);
        }
      }
      std::size_t out = *d.sort_index(sym.codomain);
      if (!carriers[out]) {
        throw semantic(otok, "table '" + otok.text + "' precedes the carrier of " +
                                 sym.codomain.name);
      }
      std::size_t rows = 1;
      std::vector<std::size_t> strides(dom.size());
      for (std::size_t i = dom.size(); i-- > 0;) {
        strides[i] = rows;
        rows *= carriers[dom[i]]->size();
      }
      std::vector<Element> table(rows, -1);
      lex.expect("=");
      lex.expect("[");
      if (!lex.at("]")) {
        do {
          auto open = lex.expect("(");
          std::size_t row = 0, k = 0;
          if (!lex.at(")")) {
            do {
              auto e = lex.expect_ident("element");
              if (k >= dom.size()) throw semantic(e, "too many arguments for '" + sym.name + "'");
              row += static_cast<std::size_t>(element(dom[k], e)) * strides[k];
              ++k;
            } while (lex.accept(","));
          }
          if (k != dom.size()) throw semantic(open, "too few arguments for '" + sym.name + "'");
          lex.expect(")");
          lex.expect("->");
          auto v = lex.expect_ident("element");
          if (table[row] != -1) throw semantic(open, "repeated row in table '" + sym.name + "'");
          table[row] = element(out, v);
        } while (lex.accept(","));
      }
      lex.expect("]");
      if (std::find(table.begin(), table.end(), -1) != table.end()) {
        throw semantic(table_tok, "table '" + sym.name + "' is not total");
      }
      tables[*op] = std::move(table);
    } else {
      lex.fail("expected 'carrier', 'table' or 'end', found " + detail::Lexer::describe(lex.peek()));
    }
  }
  auto end_tok = lex.expect("end");
  if (lex.peek().kind != detail::Token::Kind::End) lex.fail("trailing input after 'end'");

  std::vector<std::vector<std::string>> cs;
  std::vector<std::vector<Element>> ts;
  for (std::size_t s = 0; s < carriers.size(); ++s) {
    if (!carriers[s]) throw semantic(end_tok, "no carrier for sort '" + d.sorts()[s].name + "'");
    cs.push_back(*carriers[s]);
  }
  for (std::size_t op = 0; op < tables.size(); ++op) {
    if (!tables[op]) throw semantic(end_tok, "no table for '" + d.ops()[op].name + "'");
    ts.push_back(*tables[op]);
  }
  FiniteAlgebra alg(std::move(doctrine), std::move(cs), std::move(ts), name);
  if (validate) {
    auto report = check_equations(alg, 1);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      std::string at;
      for (const auto& [var, val] : v.assignment) at += (at.empty() ? "" : ", ") + var + "=" + val;
      throw Error(ErrorKind::InvalidModel, "equation " + describe(d.equations()[v.equation]) +
                                               " fails at {" + at + "}: " + v.lhs_value +
                                               " != " + v.rhs_value);
    }
  }
  return alg;
}

std::string print_model(const FiniteAlgebra& alg) {
  const Doctrine& d = alg.doctrine();
  std::string out = "model " + (alg.name().empty() ? std::string("m") : alg.name()) + " of " +
                    d.name() + "\n";
  for (std::size_t s = 0; s < d.sorts().size(); ++s) {
    out += "carrier " + d.sorts()[s].name + " = {";
    for (std::size_t i = 0; i < alg.size(s); ++i) out += (i ? ", " : "") + alg.carrier(s)[i];
    out += "}\n";
  }
  for (std::size_t op = 0; op < d.ops().size(); ++op) {
    const auto& sym = d.ops()[op];
    out += "table " + sym.name + " = [";
    for (std::size_t r = 0; r < alg.table(op).size(); ++r) {
      auto args = alg.row_args(op, r);
      out += r ? ", (" : "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        out += (i ? "," : "") + alg.carrier(sym.domain[i])[args[i]];
      }
      out += ")->" + alg.carrier(sym.codomain)[alg.table(op)[r]];
    }
    out += "]\n";
  }
  return out + "end\n";
}

nlohmann::json to_json(const FiniteAlgebra& alg) {
  const Doctrine& d = alg.doctrine();
  nlohmann::json carriers = nlohmann::json::object(), tables = nlohmann::json::object();
  for (std::size_t s = 0; s < d.sorts().size(); ++s) carriers[d.sorts()[s].name] = alg.carrier(s);
  for (std::size_t op = 0; op < d.ops().size(); ++op) {
    const auto& sym = d.ops()[op];
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < alg.table(op).size(); ++r) {
      auto args = alg.row_args(op, r);
      nlohmann::json a = nlohmann::json::array();
      for (std::size_t i = 0; i < args.size(); ++i) a.push_back(alg.carrier(sym.domain[i])[args[i]]);
      rows.push_back({{"args", a}, {"value", alg.carrier(sym.codomain)[alg.table(op)[r]]}});
    }
    tables[sym.name] = rows;
  }
  return {{"name", alg.name()}, {"theory", d.name()}, {"carriers", carriers}, {"tables", tables}};
}

}  // namespace msat
