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

#include "engines/engine.hpp"

namespace msat::detail {
namespace {

struct Letter {
  std::string var;
  int exp;  // +1 or -1
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

bool has_inverses(const Doctrine& d) { return d.engine() != EngineKind::Monoid; }

Sort word_sort(const Doctrine& d) {
  return Sort(d.engine() == EngineKind::Monoid ? "m" : "G");
}

void push_reduced(Word& w, const Letter& l) {
  if (!w.empty() && w.back().var == l.var && w.back().exp == -l.exp) {
    w.pop_back();
  } else {
    w.push_back(l);
  }
}

Word to_word(const Term& t, const Doctrine& d) {
  if (t.is_variable()) return {{t.head(), 1}};
  const auto& h = t.head();
  if (h == "e") return {};
  if (h == "mul") {
    Word w = to_word(t.arg(0), d);
    for (const auto& l : to_word(t.arg(1), d)) push_reduced(w, l);
    return w;
  }
  if (h == "inv" && has_inverses(d)) {
    Word inner = to_word(t.arg(0), d);
    Word w;
    for (auto it = inner.rbegin(); it != inner.rend(); ++it) push_reduced(w, {it->var, -it->exp});
    return w;
  }
  throw Error(ErrorKind::UnknownSymbol, "word engine cannot interpret '" + h + "'");
}

struct Orbit {
  Word word;
  std::string point;
};

Orbit to_orbit(const Term& t, const Doctrine& d) {
  if (t.is_variable()) return {{}, t.head()};
  if (t.head() != "act") {
    throw Error(ErrorKind::UnknownSymbol, "action engine cannot interpret '" + t.head() + "'");
  }
  Orbit inner = to_orbit(t.arg(1), d);
  Word w = to_word(t.arg(0), d);
  for (const auto& l : inner.word) push_reduced(w, l);
  return {std::move(w), std::move(inner.point)};
}

Term letter_term(const Letter& l, const Sort& s) {
  Term v = Term::variable(l.var, s);
  return l.exp > 0 ? v : Term::apply("inv", s, {v});
}

Term word_term(const Word& w, const Sort& s) {
  if (w.empty()) return Term::apply("e", s, {});
  Term acc = letter_term(w.back(), s);
  for (std::size_t i = w.size() - 1; i-- > 0;) {
    acc = Term::apply("mul", s, {letter_term(w[i], s), acc});
  }
  return acc;
}

Term orbit_term(const Orbit& o) {
  Sort g("G"), x("X");
  Term acc = Term::variable(o.point, x);
  for (std::size_t i = o.word.size(); i-- > 0;) {
    acc = Term::apply("act", x, {letter_term(o.word[i], g), acc});
  }
  return acc;
}

}  // namespace

Term normalize_words(const Term& t, const Doctrine& d) {
  if (d.engine() == EngineKind::GroupAction && t.sort() == Sort("X")) {
    return orbit_term(to_orbit(t, d));
  }
  return word_term(to_word(t, d), t.sort());
}

std::size_t words_size(const Term& nf, const Doctrine& d) {
  if (d.engine() == EngineKind::GroupAction && nf.sort() == Sort("X")) {
    return to_orbit(nf, d).word.size();
  }
  return to_word(nf, d).size();
}

std::vector<Term> enumerate_words(const Context& ctx, const Sort& s, const Doctrine& d,
                                  std::size_t bound) {
  const Sort ws = word_sort(d);
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx.sort(i) != ws) continue;
    letters.push_back({ctx.name(i), 1});
    if (has_inverses(d)) letters.push_back({ctx.name(i), -1});
  }
  std::vector<Word> all{{}};
  std::vector<Word> frontier{{}};
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& l : letters) {
        if (!w.empty() && w.back().var == l.var && w.back().exp == -l.exp) continue;
        Word x = w;
        x.push_back(l);
        next.push_back(std::move(x));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<Term> out;
  if (s == ws) {
    for (const auto& w : all) out.push_back(word_term(w, ws));
  } else if (d.engine() == EngineKind::GroupAction && s == Sort("X")) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.sort(i) != s) continue;
      for (const auto& w : all) out.push_back(orbit_term({w, ctx.name(i)}));
    }
  }
  return out;
}

}  // namespace msat::detail
