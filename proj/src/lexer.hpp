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

// Tokenizer shared by the theory and model readers.

#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "msat/error.hpp"

namespace msat::detail {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Identifiers are runs of [A-Za-z0-9_]; punctuation is one of ( ) , : = { } [ ]
/// or the arrow `->`. `#` starts a comment running to end of line.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool at(std::string_view text) const {
    return tok_.kind != Token::Kind::End && tok_.text == text;
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    advance();
    return true;
  }

  Token expect(std::string_view text) {
    if (!at(text)) fail("expected '" + std::string(text) + "', found " + describe(tok_));
    return next();
  }

  Token expect_ident(std::string_view what) {
    if (tok_.kind != Token::Kind::Ident) {
      fail("expected " + std::string(what) + ", found " + describe(tok_));
    }
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ErrorKind::Syntax, tok_.line, tok_.column, msg);
  }

  static std::string describe(const Token& t) {
    if (t.kind == Token::Kind::End) return "end of input";
    return "'" + t.text + "'";
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (ident_char(c)) {
      tok_.kind = Token::Kind::Ident;
      while (pos_ < text_.size() && ident_char(text_[pos_])) {
        tok_.text += text_[pos_];
        bump();
      }
      return;
    }
    tok_.kind = Token::Kind::Punct;
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_.text = "->";
      bump();
      bump();
      return;
    }
    static constexpr std::string_view kPunct = "(),:={}[]";
    if (kPunct.find(c) == std::string_view::npos) {
      throw ParseError(ErrorKind::Syntax, line_, col_,
                       std::string("unexpected character '") + c + "'");
    }
    tok_.text = std::string(1, c);
    bump();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

}  // namespace msat::detail
