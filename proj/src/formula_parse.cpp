// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>

#include "dwcra/errors.hpp"
#include "dwcra/formula.hpp"

namespace dwcra {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool reserved(const std::string& s) {
  return s == "E" || s == "A" || s == "E2" || s == "A2" || s == "in" || s == "true" || s == "false" || s == "lt";
}

class Parser {
 public:
  Parser(std::string_view text, const ParseContext* ctx) : text_(text), ctx_(ctx) {}

  Formula run() {
    Formula f = formula();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FormatError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool starts(std::string_view s) {
    skip_ws();
    return text_.substr(pos_, s.size()) == s;
  }

  bool accept(std::string_view s) {
    if (!starts(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  std::string peek_ident() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !ident_start(text_[p])) return {};
    while (p < text_.size() && ident_char(text_[p])) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  std::string ident(const char* what) {
    std::string s = peek_ident();
    if (s.empty()) fail(std::string("expected ") + what);
    pos_ += s.size();
    return s;
  }

  std::string variable(const char* what) {
    const std::size_t at = (skip_ws(), pos_);
    std::string s = ident(what);
    if (reserved(s)) fail_at("'" + s + "' is reserved", at);
    return s;
  }

  int number() {
    skip_ws();
    std::size_t p = pos_;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p == pos_) fail("expected a number");
    if (p - pos_ > 6) fail("number too large");
    const int v = std::stoi(std::string(text_.substr(pos_, p - pos_)));
    pos_ = p;
    return v;
  }

  Formula formula() {
    Formula f = implication();
    while (accept("<->")) f = Formula::iff(f, implication());
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (starts("->")) {
      pos_ += 2;
      return Formula::implies(f, implication());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    const std::string word = peek_ident();
    if (word == "E" || word == "A" || word == "E2" || word == "A2") {
      pos_ += word.size();
      std::string x = variable("a bound variable");
      expect(".");
      Formula body = formula();
      if (word == "E") return Formula::exists(x, body);
      if (word == "A") return Formula::forall(x, body);
      if (word == "E2") return Formula::exists_set(x, body);
      return Formula::forall_set(x, body);
    }
    return atom();
  }

  int data_index() {
    const std::size_t at = (skip_ws(), pos_);
    const int k = number();
    if (k < 1 || (ctx_ && ctx_->m >= 0 && k > ctx_->m))
      fail_at("data index " + std::to_string(k) + " out of range", at);
    return k;
  }

  Formula atom() {
    const std::size_t at = (skip_ws(), pos_);
    const std::string word = peek_ident();
    if (word.empty()) fail("expected a formula");
    if (word == "true" || word == "false") {
      pos_ += word.size();
      return word == "true" ? Formula::truth() : Formula::falsity();
    }
    if (word == "lab" && text_.substr(pos_ + 3).starts_with("(")) {
      pos_ += 3;
      expect("(");
      std::string x = variable("a variable");
      expect(")");
      expect("=");
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             std::string_view("()&|").find(text_[pos_]) == std::string_view::npos)
        ++pos_;
      if (pos_ == start) fail("expected a label");
      std::string label(text_.substr(start, pos_ - start));
      if (ctx_ && !ctx_->labels.empty() &&
          std::find(ctx_->labels.begin(), ctx_->labels.end(), label) == ctx_->labels.end())
        fail_at("unknown label '" + label + "'", start);
      return Formula::label_is(x, label);
    }
    if (word == "d" && text_.substr(pos_ + 1).starts_with("[")) {
      pos_ += 1;
      expect("[");
      const int k = data_index();
      expect("]");
      expect("(");
      std::string x = variable("a variable");
      expect(")");
      expect("=");
      expect("d");
      expect("[");
      const int l = data_index();
      expect("]");
      expect("(");
      std::string y = variable("a variable");
      expect(")");
      return Formula::data_eq(x, k, y, l);
    }
    std::string x = variable("a variable");
    if (starts("<->") || starts("->")) fail("expected an atom after '" + x + "'");
    if (accept("=")) return Formula::pos_eq(x, variable("a variable"));
    if (peek_ident() == "in") {
      pos_ += 2;
      return Formula::in(x, variable("a set variable"));
    }
    std::string rel;
    const std::size_t rel_at = (skip_ws(), pos_);
    if (accept("~")) {
      rel = "cls" + std::to_string(number());
    } else if (accept("+1")) {
      rel = "succ";
    } else if (accept("<")) {
      rel = "lt";
    } else {
      rel = peek_ident();
      if (rel.empty()) fail_at("expected a relation after '" + x + "'", rel_at);
      pos_ += rel.size();
    }
    std::string y = variable("a variable");
    if (rel == "lt") return Formula::lt(x, y);
    if (ctx_ && !ctx_->relations.empty() &&
        std::find(ctx_->relations.begin(), ctx_->relations.end(), rel) == ctx_->relations.end())
      throw SignatureError(std::to_string(at + 1) + ": unknown relation symbol '" + rel + "'");
    return Formula::edge(x, rel, y);
  }

  std::string_view text_;
  const ParseContext* ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseContext* context) { return Parser(text, context).run(); }

}  // namespace dwcra
