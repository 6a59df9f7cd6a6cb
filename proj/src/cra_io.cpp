// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/cra_io.hpp"

#include <cctype>
#include <functional>
#include <sstream>

#include "dwcra/errors.hpp"

namespace dwcra {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '^'; }

// Recursive-descent reader for `! & | ( ) true false` over caller-defined atoms.
template <class Expr>
class ExprReader {
 public:
  using AtomReader = std::function<Expr(ExprReader&)>;

  ExprReader(std::string_view text, std::size_t line, std::size_t column, AtomReader atom)
      : text_(text), line_(line), column_(column), atom_(std::move(atom)) {}

  Expr run() {
    Expr e = disjunction();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(what, line_, column_ + pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view s) {
    skip();
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  std::string name() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (b == pos_) fail("expected a name");
    return std::string(text_.substr(b, pos_ - b));
  }

  std::size_t number() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (b == pos_ || pos_ - b > 9) fail("expected a number");
    return std::stoul(std::string(text_.substr(b, pos_ - b)));
  }

  bool peek_keyword(std::string_view kw) {
    skip();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t e = pos_ + kw.size();
    return e >= text_.size() || !name_char(text_[e]);
  }

 private:
  Expr disjunction() {
    std::vector<Expr> parts{conjunction()};
    while (accept("|")) parts.push_back(conjunction());
    return parts.size() == 1 ? parts[0] : Expr::disj(std::move(parts));
  }
  Expr conjunction() {
    std::vector<Expr> parts{unary()};
    while (accept("&")) parts.push_back(unary());
    return parts.size() == 1 ? parts[0] : Expr::conj(std::move(parts));
  }
  Expr unary() {
    if (accept("!")) return Expr::negate(unary());
    if (accept("(")) {
      Expr e = disjunction();
      expect(")");
      return e;
    }
    if (peek_keyword("true")) {
      pos_ += 4;
      return Expr::truth();
    }
    if (peek_keyword("false")) {
      pos_ += 5;
      return Expr::falsity();
    }
    return atom_(*this);
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  AtomReader atom_;
  std::size_t pos_ = 0;

 public:
  std::size_t& pos() { return pos_; }
  std::string_view text() const { return text_; }
};

struct Builder {
  CRA a;
  bool have_signature = false, have_alphabet = false, have_m = false, have_states = false;
  std::vector<std::string> labels;
  int m = 0;

  std::size_t state(const std::string& name, std::size_t line) const {
    const auto q = a.state_index(name);
    if (!q) throw FormatError("unknown state '" + name + "'", line);
    return *q;
  }
  std::size_t symbol(const std::string& name, std::size_t line) const {
    const auto s = a.signature.index_of(name);
    if (!s) throw FormatError("unknown relation symbol '" + name + "'", line);
    return *s;
  }
  std::size_t reg(const std::string& name, std::size_t line) const {
    const auto r = a.register_index(name);
    if (!r) throw FormatError("unknown register '" + name + "'", line);
    return *r;
  }
};

GuardTerm read_term(ExprReader<Guard>& rd, const Builder& b, std::size_t line) {
  const std::string first = rd.name();
  if (first == "d" && rd.accept("[")) {
    const auto k = rd.number();
    rd.expect("]");
    if (k < 1 || static_cast<int>(k) > b.m) rd.fail("data index out of range");
    return {static_cast<int>(k)};
  }
  rd.expect(".");
  const std::string r = rd.name();
  return {RegisterRef{b.symbol(first, line), b.reg(r, line)}};
}

Guard read_guard(std::string_view text, const Builder& b, std::size_t line, std::size_t column) {
  ExprReader<Guard> rd(text, line, column, [&](ExprReader<Guard>& r) {
    const GuardTerm lhs = read_term(r, b, line);
    r.expect("=");
    if (r.peek_keyword("bot")) {
      r.pos() += 3;
      return Guard::negate(Guard::atom({lhs, lhs}));
    }
    return Guard::atom({lhs, read_term(r, b, line)});
  });
  return rd.run();
}

GlobalCondition read_global(std::string_view text, const Builder& b, std::size_t line, std::size_t column) {
  ExprReader<GlobalCondition> rd(text, line, column, [&](ExprReader<GlobalCondition>& r) {
    const std::string q = r.name();
    r.expect("<=");
    return GlobalCondition::atom({b.state(q, line), r.number()});
  });
  return rd.run();
}

Transition read_transition(const std::string& text, const Builder& b, std::size_t line) {
  Transition t;
  t.sources.assign(b.a.signature.size(), std::nullopt);
  t.update.assign(b.a.registers.size(), std::nullopt);
  if (text.empty() || text[0] != '[') throw FormatError("transition must start with '['", line);
  const auto close = text.find(']');
  if (close == std::string::npos) throw FormatError("missing ']'", line);
  std::vector<std::string> items{""};
  for (char c : text.substr(1, close - 1)) {
    if (c == ',') {
      items.emplace_back();
    } else {
      items.back() += c;
    }
  }
  for (const auto& raw : items) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw FormatError("source entry must be rel=state", line);
    const auto s = b.symbol(trim(item.substr(0, eq)), line);
    if (t.sources[s]) throw FormatError("duplicate source for a symbol", line);
    t.sources[s] = b.state(trim(item.substr(eq + 1)), line);
  }
  const auto q1 = text.find('"', close);
  if (q1 == std::string::npos) throw FormatError("missing quoted label", line);
  const auto q2 = text.find('"', q1 + 1);
  if (q2 == std::string::npos) throw FormatError("unterminated label", line);
  const std::string guard_text = trim(text.substr(close + 1, q1 - close - 1));
  t.guard = guard_text.empty() ? Guard::truth() : read_guard(guard_text, b, line, close + 2);
  const auto label = b.a.alphabet.find(text.substr(q1 + 1, q2 - q1 - 1));
  if (!label) throw FormatError("unknown label \"" + text.substr(q1 + 1, q2 - q1 - 1) + "\"", line);
  t.label = *label;
  std::string rest = trim(text.substr(q2 + 1));
  if (!rest.starts_with("->")) throw FormatError("expected '->' after the label", line);
  rest = trim(rest.substr(2));
  const auto brace = rest.find('{');
  t.target = b.state(trim(rest.substr(0, brace)), line);
  if (brace == std::string::npos) return t;
  const auto end = rest.find('}', brace);
  if (end == std::string::npos || trim(rest.substr(end + 1)) != "") throw FormatError("malformed update block", line);
  std::string body = rest.substr(brace + 1, end - brace - 1);
  std::size_t from = 0;
  while (from <= body.size()) {
    auto comma = body.find(',', from);
    if (comma == std::string::npos) comma = body.size();
    const std::string entry = trim(body.substr(from, comma - from));
    from = comma + 1;
    if (entry.empty()) continue;
    const auto assign = entry.find(":=");
    if (assign == std::string::npos) throw FormatError("update entry must be 'r := src'", line);
    const auto r = b.reg(trim(entry.substr(0, assign)), line);
    if (t.update[r]) throw FormatError("register updated twice", line);
    const std::string src = trim(entry.substr(assign + 2));
    if (src.starts_with("d[")) {
      const auto rb = src.find(']');
      const auto at = src.find('@');
      if (rb == std::string::npos || at != rb + 1) throw FormatError("guess must be d[k]@B", line);
      int k = 0;
      std::size_t radius = 0;
      try {
        k = std::stoi(src.substr(2, rb - 2));
        radius = std::stoul(src.substr(at + 1));
      } catch (const std::exception&) {
        throw FormatError("guess must be d[k]@B", line);
      }
      if (k < 1 || k > b.m) throw FormatError("data index out of range", line);
      t.update[r] = DataGuess{k, radius};
    } else {
      const auto dot = src.find('.');
      if (dot == std::string::npos) throw FormatError("register source must be rel.reg or d[k]@B", line);
      t.update[r] = RegisterRef{b.symbol(src.substr(0, dot), line), b.reg(src.substr(dot + 1), line)};
    }
  }
  return t;
}

}  // namespace

CRA parse_cra(std::string_view text) {
  Builder b;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool in_transitions = false;
  std::vector<std::pair<std::string, std::size_t>> pending_transitions;
  std::vector<std::pair<std::string, std::size_t>> pending_finals;  // "rel: q..." text
  std::optional<std::pair<std::string, std::size_t>> pending_global;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s = s.substr(0, hash);
    const bool indented = !s.empty() && std::isspace(static_cast<unsigned char>(s[0]));
    s = trim(s);
    if (s.empty()) continue;
    if (in_transitions && (indented || s[0] == '[')) {
      pending_transitions.emplace_back(s, line);
      continue;
    }
    in_transitions = false;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw FormatError("expected 'section: ...'", line);
    const std::string key = trim(s.substr(0, colon));
    const std::string value = trim(s.substr(colon + 1));
    if (key == "signature") {
      try {
        b.a.signature = Signature::builtin(value);
      } catch (const Error& e) {
        throw FormatError(e.what(), line);
      }
      b.have_signature = true;
    } else if (key == "alphabet") {
      b.labels = words(value);
      b.have_alphabet = true;
    } else if (key == "m") {
      try {
        b.m = std::stoi(value);
      } catch (const std::exception&) {
        throw FormatError("m must be a number", line);
      }
      b.have_m = true;
    } else if (key == "states") {
      b.a.states = words(value);
      b.have_states = true;
    } else if (key == "registers") {
      b.a.registers = words(value);
    } else if (key == "transitions") {
      in_transitions = true;
      if (!value.empty()) pending_transitions.emplace_back(value, line);
    } else if (key.starts_with("final[") && key.ends_with("]")) {
      pending_finals.emplace_back(key.substr(6, key.size() - 7) + ":" + value, line);
    } else if (key == "global") {
      pending_global = {value, line};
    } else {
      throw FormatError("unknown section '" + key + "'", line);
    }
  }
  if (!b.have_signature) throw FormatError("missing 'signature:' section");
  if (!b.have_alphabet) throw FormatError("missing 'alphabet:' section");
  if (!b.have_m) throw FormatError("missing 'm:' section");
  if (!b.have_states || b.a.states.empty()) throw FormatError("missing 'states:' section");
  try {
    b.a.alphabet = Alphabet(b.labels, b.m);
    b.a.signature.check_arity(b.m);
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  b.a.finals.assign(b.a.signature.size(), std::vector<bool>(b.a.states.size(), false));
  for (const auto& [entry, l] : pending_finals) {
    const auto colon = entry.find(':');
    const auto s = b.symbol(trim(entry.substr(0, colon)), l);
    for (const auto& q : words(entry.substr(colon + 1))) b.a.finals[s][b.state(q, l)] = true;
  }
  for (const auto& [t, l] : pending_transitions) b.a.transitions.push_back(read_transition(t, b, l));
  b.a.global = pending_global ? read_global(pending_global->first, b, pending_global->second, 9)
                              : GlobalCondition::truth();
  const auto rep = validate(b.a);
  if (!rep.ok()) throw FormatError(rep.problems.front());
  return b.a;
}

std::string format_cra(const CRA& a) {
  std::ostringstream os;
  auto join = [](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
    return out;
  };
  os << "signature: " << a.signature.name() << '\n';
  os << "alphabet: " << join(a.alphabet.labels()) << '\n';
  os << "m: " << a.alphabet.arity() << '\n';
  os << "states: " << join(a.states) << '\n';
  os << "registers: " << join(a.registers) << '\n';
  os << "transitions:\n";
  for (const auto& t : a.transitions) {
    os << "  [";
    bool first = true;
    for (std::size_t s = 0; s < t.sources.size(); ++s) {
      if (!t.sources[s]) continue;
      os << (first ? "" : ", ") << a.signature.symbol(s).name << '=' << a.states[*t.sources[s]];
      first = false;
    }
    os << "] " << guard_to_string(a, t.guard) << " \"" << a.alphabet.name(t.label) << "\" -> " << a.states[t.target];
    std::vector<std::string> ups;
    for (std::size_t r = 0; r < t.update.size(); ++r) {
      if (!t.update[r]) continue;
      std::string src;
      if (const auto* ref = std::get_if<RegisterRef>(&*t.update[r])) {
        src = a.signature.symbol(ref->symbol).name + "." + a.registers[ref->reg];
      } else {
        const auto& g = std::get<DataGuess>(*t.update[r]);
        src = "d[" + std::to_string(g.coord) + "]@" + std::to_string(g.radius);
      }
      ups.push_back(a.registers[r] + " := " + src);
    }
    if (!ups.empty()) {
      os << " {";
      for (std::size_t i = 0; i < ups.size(); ++i) os << (i ? ", " : "") << ups[i];
      os << '}';
    }
    os << '\n';
  }
  for (std::size_t s = 0; s < a.finals.size(); ++s) {
    std::vector<std::string> qs;
    for (std::size_t q = 0; q < a.finals[s].size(); ++q)
      if (a.finals[s][q]) qs.push_back(a.states[q]);
    os << "final[" << a.signature.symbol(s).name << "]:" << (qs.empty() ? "" : " " + join(qs)) << '\n';
  }
  os << "global: " << global_to_string(a, a.global) << '\n';
  return os.str();
}

}  // namespace dwcra
