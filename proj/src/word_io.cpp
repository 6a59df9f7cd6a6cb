// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/word_io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include "dwcra/errors.hpp"

namespace dwcra {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::string current;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Value parse_value(const std::string& token, std::size_t line) {
  Value v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw FormatError("data value '" + token + "' is not a non-negative integer", line);
  return v;
}

struct RawLetter {
  std::string label;
  std::vector<Value> data;
  std::size_t line;
};

DataWord assemble(std::vector<RawLetter> raw, std::optional<std::vector<std::string>> labels, std::optional<int> arity) {
  if (!labels) {
    labels.emplace();
    for (const auto& r : raw) {
      bool seen = false;
      for (const auto& l : *labels) seen = seen || l == r.label;
      if (!seen) labels->push_back(r.label);
    }
    if (labels->empty()) labels->push_back("a");
  }
  if (!arity) arity = raw.empty() ? 0 : static_cast<int>(raw.front().data.size());
  Alphabet alphabet(*labels, *arity);
  DataWord w(alphabet);
  for (auto& r : raw) {
    auto id = alphabet.find(r.label);
    if (!id) throw FormatError("label '" + r.label + "' not in alphabet", r.line);
    if (r.data.size() != static_cast<std::size_t>(*arity))
      throw FormatError("expected " + std::to_string(*arity) + " data values, got " + std::to_string(r.data.size()),
                        r.line);
    w.push_back({*id, std::move(r.data)});
  }
  return w;
}

}  // namespace

DataWord parse_word(std::string_view text) {
  std::optional<std::vector<std::string>> labels;
  std::optional<int> arity;
  std::vector<RawLetter> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto toks = tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "#alphabet") {
      if (toks.size() < 2) throw FormatError("#alphabet needs at least one label", number);
      labels.emplace(toks.begin() + 1, toks.end());
      continue;
    }
    if (toks[0] == "#m") {
      if (toks.size() != 2) throw FormatError("#m takes exactly one number", number);
      arity = static_cast<int>(parse_value(toks[1], number));
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string::npos) toks = tokens(std::string_view(line).substr(0, hash));
    if (toks.empty()) continue;
    RawLetter r{toks[0], {}, number};
    for (std::size_t t = 1; t < toks.size(); ++t) r.data.push_back(parse_value(toks[t], number));
    raw.push_back(std::move(r));
  }
  return assemble(std::move(raw), std::move(labels), arity);
}

DataWord parse_inline_word(std::string_view text, const std::optional<Alphabet>& alphabet) {
  std::vector<RawLetter> raw;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "()") i = text.size();
  while (skip(), i < text.size()) {
    if (text[i] != '(') throw FormatError("expected '(' in inline word", 1, i + 1);
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw FormatError("unterminated letter in inline word", 1, i + 1);
    std::vector<std::string> parts;
    std::string current;
    for (char c : text.substr(i + 1, close - i - 1)) {
      if (c == ',') {
        parts.push_back(current);
        current.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        current += c;
      }
    }
    parts.push_back(current);
    if (parts[0].empty()) throw FormatError("missing label in inline word", 1, i + 1);
    RawLetter r{parts[0], {}, 1};
    for (std::size_t p = 1; p < parts.size(); ++p) r.data.push_back(parse_value(parts[p], 1));
    raw.push_back(std::move(r));
    i = close + 1;
  }
  if (alphabet) return assemble(std::move(raw), alphabet->labels(), alphabet->arity());
  return assemble(std::move(raw), std::nullopt, std::nullopt);
}

std::string format_word(const DataWord& w) {
  std::ostringstream os;
  os << "#alphabet";
  for (const auto& l : w.alphabet().labels()) os << ' ' << l;
  os << "\n#m " << w.arity() << '\n';
  for (const auto& letter : w.letters()) {
    os << w.alphabet().name(letter.label);
    for (Value d : letter.data) os << ' ' << d;
    os << '\n';
  }
  return os.str();
}

std::string format_inline_word(const DataWord& w) {
  if (w.empty()) return "()";
  std::ostringstream os;
  for (const auto& letter : w.letters()) {
    os << '(' << w.alphabet().name(letter.label);
    for (Value d : letter.data) os << ',' << d;
    os << ')';
  }
  return os.str();
}

std::string edge_style(const std::string& symbol) {
  if (symbol == "succ" || symbol == "proc") return "solid";
  if (symbol.rfind("cls", 0) == 0) return "dashed";
  if (symbol == "fork") return "dotted";
  if (symbol == "msg") return "bold";
  return "dashed";
}

std::string graph_to_dot(const DWGraph& g, const Alphabet& alphabet) {
  std::ostringstream os;
  os << "digraph G {\n  rankdir=LR;\n";
  for (std::size_t i = 1; i <= g.size(); ++i)
    os << "  n" << i << " [label=\"" << i << ':' << alphabet.name(g.label(i)) << '/' << g.nu(i).to_string()
       << "\"];\n";
  for (std::size_t s = 0; s < g.symbol_count(); ++s) {
    const auto& name = g.symbol_names()[s];
    for (const auto& [i, j] : g.relation(s))
      os << "  n" << i << " -> n" << j << " [label=\"" << name << "\", style=" << edge_style(name) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dwcra
