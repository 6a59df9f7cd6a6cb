// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/signature.hpp"

#include <algorithm>
#include <sstream>

#include "dwcra/errors.hpp"

namespace dwcra {

namespace {

// P_(a,b)(i,j) of the dynamic signature.
bool paired(const DataWord& w, std::optional<LabelId> a, std::optional<LabelId> b, std::size_t i, std::size_t j) {
  if (!a || !b) return false;
  return w.label(i) == *a && w.label(j) == *b && w.value(i, 1) == w.value(j, 2) && w.value(i, 2) == w.value(j, 1);
}

std::vector<std::string> split(std::string_view name, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : name) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::optional<RelationSymbol> builtin_symbol(const std::string& name) {
  if (name == "succ") return successor_symbol();
  if (name == "proc") return process_symbol();
  if (name == "fork") return fork_symbol();
  if (name == "msg") return message_symbol();
  if (name.size() > 3 && name.compare(0, 3, "cls") == 0) {
    int k = 0;
    for (std::size_t i = 3; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return std::nullopt;
      k = k * 10 + (name[i] - '0');
    }
    if (k >= 1) return class_symbol(k);
  }
  return std::nullopt;
}

}  // namespace

Signature::Signature(std::string name, std::vector<RelationSymbol> symbols, bool renaming_invariant, bool trusted)
    : name_(std::move(name)),
      symbols_(std::move(symbols)),
      renaming_invariant_(renaming_invariant),
      trusted_(trusted) {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (symbols_[i].name == symbols_[j].name)
        throw PreconditionError("duplicate relation symbol '" + symbols_[i].name + "'");
}

Signature Signature::builtin(std::string_view name) {
  if (name == "dyn") return Signature("dyn", {process_symbol(), fork_symbol(), message_symbol()}, true, true);
  std::vector<RelationSymbol> symbols;
  for (const auto& part : split(name, '-')) {
    auto symbol = builtin_symbol(part);
    if (!symbol) throw SignatureError("unknown signature or relation symbol '" + part + "'");
    symbols.push_back(std::move(*symbol));
  }
  return Signature(std::string(name), std::move(symbols), true, true);
}

std::vector<std::string> Signature::builtin_names() {
  return {"succ", "succ-cls1", "succ-cls1-cls2", "cls1-cls2", "dyn"};
}

Signature Signature::extended(const Signature& base) {
  auto shared = std::make_shared<const Signature>(base);
  std::vector<RelationSymbol> symbols;
  for (std::size_t s = 0; s < base.size(); ++s) {
    RelationSymbol symbol = base.symbol(s);
    auto inner = base.symbol(s).interpret;
    symbol.interpret = [inner](const DataWord& w) { return inner(project(w)); };
    symbols.push_back(std::move(symbol));
  }
  Signature out(base.name() + "[G]", std::move(symbols), base.renaming_invariant(), base.trusted());
  out.base_ = std::move(shared);
  return out;
}

std::optional<std::size_t> Signature::index_of(std::string_view symbol_name) const {
  for (std::size_t s = 0; s < symbols_.size(); ++s)
    if (symbols_[s].name == symbol_name) return s;
  return std::nullopt;
}

const Signature& Signature::base() const {
  if (!base_) throw PreconditionError("signature is not an extended signature");
  return *base_;
}

void Signature::check_arity(int m) const {
  for (const auto& symbol : symbols_) {
    if (m < symbol.min_arity || (symbol.exact_arity >= 0 && m != symbol.exact_arity))
      throw SignatureError("relation symbol '" + symbol.name + "' cannot interpret words with " + std::to_string(m) +
                           " data values");
  }
}

RelationSymbol successor_symbol() {
  return {"succ",
          [](const DataWord& w) {
            Relation out;
            for (std::size_t i = 1; i < w.size(); ++i) out.emplace_back(i, i + 1);
            return out;
          },
          0, -1};
}

RelationSymbol class_symbol(int k) {
  return {"cls" + std::to_string(k),
          [k](const DataWord& w) {
            Relation out;
            for (std::size_t i = 1; i <= w.size(); ++i) {
              for (std::size_t j = i + 1; j <= w.size(); ++j) {
                if (w.value(i, k) == w.value(j, k)) {
                  out.emplace_back(i, j);
                  break;
                }
              }
            }
            return out;
          },
          k, -1};
}

RelationSymbol process_symbol() {
  RelationSymbol out = class_symbol(1);
  out.name = "proc";
  out.min_arity = 2;
  out.exact_arity = 2;
  return out;
}

RelationSymbol fork_symbol() {
  return {"fork",
          [](const DataWord& w) {
            const auto f = w.alphabet().find("f");
            const auto n = w.alphabet().find("n");
            Relation out;
            for (std::size_t i = 1; i <= w.size(); ++i) {
              for (std::size_t j = i + 1; j <= w.size(); ++j) {
                if (!paired(w, f, n, i, j)) continue;
                bool nearest = true;
                for (std::size_t k = i + 1; k < j && nearest; ++k)
                  if (paired(w, f, n, i, k) || paired(w, f, n, k, j)) nearest = false;
                if (nearest) out.emplace_back(i, j);
              }
            }
            return out;
          },
          2, 2};
}

RelationSymbol message_symbol() {
  return {"msg",
          [](const DataWord& w) {
            const auto send = w.alphabet().find("!");
            const auto receive = w.alphabet().find("?");
            Relation out;
            for (std::size_t i = 1; i <= w.size(); ++i) {
              for (std::size_t j = i + 1; j <= w.size(); ++j) {
                if (!paired(w, send, receive, i, j)) continue;
                std::size_t earlier_sends = 0;
                std::size_t earlier_receives = 0;
                for (std::size_t k = 1; k < i; ++k) earlier_sends += paired(w, send, receive, k, j);
                for (std::size_t k = 1; k < j; ++k) earlier_receives += paired(w, send, receive, i, k);
                if (earlier_sends == earlier_receives) out.emplace_back(i, j);
              }
            }
            return out;
          },
          2, 2};
}

std::vector<Relation> interpret(const Signature& sig, const DataWord& w) {
  if (sig.is_extended()) {
    if (!w.alphabet().is_annotated()) throw SignatureError("extended signature needs an annotated word");
    sig.base().check_arity(w.arity());
  } else {
    sig.check_arity(w.arity());
  }
  std::vector<Relation> out;
  out.reserve(sig.size());
  for (const auto& symbol : sig.symbols()) {
    Relation rel = symbol.interpret(w);
    std::sort(rel.begin(), rel.end());
    out.push_back(std::move(rel));
  }
  return out;
}

std::string AxiomViolation::message() const {
  std::ostringstream os;
  os << kind << " violation for '" << symbol << "' at positions";
  for (auto p : positions) os << ' ' << p;
  return os.str();
}

std::optional<AxiomViolation> axiom_check(const Signature& sig, const DataWord& w) {
  const auto relations = interpret(sig, w);
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const auto& rel = relations[s];
    const auto& name = sig.symbol(s).name;
    std::vector<std::size_t> out_of(w.size() + 1, 0);
    std::vector<std::size_t> in_of(w.size() + 1, 0);
    for (const auto& [i, j] : rel) {
      if (i < 1 || j < 1 || i > w.size() || j > w.size())
        return AxiomViolation{name, "order", {i, j}};
      if (!(i < j)) return AxiomViolation{name, "order", {i, j}};
      if (out_of[i] != 0 && out_of[i] != j) return AxiomViolation{name, "out-degree", {i, out_of[i], j}};
      if (in_of[j] != 0 && in_of[j] != i) return AxiomViolation{name, "in-degree", {in_of[j], i, j}};
      out_of[i] = j;
      in_of[j] = i;
    }
    for (const auto& [i, j] : rel) {
      for (const auto& [i2, j2] : rel) {
        if (w.at(i) == w.at(i2) && w.at(j) == w.at(j2) && ((i < i2) != (j < j2)))
          return AxiomViolation{name, "monotone", {i, j, i2, j2}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace dwcra
