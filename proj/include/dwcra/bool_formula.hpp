// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Immutable boolean expressions over an arbitrary atom type. Used for
// automaton guards (equality atoms) and global conditions (count atoms).

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dwcra {

template <class A>
class BoolExpr {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  BoolExpr() : BoolExpr(Kind::True) {}

  static BoolExpr truth() { return BoolExpr(Kind::True); }
  static BoolExpr falsity() { return BoolExpr(Kind::False); }
  static BoolExpr atom(A a) {
    BoolExpr e(Kind::Atom);
    e.node_->atom = std::move(a);
    return e;
  }
  static BoolExpr negate(BoolExpr e) {
    if (e.kind() == Kind::True) return falsity();
    if (e.kind() == Kind::False) return truth();
    BoolExpr out(Kind::Not);
    out.node_->children.push_back(std::move(e));
    return out;
  }
  // n-ary, with unit/zero simplification; a single child is returned as is.
  static BoolExpr conj(std::vector<BoolExpr> parts) { return nary(Kind::And, std::move(parts)); }
  static BoolExpr disj(std::vector<BoolExpr> parts) { return nary(Kind::Or, std::move(parts)); }

  friend BoolExpr operator&&(BoolExpr a, BoolExpr b) { return conj({std::move(a), std::move(b)}); }
  friend BoolExpr operator||(BoolExpr a, BoolExpr b) { return disj({std::move(a), std::move(b)}); }
  friend BoolExpr operator!(BoolExpr a) { return negate(std::move(a)); }

  Kind kind() const noexcept { return node_->kind; }
  const A& atom_value() const { return node_->atom; }
  const std::vector<BoolExpr>& children() const noexcept { return node_->children; }

  template <class F>
  bool eval(F&& value_of) const {
    switch (kind()) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Atom: return value_of(node_->atom);
      case Kind::Not: return !children()[0].eval(value_of);
      case Kind::And:
        for (const auto& c : children())
          if (!c.eval(value_of)) return false;
        return true;
      case Kind::Or:
        for (const auto& c : children())
          if (c.eval(value_of)) return true;
        return false;
    }
    return false;
  }

  template <class F>
  void for_each_atom(F&& f) const {
    if (kind() == Kind::Atom) f(node_->atom);
    for (const auto& c : children()) c.for_each_atom(f);
  }

  // Rebuilds the expression with every atom replaced by map(atom) (a BoolExpr<B>).
  template <class F>
  auto substitute(F&& map) const -> decltype(map(std::declval<const A&>())) {
    using Out = decltype(map(std::declval<const A&>()));
    switch (kind()) {
      case Kind::True: return Out::truth();
      case Kind::False: return Out::falsity();
      case Kind::Atom: return map(node_->atom);
      case Kind::Not: return Out::negate(children()[0].substitute(map));
      default: {
        std::vector<Out> parts;
        for (const auto& c : children()) parts.push_back(c.substitute(map));
        return kind() == Kind::And ? Out::conj(std::move(parts)) : Out::disj(std::move(parts));
      }
    }
  }

  // Fully parenthesised except at the top; `!`, `&`, `|`.
  template <class F>
  std::string to_string(F&& print_atom) const {
    switch (kind()) {
      case Kind::True: return "true";
      case Kind::False: return "false";
      case Kind::Atom: return print_atom(node_->atom);
      case Kind::Not: {
        const auto& c = children()[0];
        const bool wrap = c.kind() == Kind::And || c.kind() == Kind::Or;
        return "!" + (wrap ? "(" + c.to_string(print_atom) + ")" : c.to_string(print_atom));
      }
      default: {
        std::string out;
        const char* op = kind() == Kind::And ? " & " : " | ";
        for (std::size_t i = 0; i < children().size(); ++i) {
          const auto& c = children()[i];
          const bool wrap = c.kind() == Kind::And || c.kind() == Kind::Or;
          if (i) out += op;
          out += wrap ? "(" + c.to_string(print_atom) + ")" : c.to_string(print_atom);
        }
        return out;
      }
    }
  }

 private:
  struct Node {
    Kind kind;
    A atom{};
    std::vector<BoolExpr> children;
  };

  explicit BoolExpr(Kind k) : node_(std::make_shared<Node>(Node{k, A{}, {}})) {}

  static BoolExpr nary(Kind k, std::vector<BoolExpr> parts) {
    const Kind unit = k == Kind::And ? Kind::True : Kind::False;
    const Kind zero = k == Kind::And ? Kind::False : Kind::True;
    BoolExpr out(k);
    for (auto& p : parts) {
      if (p.kind() == unit) continue;
      if (p.kind() == zero) return BoolExpr(zero);
      if (p.kind() == k) {
        for (const auto& c : p.children()) out.node_->children.push_back(c);
      } else {
        out.node_->children.push_back(std::move(p));
      }
    }
    if (out.children().empty()) return BoolExpr(unit);
    if (out.children().size() == 1) return out.children()[0];
    return out;
  }

  std::shared_ptr<Node> node_;
};

}  // namespace dwcra
