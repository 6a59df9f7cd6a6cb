// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dwcra/core.hpp"

namespace dwcra {

/// A binary relation on positions, as sorted 1-based pairs (i, j).
using Relation = std::vector<std::pair<std::size_t, std::size_t>>;

/// Per-word interpretation of one relation symbol.
using Interpretation = std::function<Relation(const DataWord&)>;

struct RelationSymbol {
  std::string name;
  Interpretation interpret;
  /// Smallest data arity the interpretation can work with.
  int min_arity = 0;
  /// Required data arity, or -1 when any arity >= min_arity is accepted.
  int exact_arity = -1;
};

/// A signature: an ordered set of relation symbols with their interpretation.
///
/// The symbol order is significant: it fixes the traversal order used for
/// canonical sphere keys and the predecessor choice of the sphere automaton.
class Signature {
 public:
  Signature() = default;
  Signature(std::string name, std::vector<RelationSymbol> symbols, bool renaming_invariant = true,
            bool trusted = false);

  /// Built-in signatures: `succ`, `clsK`, `proc`, `fork`, `msg` joined by '-'
  /// (e.g. `succ-cls1`, `cls1-cls2`), and `dyn` for proc/fork/msg.
  static Signature builtin(std::string_view name);
  static std::vector<std::string> builtin_names();

  /// S_Γ: same symbols, interpreted on the Σ-projection of an annotated word.
  static Signature extended(const Signature& base);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const RelationSymbol& symbol(std::size_t s) const { return symbols_.at(s); }
  const std::vector<RelationSymbol>& symbols() const noexcept { return symbols_; }
  std::optional<std::size_t> index_of(std::string_view symbol_name) const;
  bool renaming_invariant() const noexcept { return renaming_invariant_; }
  bool trusted() const noexcept { return trusted_; }

  bool is_extended() const noexcept { return base_ != nullptr; }
  const Signature& base() const;

  /// Throws SignatureError when the arity m does not suit some symbol.
  void check_arity(int m) const;

 private:
  std::string name_;
  std::vector<RelationSymbol> symbols_;
  bool renaming_invariant_ = true;
  bool trusted_ = false;
  std::shared_ptr<const Signature> base_;
};

/// ≺₊₁: direct successor.
RelationSymbol successor_symbol();
/// ≺∼ᵏ: next position with the same k-th data value.
RelationSymbol class_symbol(int k);
/// The three symbols of the dynamic message-passing signature.
RelationSymbol process_symbol();
RelationSymbol fork_symbol();
RelationSymbol message_symbol();

/// ⊲^w for every symbol, in signature order.
std::vector<Relation> interpret(const Signature& sig, const DataWord& w);

struct AxiomViolation {
  std::string symbol;
  /// One of "order", "out-degree", "in-degree", "monotone".
  std::string kind;
  std::vector<std::size_t> positions;

  std::string message() const;
};

/// Checks order compliance, functionality, injectivity and monotonicity of
/// every interpreted relation on w. Returns the first violation found.
std::optional<AxiomViolation> axiom_check(const Signature& sig, const DataWord& w);

}  // namespace dwcra
