// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dwcra/core.hpp"
#include "dwcra/signature.hpp"

namespace dwcra {

enum class FormulaKind {
  True,
  False,
  LabelIs,   // lab(x)=a
  DataEq,    // d[k](x)=d[l](y)
  Edge,      // x REL y
  Lt,        // x lt y   (positional order, evaluator-only)
  PosEq,     // x=y
  In,        // x in X
  Not,
  Or,
  And,
  Implies,
  Iff,
  ExistsFO,
  ForallFO,
  ExistsSO,
  ForallSO,
};

/// Immutable MSO formula; cheap to copy.
class Formula {
 public:
  Formula();  // true

  static Formula truth();
  static Formula falsity();
  static Formula label_is(std::string x, std::string label);
  static Formula data_eq(std::string x, int k, std::string y, int l);
  static Formula edge(std::string x, std::string relation, std::string y);
  static Formula lt(std::string x, std::string y);
  static Formula pos_eq(std::string x, std::string y);
  static Formula in(std::string x, std::string set);
  static Formula negation(Formula f);
  static Formula disjunction(Formula a, Formula b);
  static Formula conjunction(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(std::string x, Formula body);
  static Formula forall(std::string x, Formula body);
  static Formula exists_set(std::string x, Formula body);
  static Formula forall_set(std::string x, Formula body);
  /// Left-nested disjunction; false when empty.
  static Formula any_of(const std::vector<Formula>& parts);
  /// Left-nested conjunction; true when empty.
  static Formula all_of(const std::vector<Formula>& parts);

  FormulaKind kind() const noexcept;
  /// First variable (FO for atoms, bound variable for quantifiers).
  const std::string& var() const;
  /// Second variable of binary atoms (y, or X for `in`).
  const std::string& var2() const;
  /// Label of LabelIs, relation name of Edge.
  const std::string& name() const;
  int k() const;
  int l() const;
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i = 0) const { return children().at(i); }

  bool operator==(const Formula& other) const;

  std::set<std::string> free_fo() const;
  std::set<std::string> free_so() const;

  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);

 private:
  std::shared_ptr<const Node> node_;
};

/// Optional checks applied while parsing.
struct ParseContext {
  /// Allowed relation names (besides `lt`); empty means unchecked.
  std::vector<std::string> relations;
  /// Data arity; data indices must lie in 1..m. Negative means unchecked.
  int m = -1;
  /// Allowed labels; empty means unchecked.
  std::vector<std::string> labels;

  static ParseContext of(const Signature& sig, const Alphabet& alphabet);
};

/// Grammar:
///   φ ::= E x. φ | A x. φ | E2 X. φ | A2 X. φ | φ <-> φ | φ -> φ | φ | φ
///       | φ & φ | !φ | (φ) | true | false
///       | lab(x)=a | d[k](x)=d[l](y) | x REL y | x=y | x in X
/// REL is a symbol name, `lt`, or one of the aliases `~k`, `+1`, `<`.
Formula parse_formula(std::string_view text, const ParseContext* context = nullptr);

/// Canonical text; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

struct FragmentReport {
  bool is_sentence = false;
  bool is_FO = false;
  bool is_EMSO = false;
  bool is_rMSO = false;
  bool is_rFO = false;
  bool is_rEMSO = false;
  std::size_t qrank = 0;
  std::size_t so_prefix = 0;

  std::string to_string() const;
};

FragmentReport classify(const Formula& f);

/// Rewrites And, Implies, Iff, ForallFO, ForallSO into Not/Or/Exists.
Formula desugar(const Formula& f);

struct Valuation {
  std::map<std::string, std::size_t> fo;
  std::map<std::string, std::set<std::size_t>> so;
};

struct EvalOptions {
  std::size_t max_positions_fo = 20;
  std::size_t max_positions_so = 14;
};

/// Standard semantics on w (positions 1..n). Labels not in the alphabet never
/// match. Throws PreconditionError for unbound variables, SignatureError for
/// unknown relations or out-of-range data indices, BudgetExceeded beyond the
/// position caps.
bool eval(const Signature& sig, const DataWord& w, const Formula& f, const Valuation& val = {},
          const EvalOptions& options = {});

bool eval_sentence(const Signature& sig, const DataWord& w, const Formula& f, const EvalOptions& options = {});

}  // namespace dwcra
