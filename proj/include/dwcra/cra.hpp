// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dwcra/bool_formula.hpp"
#include "dwcra/core.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/signature.hpp"

namespace dwcra {

/// (⊲, r): register r of the ⊲-predecessor configuration.
struct RegisterRef {
  std::size_t symbol = 0;
  std::size_t reg = 0;
  bool operator==(const RegisterRef&) const = default;
};

/// Side of a guard atom: a data coordinate k (1-based) of the current position
/// or a predecessor register.
struct GuardTerm {
  std::variant<int, RegisterRef> term;
  bool operator==(const GuardTerm&) const = default;
};

struct EqAtom {
  GuardTerm lhs;
  GuardTerm rhs;
  bool operator==(const EqAtom&) const = default;
};

using Guard = BoolExpr<EqAtom>;

/// `q <= N`: at most N positions carry state q.
struct CountAtom {
  std::size_t state = 0;
  std::size_t bound = 0;
};

using GlobalCondition = BoolExpr<CountAtom>;

/// (k, B): a value d^k(j) of some position j with dist(i, j) <= B.
struct DataGuess {
  int coord = 1;
  std::size_t radius = 0;
  bool operator==(const DataGuess&) const = default;
};

using Update = std::variant<RegisterRef, DataGuess>;

struct Transition {
  /// p: per symbol, the required state of the ⊲-predecessor (nullopt: ⊲ ∉ dom(p)).
  std::vector<std::optional<std::size_t>> sources;
  Guard guard;
  LabelId label = 0;
  std::size_t target = 0;
  /// f: per register (nullopt: the register becomes undefined).
  std::vector<std::optional<Update>> update;
};

struct CRA {
  Signature signature;
  Alphabet alphabet;
  std::vector<std::string> states;
  std::vector<std::string> registers;
  std::vector<Transition> transitions;
  /// finals[s][q]: q ∈ F_⊲s.
  std::vector<std::vector<bool>> finals;
  GlobalCondition global;

  std::optional<std::size_t> state_index(std::string_view name) const;
  std::optional<std::size_t> register_index(std::string_view name) const;
};

struct SubclassReport {
  bool is_CMA = false;
  bool is_non_guessing = false;
  bool is_register_automaton = false;
  /// Dangling or inconsistent references; empty for a well-formed automaton.
  std::vector<std::string> problems;

  bool ok() const noexcept { return problems.empty(); }
};

SubclassReport validate(const CRA& a);

using RegisterValuation = std::vector<std::optional<Value>>;

struct Configuration {
  std::size_t state = 0;
  RegisterValuation registers;
  bool operator==(const Configuration&) const = default;
};

struct Run {
  std::vector<Configuration> configurations;
  /// Optional witness: index of the transition taken at each position.
  std::vector<std::optional<std::size_t>> witnesses;
};

struct RunVerdict {
  bool accepted = false;
  std::string reason;
  /// 1-based position of the failure; 0 for acceptance conditions.
  std::size_t position = 0;
};

/// Values visible to a guard at position i: the current data tuple and the
/// predecessor configurations.
struct GuardContext {
  const std::vector<Value>* data = nullptr;
  /// Per symbol: the predecessor's registers, or null when undefined.
  std::vector<const RegisterValuation*> predecessor_registers;
};

/// Condition (3): an atom is true iff both sides are defined and equal.
bool guard_eval(const Guard& guard, const GuardContext& context);

/// Checks run conditions (1)-(4) at every position, local final states at
/// ⊲-maximal positions and the global condition.
RunVerdict run_check(const CRA& a, const DataWord& w, const Run& run);

struct MembershipOptions {
  std::uint64_t node_budget = 5'000'000;
};

enum class MembershipStatus { Accepted, Rejected, BudgetExceeded };

struct MembershipResult {
  MembershipStatus status = MembershipStatus::Rejected;
  std::optional<Run> run;
  std::uint64_t nodes = 0;

  bool accepted() const noexcept { return status == MembershipStatus::Accepted; }
};

/// Complete backtracking search: transitions in declaration order, guesses in
/// ascending order; the first accepting run is returned.
MembershipResult membership(const CRA& a, const DataWord& w, const MembershipOptions& options = {});

/// Position / letter / state / register table of a run.
std::string format_run(const CRA& a, const DataWord& w, const Run& run);

/// Text of a guard or global condition in the automaton format.
std::string guard_to_string(const CRA& a, const Guard& g);
std::string global_to_string(const CRA& a, const GlobalCondition& g);

}  // namespace dwcra
