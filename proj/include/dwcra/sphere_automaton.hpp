// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// The sphere automaton A_B, represented intensionally: states, transitions
// and registers are validated or synthesized on demand, never enumerated.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dwcra/bool_formula.hpp"
#include "dwcra/core.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/signature.hpp"
#include "dwcra/sphere.hpp"

namespace dwcra {

/// Extended sphere over a sphere in canonical numbering; (key, active, color)
/// identifies it.
struct SphereMember {
  std::shared_ptr<const Sphere> sphere;
  CanonicalKey key;
  int active = 0;
  std::uint64_t color = 1;

  /// E[j]
  SphereMember with_active(int j) const { return {sphere, key, j, color}; }
  auto operator<=>(const SphereMember& o) const {
    if (auto c = key <=> o.key; c != 0) return c;
    if (auto c = color <=> o.color; c != 0) return c;
    return active <=> o.active;
  }
  bool operator==(const SphereMember& o) const { return key == o.key && color == o.color && active == o.active; }
};

/// Wraps a sphere (any numbering) as a member; the active node is given in the
/// sphere's own numbering.
SphereMember make_member(const Sphere& s, int active, std::uint64_t color);

/// A set of extended spheres, kept sorted.
struct SphereState {
  std::vector<SphereMember> members;

  bool contains(const SphereMember& m) const;
  /// The member with the given (key, color), if any.
  const SphereMember* find(const CanonicalKey& key, std::uint64_t color) const;
  bool operator==(const SphereState& o) const { return members == o.members; }
};

SphereState make_state(std::vector<SphereMember> members);

/// Register (E, k) with E = (key, node, color).
struct RegisterId {
  CanonicalKey key;
  int node = 0;
  std::uint64_t color = 1;
  int k = 1;
  auto operator<=>(const RegisterId&) const = default;
};

using SphereValuation = std::map<RegisterId, Value>;

struct SphereTerm {
  int coord = 0;  // data coordinate (1-based), or 0 for a register term
  std::size_t symbol = 0;
  RegisterId reg;
  bool operator==(const SphereTerm&) const = default;
};

struct SphereEqAtom {
  SphereTerm lhs;
  SphereTerm rhs;
};

using SphereGuard = BoolExpr<SphereEqAtom>;

struct SphereUpdate {
  RegisterId target;
  bool guess = false;
  // guess: (coord, radius); forward: (symbol, source)
  int coord = 1;
  std::size_t radius = 0;
  std::size_t symbol = 0;
  RegisterId source;
};

struct SphereViolation {
  /// "(i)", "(ii)", "(iii)", "T1".."T8", "guard", "update", "final", ...
  std::string clause;
  std::string detail;

  std::string message() const { return clause + ": " + detail; }
};

/// State conditions (i)-(iii).
std::optional<SphereViolation> state_check(const SphereState& q);

/// π(q): the member whose active node is its center.
const Sphere& pi(const SphereState& q);

struct SphereTransition {
  std::vector<const SphereState*> sources;  // per symbol; null: not in dom(p)
  LabelId label = 0;
  const SphereState* target = nullptr;
  SphereGuard guard;
  std::vector<SphereUpdate> update;
};

struct TransitionCheck {
  std::optional<SphereViolation> violation;
  SphereTransition transition;  // valid only without violation
};

/// T1-T6 structurally; T7 guard and T8 update synthesized.
TransitionCheck transition_check(const std::vector<const SphereState*>& sources, LabelId label,
                                 const SphereState& target, std::size_t radius, std::size_t symbol_count);

/// F_⊲ membership: no member has a ⊲-successor of its active node.
bool locally_final(const SphereState& q, std::size_t symbol);

struct SphereRun {
  std::size_t radius = 0;
  std::vector<SphereState> states;
  std::vector<SphereValuation> registers;
  /// Color assigned to each position's own sphere (entry i-1).
  std::vector<std::uint64_t> coloring;
};

/// The accepting run of the construction over the overlap coloring. In strict
/// mode a register defined twice raises InternalError.
SphereRun build_canonical_run(const Signature& sig, const DataWord& w, std::size_t radius, bool strict = true);
/// Same, over a given coloring (entry i-1 for position i).
SphereRun build_run_with_coloring(const Signature& sig, const DataWord& w, std::size_t radius,
                                  const std::vector<std::uint64_t>& coloring, bool strict = true);

struct SphereRunVerdict {
  bool accepted = false;
  std::string reason;
  std::size_t position = 0;
};

/// Per-position state and transition checks, run conditions (1)-(4), local
/// finals; the global condition is true.
SphereRunVerdict verify_sphere_run(const Signature& sig, const DataWord& w, std::size_t radius, const SphereRun& run);

/// Hanf type read off the run through π.
HanfType hanf_type_of_run(const SphereRun& run, std::size_t threshold);

/// Register invariance along simulated paths: for each member E of q_i the
/// register of its active node holds d(i), and registers (E[j], k) are copied
/// unchanged along every edge that the sphere simulates. Returns the first
/// failure, if any.
std::optional<std::string> check_register_invariance(const Signature& sig, const DataWord& w, const SphereRun& run);

struct SphereSearchResult {
  std::optional<SphereRun> run;
  std::uint64_t candidates = 0;
  bool budget_exceeded = false;
};

/// Membership search against A_B over colorings (restricted-growth order,
/// greedy overlap coloring first); each candidate run is verified.
SphereSearchResult search_sphere_run(const Signature& sig, const DataWord& w, std::size_t radius,
                                     std::uint64_t budget = 10'000);

/// Human-readable state: one `key/active/color` item per member.
std::string format_state(const SphereState& q);

}  // namespace dwcra
