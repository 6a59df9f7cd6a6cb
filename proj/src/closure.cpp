// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/closure.hpp"

#include <functional>

#include "dwcra/errors.hpp"

namespace dwcra {
namespace {

void require_compatible(const CRA& a1, const CRA& a2) {
  if (a1.signature.name() != a2.signature.name() || a1.signature.size() != a2.signature.size())
    throw SignatureError("signature mismatch: " + a1.signature.name() + " vs " + a2.signature.name());
  if (!(a1.alphabet == a2.alphabet)) throw SignatureError("alphabet mismatch");
}

GuardTerm shift_term(const GuardTerm& t, std::size_t reg_offset) {
  if (const auto* ref = std::get_if<RegisterRef>(&t.term)) return {RegisterRef{ref->symbol, ref->reg + reg_offset}};
  return t;
}

Guard shift_guard(const Guard& g, std::size_t reg_offset) {
  return g.substitute(
      [&](const EqAtom& e) { return Guard::atom({shift_term(e.lhs, reg_offset), shift_term(e.rhs, reg_offset)}); });
}

/// Updates of `t` placed at `offset` inside a register vector of size `total`.
std::vector<std::optional<Update>> place_updates(const Transition& t, std::size_t offset, std::size_t total,
                                                 std::vector<std::optional<Update>> into = {}) {
  if (into.empty()) into.assign(total, std::nullopt);
  for (std::size_t r = 0; r < t.update.size(); ++r) {
    if (!t.update[r]) continue;
    Update u = *t.update[r];
    if (auto* ref = std::get_if<RegisterRef>(&u)) ref->reg += offset;
    into[offset + r] = u;
  }
  return into;
}

std::vector<std::string> prefixed(const std::string& p, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(p + n);
  return out;
}

GlobalCondition all_zero(std::size_t from, std::size_t count) {
  std::vector<GlobalCondition> parts;
  for (std::size_t q = from; q < from + count; ++q) parts.push_back(GlobalCondition::atom({q, 0}));
  return GlobalCondition::conj(std::move(parts));
}

// sum_{x in states} count(x) <= bound, as a condition over single-state atoms.
GlobalCondition sum_at_most(const std::vector<std::size_t>& states, std::size_t bound) {
  std::vector<GlobalCondition> witnesses;
  std::vector<std::size_t> parts(states.size(), 0);
  // Every composition of bound+1 into |states| parts is a way to exceed the bound.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
    if (idx + 1 == states.size()) {
      parts[idx] = left;
      std::vector<GlobalCondition> all;
      for (std::size_t x = 0; x < states.size(); ++x)
        if (parts[x] > 0) all.push_back(GlobalCondition::negate(GlobalCondition::atom({states[x], parts[x] - 1})));
      witnesses.push_back(GlobalCondition::conj(std::move(all)));
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      parts[idx] = k;
      rec(idx + 1, left - k);
    }
  };
  if (states.empty()) return GlobalCondition::truth();
  rec(0, bound + 1);
  return GlobalCondition::negate(GlobalCondition::disj(std::move(witnesses)));
}

}  // namespace

CRA cra_union(const CRA& a1, const CRA& a2) {
  require_compatible(a1, a2);
  CRA u;
  u.signature = a1.signature;
  u.alphabet = a1.alphabet;
  const std::size_t Q1 = a1.states.size(), R1 = a1.registers.size();
  u.states = prefixed("L_", a1.states);
  for (const auto& n : prefixed("R_", a2.states)) u.states.push_back(n);
  u.registers = prefixed("L_", a1.registers);
  for (const auto& n : prefixed("R_", a2.registers)) u.registers.push_back(n);
  const std::size_t R = u.registers.size();
  for (const auto& t : a1.transitions) {
    Transition n = t;
    n.update = place_updates(t, 0, R);
    u.transitions.push_back(std::move(n));
  }
  for (const auto& t : a2.transitions) {
    Transition n = t;
    for (auto& s : n.sources)
      if (s) *s += Q1;
    n.target += Q1;
    n.guard = shift_guard(t.guard, R1);
    n.update = place_updates(t, R1, R);
    u.transitions.push_back(std::move(n));
  }
  u.finals.assign(u.signature.size(), {});
  for (std::size_t s = 0; s < u.signature.size(); ++s) {
    u.finals[s] = a1.finals[s];
    u.finals[s].insert(u.finals[s].end(), a2.finals[s].begin(), a2.finals[s].end());
  }
  const GlobalCondition phi2 =
      a2.global.substitute([&](const CountAtom& c) { return GlobalCondition::atom({c.state + Q1, c.bound}); });
  u.global = (a1.global && all_zero(Q1, a2.states.size())) || (phi2 && all_zero(0, Q1));
  return u;
}

CRA cra_intersect(const CRA& a1, const CRA& a2) {
  require_compatible(a1, a2);
  CRA p;
  p.signature = a1.signature;
  p.alphabet = a1.alphabet;
  const std::size_t Q1 = a1.states.size(), Q2 = a2.states.size(), R1 = a1.registers.size();
  auto pair = [&](std::size_t q1, std::size_t q2) { return q1 * Q2 + q2; };
  for (std::size_t q1 = 0; q1 < Q1; ++q1)
    for (std::size_t q2 = 0; q2 < Q2; ++q2) p.states.push_back(a1.states[q1] + "^" + a2.states[q2]);
  p.registers = prefixed("L_", a1.registers);
  for (const auto& n : prefixed("R_", a2.registers)) p.registers.push_back(n);
  const std::size_t R = p.registers.size();
  for (const auto& t1 : a1.transitions) {
    for (const auto& t2 : a2.transitions) {
      if (t1.label != t2.label) continue;
      bool same_dom = true;
      for (std::size_t s = 0; s < p.signature.size(); ++s)
        if (t1.sources[s].has_value() != t2.sources[s].has_value()) same_dom = false;
      if (!same_dom) continue;
      Transition n;
      n.label = t1.label;
      n.target = pair(t1.target, t2.target);
      n.sources.assign(p.signature.size(), std::nullopt);
      for (std::size_t s = 0; s < p.signature.size(); ++s)
        if (t1.sources[s]) n.sources[s] = pair(*t1.sources[s], *t2.sources[s]);
      n.guard = t1.guard && shift_guard(t2.guard, R1);
      n.update = place_updates(t2, R1, R, place_updates(t1, 0, R));
      p.transitions.push_back(std::move(n));
    }
  }
  p.finals.assign(p.signature.size(), std::vector<bool>(p.states.size(), false));
  for (std::size_t s = 0; s < p.signature.size(); ++s)
    for (std::size_t q1 = 0; q1 < Q1; ++q1)
      for (std::size_t q2 = 0; q2 < Q2; ++q2) p.finals[s][pair(q1, q2)] = a1.finals[s][q1] && a2.finals[s][q2];
  const GlobalCondition phi1 = a1.global.substitute([&](const CountAtom& c) {
    std::vector<std::size_t> states;
    for (std::size_t q2 = 0; q2 < Q2; ++q2) states.push_back(pair(c.state, q2));
    return sum_at_most(states, c.bound);
  });
  const GlobalCondition phi2 = a2.global.substitute([&](const CountAtom& c) {
    std::vector<std::size_t> states;
    for (std::size_t q1 = 0; q1 < Q1; ++q1) states.push_back(pair(q1, c.state));
    return sum_at_most(states, c.bound);
  });
  p.global = phi1 && phi2;
  return p;
}

CRA cra_project(const CRA& a) {
  if (!a.signature.is_extended() || !a.alphabet.is_annotated())
    throw PreconditionError("projection needs an automaton over an extended alphabet and signature");
  CRA p = a;
  p.signature = a.signature.base();
  p.alphabet = a.alphabet.base();
  for (auto& t : p.transitions) t.label = a.alphabet.base_label(t.label);
  return p;
}

}  // namespace dwcra
