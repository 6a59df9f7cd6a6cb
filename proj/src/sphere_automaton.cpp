// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/sphere_automaton.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "dwcra/errors.hpp"

namespace dwcra {

SphereMember make_member(const Sphere& s, int active, std::uint64_t color) {
  const auto number = s.canonical_numbering();
  auto canon = std::make_shared<const Sphere>(s.canonical_form());
  return {canon, canonicalize(s), number.at(static_cast<std::size_t>(active)), color};
}

bool SphereState::contains(const SphereMember& m) const {
  return std::binary_search(members.begin(), members.end(), m);
}

const SphereMember* SphereState::find(const CanonicalKey& key, std::uint64_t color) const {
  auto it = std::lower_bound(members.begin(), members.end(), key, [&](const SphereMember& m, const CanonicalKey& k) {
    return m.key < k || (m.key == k && m.color < color);
  });
  if (it != members.end() && it->key == key && it->color == color) return &*it;
  return nullptr;
}

SphereState make_state(std::vector<SphereMember> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return SphereState{std::move(members)};
}

namespace {

bool is_center(const SphereMember& m) { return m.active == m.sphere->center(); }

const SphereNode& active_node(const SphereMember& m) { return m.sphere->node(m.active); }

std::vector<std::size_t> ptype(const Sphere& s, int j) {
  std::vector<std::size_t> out;
  for (int sym = 0; sym < s.symbol_count(); ++sym)
    if (s.pred(sym, j) >= 0) out.push_back(static_cast<std::size_t>(sym));
  return out;
}

std::string describe(const SphereMember& m) {
  std::ostringstream os;
  os << "E(active " << m.active << ", color " << m.color << ")";
  return os.str();
}

}  // namespace

std::optional<SphereViolation> state_check(const SphereState& q) {
  if (q.members.empty()) return SphereViolation{"(i)", "state is empty"};
  int centers = 0;
  for (const auto& m : q.members)
    if (is_center(m)) ++centers;
  if (centers != 1)
    return SphereViolation{"(i)", std::to_string(centers) + " members have their center active (expected 1)"};
  const auto& first = active_node(q.members.front());
  for (const auto& m : q.members) {
    const auto& node = active_node(m);
    if (node.label != first.label || node.nu != first.nu)
      return SphereViolation{"(ii)", describe(m) + " disagrees on the label or data partition of the active node"};
  }
  for (std::size_t x = 1; x < q.members.size(); ++x) {
    const auto& a = q.members[x - 1];
    const auto& b = q.members[x];
    if (a.key == b.key && a.color == b.color)
      return SphereViolation{"(iii)", "isomorphic spheres with color " + std::to_string(a.color) +
                                          " have different active nodes " + std::to_string(a.active) + " and " +
                                          std::to_string(b.active)};
  }
  return std::nullopt;
}

const Sphere& pi(const SphereState& q) {
  for (const auto& m : q.members)
    if (is_center(m)) return *m.sphere;
  throw PreconditionError("pi: state has no member with active center");
}

bool locally_final(const SphereState& q, std::size_t symbol) {
  for (const auto& m : q.members)
    if (m.sphere->succ(static_cast<int>(symbol), m.active) >= 0) return false;
  return true;
}

TransitionCheck transition_check(const std::vector<const SphereState*>& sources, LabelId label,
                                 const SphereState& target, std::size_t radius, std::size_t symbol_count) {
  TransitionCheck out;
  auto fail = [&](std::string clause, std::string detail) {
    out.violation = SphereViolation{std::move(clause), std::move(detail)};
    return out;
  };
  if (auto v = state_check(target)) {
    out.violation = v;
    return out;
  }
  const auto& q = target;
  const int B = static_cast<int>(radius);
  // T1
  if (active_node(q.members.front()).label != label) return fail("T1", "label(q) differs from the letter read");
  for (std::size_t s = 0; s < symbol_count; ++s) {
    const int sym = static_cast<int>(s);
    const SphereState* p = s < sources.size() ? sources[s] : nullptr;
    if (!p) {
      // T2
      for (const auto& e : q.members)
        if (e.sphere->pred(sym, e.active) >= 0)
          return fail("T2", describe(e) + " has a predecessor for symbol " + std::to_string(s) + " outside dom(p)");
      continue;
    }
    for (const auto& e : q.members) {
      const int j = e.sphere->pred(sym, e.active);
      const SphereMember* in_p = p->find(e.key, e.color);
      // T3
      if (j >= 0) {
        if (!in_p || in_p->active != j)
          return fail("T3", describe(e) + ": E[prev] is missing from p for symbol " + std::to_string(s));
      } else {
        if (in_p) return fail("T3", describe(e) + ": p holds E[j] although prev is undefined");
        // T5
        if (e.sphere->distance(e.sphere->center(), e.active) != B)
          return fail("T5", describe(e) + " has no predecessor for symbol " + std::to_string(s) +
                                " but its active node is closer than the radius");
      }
    }
    for (const auto& e : p->members) {
      const int j = e.sphere->succ(sym, e.active);
      const SphereMember* in_q = q.find(e.key, e.color);
      // T4
      if (j >= 0) {
        if (!in_q || in_q->active != j)
          return fail("T4", describe(e) + " in p: E[next] is missing from q for symbol " + std::to_string(s));
      } else {
        if (in_q) return fail("T4", describe(e) + " in p: q holds E[j] although next is undefined");
        // T6
        if (e.sphere->distance(e.sphere->center(), e.active) != B)
          return fail("T6", describe(e) + " in p has no successor for symbol " + std::to_string(s) +
                                " but its active node is closer than the radius");
      }
    }
  }

  // T7
  const Partition& eta = active_node(q.members.front()).nu;
  const int m = eta.arity();
  std::vector<SphereGuard> parts;
  for (int k1 = 1; k1 <= m; ++k1)
    for (int k2 = k1 + 1; k2 <= m; ++k2) {
      auto atom = SphereGuard::atom({SphereTerm{k1, 0, {}}, SphereTerm{k2, 0, {}}});
      parts.push_back(eta.same_block(k1, k2) ? atom : SphereGuard::negate(atom));
    }
  for (const auto& e : q.members) {
    const auto pt = ptype(*e.sphere, e.active);
    for (int k = 1; k <= m; ++k) {
      for (auto s : pt)
        parts.push_back(SphereGuard::atom({SphereTerm{k, 0, {}}, SphereTerm{0, s, {e.key, e.active, e.color, k}}}));
      for (int j = 0; j < e.sphere->size(); ++j) {
        const RegisterId reg{e.key, j, e.color, k};
        for (std::size_t x = 0; x < pt.size(); ++x)
          for (std::size_t y = x; y < pt.size(); ++y)
            parts.push_back(SphereGuard::atom({SphereTerm{0, pt[x], reg}, SphereTerm{0, pt[y], reg}}));
      }
    }
  }
  out.transition.guard = SphereGuard::conj(std::move(parts));

  // T8
  for (const auto& e : q.members) {
    const auto pt = ptype(*e.sphere, e.active);
    for (int node = 0; node < e.sphere->size(); ++node) {
      for (int k = 1; k <= m; ++k) {
        SphereUpdate u;
        u.target = {e.key, node, e.color, k};
        if (pt.empty()) {
          u.guess = true;
          u.coord = k;
          u.radius = static_cast<std::size_t>(e.sphere->distance(e.active, node));
        } else {
          u.symbol = pt.front();
          u.source = u.target;
        }
        out.transition.update.push_back(u);
      }
    }
  }
  out.transition.sources = sources;
  out.transition.label = label;
  out.transition.target = &target;
  return out;
}

SphereRun build_run_with_coloring(const Signature& sig, const DataWord& w, std::size_t radius,
                                  const std::vector<std::uint64_t>& coloring, bool strict) {
  const DWGraph g = build_graph(sig, w);
  const std::size_t n = w.size();
  if (coloring.size() != n) throw PreconditionError("coloring length differs from word length");
  std::vector<std::vector<SphereMember>> members(n);
  SphereRun run;
  run.radius = radius;
  run.coloring = coloring;
  run.registers.resize(n);
  for (std::size_t c = 1; c <= n; ++c) {
    const Sphere raw = extract_sphere(g, c, radius);
    const SphereMember proto = make_member(raw, raw.center(), coloring[c - 1]);
    const Sphere& s = *proto.sphere;
    for (int v = 0; v < s.size(); ++v) {
      const std::size_t i = s.node(v).position;
      members[i - 1].push_back(proto.with_active(v));
      auto& rho = run.registers[i - 1];
      for (int u = 0; u < s.size(); ++u) {
        for (int k = 1; k <= w.arity(); ++k) {
          const RegisterId reg{proto.key, u, proto.color, k};
          const Value value = w.value(s.node(u).position, k);
          auto [it, fresh] = rho.emplace(reg, value);
          if (!fresh && strict)
            throw InternalError("canonical run defines a register twice at position " + std::to_string(i));
        }
      }
    }
  }
  for (auto& ms : members) run.states.push_back(make_state(std::move(ms)));
  return run;
}

SphereRun build_canonical_run(const Signature& sig, const DataWord& w, std::size_t radius, bool strict) {
  return build_run_with_coloring(sig, w, radius, overlap_coloring(sig, w, radius), strict);
}

namespace {

std::optional<Value> lookup(const SphereValuation* rho, const RegisterId& reg) {
  if (!rho) return std::nullopt;
  auto it = rho->find(reg);
  if (it == rho->end()) return std::nullopt;
  return it->second;
}

}  // namespace

SphereRunVerdict verify_sphere_run(const Signature& sig, const DataWord& w, std::size_t radius, const SphereRun& run) {
  const std::size_t n = w.size();
  if (run.states.size() != n || run.registers.size() != n) return {false, "run length differs from word length", 0};
  const DWGraph g = build_graph(sig, w);
  const std::size_t S = sig.size();
  for (std::size_t i = 1; i <= n; ++i) {
    const SphereState& q = run.states[i - 1];
    std::vector<const SphereState*> sources(S, nullptr);
    std::vector<const SphereValuation*> pred_regs(S, nullptr);
    for (std::size_t s = 0; s < S; ++s) {
      if (const std::size_t p = g.prev(s, i)) {
        sources[s] = &run.states[p - 1];
        pred_regs[s] = &run.registers[p - 1];
      }
    }
    const auto tc = transition_check(sources, w.label(i), q, radius, S);
    if (tc.violation) return {false, tc.violation->message(), i};
    // (3)
    const auto& data = w.at(i).data;
    const bool guard = tc.transition.guard.eval([&](const SphereEqAtom& a) {
      auto value = [&](const SphereTerm& t) -> std::optional<Value> {
        if (t.coord > 0) return data[static_cast<std::size_t>(t.coord - 1)];
        return lookup(pred_regs[t.symbol], t.reg);
      };
      const auto l = value(a.lhs);
      const auto r = value(a.rhs);
      return l && r && *l == *r;
    });
    if (!guard) return {false, "T7: guard is false", i};
    // (4)
    const SphereValuation& rho = run.registers[i - 1];
    std::size_t defined = 0;
    std::optional<std::vector<std::optional<std::size_t>>> dist;
    for (const auto& u : tc.transition.update) {
      const auto have = lookup(&rho, u.target);
      if (u.guess) {
        if (!have) return {false, "T8: guessed register is undefined", i};
        if (!dist) dist = g.distances_from(i, 2 * radius);
        bool found = false;
        for (std::size_t j = 1; j <= n && !found; ++j)
          if ((*dist)[j] && *(*dist)[j] <= u.radius && w.value(j, u.coord) == *have) found = true;
        if (!found) return {false, "T8: guessed register value outside D^k_B(i)", i};
      } else {
        const auto want = lookup(pred_regs[u.symbol], u.source);
        if (have != want) return {false, "T8: forwarded register differs from its predecessor", i};
      }
      if (have) ++defined;
    }
    if (defined != rho.size()) return {false, "T8: register defined outside the update map", i};
    for (std::size_t s = 0; s < S; ++s)
      if (!g.next(s, i) && !locally_final(q, s))
        return {false, "final: state not in F_" + sig.symbol(s).name + " at a maximal position", i};
  }
  return {true, "accepted", 0};
}

HanfType hanf_type_of_run(const SphereRun& run, std::size_t threshold) {
  std::vector<CanonicalKey> keys;
  for (const auto& q : run.states) {
    for (const auto& m : q.members)
      if (is_center(m)) keys.push_back(m.key);
  }
  return hanf_type_from_keys(keys, run.radius, threshold);
}

std::optional<std::string> check_register_invariance(const Signature& sig, const DataWord& w, const SphereRun& run) {
  const DWGraph g = build_graph(sig, w);
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const auto& rho = run.registers[i - 1];
    for (const auto& e : run.states[i - 1].members) {
      for (int k = 1; k <= w.arity(); ++k) {
        const auto v = lookup(&rho, {e.key, e.active, e.color, k});
        if (!v || *v != w.value(i, k))
          return "position " + std::to_string(i) + ": register of the active node does not hold d^" +
                 std::to_string(k) + "(i)";
      }
      for (int s = 0; s < e.sphere->symbol_count(); ++s) {
        const int j = e.sphere->pred(s, e.active);
        if (j < 0) continue;
        const std::size_t p = g.prev(static_cast<std::size_t>(s), i);
        if (!p || !run.states[p - 1].contains(e.with_active(j)))
          return "position " + std::to_string(i) + ": simulated edge has no matching predecessor";
        const auto& prho = run.registers[p - 1];
        for (int node = 0; node < e.sphere->size(); ++node)
          for (int k = 1; k <= w.arity(); ++k) {
            const RegisterId reg{e.key, node, e.color, k};
            if (lookup(&rho, reg) != lookup(&prho, reg))
              return "position " + std::to_string(i) + ": register changes along a simulated edge";
          }
      }
    }
  }
  return std::nullopt;
}

SphereSearchResult search_sphere_run(const Signature& sig, const DataWord& w, std::size_t radius,
                                     std::uint64_t budget) {
  SphereSearchResult out;
  auto attempt = [&](const std::vector<std::uint64_t>& col) {
    ++out.candidates;
    SphereRun run = build_run_with_coloring(sig, w, radius, col, false);
    if (verify_sphere_run(sig, w, radius, run).accepted) {
      out.run = std::move(run);
      return true;
    }
    return false;
  };
  if (attempt(overlap_coloring(sig, w, radius))) return out;
  const std::size_t n = w.size();
  std::vector<std::uint64_t> col(n, 1);
  while (true) {
    if (out.candidates >= budget) {
      out.budget_exceeded = true;
      return out;
    }
    if (attempt(col)) return out;
    // next restricted growth string
    std::size_t x = n;
    bool advanced = false;
    while (x-- > 1) {
      const auto bound = *std::max_element(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(x)) + 1;
      if (col[x] < bound) {
        ++col[x];
        std::fill(col.begin() + static_cast<std::ptrdiff_t>(x) + 1, col.end(), 1);
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

std::string format_state(const SphereState& q) {
  std::ostringstream os;
  os << '{';
  for (std::size_t x = 0; x < q.members.size(); ++x) {
    const auto& m = q.members[x];
    std::uint32_t h = 2166136261u;
    for (unsigned char c : m.key.bytes()) h = (h ^ c) * 16777619u;
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", h);
    os << (x ? ", " : "") << 'S' << buf << '/' << m.active << '/' << m.color;
  }
  os << '}';
  return os.str();
}

}  // namespace dwcra
