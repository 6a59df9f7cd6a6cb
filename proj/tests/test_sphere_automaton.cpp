// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "dwcra/corpus.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/sphere.hpp"
#include "dwcra/sphere_automaton.hpp"
#include "dwcra/word_io.hpp"
#include "oracles.hpp"

using namespace dwcra;

namespace {

const Signature kSC = Signature::builtin("succ-cls1");

std::vector<const SphereState*> sources_at(const DWGraph& g, const SphereRun& run, std::size_t i) {
  std::vector<const SphereState*> out;
  for (std::size_t s = 0; s < kSC.size(); ++s) {
    const std::size_t p = g.prev(s, i);
    out.push_back(p ? &run.states[p - 1] : nullptr);
  }
  return out;
}

}  // namespace

TEST(StateCheck, Conditions) {
  const DataWord w = fixture_word("fig1-word");
  const DWGraph g = build_graph(kSC, w);
  const Sphere s = extract_sphere(g, 4, 1);
  const int c = s.center();
  const int other = s.node_at(3);
  ASSERT_GE(other, 0);
  EXPECT_FALSE(state_check(make_state({make_member(s, c, 1)})).has_value());
  auto v = state_check(make_state({make_member(s, other, 1)}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->clause, "(i)");
  v = state_check(make_state({make_member(s, c, 1), make_member(s, other, 1)}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->clause, "(iii)");
  // a second color makes it legal
  EXPECT_FALSE(state_check(make_state({make_member(s, c, 1), make_member(s, other, 2)})).has_value());
  EXPECT_EQ(state_check(SphereState{})->clause, "(i)");
}

TEST(CanonicalRun, Fig1AtRadiusOne) {
  const DataWord w = fixture_word("fig1-word");
  const DWGraph g = build_graph(kSC, w);
  const SphereRun run = build_canonical_run(kSC, w, 1);
  ASSERT_EQ(run.states.size(), 8u);
  const auto v = verify_sphere_run(kSC, w, 1, run);
  EXPECT_TRUE(v.accepted) << v.reason;
  // neighbourhood of position 4: succ 3 and 5, class successor 6
  const Sphere& p4 = pi(run.states[3]);
  EXPECT_EQ(p4.size(), 4);
  const Sphere direct = extract_sphere(g, 4, 1);
  std::vector<std::size_t> positions;
  for (int n = 0; n < direct.size(); ++n) positions.push_back(direct.node(n).position);
  std::sort(positions.begin(), positions.end());
  EXPECT_EQ(positions, (std::vector<std::size_t>{3, 4, 5, 6}));
  EXPECT_TRUE(oracle::isomorphic(p4, direct));
  for (std::size_t i = 1; i <= 8; ++i)
    EXPECT_EQ(canonicalize(pi(run.states[i - 1])), canonicalize(extract_sphere(g, i, 1))) << i;
  EXPECT_EQ(hanf_type_of_run(run, 2), hanf_type(kSC, w, 1, 2));
  EXPECT_FALSE(check_register_invariance(kSC, w, run).has_value());
}

TEST(CanonicalRun, SinglePositionAndEmpty) {
  const Alphabet ra({"r", "a"}, 1);
  const DataWord one = parse_inline_word("(r,7)", ra);
  const SphereRun run = build_canonical_run(kSC, one, 0);
  ASSERT_EQ(run.states.size(), 1u);
  EXPECT_EQ(run.states[0].members.size(), 1u);
  EXPECT_TRUE(verify_sphere_run(kSC, one, 0, run).accepted);
  EXPECT_TRUE(locally_final(run.states[0], 0));
  const SphereRun empty = build_canonical_run(kSC, DataWord(ra), 2);
  EXPECT_TRUE(empty.states.empty());
  EXPECT_TRUE(verify_sphere_run(kSC, DataWord(ra), 2, empty).accepted);
}

TEST(CanonicalRun, Fig2Word) {
  const Signature dyn = Signature::builtin("dyn");
  const DataWord w = fixture_word("fig2-word");
  for (std::size_t b : {0, 1, 2}) {
    const SphereRun run = build_canonical_run(dyn, w, b);
    const auto v = verify_sphere_run(dyn, w, b, run);
    EXPECT_TRUE(v.accepted) << b << ": " << v.reason;
    EXPECT_EQ(hanf_type_of_run(run, 1), hanf_type(dyn, w, b, 1));
  }
}

TEST(CanonicalRun, RandomWordsVerify) {
  std::mt19937_64 rng(7);
  const Alphabet ra({"r", "a"}, 1);
  for (int n = 0; n < 60; ++n) {
    const DataWord w = oracle::random_word(rng, ra, 7, 3);
    for (std::size_t b : {0, 1}) {
      const SphereRun run = build_canonical_run(kSC, w, b);
      const auto v = verify_sphere_run(kSC, w, b, run);
      ASSERT_TRUE(v.accepted) << format_inline_word(w) << " B=" << b << ": " << v.reason;
    }
  }
}

TEST(TransitionCheck, ValidAndViolations) {
  const DataWord w = fixture_word("fig1-word");
  const DWGraph g = build_graph(kSC, w);
  const SphereRun run = build_canonical_run(kSC, w, 1);
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const auto t = transition_check(sources_at(g, run, i), w.label(i), run.states[i - 1], 1, 2);
    EXPECT_FALSE(t.violation.has_value()) << i << ": " << t.violation->message();
  }
  // position 2 without its succ source
  auto t = transition_check({nullptr, nullptr}, w.label(2), run.states[1], 1, 2);
  ASSERT_TRUE(t.violation);
  EXPECT_EQ(t.violation->clause, "T2");
  // wrong letter
  t = transition_check(sources_at(g, run, 5), w.label(1), run.states[4], 1, 2);
  ASSERT_TRUE(t.violation);
  EXPECT_EQ(t.violation->clause, "T1");
  // shifted source
  t = transition_check(sources_at(g, run, 3), w.label(4), run.states[3], 1, 2);
  ASSERT_TRUE(t.violation);
  EXPECT_EQ(t.violation->clause.front(), 'T');
}

TEST(Perturbation, FreshValuesAlwaysRejected) {
  std::mt19937_64 rng(11);
  const Alphabet ra({"r", "a"}, 1);
  std::size_t fresh_rejected = 0, inword_rejected = 0, inword = 0;
  for (int n = 0; n < 40; ++n) {
    const DataWord w = oracle::random_word(rng, ra, 6, 3);
    if (w.empty()) continue;
    const SphereRun base = build_canonical_run(kSC, w, 1);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng);
    if (base.registers[i].empty()) continue;
    SphereRun run = base;
    auto it = run.registers[i].begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, run.registers[i].size() - 1)(rng));
    const Value old = it->second;
    it->second = 100;
    fresh_rejected += !verify_sphere_run(kSC, w, 1, run).accepted;
    it->second = old == 1 ? 2 : 1;
    ++inword;
    inword_rejected += !verify_sphere_run(kSC, w, 1, run).accepted;
    ASSERT_EQ(fresh_rejected, static_cast<std::size_t>(inword)) << format_inline_word(w);
  }
  RecordProperty("inword_rejected", std::to_string(inword_rejected) + "/" + std::to_string(inword));
  EXPECT_GT(inword_rejected, 0u);
}

TEST(Search, FindsRunOnFirstColoring) {
  const DataWord w = fixture_word("fig1-word");
  const auto r = search_sphere_run(kSC, w, 1);
  ASSERT_TRUE(r.run.has_value());
  EXPECT_EQ(r.candidates, 1u);
  EXPECT_FALSE(r.budget_exceeded);
  EXPECT_TRUE(verify_sphere_run(kSC, w, 1, *r.run).accepted);
}
