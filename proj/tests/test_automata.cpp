// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "dwcra/corpus.hpp"
#include "dwcra/cra.hpp"
#include "dwcra/cra_io.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/hanf.hpp"
#include "dwcra/word_io.hpp"
#include "oracles.hpp"

using namespace dwcra;

namespace {

const Alphabet kRA({"r", "a"}, 1);

Run fig3_run() {
  Run run;
  run.configurations = {{0, {8, std::nullopt}}, {0, {5, 8}}, {1, {8, std::nullopt}}, {1, {5, std::nullopt}}};
  return run;
}

// every transition sequence, registers derived from the (non-guessing) updates
bool brute_member(const CRA& a, const DataWord& w) {
  const std::size_t n = w.size();
  const std::size_t t = a.transitions.size();
  if (n == 0) return run_check(a, w, dwcra::Run{}).accepted;
  if (t == 0) return false;
  const DWGraph g = build_graph(a.signature, w);
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    Run run;
    for (std::size_t i = 1; i <= n; ++i) {
      const Transition& tr = a.transitions[pick[i - 1]];
      Configuration c{tr.target, RegisterValuation(a.registers.size())};
      for (std::size_t r = 0; r < a.registers.size(); ++r) {
        if (!tr.update[r]) continue;
        if (const auto* g0 = std::get_if<DataGuess>(&*tr.update[r])) {
          c.registers[r] = w.value(i, g0->coord);
        } else {
          const auto& ref = std::get<RegisterRef>(*tr.update[r]);
          const std::size_t p = g.prev(ref.symbol, i);
          if (p) c.registers[r] = run.configurations[p - 1].registers[ref.reg];
        }
      }
      run.configurations.push_back(c);
    }
    if (run_check(a, w, run).accepted) return true;
    std::size_t k = 0;
    while (k < n && ++pick[k] == t) pick[k++] = 0;
    if (k == n) return false;
  }
}

}  // namespace

TEST(Validate, Fig3IsNonGuessing) {
  const auto r = validate(fixture_automaton("fig3-automaton"));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.is_non_guessing);
  EXPECT_FALSE(r.is_CMA);
  EXPECT_FALSE(r.is_register_automaton);
  EXPECT_TRUE(validate(fixture_automaton("class-alternation")).is_CMA);
}

TEST(Validate, GuessingAndDanglingReferences) {
  CRA a = fixture_automaton("fig3");
  a.transitions[0].update[0] = DataGuess{1, 2};
  const auto r = validate(a);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.is_non_guessing);
  a.transitions[0].target = 7;
  EXPECT_FALSE(validate(a).ok());
  CRA b = fixture_automaton("fig3");
  b.transitions[0].update[1] = RegisterRef{1, 0};  // cls1 not in dom(p)
  EXPECT_FALSE(validate(b).ok());
}

TEST(Validate, RegisterAutomatonNeedsSuccOnly) {
  const CRA a = parse_cra(
      "signature: succ\nalphabet: r\nm: 1\nstates: q\nregisters: x\ntransitions:\n"
      "  [] true \"r\" -> q {x := d[1]@0}\n  [succ=q] d[1] = succ.x \"r\" -> q {x := succ.x}\nfinal[succ]: q\n");
  EXPECT_TRUE(validate(a).is_register_automaton);
  EXPECT_TRUE(membership(a, parse_inline_word("(r,4)(r,4)(r,4)", a.alphabet)).accepted());
  EXPECT_FALSE(membership(a, parse_inline_word("(r,4)(r,5)", a.alphabet)).accepted());
}

TEST(RunCheck, Fig3TabulatedRun) {
  const CRA a = fixture_automaton("fig3");
  const DataWord w = fixture_word("fig3-word");
  EXPECT_TRUE(run_check(a, w, fig3_run()).accepted);
  dwcra::Run bad = fig3_run();
  bad.configurations[1].registers[1] = 5;
  const auto v = run_check(a, w, bad);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.position, 2u) << v.reason;  // r2 := succ.r1 forces 8
  dwcra::Run wrong_state = fig3_run();
  wrong_state.configurations[3].state = 0;
  EXPECT_FALSE(run_check(a, w, wrong_state).accepted);
}

TEST(RunCheck, EmptyWordUsesGlobalCondition) {
  EXPECT_FALSE(run_check(fixture_automaton("fig3"), DataWord(kRA), dwcra::Run{}).accepted);
  EXPECT_TRUE(run_check(fixture_automaton("class-alternation"), DataWord(kRA), dwcra::Run{}).accepted);
}

TEST(GuardEval, UndefinedSides) {
  const CRA a = fixture_automaton("fig3");
  const std::vector<Value> data{5};
  const RegisterValuation undef{std::nullopt, std::nullopt};
  const RegisterValuation pos2{5, 8};
  const RegisterValuation pos3{8, std::nullopt};
  // transition 3: cls1.r2 = bot
  EXPECT_TRUE(guard_eval(a.transitions[2].guard, {&data, {&pos3, &undef}}));
  EXPECT_FALSE(guard_eval(a.transitions[2].guard, {&data, {&pos3, &pos2}}));
  // transition 4 at position 4 of the tabulated run: succ = position 3, cls1 = position 2
  EXPECT_TRUE(guard_eval(a.transitions[3].guard, {&data, {&pos3, &pos2}}));
  // defined vs undefined is false
  const Guard eq = Guard::atom({GuardTerm{RegisterRef{0, 0}}, GuardTerm{RegisterRef{1, 1}}});
  EXPECT_FALSE(guard_eval(eq, {&data, {&pos3, &undef}}));
  EXPECT_FALSE(guard_eval(eq, {&data, {&undef, &undef}}));
}

TEST(Membership, Fig3Examples) {
  const CRA a = fixture_automaton("fig3");
  const auto m = membership(a, fixture_word("fig3-word"));
  ASSERT_TRUE(m.accepted());
  EXPECT_TRUE(run_check(a, fixture_word("fig3-word"), *m.run).accepted);
  EXPECT_FALSE(membership(a, parse_inline_word("(r,8)(a,5)", kRA)).accepted());
  EXPECT_TRUE(membership(a, parse_inline_word("(r,3)(a,3)", kRA)).accepted());
}

TEST(Membership, FalseGlobalConditionRejects) {
  CRA a = universal_automaton(Signature::builtin("succ-cls1"), kRA);
  EXPECT_TRUE(membership(a, fixture_word("fig1-word")).accepted());
  a.global = GlobalCondition::falsity();
  EXPECT_FALSE(membership(a, fixture_word("fig1-word")).accepted());
}

TEST(Membership, AgreesWithTransitionSequenceSearch) {
  const std::vector<std::tuple<const char*, std::size_t, std::size_t>> cases{
      {"fig3", 4, 4}, {"class-alternation", 4, 3}, {"first-is-last", 3, 2}};
  for (const auto& [name, len, vals] : cases) {
    const CRA a = fixture_automaton(name);
    std::size_t accepted = 0;
    for_each_word(kRA, len, vals, [&](const DataWord& w) {
      const bool got = membership(a, w).accepted();
      accepted += got;
      ASSERT_EQ(got, brute_member(a, w)) << name << " " << format_inline_word(w);
    });
    EXPECT_GT(accepted, 0u) << name;
  }
}

TEST(Membership, GuessingRegisters) {
  // remembers some value within distance 1 and demands it at the next position
  const CRA a = parse_cra(
      "signature: succ-cls1\nalphabet: r\nm: 1\nstates: s t\nregisters: g\ntransitions:\n"
      "  [] true \"r\" -> s {g := d[1]@1}\n"
      "  [succ=s] d[1] = succ.g \"r\" -> t {}\n"
      "  [succ=s, cls1=s] d[1] = succ.g \"r\" -> t {}\n"
      "final[succ]: t\nfinal[cls1]: s t\n");
  EXPECT_FALSE(validate(a).is_non_guessing);
  EXPECT_TRUE(membership(a, parse_inline_word("(r,1)(r,2)", a.alphabet)).accepted());
  EXPECT_TRUE(membership(a, parse_inline_word("(r,1)(r,1)", a.alphabet)).accepted());
  EXPECT_FALSE(membership(a, parse_inline_word("(r,1)", a.alphabet)).accepted());
  EXPECT_EQ(membership(a, parse_inline_word("(r,1)(r,2)(r,3)", a.alphabet), {1}).status,
            MembershipStatus::BudgetExceeded);
}

TEST(Format, RoundTrip) {
  for (const char* name : {"fig3", "class-alternation", "first-is-last"}) {
    const CRA a = fixture_automaton(name);
    const std::string text = format_cra(a);
    EXPECT_EQ(format_cra(parse_cra(text)), text) << name;
  }
  EXPECT_NE(format_cra(fixture_automaton("fig3")).find("cls1.r2 = bot"), std::string::npos);
}

TEST(Format, ParseErrors) {
  EXPECT_THROW(parse_cra("signature: succ\nalphabet: r\nm: 1\nstates: q\ntransitions:\n  [] true \"r\" -> z {}\n"),
               FormatError);
  EXPECT_THROW(parse_cra("signature: succ\nalphabet: r\nm: 1\nstates: q\ntransitions:\n  [] true \"x\" -> q {}\n"),
               FormatError);
  EXPECT_THROW(parse_cra("signature: nope\nalphabet: r\nm: 1\nstates: q\n"), FormatError);
  EXPECT_THROW(parse_cra("signature: succ\nalphabet: r\nm: 1\nstates: q\ntransitions:\n  [] true \"r\" -> q {\n"),
               FormatError);
}

TEST(FormatRun, Fig3Table) {
  const CRA a = fixture_automaton("fig3");
  const std::string t = format_run(a, fixture_word("fig3-word"), fig3_run());
  EXPECT_NE(t.find("(r,5)"), std::string::npos);
  EXPECT_NE(t.find("⊥"), std::string::npos);
}
