// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dwcra/corpus.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/hanf.hpp"
#include "dwcra/word_io.hpp"
#include "oracles.hpp"

using namespace dwcra;

namespace {

const Signature kSC = Signature::builtin("succ-cls1");
const Alphabet kRA({"r", "a"}, 1);

Formula f(std::string_view text) { return parse_formula(text); }

// all words over alphabet with values 1..V, length <= L, one per isomorphism class
std::size_t naive_classes(const Signature& sig, const Alphabet& al, std::size_t L, Value V) {
  std::vector<DataWord> reps;
  std::vector<DataWord> frontier{DataWord(al)};
  reps.push_back(DataWord(al));
  for (std::size_t n = 1; n <= L; ++n) {
    std::vector<DataWord> next;
    for (const auto& w : frontier)
      for (LabelId l = 0; l < al.size(); ++l)
        for (Value v = 1; v <= V; ++v) {
          DataWord x = w;
          x.push_back(Letter{l, {v}});
          next.push_back(x);
        }
    for (const auto& w : next) {
      bool seen = false;
      for (const auto& r : reps)
        if (r.size() == w.size() && equivalent(sig, r, w)) {
          seen = true;
          break;
        }
      if (!seen) reps.push_back(w);
    }
    frontier = std::move(next);
  }
  return reps.size();
}

}  // namespace

TEST(Params, LocalityRadius) {
  EXPECT_EQ(locality_radius(0), 0u);
  EXPECT_EQ(locality_radius(1), 1u);
  EXPECT_EQ(locality_radius(2), 4u);
  EXPECT_EQ(locality_radius(3), 13u);
  const auto p = default_params(f("E x. E y. x ~1 y"));
  EXPECT_EQ(p.radius, 4u);
  EXPECT_EQ(p.threshold, 2u);
  EXPECT_EQ(default_params(f("true")).threshold, 1u);
}

TEST(Rewrite, FirstOrderKeepsShape) {
  const auto r = rewrite_kernel(fixture_formula("phi1"), kRA);
  EXPECT_TRUE(r.set_variables.empty());
  EXPECT_EQ(r.extended.size(), kRA.size());
  const DataWord w1 = fixture_word("fig1-word");
  const DataWord aw = annotate(w1, r.extended, std::vector<std::uint32_t>(w1.size(), 0));
  EXPECT_EQ(eval_sentence(Signature::extended(kSC), aw, r.kernel), eval_sentence(kSC, w1, fixture_formula("phi1")));
}

TEST(Rewrite, SetMembershipBecomesLabels) {
  const auto r = rewrite_kernel(f("E2 X. A x. x in X"), kRA);
  ASSERT_EQ(r.set_variables, std::vector<std::string>{"X"});
  EXPECT_EQ(r.extended.size(), 4u);
  EXPECT_EQ(classify(r.kernel).is_FO, true);
  const Signature ext = Signature::extended(kSC);
  const DataWord w = parse_inline_word("(r,1)(a,2)", kRA);
  EXPECT_TRUE(eval_sentence(ext, annotate(w, r.extended, {1, 1}), r.kernel));
  EXPECT_FALSE(eval_sentence(ext, annotate(w, r.extended, {1, 0}), r.kernel));
}

TEST(Rewrite, DummyPrefixAgreesOnBestAnnotation) {
  const Formula phi1 = fixture_formula("phi1");
  const auto r = rewrite_kernel(f("E2 X. " + to_string(phi1)), kRA);
  const Signature ext = Signature::extended(kSC);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 40; ++n) {
    const DataWord w = oracle::random_word(rng, kRA, 5, 3);
    bool any = false;
    for (std::uint32_t bits = 0; bits < (1u << w.size()); ++bits) {
      std::vector<std::uint32_t> masks;
      for (std::size_t i = 0; i < w.size(); ++i) masks.push_back((bits >> i) & 1u);
      any = any || eval_sentence(ext, annotate(w, r.extended, masks), r.kernel);
    }
    EXPECT_EQ(any, eval_sentence(kSC, w, phi1)) << format_inline_word(w);
  }
}

TEST(Rewrite, RejectsNonEmso) {
  EXPECT_THROW(rewrite_kernel(f("A2 X. E x. x in X"), kRA), PreconditionError);
  EXPECT_THROW(rewrite_kernel(f("lab(x)=r"), kRA), PreconditionError);
}

TEST(Enumerate, SmallCases) {
  const Alphabet r1({"r"}, 1);
  const auto zero = enumerate_words(kSC, r1, 0, 3);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero[0].empty());
  std::set<std::string> got;
  for (const auto& w : enumerate_words(kSC, r1, 2, 2)) got.insert(format_inline_word(w));
  EXPECT_EQ(got, (std::set<std::string>{"()", "(r,1)", "(r,1)(r,1)", "(r,1)(r,2)"}));
}

TEST(Enumerate, MatchesNaiveGenerator) {
  const auto words = enumerate_words(kSC, kRA, 3, 3);
  EXPECT_EQ(words.size(), naive_classes(kSC, kRA, 3, 3));
  for (std::size_t i = 1; i < words.size(); ++i) EXPECT_LE(words[i - 1].size(), words[i].size());
  for (const auto& w : words) EXPECT_EQ(normalize(kSC, w), w);
}

TEST(Validate, RadiusZeroSeesLabelsOnly) {
  EXPECT_FALSE(validate_params(kSC, kRA, f("E x. lab(x)=r"), {0, 1, 4, 3}).has_value());
  const auto cx = validate_params(kSC, kRA, fixture_formula("phi3"), {0, 1, 4, 3});
  ASSERT_TRUE(cx.has_value());
  EXPECT_NE(cx->u_value, cx->v_value);
  EXPECT_EQ(hanf_type(kSC, cx->u, 0, 1), hanf_type(kSC, cx->v, 0, 1));
  EXPECT_NE(cx->u_value, eval_sentence(kSC, cx->v, fixture_formula("phi3")));
  EXPECT_FALSE(validate_params(kSC, kRA, fixture_formula("phi3"), {0, 1, 0, 0}).has_value());
}

TEST(Beta, TrivialSentences) {
  const auto t = build_beta(kSC, kRA, f("true"), {0, 1, 3, 2});
  EXPECT_FALSE(t.entries.empty());
  for (const auto& [k, v] : t.entries) EXPECT_TRUE(v) << k;
  const auto none = build_beta(kSC, kRA, f("!(E x. true)"), {0, 1, 3, 2});
  std::size_t trues = 0;
  for (const auto& [k, v] : none.entries) trues += v;
  EXPECT_EQ(trues, 1u);
  EXPECT_EQ(none.lookup(hanf_type(kSC, DataWord(kRA), 0, 1)), std::optional<bool>(true));
  EXPECT_THROW(build_beta(kSC, kRA, fixture_formula("phi3"), {0, 1, 4, 3}), PreconditionError);
}

TEST(Beta, Phi1HoldOut) {
  const Formula phi1 = fixture_formula("phi1");
  const HanfParams p = default_params(phi1, 5, 3);
  const auto t = build_beta(kSC, kRA, phi1, p);
  std::mt19937_64 rng(5);
  std::size_t covered = 0;
  for (int n = 0; n < 100; ++n) {
    const DataWord w = oracle::random_word(rng, kRA, 7, 4);
    if (const auto v = t.lookup(hanf_type(kSC, w, p.radius, p.threshold))) {
      ++covered;
      EXPECT_EQ(*v, eval_sentence(kSC, w, phi1)) << format_inline_word(w);
    }
  }
  EXPECT_GT(covered, 30u);
}

TEST(Compile, GateAndTautology) {
  try {
    compile(kSC, kRA, f("A2 X. E x. x in X"));
    FAIL() << "expected rejection";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("rMSO"), std::string::npos) << e.what();
  }
  CompileOptions o;
  o.max_len = 4;
  const auto c = compile(kSC, kRA, f("true"), o);
  for (const auto& w : enumerate_words(kSC, kRA, 4, 3))
    EXPECT_EQ(compiled_membership(c, w).status, CompiledStatus::Accepted);
}

TEST(Compile, ExplicitBadParamsThrow) {
  CompileOptions o;
  o.params = HanfParams{0, 1, 4, 3};
  EXPECT_THROW(compile(kSC, kRA, fixture_formula("phi3"), o), PreconditionError);
}

TEST(CompiledMembership, Phi1OnFig1) {
  // the 1-spheres of W1 only occur in words as long as W1, so the table has to
  // reach length 8 with 4 values; radius 1 already separates phi1
  CompileOptions o;
  o.params = HanfParams{1, 1, 8, 4};
  const DataWord w1 = fixture_word("fig1-word");
  const auto c1 = compile(kSC, kRA, fixture_formula("phi1"), o);
  const auto m1 = compiled_membership(c1, w1);
  EXPECT_TRUE(eval_sentence(kSC, w1, fixture_formula("phi1")));
  EXPECT_EQ(m1.status, CompiledStatus::Accepted);
  ASSERT_TRUE(m1.run.has_value());
  EXPECT_EQ(m1.run->states.size(), w1.size());
  EXPECT_EQ(compiled_membership(c1, DataWord(kRA)).status, CompiledStatus::Rejected);
}

TEST(CompiledMembership, Phi2OnFig1) {
  const DataWord w1 = fixture_word("fig1-word");
  EXPECT_FALSE(eval_sentence(kSC, w1, fixture_formula("phi2")));
  CompileOptions o;
  o.max_len = 5;
  const auto c = compile(kSC, kRA, fixture_formula("phi2"), o);
  EXPECT_EQ(compiled_membership(c, w1).status, CompiledStatus::OutOfCoverage);
  // vacuously true on the empty word
  EXPECT_EQ(compiled_membership(c, DataWord(kRA)).status, CompiledStatus::Accepted);
  o.policy = CoveragePolicy::Reject;
  EXPECT_EQ(compiled_membership(compile(kSC, kRA, fixture_formula("phi2"), o), w1).status,
            CompiledStatus::Rejected);
}

TEST(CompiledMembership, EmsoAgreesWithEval) {
  const Formula even = fixture_formula("emso-even");
  CompileOptions o;
  o.max_len = 4;
  const auto c = compile(kSC, fixture_alphabet("emso-even"), even, o);
  for (const auto& w : enumerate_words(kSC, c.alphabet, 4, 3)) {
    const auto m = compiled_membership(c, w);
    ASSERT_NE(m.status, CompiledStatus::OutOfCoverage) << format_inline_word(w);
    EXPECT_EQ(m.status == CompiledStatus::Accepted, eval_sentence(kSC, w, even)) << format_inline_word(w);
  }
  EXPECT_THROW(compiled_membership(c, parse_inline_word("(r,1)(r,2)(r,3)", c.alphabet), 4), BudgetExceeded);
}

TEST(CompiledMembership, OutOfCoveragePolicy) {
  CompileOptions o;
  o.max_len = 2;
  const auto c = compile(kSC, kRA, fixture_formula("phi1"), o);
  const DataWord w1 = fixture_word("fig1-word");
  const auto m = compiled_membership(c, w1);
  EXPECT_EQ(m.status, CompiledStatus::OutOfCoverage);
  o.policy = CoveragePolicy::Reject;
  EXPECT_EQ(compiled_membership(compile(kSC, kRA, fixture_formula("phi1"), o), w1).status, CompiledStatus::Rejected);
}

TEST(Json, RoundTrip) {
  CompileOptions o;
  o.max_len = 4;
  const auto c = compile(kSC, kRA, fixture_formula("phi1"), o);
  const std::string j = compiled_to_json(c);
  const auto back = compiled_from_json(j);
  EXPECT_EQ(back.params, c.params);
  EXPECT_EQ(back.table.entries, c.table.entries);
  EXPECT_EQ(to_string(back.sentence), to_string(c.sentence));
  EXPECT_EQ(compiled_to_json(back), j);
  for (const auto& w : enumerate_words(kSC, kRA, 3, 2))
    EXPECT_EQ(compiled_membership(back, w).status, compiled_membership(c, w).status);
  EXPECT_THROW(compiled_from_json("{"), FormatError);
  EXPECT_THROW(compiled_from_json("{\"params\": 3}"), FormatError);
}
