// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>

#include "dwcra/corpus.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/word_io.hpp"
#include "oracles.hpp"

using namespace dwcra;

namespace {

const Alphabet kRA({"r", "a"}, 1);
const Signature& succ_cls() {
  static const Signature s = Signature::builtin("succ-cls1");
  return s;
}

// direct readings of the server properties
bool phi1(const DataWord& w) {
  for (const auto& [i, j] : oracle::cls(w, 1))
    if (w.label_name(i) == "r" && w.label_name(j) == "a") return true;
  return false;
}

bool phi2(const DataWord& w) {
  const auto c = oracle::cls(w, 1);
  for (std::size_t x = 1; x <= w.size(); ++x) {
    if (w.label_name(x) != "r") continue;
    // ∃y (r(x) → a(y) ∧ x ~ y): y must be the class successor of x and an a
    bool ok = false;
    for (const auto& [i, j] : c)
      if (i == x && w.label_name(j) == "a") ok = true;
    if (!ok) return false;
  }
  return true;
}

bool phi3(const DataWord& w) {
  const auto c = oracle::cls(w, 1);
  auto next_of = [&](std::size_t x) -> std::size_t {
    for (const auto& [i, j] : c)
      if (i == x) return j;
    return 0;
  };
  for (std::size_t x = 1; x < w.size(); ++x) {
    if (w.label_name(x) != "r" || w.label_name(x + 1) != "r") continue;
    const std::size_t x1 = next_of(x), y1 = next_of(x + 1);
    if (!x1 || !y1 || y1 != x1 + 1 || w.label_name(x1) != "a" || w.label_name(y1) != "a") return false;
  }
  return true;
}

bool even_classes(const DataWord& w) {
  std::map<Value, std::size_t> n;
  for (std::size_t i = 1; i <= w.size(); ++i) ++n[w.value(i, 1)];
  for (const auto& [v, c] : n)
    if (c % 2) return false;
  return true;
}

}  // namespace

TEST(Parse, Phi1WithAliases) {
  const Formula f = parse_formula("E x. E y. (lab(x)=r & lab(y)=a & x ~1 y)");
  EXPECT_EQ(f, fixture_formula("phi1"));
  EXPECT_EQ(to_string(f), "E x. E y. lab(x)=r & lab(y)=a & x cls1 y");
  EXPECT_EQ(parse_formula("x +1 y"), Formula::edge("x", "succ", "y"));
  EXPECT_EQ(parse_formula("x < y"), Formula::lt("x", "y"));
}

TEST(Parse, OpenFormula) {
  const Formula f = parse_formula("lab(x)=r");
  EXPECT_EQ(f.free_fo(), (std::set<std::string>{"x"}));
  EXPECT_FALSE(classify(f).is_sentence);
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_formula("true | false & false"),
            Formula::disjunction(Formula::truth(), Formula::conjunction(Formula::falsity(), Formula::falsity())));
  EXPECT_EQ(parse_formula("true -> false -> true"),
            Formula::implies(Formula::truth(), Formula::implies(Formula::falsity(), Formula::truth())));
  EXPECT_EQ(parse_formula("E x. true & false"),
            Formula::exists("x", Formula::conjunction(Formula::truth(), Formula::falsity())));
  EXPECT_EQ(parse_formula("!x=y & true"),
            Formula::conjunction(Formula::negation(Formula::pos_eq("x", "y")), Formula::truth()));
}

TEST(Parse, RoundTripOnCorpus) {
  for (const auto& fx : fixtures()) {
    if (fx.kind != FixtureKind::Formula) continue;
    const Formula f = fixture_formula(fx.name);
    EXPECT_EQ(parse_formula(to_string(f)), f) << fx.name;
    EXPECT_EQ(to_string(parse_formula(to_string(f))), to_string(f)) << fx.name;
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("E x. (lab(x)=r"), FormatError);
  EXPECT_THROW(parse_formula("E . true"), FormatError);
  EXPECT_THROW(parse_formula("x y"), FormatError);
  const auto ctx = ParseContext::of(succ_cls(), kRA);
  EXPECT_THROW(parse_formula("E x. E y. x fork y", &ctx), SignatureError);
  EXPECT_THROW(parse_formula("E x. lab(x)=q", &ctx), FormatError);
  EXPECT_THROW(parse_formula("E x. d[2](x)=d[1](x)", &ctx), FormatError);
  try {
    parse_formula("E x.\n  (lab(x)=r &)");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Classify, Examples) {
  const auto r3 = classify(fixture_formula("phi3"));
  EXPECT_TRUE(r3.is_rFO);
  EXPECT_TRUE(r3.is_sentence);
  EXPECT_EQ(r3.qrank, 4u);
  EXPECT_FALSE(classify(parse_formula("E x. E y. d[1](x)=d[1](y)")).is_rMSO);
  EXPECT_TRUE(classify(parse_formula("E x. d[1](x)=d[2](x)")).is_rMSO);
  const auto so = classify(parse_formula("E2 X. (x in X)"));
  EXPECT_FALSE(so.is_FO);
  EXPECT_TRUE(so.is_EMSO);
  EXPECT_FALSE(so.is_sentence);
  const auto even = classify(fixture_formula("emso-even"));
  EXPECT_TRUE(even.is_rEMSO);
  EXPECT_FALSE(even.is_rFO);
  EXPECT_EQ(even.so_prefix, 1u);
  EXPECT_FALSE(classify(parse_formula("A2 X. E x. x in X")).is_EMSO);
  EXPECT_FALSE(classify(parse_formula("E x. E y. x lt y")).is_rMSO);
}

TEST(Classify, CorpusFragmentsAsDocumented) {
  for (const auto& fx : fixtures())
    if (fx.kind == FixtureKind::Formula) {
      const auto r = classify(fixture_formula(fx.name));
      EXPECT_TRUE(r.is_sentence) << fx.name;
      EXPECT_EQ(fragment_summary(r), fx.fragment) << fx.name;
    }
}

TEST(Desugar, PreservesTruth) {
  std::mt19937_64 rng(2);
  for (const char* name : {"phi1", "phi2", "phi3", "emso-even"}) {
    const Formula f = fixture_formula(name);
    const Formula d = desugar(f);
    for (int i = 0; i < 100; ++i) {
      const DataWord w = oracle::random_word(rng, kRA, 6, 3);
      ASSERT_EQ(eval_sentence(succ_cls(), w, f), eval_sentence(succ_cls(), w, d)) << name;
    }
  }
}

TEST(Eval, WorkedFormulasOnW1) {
  const DataWord w1 = fixture_word("fig1-word");
  EXPECT_TRUE(eval_sentence(succ_cls(), w1, fixture_formula("phi1")));
  EXPECT_FALSE(eval_sentence(succ_cls(), w1, fixture_formula("phi2")));
  const Formula body = parse_formula("lab(x)=r & lab(y)=a & x cls1 y");
  Valuation v;
  v.fo = {{"x", 3}, {"y", 5}};
  EXPECT_TRUE(eval(succ_cls(), w1, body, v));
  v.fo = {{"x", 1}, {"y", 5}};
  EXPECT_FALSE(eval(succ_cls(), w1, body, v));
}

TEST(Eval, EmptyWord) {
  const DataWord e(kRA);
  EXPECT_FALSE(eval_sentence(succ_cls(), e, parse_formula("E x. true")));
  EXPECT_TRUE(eval_sentence(succ_cls(), e, parse_formula("A x. false")));
  EXPECT_TRUE(eval_sentence(succ_cls(), e, parse_formula("A x. lab(x)=r")));
}

TEST(Eval, MatchesDirectReadings) {
  std::mt19937_64 rng(12);
  const Formula f1 = fixture_formula("phi1"), f2 = fixture_formula("phi2"), f3 = fixture_formula("phi3"),
                fe = fixture_formula("emso-even");
  std::size_t t1 = 0, t3 = 0, te = 0;
  for (int i = 0; i < 400; ++i) {
    const DataWord w = oracle::random_word(rng, kRA, 8, 3);
    ASSERT_EQ(eval_sentence(succ_cls(), w, f1), phi1(w)) << format_inline_word(w);
    ASSERT_EQ(eval_sentence(succ_cls(), w, f2), phi2(w)) << format_inline_word(w);
    ASSERT_EQ(eval_sentence(succ_cls(), w, f3), phi3(w)) << format_inline_word(w);
    ASSERT_EQ(eval_sentence(succ_cls(), w, fe), even_classes(w)) << format_inline_word(w);
    t1 += phi1(w), t3 += phi3(w), te += even_classes(w);
  }
  EXPECT_GT(t1, 0u);
  EXPECT_GT(t3, 0u);
  EXPECT_GT(te, 0u);
}

TEST(Eval, MscWellFormedness) {
  const Signature dyn = Signature::builtin("dyn");
  const DataWord w2 = fixture_word("fig2-word");
  EXPECT_TRUE(eval_sentence(dyn, w2, fixture_formula("msc-wf")));
  EXPECT_FALSE(eval_sentence(dyn, w2.without_position(1), fixture_formula("msc-wf")));
  EXPECT_FALSE(eval_sentence(dyn, w2.without_position(1), fixture_formula("msc-root")));
  // W2's forked processes never message their parents
  EXPECT_FALSE(eval_sentence(dyn, w2, fixture_formula("fork-msg")));
}

TEST(Eval, Errors) {
  const DataWord w1 = fixture_word("fig1-word");
  EXPECT_THROW(eval(succ_cls(), w1, parse_formula("lab(x)=r")), PreconditionError);
  EXPECT_THROW(eval_sentence(succ_cls(), w1, parse_formula("E x. E y. x fork y")), SignatureError);
  EXPECT_THROW(eval_sentence(succ_cls(), w1, parse_formula("E x. d[2](x)=d[1](x)")), SignatureError);
  EXPECT_THROW(eval_sentence(succ_cls(), w1, parse_formula("E x. true"), EvalOptions{4, 4}), BudgetExceeded);
  EXPECT_FALSE(eval_sentence(succ_cls(), w1, parse_formula("E x. lab(x)=zz")));
}
