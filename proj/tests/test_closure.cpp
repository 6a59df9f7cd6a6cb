// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "dwcra/closure.hpp"
#include "dwcra/corpus.hpp"
#include "dwcra/cra.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/hanf.hpp"
#include "dwcra/word_io.hpp"

using namespace dwcra;

namespace {

const Alphabet kRA({"r", "a"}, 1);

bool accepts(const CRA& a, const DataWord& w) { return membership(a, w).accepted(); }

std::vector<CRA> samples() {
  const Signature sig = Signature::builtin("succ-cls1");
  return {fixture_automaton("fig3"), fixture_automaton("class-alternation"),
          exact_word_automaton(sig, parse_inline_word("(r,1)(a,1)", kRA)), empty_word_automaton(sig, kRA)};
}

}  // namespace

TEST(Closure, UnionAndIntersectionPointwise) {
  const auto as = samples();
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t j = i; j < as.size(); ++j) {
      const CRA u = cra_union(as[i], as[j]);
      const CRA x = cra_intersect(as[i], as[j]);
      EXPECT_TRUE(validate(u).ok());
      EXPECT_TRUE(validate(x).ok());
      for_each_word(kRA, 4, 3, [&](const DataWord& w) {
        const bool a = accepts(as[i], w), b = accepts(as[j], w);
        ASSERT_EQ(accepts(u, w), a || b) << i << "," << j << " " << format_inline_word(w);
        ASSERT_EQ(accepts(x, w), a && b) << i << "," << j << " " << format_inline_word(w);
      });
    }
  }
}

TEST(Closure, UnionKeepsBothSides) {
  const CRA u = cra_union(fixture_automaton("fig3"), empty_word_automaton(Signature::builtin("succ-cls1"), kRA));
  EXPECT_TRUE(accepts(u, DataWord(kRA)));
  EXPECT_TRUE(accepts(u, fixture_word("fig3-word")));
  EXPECT_FALSE(accepts(u, parse_inline_word("(a,1)", kRA)));
  EXPECT_EQ(u.states.size(), 3u);
  EXPECT_EQ(u.states.front().rfind("L_", 0), 0u);
}

TEST(Closure, IntersectionIsIdempotent) {
  const CRA a = fixture_automaton("fig3");
  const CRA aa = cra_intersect(a, a);
  std::size_t n = 0;
  for_each_word(kRA, 4, 3, [&](const DataWord& w) {
    if (n++ >= 200) return;
    ASSERT_EQ(accepts(aa, w), accepts(a, w)) << format_inline_word(w);
  });
  EXPECT_EQ(aa.registers.size(), 2 * a.registers.size());
}

TEST(Closure, ProjectionOfExactAnnotatedWord) {
  const DataWord w1 = fixture_word("fig1-word");
  const Alphabet ext = Alphabet::annotated(w1.alphabet(), 1);
  const DataWord aw = annotate(w1, ext, {1, 0, 0, 1, 0, 0, 1, 0});
  const CRA a = exact_word_automaton(Signature::extended(Signature::builtin("succ-cls1")), aw);
  ASSERT_TRUE(accepts(a, aw));
  const CRA p = cra_project(a);
  EXPECT_EQ(p.alphabet, w1.alphabet());
  EXPECT_FALSE(p.signature.is_extended());
  EXPECT_TRUE(accepts(p, w1));
  EXPECT_FALSE(accepts(p, parse_inline_word("(r,8)(r,5)(r,3)(r,4)(a,3)(a,4)(a,5)(a,5)", w1.alphabet())));
  EXPECT_FALSE(accepts(p, parse_inline_word("(r,8)(r,5)", w1.alphabet())));
}

TEST(Closure, ProjectionOfAlternatingMarks) {
  // some marking alternates within every class iff each class has even size
  const CRA p = cra_project(alternating_marks_automaton(kRA));
  for_each_word(kRA, 4, 3, [&](const DataWord& w) {
    bool even = true;
    for (Value v = 1; v <= 3; ++v) {
      std::size_t c = 0;
      for (std::size_t i = 1; i <= w.size(); ++i) c += w.value(i, 1) == v;
      even = even && c % 2 == 0;
    }
    ASSERT_EQ(accepts(p, w), even) << format_inline_word(w);
  });
}

TEST(Closure, MismatchesThrow) {
  const CRA fig3 = fixture_automaton("fig3");
  const CRA other = universal_automaton(Signature::builtin("succ"), kRA);
  EXPECT_THROW(cra_union(fig3, other), SignatureError);
  EXPECT_THROW(cra_intersect(fig3, universal_automaton(fig3.signature, Alphabet({"r"}, 1))), SignatureError);
  EXPECT_THROW(cra_project(fig3), PreconditionError);
}
