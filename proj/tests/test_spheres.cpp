// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "dwcra/corpus.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/sphere.hpp"
#include "dwcra/word_io.hpp"
#include "oracles.hpp"

using namespace dwcra;

namespace {

const Alphabet kRA({"r", "a"}, 1);

std::set<std::size_t> positions(const Sphere& s) {
  std::set<std::size_t> out;
  for (int v = 0; v < s.size(); ++v) out.insert(s.node(v).position);
  return out;
}

// the same sphere with its nodes listed in another order
Sphere shuffled(const Sphere& s, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(s.size()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<SphereNode> nodes(perm.size());
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(s.symbol_count()), std::vector<int>(perm.size(), -1));
  for (int v = 0; v < s.size(); ++v) {
    nodes[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = s.node(v);
    for (int k = 0; k < s.symbol_count(); ++k)
      if (s.succ(k, v) >= 0)
        succ[static_cast<std::size_t>(k)][static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
            perm[static_cast<std::size_t>(s.succ(k, v))];
  }
  return Sphere(nodes, succ, perm[static_cast<std::size_t>(s.center())], s.radius());
}

}  // namespace

TEST(ExtractSphere, Fig1Center4) {
  const DWGraph g = build_graph(Signature::builtin("succ-cls1"), fixture_word("fig1-word"));
  const Sphere s = extract_sphere(g, 4, 1);
  EXPECT_EQ(positions(s), (std::set<std::size_t>{3, 4, 5, 6}));
  EXPECT_EQ(s.node(s.center()).position, 4u);
  auto at = [&](std::size_t p) { return s.node_at(p); };
  EXPECT_EQ(s.succ(0, at(3)), at(4));
  EXPECT_EQ(s.succ(0, at(4)), at(5));
  EXPECT_EQ(s.succ(0, at(5)), at(6));
  EXPECT_EQ(s.succ(0, at(6)), -1);
  EXPECT_EQ(s.succ(1, at(3)), at(5));
  EXPECT_EQ(s.succ(1, at(4)), at(6));
  EXPECT_EQ(s.succ(1, at(5)), -1);
}

TEST(ExtractSphere, RadiusZeroAndWholeWord) {
  const Signature sig = Signature::builtin("succ-cls1");
  const DataWord w = fixture_word("fig1-word");
  const DWGraph g = build_graph(sig, w);
  for (std::size_t i = 1; i <= 8; ++i) {
    const Sphere s = extract_sphere(g, i, 0);
    ASSERT_EQ(s.size(), 1);
    EXPECT_EQ(s.node(0).label, w.label(i));
    EXPECT_EQ(s.node(0).nu, g.nu(i));
  }
  EXPECT_EQ(extract_sphere(g, 1, 3).size(), 8);
}

TEST(ExtractSphere, NodeSetsMatchDistanceOracle) {
  std::mt19937_64 rng(21);
  const Signature sig = Signature::builtin("succ-cls1");
  for (int round = 0; round < 100; ++round) {
    const DataWord w = oracle::random_word(rng, kRA, 10, 4);
    const DWGraph g = build_graph(sig, w);
    std::vector<oracle::Pairs> rels;
    for (const auto& r : interpret(sig, w)) rels.emplace_back(r.begin(), r.end());
    const auto d = oracle::distances(w.size(), rels);
    for (std::size_t b = 0; b <= 2; ++b)
      for (std::size_t i = 1; i <= w.size(); ++i) {
        std::set<std::size_t> expected;
        for (std::size_t j = 1; j <= w.size(); ++j)
          if (d[i][j] >= 0 && d[i][j] <= static_cast<int>(b)) expected.insert(j);
        ASSERT_EQ(positions(extract_sphere(g, i, b)), expected);
      }
  }
}

TEST(Canonicalize, RenamingGivesEqualKeys) {
  std::mt19937_64 rng(1);
  const DWGraph g = build_graph(Signature::builtin("succ-cls1"), fixture_word("fig1-word"));
  for (std::size_t i = 1; i <= 8; ++i) {
    const Sphere s = extract_sphere(g, i, 1);
    EXPECT_EQ(canonicalize(s), canonicalize(shuffled(s, rng)));
  }
  EXPECT_NE(canonicalize(extract_sphere(g, 3, 1)), canonicalize(extract_sphere(g, 4, 1)));
  EXPECT_FALSE(oracle::isomorphic(extract_sphere(g, 3, 1), extract_sphere(g, 4, 1)));
}

TEST(Canonicalize, KeyEqualityIsIsomorphism) {
  std::mt19937_64 rng(99);
  const Signature sig = Signature::builtin("succ-cls1");
  std::vector<Sphere> pool;
  while (pool.size() < 200) {
    const DataWord w = oracle::random_word(rng, kRA, 7, 3);
    if (w.empty()) continue;
    const DWGraph g = build_graph(sig, w);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(1, w.size())(rng);
    const Sphere s = extract_sphere(g, i, 1 + round(std::uniform_real_distribution<>(0, 1)(rng)));
    if (s.size() <= 6) pool.push_back(s);
  }
  std::size_t same = 0;
  for (int round = 0; round < 500; ++round) {
    const Sphere& a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    const Sphere b = round % 4 == 0 ? shuffled(a, rng) : pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    const bool iso = oracle::isomorphic(a, b);
    same += iso;
    ASSERT_EQ(canonicalize(a) == canonicalize(b), iso);
  }
  EXPECT_GT(same, 100u);
}

TEST(Canonicalize, ExtendedKeysSeeActiveAndColor) {
  const DWGraph g = build_graph(Signature::builtin("succ-cls1"), fixture_word("fig1-word"));
  auto s = std::make_shared<const Sphere>(extract_sphere(g, 4, 1));
  const ExtendedSphere a{s, s->center(), 1};
  const ExtendedSphere b{s, s->node_at(5), 1};
  const ExtendedSphere c{s, s->center(), 2};
  EXPECT_NE(canonicalize(a), canonicalize(b));
  EXPECT_NE(canonicalize(a), canonicalize(c));
  EXPECT_EQ(canonicalize(a), canonicalize(ExtendedSphere{s, s->center(), 1}));
}

TEST(Canonicalize, BoundIsEnforced) {
  const DWGraph g = build_graph(Signature::builtin("succ-cls1"), fixture_word("fig1-word"));
  EXPECT_THROW(canonicalize(extract_sphere(g, 1, 3), 4), BudgetExceeded);
}

TEST(HanfType, Examples) {
  const Signature sig = Signature::builtin("succ-cls1");
  EXPECT_TRUE(hanf_type(sig, DataWord(kRA), 1, 1).counts.empty());
  const HanfType t = hanf_type(sig, fixture_word("fig1-word"), 0, 2);
  ASSERT_EQ(t.counts.size(), 2u);
  for (const auto& [k, n] : t.counts) EXPECT_EQ(n, 2u);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const DataWord w = oracle::random_word(rng, kRA, 8, 30);
    EXPECT_EQ(hanf_type(sig, w, 1, 3), hanf_type(sig, normalize(sig, w), 1, 3));
    EXPECT_EQ(hanf_type(sig, w, 1, 3).key(), hanf_type(sig, normalize(sig, w), 1, 3).key());
  }
  EXPECT_THROW(hanf_type(sig, fixture_word("fig1-word"), 1, 0), PreconditionError);
}

TEST(HanfType, CountsMatchBruteForceClasses) {
  std::mt19937_64 rng(8);
  const Signature sig = Signature::builtin("succ-cls1");
  for (int round = 0; round < 60; ++round) {
    const DataWord w = oracle::random_word(rng, kRA, 7, 3);
    const DWGraph g = build_graph(sig, w);
    std::vector<Sphere> spheres;
    for (std::size_t i = 1; i <= w.size(); ++i) spheres.push_back(extract_sphere(g, i, 1));
    // classes by brute-force isomorphism
    std::vector<std::size_t> sizes;
    std::vector<bool> seen(spheres.size(), false);
    for (std::size_t i = 0; i < spheres.size(); ++i) {
      if (seen[i]) continue;
      std::size_t n = 0;
      for (std::size_t j = i; j < spheres.size(); ++j)
        if (!seen[j] && oracle::isomorphic(spheres[i], spheres[j])) seen[j] = true, ++n;
      sizes.push_back(std::min<std::size_t>(n, 2));
    }
    std::vector<std::size_t> got;
    for (const auto& [k, n] : hanf_type(g, 1, 2).counts) got.push_back(n);
    std::sort(sizes.begin(), sizes.end());
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, sizes) << format_inline_word(w);
  }
}

TEST(OverlapColoring, Examples) {
  const Signature sig = Signature::builtin("succ-cls1");
  // rooted spheres: the centers of (r,1)(r,2) differ (successor vs predecessor), so no overlap edge
  const DWGraph g2 = build_graph(sig, parse_inline_word("(r,1)(r,2)"));
  EXPECT_FALSE(oracle::isomorphic(extract_sphere(g2, 1, 1), extract_sphere(g2, 2, 1)));
  EXPECT_EQ(overlap_coloring(g2, 1), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(overlap_coloring(sig, parse_inline_word("(r,1)(r,2)(r,3)"), 0), (std::vector<std::uint64_t>{1, 2, 1}));
  EXPECT_EQ(overlap_coloring(sig, parse_inline_word("(r,1)(r,2)(r,3)(r,4)(r,5)"), 1),
            (std::vector<std::uint64_t>{1, 1, 2, 3, 1}));
  // pairwise non-isomorphic spheres
  EXPECT_EQ(overlap_coloring(sig, parse_inline_word("(r,1)(a,1)(a,2)"), 1), (std::vector<std::uint64_t>{1, 1, 1}));
}

TEST(OverlapColoring, ProperOnExplicitOverlapGraph) {
  std::mt19937_64 rng(17);
  const Signature sig = Signature::builtin("succ-cls1");
  for (int round = 0; round < 150; ++round) {
    const DataWord w = oracle::random_word(rng, kRA, 10, 3);
    const std::size_t b = round % 3;
    const DWGraph g = build_graph(sig, w);
    const auto col = overlap_coloring(g, b);
    std::vector<oracle::Pairs> rels;
    for (const auto& r : interpret(sig, w)) rels.emplace_back(r.begin(), r.end());
    const auto d = oracle::distances(w.size(), rels);
    const auto bound = color_bound(b, sig.size());
    for (std::size_t i = 1; i <= w.size(); ++i) {
      ASSERT_GE(col[i - 1], 1u);
      ASSERT_LE(col[i - 1], bound);
      for (std::size_t j = i + 1; j <= w.size(); ++j)
        if (d[i][j] >= 0 && d[i][j] <= static_cast<int>(2 * b + 1) &&
            oracle::isomorphic(extract_sphere(g, i, b), extract_sphere(g, j, b)))
          ASSERT_NE(col[i - 1], col[j - 1]) << format_inline_word(w) << " " << i << "," << j;
    }
  }
}

TEST(Bounds, MaxSphereSize) {
  EXPECT_EQ(max_sphere_size(0, 2), 1u);
  EXPECT_EQ(max_sphere_size(1, 2), 6u);
  EXPECT_EQ(max_sphere_size(2, 2), 36u);
  EXPECT_THROW(max_sphere_size(100, 2), BudgetExceeded);
  EXPECT_EQ(color_bound(1, 2), 5u * 36u + 1u);
  EXPECT_EQ(color_bound(100, 2), UINT64_MAX);
}
