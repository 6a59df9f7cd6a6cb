// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
// Independent brute-force reference implementations used by the unit tests.
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dwcra/core.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/sphere.hpp"

namespace oracle {

using dwcra::DataWord;
using Pairs = std::set<std::pair<std::size_t, std::size_t>>;

inline Pairs succ(const DataWord& w) {
  Pairs out;
  for (std::size_t i = 1; i < w.size(); ++i) out.emplace(i, i + 1);
  return out;
}

// i ~k j: j is the first position after i with the same k-th value
inline Pairs cls(const DataWord& w, int k) {
  Pairs out;
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j)
      if (w.value(i, k) == w.value(j, k)) {
        out.emplace(i, j);
        break;
      }
  return out;
}

// P_(a,b)(i,j) of the process-creation signature
inline bool p_ab(const DataWord& w, const std::string& a, const std::string& b, std::size_t i, std::size_t j) {
  return w.label_name(i) == a && w.label_name(j) == b && w.value(i, 1) == w.value(j, 2) &&
         w.value(i, 2) == w.value(j, 1);
}

inline Pairs fork(const DataWord& w) {
  Pairs out;
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      if (!p_ab(w, "f", "n", i, j)) continue;
      bool between = false;
      for (std::size_t k = i + 1; k < j; ++k) between = between || p_ab(w, "f", "n", i, k) || p_ab(w, "f", "n", k, j);
      if (!between) out.emplace(i, j);
    }
  return out;
}

inline Pairs msg(const DataWord& w) {
  Pairs out;
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      if (!p_ab(w, "!", "?", i, j)) continue;
      std::size_t before_i = 0, before_j = 0;
      for (std::size_t x = 1; x < i; ++x) before_i += p_ab(w, "!", "?", x, j);
      for (std::size_t y = 1; y < j; ++y) before_j += p_ab(w, "!", "?", i, y);
      if (before_i == before_j) out.emplace(i, j);
    }
  return out;
}

// all-pairs distances in the undirected union (Floyd-Warshall); -1 unreachable
inline std::vector<std::vector<int>> distances(std::size_t n, const std::vector<Pairs>& rels) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(n + 1, inf));
  for (std::size_t i = 1; i <= n; ++i) d[i][i] = 0;
  for (const auto& r : rels)
    for (const auto& [i, j] : r) d[i][j] = d[j][i] = std::min(d[i][j], 1);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

// isomorphism of rooted spheres by trying every bijection
inline bool isomorphic(const dwcra::Sphere& a, const dwcra::Sphere& b) {
  if (a.size() != b.size() || a.symbol_count() != b.symbol_count()) return false;
  std::vector<int> perm(static_cast<std::size_t>(a.size()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[static_cast<std::size_t>(a.center())] != b.center()) continue;
    bool ok = true;
    for (int v = 0; v < a.size() && ok; ++v) {
      const int u = perm[static_cast<std::size_t>(v)];
      ok = a.node(v).label == b.node(u).label && a.node(v).nu == b.node(u).nu;
      for (int s = 0; s < a.symbol_count() && ok; ++s) {
        const int x = a.succ(s, v);
        const int y = b.succ(s, u);
        ok = (x < 0) == (y < 0) && (x < 0 || perm[static_cast<std::size_t>(x)] == y);
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline DataWord random_word(std::mt19937_64& rng, const dwcra::Alphabet& alphabet, std::size_t max_len,
                            dwcra::Value max_value) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> lab(0, static_cast<int>(alphabet.size()) - 1);
  std::uniform_int_distribution<dwcra::Value> val(1, max_value);
  DataWord w(alphabet);
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<dwcra::Value> d(static_cast<std::size_t>(alphabet.arity()));
    for (auto& x : d) x = val(rng);
    w.push_back({static_cast<dwcra::LabelId>(lab(rng)), d});
  }
  return w;
}

}  // namespace oracle
