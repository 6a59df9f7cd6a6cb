// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic breadth-first encoding of rooted structures whose relations
// are injective partial functions. From a fixed root, such a structure has at
// most one root-preserving isomorphism onto any other, and the traversal
// below discovers it: visiting neighbours in (symbol, successor-then-
// predecessor) order numbers isomorphic structures identically.

#include <cstdint>
#include <string>
#include <vector>

namespace dwcra::detail {

inline void put_u16(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xffu));
  out.push_back(static_cast<char>((v >> 8) & 0xffu));
}

/// Structure needs: node_count(), symbol_count(), succ(s, v), pred(s, v)
/// returning -1 when undefined, node_label(v), node_partition(v).
/// `order` receives the discovered nodes (order[k] = original index).
template <class Structure>
std::string bfs_code(const Structure& s, int root, std::vector<int>* order = nullptr) {
  const int n = s.node_count();
  const int symbols = s.symbol_count();
  std::vector<int> number(static_cast<std::size_t>(n), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  number[static_cast<std::size_t>(root)] = 0;
  queue.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int sym = 0; sym < symbols; ++sym) {
      for (int u : {s.succ(sym, v), s.pred(sym, v)}) {
        if (u >= 0 && number[static_cast<std::size_t>(u)] < 0) {
          number[static_cast<std::size_t>(u)] = static_cast<int>(queue.size());
          queue.push_back(u);
        }
      }
    }
  }
  std::string code;
  put_u16(code, static_cast<std::uint32_t>(queue.size()));
  for (int v : queue) {
    put_u16(code, static_cast<std::uint32_t>(s.node_label(v)));
    const auto& part = s.node_partition(v).code();
    code.push_back(static_cast<char>(part.size()));
    for (auto b : part) code.push_back(static_cast<char>(b));
    for (int sym = 0; sym < symbols; ++sym) {
      for (int u : {s.succ(sym, v), s.pred(sym, v)}) {
        // 0 marks "undefined"; defined neighbours are stored as number + 1.
        put_u16(code, u < 0 ? 0u : static_cast<std::uint32_t>(number[static_cast<std::size_t>(u)] + 1));
      }
    }
  }
  if (order) *order = std::move(queue);
  return code;
}

}  // namespace dwcra::detail
