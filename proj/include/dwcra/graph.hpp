// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwcra/core.hpp"
#include "dwcra/signature.hpp"

namespace dwcra {

/// G(w): positions as nodes, one injective partial successor map per symbol,
/// node labels λ (label) and ν (data-equality partition).
class DWGraph {
 public:
  DWGraph() = default;
  DWGraph(std::vector<std::string> symbol_names, std::vector<LabelId> labels, std::vector<Partition> partitions,
          const std::vector<Relation>& relations);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t symbol_count() const noexcept { return symbol_names_.size(); }
  const std::vector<std::string>& symbol_names() const noexcept { return symbol_names_; }

  /// next^G_⊲(i) and prev^G_⊲(i); 0 when undefined. Positions are 1-based.
  std::size_t next(std::size_t symbol, std::size_t i) const { return next_[symbol][i]; }
  std::size_t prev(std::size_t symbol, std::size_t i) const { return prev_[symbol][i]; }
  LabelId label(std::size_t i) const { return labels_[i - 1]; }
  const Partition& nu(std::size_t i) const { return partitions_[i - 1]; }
  Relation relation(std::size_t symbol) const;

  /// BFS distances from i in the undirected union of all relations, capped
  /// at `limit`; entry 0 is unused, unreachable (or beyond limit) is nullopt.
  std::vector<std::optional<std::size_t>> distances_from(std::size_t i, std::size_t limit = SIZE_MAX) const;

 private:
  std::vector<std::string> symbol_names_;
  std::vector<LabelId> labels_;
  std::vector<Partition> partitions_;
  std::vector<std::vector<std::size_t>> next_;
  std::vector<std::vector<std::size_t>> prev_;
};

/// Builds G(w). Axioms are checked unless `trust` is set; a violation throws
/// SignatureError.
DWGraph build_graph(const Signature& sig, const DataWord& w, bool trust);
inline DWGraph build_graph(const Signature& sig, const DataWord& w) { return build_graph(sig, w, sig.trusted()); }

/// Shortest-path distance in G; nullopt when i and j are not connected.
std::optional<std::size_t> dist(const DWGraph& g, std::size_t i, std::size_t j);

/// Isomorphism-complete code of G: one BFS code per connected component
/// (minimised over start nodes), sorted.
std::string graph_code(const DWGraph& g);

/// G(u) ≅ G(v).
bool equivalent(const Signature& sig, const DataWord& u, const DataWord& v);

/// Renames data values to 1, 2, ... in order of first occurrence, scanning
/// positions left to right and coordinates 1..m within a position.
DataWord normalize_values(const DataWord& w);

/// normalize_values, guarded: the signature must be renaming-invariant.
DataWord normalize(const Signature& sig, const DataWord& w);

}  // namespace dwcra
