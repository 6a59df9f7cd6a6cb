// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dwcra/core.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/signature.hpp"

namespace dwcra {

/// Byte string identifying a sphere (or extended sphere) up to isomorphism.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }
  std::string hex() const;

  auto operator<=>(const CanonicalKey&) const = default;

 private:
  std::string bytes_;
};

struct SphereNode {
  LabelId label = 0;
  Partition nu;
  /// Word position the node was extracted from; 0 for synthetic spheres.
  std::size_t position = 0;
};

/// A B-sphere: a finite rooted structure whose relations are injective
/// partial functions. Node indices are local (0-based).
class Sphere {
 public:
  Sphere() = default;
  /// `succ[s][v]` is the ⊲_s-successor of v or -1.
  Sphere(std::vector<SphereNode> nodes, std::vector<std::vector<int>> succ, int center, std::size_t radius);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  int symbol_count() const noexcept { return static_cast<int>(succ_.size()); }
  int center() const noexcept { return center_; }
  std::size_t radius() const noexcept { return radius_; }
  const SphereNode& node(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
  int succ(int s, int v) const { return succ_[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]; }
  int pred(int s, int v) const { return pred_[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]; }
  /// Distance inside the sphere (the sphere is connected).
  int distance(int a, int b) const { return dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  /// Node with the given word position, or -1.
  int node_at(std::size_t position) const;

  /// The same sphere renumbered in canonical traversal order (center = 0).
  Sphere canonical_form() const;
  /// Index of each node in the canonical order.
  std::vector<int> canonical_numbering() const;

  // Structure interface for the canonical traversal.
  int node_count() const { return size(); }
  int node_label(int v) const { return node(v).label; }
  const Partition& node_partition(int v) const { return node(v).nu; }

 private:
  std::vector<SphereNode> nodes_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<std::vector<int>> dist_;
  int center_ = 0;
  std::size_t radius_ = 0;
};

/// (S, α, col): a sphere with an active node and a color.
struct ExtendedSphere {
  std::shared_ptr<const Sphere> sphere;
  int active = 0;
  std::uint64_t color = 1;
};

inline constexpr std::size_t kDefaultCanonicalBound = 64;

CanonicalKey canonicalize(const Sphere& s, std::size_t bound = kDefaultCanonicalBound);
CanonicalKey canonicalize(const ExtendedSphere& e, std::size_t bound = kDefaultCanonicalBound);

/// B-Sph(G, i): induced substructure on {j | dist(i, j) <= B}, center i.
Sphere extract_sphere(const DWGraph& g, std::size_t i, std::size_t radius);

/// (2·|S| + 2)^B; throws BudgetExceeded on 64-bit overflow.
std::uint64_t max_sphere_size(std::size_t radius, std::size_t signature_size);

/// (2·|S| + 1)·maxSize² + 1, saturating at UINT64_MAX.
std::uint64_t color_bound(std::size_t radius, std::size_t signature_size);

/// Counts of canonical B-sphere classes, truncated at t (t reads as ">= t").
struct HanfType {
  std::size_t radius = 0;
  std::size_t threshold = 1;
  std::map<CanonicalKey, std::size_t> counts;

  /// Deterministic text form, used as the lookup key of compiled tables.
  std::string key() const;

  bool operator==(const HanfType&) const = default;
};

HanfType hanf_type(const DWGraph& g, std::size_t radius, std::size_t threshold);
HanfType hanf_type(const Signature& sig, const DataWord& w, std::size_t radius, std::size_t threshold);
/// Builds the type from already-computed sphere keys.
HanfType hanf_type_from_keys(const std::vector<CanonicalKey>& keys, std::size_t radius, std::size_t threshold);

/// Greedy coloring (ascending positions, smallest free color) of the graph
/// joining distinct positions whose B-spheres are isomorphic and whose
/// distance is at most 2B+1. Entry i-1 is the color of position i.
std::vector<std::uint64_t> overlap_coloring(const DWGraph& g, std::size_t radius);
std::vector<std::uint64_t> overlap_coloring(const Signature& sig, const DataWord& w, std::size_t radius);

/// DOT rendering; the center is double-circled, the active node (if any) bold.
std::string sphere_to_dot(const Sphere& s, const Alphabet& alphabet, const std::vector<std::string>& symbols,
                          int active = -1);

}  // namespace dwcra
