// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/sphere.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dwcra/errors.hpp"
#include "dwcra/traversal.hpp"
#include "dwcra/word_io.hpp"

namespace dwcra {

std::string CanonicalKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out += digits[c >> 4];
    out += digits[c & 0xf];
  }
  return out;
}

Sphere::Sphere(std::vector<SphereNode> nodes, std::vector<std::vector<int>> succ, int center, std::size_t radius)
    : nodes_(std::move(nodes)), succ_(std::move(succ)), center_(center), radius_(radius) {
  const int n = size();
  if (n == 0) throw PreconditionError("a sphere has at least its center");
  if (center_ < 0 || center_ >= n) throw PreconditionError("sphere center out of range");
  pred_.assign(succ_.size(), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t s = 0; s < succ_.size(); ++s) {
    if (succ_[s].size() != nodes_.size()) throw PreconditionError("successor map size mismatch");
    for (int v = 0; v < n; ++v) {
      const int u = succ_[s][static_cast<std::size_t>(v)];
      if (u < 0) continue;
      if (u >= n) throw PreconditionError("successor out of range");
      if (pred_[s][static_cast<std::size_t>(u)] >= 0) throw PreconditionError("sphere edge map is not injective");
      pred_[s][static_cast<std::size_t>(u)] = v;
    }
  }
  dist_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int a = 0; a < n; ++a) {
    auto& row = dist_[static_cast<std::size_t>(a)];
    std::vector<int> queue{a};
    row[static_cast<std::size_t>(a)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int s = 0; s < symbol_count(); ++s) {
        for (int u : {this->succ(s, v), this->pred(s, v)}) {
          if (u >= 0 && row[static_cast<std::size_t>(u)] < 0) {
            row[static_cast<std::size_t>(u)] = row[static_cast<std::size_t>(v)] + 1;
            queue.push_back(u);
          }
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    const int d = distance(center_, v);
    if (d < 0 || static_cast<std::size_t>(d) > radius_)
      throw PreconditionError("sphere node farther than the radius from the center");
  }
}

int Sphere::node_at(std::size_t position) const {
  for (int v = 0; v < size(); ++v)
    if (nodes_[static_cast<std::size_t>(v)].position == position) return v;
  return -1;
}

std::vector<int> Sphere::canonical_numbering() const {
  std::vector<int> order;
  detail::bfs_code(*this, center_, &order);
  std::vector<int> number(nodes_.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) number[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return number;
}

Sphere Sphere::canonical_form() const {
  const auto number = canonical_numbering();
  std::vector<SphereNode> nodes(nodes_.size());
  std::vector<std::vector<int>> succ(succ_.size(), std::vector<int>(nodes_.size(), -1));
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const auto nv = static_cast<std::size_t>(number[v]);
    nodes[nv] = nodes_[v];
    for (std::size_t s = 0; s < succ_.size(); ++s)
      if (succ_[s][v] >= 0) succ[s][nv] = number[static_cast<std::size_t>(succ_[s][v])];
  }
  return Sphere(std::move(nodes), std::move(succ), 0, radius_);
}

CanonicalKey canonicalize(const Sphere& s, std::size_t bound) {
  if (static_cast<std::size_t>(s.size()) > bound)
    throw BudgetExceeded("sphere with " + std::to_string(s.size()) + " nodes exceeds the canonicalization bound " +
                         std::to_string(bound));
  return CanonicalKey(detail::bfs_code(s, s.center()));
}

CanonicalKey canonicalize(const ExtendedSphere& e, std::size_t bound) {
  auto bytes = canonicalize(*e.sphere, bound).bytes();
  const auto number = e.sphere->canonical_numbering();
  detail::put_u16(bytes, static_cast<std::uint32_t>(number.at(static_cast<std::size_t>(e.active))));
  for (int shift = 0; shift < 64; shift += 16) detail::put_u16(bytes, static_cast<std::uint32_t>((e.color >> shift) & 0xffffu));
  return CanonicalKey(std::move(bytes));
}

Sphere extract_sphere(const DWGraph& g, std::size_t i, std::size_t radius) {
  if (i < 1 || i > g.size()) throw PreconditionError("extract_sphere: position out of range");
  const auto d = g.distances_from(i, radius);
  std::vector<std::size_t> members;
  std::vector<int> local(g.size() + 1, -1);
  for (std::size_t j = 1; j <= g.size(); ++j) {
    if (d[j] && *d[j] <= radius) {
      local[j] = static_cast<int>(members.size());
      members.push_back(j);
    }
  }
  std::vector<SphereNode> nodes;
  std::vector<std::vector<int>> succ(g.symbol_count(), std::vector<int>(members.size(), -1));
  for (std::size_t v = 0; v < members.size(); ++v) {
    const std::size_t j = members[v];
    nodes.push_back({g.label(j), g.nu(j), j});
    for (std::size_t s = 0; s < g.symbol_count(); ++s) {
      const std::size_t nx = g.next(s, j);
      if (nx != 0 && local[nx] >= 0) succ[s][v] = local[nx];
    }
  }
  return Sphere(std::move(nodes), std::move(succ), local[i], radius);
}

std::uint64_t max_sphere_size(std::size_t radius, std::size_t signature_size) {
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(signature_size) + 2;
  std::uint64_t out = 1;
  for (std::size_t b = 0; b < radius; ++b) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base)
      throw BudgetExceeded("maxSize overflows 64 bits for radius " + std::to_string(radius));
    out *= base;
  }
  return out;
}

std::uint64_t color_bound(std::size_t radius, std::size_t signature_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = 0;
  try {
    size = max_sphere_size(radius, signature_size);
  } catch (const BudgetExceeded&) {
    return kMax;
  }
  const std::uint64_t factor = 2 * static_cast<std::uint64_t>(signature_size) + 1;
  if (size != 0 && size > kMax / size) return kMax;
  const std::uint64_t square = size * size;
  if (square > (kMax - 1) / factor) return kMax;
  return factor * square + 1;
}

std::string HanfType::key() const {
  std::ostringstream os;
  os << "B" << radius << "t" << threshold;
  for (const auto& [k, count] : counts) os << ';' << k.hex() << ':' << count;
  return os.str();
}

HanfType hanf_type_from_keys(const std::vector<CanonicalKey>& keys, std::size_t radius, std::size_t threshold) {
  if (threshold < 1) throw PreconditionError("Hanf threshold must be at least 1");
  HanfType out{radius, threshold, {}};
  for (const auto& k : keys) {
    auto& count = out.counts[k];
    if (count < threshold) ++count;
  }
  return out;
}

HanfType hanf_type(const DWGraph& g, std::size_t radius, std::size_t threshold) {
  std::vector<CanonicalKey> keys;
  for (std::size_t i = 1; i <= g.size(); ++i) keys.push_back(canonicalize(extract_sphere(g, i, radius)));
  return hanf_type_from_keys(keys, radius, threshold);
}

HanfType hanf_type(const Signature& sig, const DataWord& w, std::size_t radius, std::size_t threshold) {
  return hanf_type(build_graph(sig, w), radius, threshold);
}

std::vector<std::uint64_t> overlap_coloring(const DWGraph& g, std::size_t radius) {
  const std::size_t n = g.size();
  std::vector<CanonicalKey> keys;
  for (std::size_t i = 1; i <= n; ++i) keys.push_back(canonicalize(extract_sphere(g, i, radius)));
  std::vector<std::uint64_t> color(n, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto d = g.distances_from(i, 2 * radius + 1);
    std::vector<std::uint64_t> taken;
    for (std::size_t j = 1; j < i; ++j)
      if (d[j] && keys[j - 1] == keys[i - 1]) taken.push_back(color[j - 1]);
    std::sort(taken.begin(), taken.end());
    std::uint64_t c = 1;
    for (auto t : taken)
      if (t == c) ++c;
    color[i - 1] = c;
  }
  const auto bound = color_bound(radius, g.symbol_count());
  for (auto c : color)
    if (c > bound) throw InternalError("overlap coloring exceeded its color bound");
  return color;
}

std::vector<std::uint64_t> overlap_coloring(const Signature& sig, const DataWord& w, std::size_t radius) {
  return overlap_coloring(build_graph(sig, w), radius);
}

std::string sphere_to_dot(const Sphere& s, const Alphabet& alphabet, const std::vector<std::string>& symbols,
                          int active) {
  std::ostringstream os;
  os << "digraph sphere {\n  rankdir=LR;\n";
  for (int v = 0; v < s.size(); ++v) {
    const auto& node = s.node(v);
    os << "  v" << v << " [label=\"";
    if (node.position) os << node.position << ':';
    os << alphabet.name(node.label) << '/' << node.nu.to_string() << '"';
    if (v == s.center()) os << ", shape=doublecircle";
    if (v == active) os << ", style=bold";
    os << "];\n";
  }
  for (int sym = 0; sym < s.symbol_count(); ++sym) {
    const std::string name = static_cast<std::size_t>(sym) < symbols.size() ? symbols[static_cast<std::size_t>(sym)]
                                                                          : "s" + std::to_string(sym);
    for (int v = 0; v < s.size(); ++v)
      if (s.succ(sym, v) >= 0)
        os << "  v" << v << " -> v" << s.succ(sym, v) << " [label=\"" << name << "\", style=" << edge_style(name)
           << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dwcra
