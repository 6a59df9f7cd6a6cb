// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/graph.hpp"

#include <algorithm>
#include <map>

#include "dwcra/errors.hpp"
#include "dwcra/traversal.hpp"

namespace dwcra {

DWGraph::DWGraph(std::vector<std::string> symbol_names, std::vector<LabelId> labels, std::vector<Partition> partitions,
                 const std::vector<Relation>& relations)
    : symbol_names_(std::move(symbol_names)), labels_(std::move(labels)), partitions_(std::move(partitions)) {
  const std::size_t n = labels_.size();
  next_.assign(symbol_names_.size(), std::vector<std::size_t>(n + 1, 0));
  prev_.assign(symbol_names_.size(), std::vector<std::size_t>(n + 1, 0));
  for (std::size_t s = 0; s < relations.size(); ++s) {
    for (const auto& [i, j] : relations[s]) {
      next_[s][i] = j;
      prev_[s][j] = i;
    }
  }
}

Relation DWGraph::relation(std::size_t symbol) const {
  Relation out;
  for (std::size_t i = 1; i <= size(); ++i)
    if (next_[symbol][i] != 0) out.emplace_back(i, next_[symbol][i]);
  return out;
}

std::vector<std::optional<std::size_t>> DWGraph::distances_from(std::size_t i, std::size_t limit) const {
  std::vector<std::optional<std::size_t>> d(size() + 1);
  std::vector<std::size_t> queue{i};
  d[i] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    if (*d[v] >= limit) continue;
    for (std::size_t s = 0; s < symbol_count(); ++s) {
      for (std::size_t u : {next_[s][v], prev_[s][v]}) {
        if (u != 0 && !d[u]) {
          d[u] = *d[v] + 1;
          queue.push_back(u);
        }
      }
    }
  }
  return d;
}

DWGraph build_graph(const Signature& sig, const DataWord& w, bool trust) {
  if (!trust) {
    if (auto violation = axiom_check(sig, w)) throw SignatureError(violation->message());
  }
  std::vector<std::string> names;
  for (const auto& symbol : sig.symbols()) names.push_back(symbol.name);
  std::vector<LabelId> labels;
  std::vector<Partition> partitions;
  for (const auto& letter : w.letters()) {
    labels.push_back(letter.label);
    partitions.push_back(Partition::of_values(letter.data));
  }
  return DWGraph(std::move(names), std::move(labels), std::move(partitions), interpret(sig, w));
}

std::optional<std::size_t> dist(const DWGraph& g, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > g.size() || j > g.size())
    throw PreconditionError("dist: position out of range 1.." + std::to_string(g.size()));
  return g.distances_from(i)[j];
}

namespace {

struct GraphView {
  const DWGraph& g;
  int node_count() const { return static_cast<int>(g.size()); }
  int symbol_count() const { return static_cast<int>(g.symbol_count()); }
  int succ(int s, int v) const { return static_cast<int>(g.next(static_cast<std::size_t>(s), static_cast<std::size_t>(v) + 1)) - 1; }
  int pred(int s, int v) const { return static_cast<int>(g.prev(static_cast<std::size_t>(s), static_cast<std::size_t>(v) + 1)) - 1; }
  int node_label(int v) const { return g.label(static_cast<std::size_t>(v) + 1); }
  const Partition& node_partition(int v) const { return g.nu(static_cast<std::size_t>(v) + 1); }
};

}  // namespace

std::string graph_code(const DWGraph& g) {
  GraphView view{g};
  std::vector<int> component(g.size(), -1);
  std::vector<std::string> codes;
  for (int v = 0; v < view.node_count(); ++v) {
    if (component[static_cast<std::size_t>(v)] >= 0) continue;
    std::vector<int> members;
    detail::bfs_code(view, v, &members);
    for (int u : members) component[static_cast<std::size_t>(u)] = static_cast<int>(codes.size());
    std::string best;
    for (int root : members) {
      auto code = detail::bfs_code(view, root);
      if (best.empty() || code < best) best = std::move(code);
    }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (const auto& code : codes) out += code;
  return out;
}

bool equivalent(const Signature& sig, const DataWord& u, const DataWord& v) {
  if (!(u.alphabet() == v.alphabet())) return false;
  if (u.size() != v.size()) return false;
  return graph_code(build_graph(sig, u)) == graph_code(build_graph(sig, v));
}

DataWord normalize_values(const DataWord& w) {
  std::map<Value, Value> renaming;
  DataWord out(w.alphabet());
  for (const auto& letter : w.letters()) {
    Letter renamed{letter.label, {}};
    for (Value d : letter.data) {
      auto [it, inserted] = renaming.try_emplace(d, static_cast<Value>(renaming.size() + 1));
      renamed.data.push_back(it->second);
    }
    out.push_back(std::move(renamed));
  }
  return out;
}

DataWord normalize(const Signature& sig, const DataWord& w) {
  if (!sig.renaming_invariant())
    throw PreconditionError("normalize requires a renaming-invariant signature ('" + sig.name() + "')");
  return normalize_values(w);
}

}  // namespace dwcra
