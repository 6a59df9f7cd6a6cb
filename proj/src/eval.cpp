// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "dwcra/errors.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/graph.hpp"

namespace dwcra {
namespace {

// Formula with variables resolved to slots and names resolved to ids.
struct Compiled {
  FormulaKind kind = FormulaKind::True;
  int a = 0;  // slot of the first variable, or the bound slot
  int b = 0;  // slot of the second variable
  int id = -1;  // label id or symbol index
  int k = 0;
  int l = 0;
  std::vector<Compiled> children;
};

struct Compiler {
  const Signature& sig;
  const DataWord& w;
  std::vector<std::string> fo_scope;
  std::vector<std::string> so_scope;
  bool has_fo_quantifier = false;
  bool has_so_quantifier = false;

  static int lookup(const std::vector<std::string>& scope, const std::string& x, const char* what) {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == x) return static_cast<int>(i);
    throw PreconditionError(std::string("unbound ") + what + " variable '" + x + "'");
  }

  int data_index(int k) const {
    if (k < 1 || k > w.arity())
      throw SignatureError("data index " + std::to_string(k) + " out of range for m = " + std::to_string(w.arity()));
    return k;
  }

  Compiled compile(const Formula& f) {
    Compiled c;
    c.kind = f.kind();
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False: break;
      case FormulaKind::LabelIs: {
        c.a = lookup(fo_scope, f.var(), "first-order");
        const auto id = w.alphabet().find(f.name());
        c.id = id ? *id : -1;
        break;
      }
      case FormulaKind::DataEq:
        c.a = lookup(fo_scope, f.var(), "first-order");
        c.b = lookup(fo_scope, f.var2(), "first-order");
        c.k = data_index(f.k());
        c.l = data_index(f.l());
        break;
      case FormulaKind::Edge: {
        c.a = lookup(fo_scope, f.var(), "first-order");
        c.b = lookup(fo_scope, f.var2(), "first-order");
        const auto s = sig.index_of(f.name());
        if (!s) throw SignatureError("unknown relation symbol '" + f.name() + "' in signature " + sig.name());
        c.id = static_cast<int>(*s);
        break;
      }
      case FormulaKind::Lt:
      case FormulaKind::PosEq:
        c.a = lookup(fo_scope, f.var(), "first-order");
        c.b = lookup(fo_scope, f.var2(), "first-order");
        break;
      case FormulaKind::In:
        c.a = lookup(fo_scope, f.var(), "first-order");
        c.b = lookup(so_scope, f.var2(), "second-order");
        break;
      case FormulaKind::ExistsFO:
      case FormulaKind::ForallFO:
        has_fo_quantifier = true;
        c.a = static_cast<int>(fo_scope.size());
        fo_scope.push_back(f.var());
        c.children.push_back(compile(f.child()));
        fo_scope.pop_back();
        break;
      case FormulaKind::ExistsSO:
      case FormulaKind::ForallSO:
        has_so_quantifier = true;
        c.a = static_cast<int>(so_scope.size());
        so_scope.push_back(f.var());
        c.children.push_back(compile(f.child()));
        so_scope.pop_back();
        break;
      default:
        for (const auto& ch : f.children()) c.children.push_back(compile(ch));
    }
    return c;
  }
};

struct Evaluator {
  const DWGraph& g;
  const DataWord& w;
  std::vector<std::size_t> fo;
  std::vector<std::vector<char>> so;

  bool run(const Compiled& c) {
    switch (c.kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::LabelIs: return c.id >= 0 && w.label(fo[static_cast<std::size_t>(c.a)]) == c.id;
      case FormulaKind::DataEq:
        return w.value(fo[static_cast<std::size_t>(c.a)], c.k) == w.value(fo[static_cast<std::size_t>(c.b)], c.l);
      case FormulaKind::Edge:
        return g.next(static_cast<std::size_t>(c.id), fo[static_cast<std::size_t>(c.a)]) ==
               fo[static_cast<std::size_t>(c.b)];
      case FormulaKind::Lt: return fo[static_cast<std::size_t>(c.a)] < fo[static_cast<std::size_t>(c.b)];
      case FormulaKind::PosEq: return fo[static_cast<std::size_t>(c.a)] == fo[static_cast<std::size_t>(c.b)];
      case FormulaKind::In: return so[static_cast<std::size_t>(c.b)][fo[static_cast<std::size_t>(c.a)]] != 0;
      case FormulaKind::Not: return !run(c.children[0]);
      case FormulaKind::Or: return run(c.children[0]) || run(c.children[1]);
      case FormulaKind::And: return run(c.children[0]) && run(c.children[1]);
      case FormulaKind::Implies: return !run(c.children[0]) || run(c.children[1]);
      case FormulaKind::Iff: return run(c.children[0]) == run(c.children[1]);
      case FormulaKind::ExistsFO:
      case FormulaKind::ForallFO: {
        const bool exists = c.kind == FormulaKind::ExistsFO;
        const auto slot = static_cast<std::size_t>(c.a);
        if (fo.size() <= slot) fo.resize(slot + 1);
        for (std::size_t i = 1; i <= w.size(); ++i) {
          fo[slot] = i;
          if (run(c.children[0]) == exists) return exists;
        }
        return !exists;
      }
      case FormulaKind::ExistsSO:
      case FormulaKind::ForallSO: {
        const bool exists = c.kind == FormulaKind::ExistsSO;
        const auto slot = static_cast<std::size_t>(c.a);
        if (so.size() <= slot) so.resize(slot + 1);
        const std::size_t n = w.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
          auto& set = so[slot];
          set.assign(n + 1, 0);
          for (std::size_t i = 0; i < n; ++i) set[i + 1] = static_cast<char>((mask >> i) & 1u);
          if (run(c.children[0]) == exists) return exists;
        }
        return !exists;
      }
    }
    return false;
  }
};

}  // namespace

bool eval(const Signature& sig, const DataWord& w, const Formula& f, const Valuation& val, const EvalOptions& options) {
  Compiler comp{sig, w, {}, {}};
  std::vector<std::size_t> fo;
  std::vector<std::vector<char>> so;
  for (const auto& [x, i] : val.fo) {
    if (i < 1 || i > w.size()) throw PreconditionError("variable '" + x + "' assigned to a position out of range");
    comp.fo_scope.push_back(x);
    fo.push_back(i);
  }
  for (const auto& [x, set] : val.so) {
    std::vector<char> bits(w.size() + 1, 0);
    for (auto i : set) {
      if (i < 1 || i > w.size()) throw PreconditionError("set '" + x + "' contains a position out of range");
      bits[i] = 1;
    }
    comp.so_scope.push_back(x);
    so.push_back(std::move(bits));
  }
  const Compiled c = comp.compile(f);
  if (comp.has_so_quantifier && w.size() > options.max_positions_so)
    throw BudgetExceeded("second-order evaluation capped at " + std::to_string(options.max_positions_so) +
                         " positions");
  if (comp.has_fo_quantifier && w.size() > options.max_positions_fo)
    throw BudgetExceeded("first-order evaluation capped at " + std::to_string(options.max_positions_fo) +
                         " positions");
  const DWGraph g = build_graph(sig, w);
  Evaluator ev{g, w, std::move(fo), std::move(so)};
  return ev.run(c);
}

bool eval_sentence(const Signature& sig, const DataWord& w, const Formula& f, const EvalOptions& options) {
  return eval(sig, w, f, {}, options);
}

}  // namespace dwcra
