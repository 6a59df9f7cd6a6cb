// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/cra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dwcra/errors.hpp"
#include "dwcra/word_io.hpp"

namespace dwcra {

std::optional<std::size_t> CRA::state_index(std::string_view name) const {
  for (std::size_t q = 0; q < states.size(); ++q)
    if (states[q] == name) return q;
  return std::nullopt;
}

std::optional<std::size_t> CRA::register_index(std::string_view name) const {
  for (std::size_t r = 0; r < registers.size(); ++r)
    if (registers[r] == name) return r;
  return std::nullopt;
}

SubclassReport validate(const CRA& a) {
  SubclassReport rep;
  const std::size_t S = a.signature.size();
  const std::size_t Q = a.states.size();
  const std::size_t R = a.registers.size();
  auto problem = [&](std::size_t t, const std::string& what) {
    rep.problems.push_back("transition " + std::to_string(t + 1) + ": " + what);
  };
  if (std::set<std::string>(a.states.begin(), a.states.end()).size() != Q)
    rep.problems.push_back("duplicate state names");
  if (std::set<std::string>(a.registers.begin(), a.registers.end()).size() != R)
    rep.problems.push_back("duplicate register names");
  bool cma = true;
  bool non_guessing = true;
  for (std::size_t t = 0; t < a.transitions.size(); ++t) {
    const auto& tr = a.transitions[t];
    if (tr.sources.size() != S) problem(t, "source map does not cover the signature");
    for (const auto& s : tr.sources)
      if (s && *s >= Q) problem(t, "source state out of range");
    if (tr.target >= Q) problem(t, "target state out of range");
    if (tr.label < 0 || static_cast<std::size_t>(tr.label) >= a.alphabet.size()) problem(t, "label out of range");
    auto in_dom = [&](std::size_t s) { return s < tr.sources.size() && tr.sources[s].has_value(); };
    auto check_term = [&](const GuardTerm& term) {
      if (const int* k = std::get_if<int>(&term.term)) {
        if (*k < 1 || *k > a.alphabet.arity()) problem(t, "guard data index out of range");
      } else {
        const auto& ref = std::get<RegisterRef>(term.term);
        if (ref.reg >= R) problem(t, "guard register out of range");
        if (!in_dom(ref.symbol)) problem(t, "guard reads a symbol outside dom(p)");
      }
    };
    tr.guard.for_each_atom([&](const EqAtom& e) {
      check_term(e.lhs);
      check_term(e.rhs);
    });
    if (tr.update.size() != R) problem(t, "update map does not cover the registers");
    for (const auto& u : tr.update) {
      if (!u) continue;
      cma = false;
      if (const auto* ref = std::get_if<RegisterRef>(&*u)) {
        if (ref->reg >= R) problem(t, "update reads a register out of range");
        if (!in_dom(ref->symbol)) problem(t, "update reads a symbol outside dom(p)");
      } else {
        const auto& g = std::get<DataGuess>(*u);
        if (g.coord < 1 || g.coord > a.alphabet.arity()) problem(t, "update data index out of range");
        if (g.radius != 0) non_guessing = false;
      }
    }
  }
  if (a.finals.size() != S) rep.problems.push_back("final sets do not cover the signature");
  for (const auto& f : a.finals)
    if (f.size() != Q) rep.problems.push_back("final set has the wrong size");
  a.global.for_each_atom([&](const CountAtom& c) {
    if (c.state >= Q) rep.problems.push_back("global condition mentions an unknown state");
  });
  rep.is_CMA = cma;
  rep.is_non_guessing = non_guessing;
  rep.is_register_automaton =
      non_guessing && a.signature.size() == 1 && a.signature.symbol(0).name == "succ";
  return rep;
}

namespace {

std::optional<Value> term_value(const GuardTerm& term, const GuardContext& ctx) {
  if (const int* k = std::get_if<int>(&term.term)) return (*ctx.data)[static_cast<std::size_t>(*k - 1)];
  const auto& ref = std::get<RegisterRef>(term.term);
  if (ref.symbol >= ctx.predecessor_registers.size()) return std::nullopt;
  const auto* regs = ctx.predecessor_registers[ref.symbol];
  if (!regs || ref.reg >= regs->size()) return std::nullopt;
  return (*regs)[ref.reg];
}

}  // namespace

bool guard_eval(const Guard& guard, const GuardContext& context) {
  return guard.eval([&](const EqAtom& e) {
    const auto l = term_value(e.lhs, context);
    const auto r = term_value(e.rhs, context);
    return l && r && *l == *r;
  });
}

namespace {

std::vector<Value> data_of(const DataWord& w, std::size_t i) {
  return w.at(i).data;
}

bool global_holds(const CRA& a, const std::vector<std::size_t>& counts) {
  return a.global.eval([&](const CountAtom& c) { return counts[c.state] <= c.bound; });
}

/// Sorted D^k_B(i).
std::vector<Value> guess_values(const DWGraph& g, const DataWord& w, std::size_t i, const DataGuess& guess) {
  std::vector<Value> out;
  if (guess.radius == 0) {
    out.push_back(w.value(i, guess.coord));
    return out;
  }
  const auto d = g.distances_from(i, guess.radius);
  for (std::size_t j = 1; j <= w.size(); ++j)
    if (d[j] && *d[j] <= guess.radius) out.push_back(w.value(j, guess.coord));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Checker {
  const CRA& a;
  const DataWord& w;
  const DWGraph& g;

  // Conditions (1), (2), label and target. Empty string when satisfied.
  std::string structural(const Transition& t, std::size_t i, const std::vector<Configuration>& conf,
                         std::optional<std::size_t> target) const {
    if (t.label != w.label(i)) return "label mismatch";
    for (std::size_t s = 0; s < a.signature.size(); ++s) {
      const std::size_t p = g.prev(s, i);
      if (t.sources[s].has_value() != (p != 0))
        return "condition (1): " + a.signature.symbol(s).name +
               (p ? " predecessor exists but is not in dom(p)" : " is in dom(p) but has no predecessor");
      if (p && conf[p - 1].state != *t.sources[s])
        return "condition (2): " + a.signature.symbol(s).name + "-predecessor " + std::to_string(p) + " is in state " +
               a.states[conf[p - 1].state] + ", not " + a.states[*t.sources[s]];
    }
    if (target && t.target != *target) return "target state differs";
    return {};
  }

  GuardContext context(std::size_t i, const std::vector<Value>& data, const std::vector<Configuration>& conf) const {
    GuardContext ctx;
    ctx.data = &data;
    for (std::size_t s = 0; s < a.signature.size(); ++s) {
      const std::size_t p = g.prev(s, i);
      ctx.predecessor_registers.push_back(p ? &conf[p - 1].registers : nullptr);
    }
    return ctx;
  }

  std::optional<Value> forward(const RegisterRef& ref, std::size_t i, const std::vector<Configuration>& conf) const {
    const std::size_t p = g.prev(ref.symbol, i);
    if (!p) return std::nullopt;
    return conf[p - 1].registers[ref.reg];
  }

  // Full check of one transition against configuration i.
  std::string full(const Transition& t, std::size_t i, const std::vector<Configuration>& conf) const {
    auto why = structural(t, i, conf, conf[i - 1].state);
    if (!why.empty()) return why;
    const auto data = data_of(w, i);
    if (!guard_eval(t.guard, context(i, data, conf))) return "condition (3): guard is false";
    const auto& regs = conf[i - 1].registers;
    for (std::size_t r = 0; r < a.registers.size(); ++r) {
      const auto& u = t.update[r];
      const std::string name = a.registers[r];
      if (!u) {
        if (regs[r]) return "condition (4): register " + name + " must be undefined";
      } else if (const auto* ref = std::get_if<RegisterRef>(&*u)) {
        if (regs[r] != forward(*ref, i, conf))
          return "condition (4): register " + name + " must copy " + a.signature.symbol(ref->symbol).name + "." +
                 a.registers[ref->reg];
      } else {
        const auto& guess = std::get<DataGuess>(*u);
        const auto values = guess_values(g, w, i, guess);
        if (!regs[r] || !std::binary_search(values.begin(), values.end(), *regs[r]))
          return "condition (4): register " + name + " must hold a value of D^" + std::to_string(guess.coord) + "_" +
                 std::to_string(guess.radius) + "(" + std::to_string(i) + ")";
      }
    }
    return {};
  }
};

}  // namespace

RunVerdict run_check(const CRA& a, const DataWord& w, const Run& run) {
  const auto rep = validate(a);
  if (!rep.ok()) return {false, "malformed automaton: " + rep.problems.front(), 0};
  const auto& conf = run.configurations;
  if (conf.size() != w.size()) return {false, "run length differs from word length", 0};
  for (std::size_t i = 1; i <= w.size(); ++i) {
    if (conf[i - 1].state >= a.states.size()) return {false, "state out of range", i};
    if (conf[i - 1].registers.size() != a.registers.size()) return {false, "register valuation has the wrong size", i};
  }
  const DWGraph g = build_graph(a.signature, w);
  Checker ck{a, w, g};
  for (std::size_t i = 1; i <= w.size(); ++i) {
    std::optional<std::size_t> witness;
    if (i - 1 < run.witnesses.size()) witness = run.witnesses[i - 1];
    if (witness) {
      if (*witness >= a.transitions.size()) return {false, "witness transition out of range", i};
      const auto why = ck.full(a.transitions[*witness], i, conf);
      if (!why.empty()) return {false, "transition " + std::to_string(*witness + 1) + ": " + why, i};
      continue;
    }
    std::string best;
    bool found = false;
    for (std::size_t t = 0; t < a.transitions.size() && !found; ++t) {
      const auto why = ck.full(a.transitions[t], i, conf);
      if (why.empty()) {
        found = true;
      } else if (best.empty() && why.rfind("condition (3)", 0) == 0) {
        best = "transition " + std::to_string(t + 1) + ": " + why;
      } else if (why.rfind("condition (4)", 0) == 0) {
        best = "transition " + std::to_string(t + 1) + ": " + why;
      }
    }
    if (!found) return {false, best.empty() ? "no transition applies" : best, i};
  }
  for (std::size_t s = 0; s < a.signature.size(); ++s)
    for (std::size_t i = 1; i <= w.size(); ++i)
      if (!g.next(s, i) && !a.finals[s][conf[i - 1].state])
        return {false, "state " + a.states[conf[i - 1].state] + " is not in F_" + a.signature.symbol(s).name +
                           " at a " + a.signature.symbol(s).name + "-maximal position",
                i};
  std::vector<std::size_t> counts(a.states.size(), 0);
  for (const auto& c : conf) ++counts[c.state];
  if (!global_holds(a, counts)) return {false, "global condition is false", 0};
  return {true, "accepted", 0};
}

namespace {

struct Search {
  const CRA& a;
  const DataWord& w;
  const DWGraph& g;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<Configuration> conf;
  std::vector<std::optional<std::size_t>> used;
  bool exhausted = false;

  bool step(std::size_t i) {
    if (i > w.size()) {
      std::vector<std::size_t> counts(a.states.size(), 0);
      for (const auto& c : conf) ++counts[c.state];
      return global_holds(a, counts);
    }
    Checker ck{a, w, g};
    const auto data = data_of(w, i);
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
      const Transition& tr = a.transitions[t];
      if (!ck.structural(tr, i, conf, std::nullopt).empty()) continue;
      bool final_ok = true;
      for (std::size_t s = 0; s < a.signature.size() && final_ok; ++s)
        if (!g.next(s, i) && !a.finals[s][tr.target]) final_ok = false;
      if (!final_ok) continue;
      if (!guard_eval(tr.guard, ck.context(i, data, conf))) continue;

      RegisterValuation regs(a.registers.size());
      std::vector<std::size_t> guessing;
      std::vector<std::vector<Value>> options;
      for (std::size_t r = 0; r < a.registers.size(); ++r) {
        const auto& u = tr.update[r];
        if (!u) continue;
        if (const auto* ref = std::get_if<RegisterRef>(&*u)) {
          regs[r] = ck.forward(*ref, i, conf);
        } else {
          guessing.push_back(r);
          options.push_back(guess_values(g, w, i, std::get<DataGuess>(*u)));
        }
      }
      std::vector<std::size_t> odometer(guessing.size(), 0);
      while (true) {
        if (++nodes > budget) {
          exhausted = true;
          return false;
        }
        for (std::size_t x = 0; x < guessing.size(); ++x) regs[guessing[x]] = options[x][odometer[x]];
        conf[i - 1] = {tr.target, regs};
        used[i - 1] = t;
        if (step(i + 1)) return true;
        if (exhausted) return false;
        bool advanced = false;
        for (std::size_t x = guessing.size(); x-- > 0;) {
          if (++odometer[x] < options[x].size()) {
            advanced = true;
            break;
          }
          odometer[x] = 0;
        }
        if (!advanced) break;
      }
    }
    return false;
  }
};

}  // namespace

MembershipResult membership(const CRA& a, const DataWord& w, const MembershipOptions& options) {
  const auto rep = validate(a);
  if (!rep.ok()) throw PreconditionError("malformed automaton: " + rep.problems.front());
  const DWGraph g = build_graph(a.signature, w);
  Search s{a, w, g, options.node_budget, 0, {}, {}, false};
  s.conf.resize(w.size());
  s.used.resize(w.size());
  MembershipResult out;
  const bool ok = s.step(1);
  out.nodes = s.nodes;
  if (ok) {
    out.status = MembershipStatus::Accepted;
    out.run = Run{std::move(s.conf), std::move(s.used)};
  } else {
    out.status = s.exhausted ? MembershipStatus::BudgetExceeded : MembershipStatus::Rejected;
  }
  return out;
}

std::string format_run(const CRA& a, const DataWord& w, const Run& run) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"pos", "letter", "state"};
  if (!run.witnesses.empty()) head.push_back("trans");
  for (const auto& r : a.registers) head.push_back(r);
  rows.push_back(head);
  for (std::size_t i = 1; i <= run.configurations.size(); ++i) {
    const auto& c = run.configurations[i - 1];
    std::vector<std::string> row{std::to_string(i), i <= w.size() ? format_inline_word(DataWord(w.alphabet(), {w.at(i)})) : "?",
                                 c.state < a.states.size() ? a.states[c.state] : "?"};
    if (!run.witnesses.empty())
      row.push_back(i - 1 < run.witnesses.size() && run.witnesses[i - 1] ? std::to_string(*run.witnesses[i - 1] + 1)
                                                                          : "-");
    for (const auto& v : c.registers) row.push_back(v ? std::to_string(*v) : "⊥");
    rows.push_back(row);
  }
  std::vector<std::size_t> width;
  auto display = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char ch : s)
      if ((ch & 0xc0) != 0x80) ++n;
    return n;
  };
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], display(row[c]));
    }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - display(row[c]) + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::string term_to_string(const CRA& a, const GuardTerm& t) {
  if (const int* k = std::get_if<int>(&t.term)) return "d[" + std::to_string(*k) + "]";
  const auto& ref = std::get<RegisterRef>(t.term);
  const std::string sym = ref.symbol < a.signature.size() ? a.signature.symbol(ref.symbol).name : "?";
  const std::string reg = ref.reg < a.registers.size() ? a.registers[ref.reg] : "?";
  return sym + "." + reg;
}

bool is_bot_test(const Guard& g) {
  return g.kind() == Guard::Kind::Not && g.children()[0].kind() == Guard::Kind::Atom &&
         g.children()[0].atom_value().lhs == g.children()[0].atom_value().rhs;
}

std::string print_guard(const CRA& a, const Guard& g) {
  using K = Guard::Kind;
  switch (g.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return term_to_string(a, g.atom_value().lhs) + " = " + term_to_string(a, g.atom_value().rhs);
    case K::Not: {
      if (is_bot_test(g)) return term_to_string(a, g.children()[0].atom_value().lhs) + " = bot";
      const auto& c = g.children()[0];
      const bool wrap = c.kind() == K::And || c.kind() == K::Or || c.kind() == K::Atom;
      return "!" + (wrap ? "(" + print_guard(a, c) + ")" : print_guard(a, c));
    }
    default: {
      std::string out;
      for (std::size_t i = 0; i < g.children().size(); ++i) {
        const auto& c = g.children()[i];
        const bool wrap = c.kind() == K::And || c.kind() == K::Or;
        if (i) out += g.kind() == K::And ? " & " : " | ";
        out += wrap ? "(" + print_guard(a, c) + ")" : print_guard(a, c);
      }
      return out;
    }
  }
}

}  // namespace

std::string guard_to_string(const CRA& a, const Guard& g) { return print_guard(a, g); }

std::string global_to_string(const CRA& a, const GlobalCondition& g) {
  using K = GlobalCondition::Kind;
  auto print = [&](auto&& self, const GlobalCondition& e) -> std::string {
    switch (e.kind()) {
      case K::True: return "true";
      case K::False: return "false";
      case K::Atom: {
        const auto& c = e.atom_value();
        return (c.state < a.states.size() ? a.states[c.state] : "?") + " <= " + std::to_string(c.bound);
      }
      case K::Not: {
        const auto& c = e.children()[0];
        return "!(" + self(self, c) + ")";
      }
      default: {
        std::string out;
        for (std::size_t i = 0; i < e.children().size(); ++i) {
          const auto& c = e.children()[i];
          const bool wrap = c.kind() == K::And || c.kind() == K::Or;
          if (i) out += e.kind() == K::And ? " & " : " | ";
          out += wrap ? "(" + self(self, c) + ")" : self(self, c);
        }
        return out;
      }
    }
  };
  return print(print, g);
}

}  // namespace dwcra
