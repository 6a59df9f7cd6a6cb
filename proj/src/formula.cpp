// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/formula.hpp"

#include <algorithm>

#include "dwcra/errors.hpp"

namespace dwcra {

struct Formula::Node {
  FormulaKind kind = FormulaKind::True;
  std::string var;
  std::string var2;
  std::string name;
  int k = 0;
  int l = 0;
  std::vector<Formula> children;
};

namespace {

std::shared_ptr<Formula::Node> make(FormulaKind kind) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  return n;
}

}  // namespace

Formula::Formula() : node_(make(FormulaKind::True)) {}
Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::truth() { return Formula(make(FormulaKind::True)); }
Formula Formula::falsity() { return Formula(make(FormulaKind::False)); }

Formula Formula::label_is(std::string x, std::string label) {
  auto n = make(FormulaKind::LabelIs);
  n->var = std::move(x);
  n->name = std::move(label);
  return Formula(n);
}

Formula Formula::data_eq(std::string x, int k, std::string y, int l) {
  auto n = make(FormulaKind::DataEq);
  n->var = std::move(x);
  n->var2 = std::move(y);
  n->k = k;
  n->l = l;
  return Formula(n);
}

Formula Formula::edge(std::string x, std::string relation, std::string y) {
  auto n = make(FormulaKind::Edge);
  n->var = std::move(x);
  n->name = std::move(relation);
  n->var2 = std::move(y);
  return Formula(n);
}

Formula Formula::lt(std::string x, std::string y) {
  auto n = make(FormulaKind::Lt);
  n->var = std::move(x);
  n->var2 = std::move(y);
  return Formula(n);
}

Formula Formula::pos_eq(std::string x, std::string y) {
  auto n = make(FormulaKind::PosEq);
  n->var = std::move(x);
  n->var2 = std::move(y);
  return Formula(n);
}

Formula Formula::in(std::string x, std::string set) {
  auto n = make(FormulaKind::In);
  n->var = std::move(x);
  n->var2 = std::move(set);
  return Formula(n);
}

Formula Formula::negation(Formula f) {
  auto n = make(FormulaKind::Not);
  n->children.push_back(std::move(f));
  return Formula(n);
}

static Formula binary(FormulaKind kind, Formula a, Formula b) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->children = {std::move(a), std::move(b)};
  return Formula(n);
}

Formula Formula::disjunction(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
Formula Formula::conjunction(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }

static Formula quantifier(FormulaKind kind, std::string x, Formula body) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->var = std::move(x);
  n->children = {std::move(body)};
  return Formula(n);
}

Formula Formula::exists(std::string x, Formula body) { return quantifier(FormulaKind::ExistsFO, std::move(x), std::move(body)); }
Formula Formula::forall(std::string x, Formula body) { return quantifier(FormulaKind::ForallFO, std::move(x), std::move(body)); }
Formula Formula::exists_set(std::string x, Formula body) { return quantifier(FormulaKind::ExistsSO, std::move(x), std::move(body)); }
Formula Formula::forall_set(std::string x, Formula body) { return quantifier(FormulaKind::ForallSO, std::move(x), std::move(body)); }

Formula Formula::any_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return falsity();
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = disjunction(out, parts[i]);
  return out;
}

Formula Formula::all_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth();
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = conjunction(out, parts[i]);
  return out;
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::var() const { return node_->var; }
const std::string& Formula::var2() const { return node_->var2; }
const std::string& Formula::name() const { return node_->name; }
int Formula::k() const { return node_->k; }
int Formula::l() const { return node_->l; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.var == b.var && a.var2 == b.var2 && a.name == b.name && a.k == b.k && a.l == b.l &&
         a.children == b.children;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound_fo, std::vector<std::string>& bound_so,
                  std::set<std::string>& fo, std::set<std::string>& so) {
  auto note_fo = [&](const std::string& x) {
    if (std::find(bound_fo.begin(), bound_fo.end(), x) == bound_fo.end()) fo.insert(x);
  };
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::LabelIs: note_fo(f.var()); return;
    case FormulaKind::DataEq:
    case FormulaKind::Edge:
    case FormulaKind::Lt:
    case FormulaKind::PosEq:
      note_fo(f.var());
      note_fo(f.var2());
      return;
    case FormulaKind::In:
      note_fo(f.var());
      if (std::find(bound_so.begin(), bound_so.end(), f.var2()) == bound_so.end()) so.insert(f.var2());
      return;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      bound_fo.push_back(f.var());
      collect_free(f.child(), bound_fo, bound_so, fo, so);
      bound_fo.pop_back();
      return;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      bound_so.push_back(f.var());
      collect_free(f.child(), bound_fo, bound_so, fo, so);
      bound_so.pop_back();
      return;
    default:
      for (const auto& c : f.children()) collect_free(c, bound_fo, bound_so, fo, so);
  }
}

}  // namespace

std::set<std::string> Formula::free_fo() const {
  std::vector<std::string> bf, bs;
  std::set<std::string> fo, so;
  collect_free(*this, bf, bs, fo, so);
  return fo;
}

std::set<std::string> Formula::free_so() const {
  std::vector<std::string> bf, bs;
  std::set<std::string> fo, so;
  collect_free(*this, bf, bs, fo, so);
  return so;
}

// ---- printing ----

namespace {

// Higher binds tighter. Quantifiers extend to the right, hence lowest.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO: return 0;
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
  }
}

void print(const Formula& f, int min_prec, std::string& out);

void print_child(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f.kind()) < min_prec) {
    out += '(';
    print(f, 0, out);
    out += ')';
  } else {
    print(f, min_prec, out);
  }
}

void print(const Formula& f, int, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::LabelIs: out += "lab(" + f.var() + ")=" + f.name(); return;
    case FormulaKind::DataEq:
      out += "d[" + std::to_string(f.k()) + "](" + f.var() + ")=d[" + std::to_string(f.l()) + "](" + f.var2() + ")";
      return;
    case FormulaKind::Edge: out += f.var() + " " + f.name() + " " + f.var2(); return;
    case FormulaKind::Lt: out += f.var() + " lt " + f.var2(); return;
    case FormulaKind::PosEq: out += f.var() + "=" + f.var2(); return;
    case FormulaKind::In: out += f.var() + " in " + f.var2(); return;
    case FormulaKind::Not:
      out += '!';
      print_child(f.child(), 5, out);
      return;
    case FormulaKind::Or:
      print_child(f.child(0), 3, out);
      out += " | ";
      print_child(f.child(1), 4, out);
      return;
    case FormulaKind::And:
      print_child(f.child(0), 4, out);
      out += " & ";
      print_child(f.child(1), 5, out);
      return;
    case FormulaKind::Implies:
      print_child(f.child(0), 3, out);
      out += " -> ";
      print_child(f.child(1), 2, out);
      return;
    case FormulaKind::Iff:
      print_child(f.child(0), 2, out);
      out += " <-> ";
      print_child(f.child(1), 2, out);
      return;
    case FormulaKind::ExistsFO: out += "E " + f.var() + ". "; break;
    case FormulaKind::ForallFO: out += "A " + f.var() + ". "; break;
    case FormulaKind::ExistsSO: out += "E2 " + f.var() + ". "; break;
    case FormulaKind::ForallSO: out += "A2 " + f.var() + ". "; break;
  }
  print(f.child(), 0, out);
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---- classification ----

namespace {

struct Scan {
  bool has_so_quantifier = false;
  bool has_in = false;
  bool restricted = true;
  std::size_t qrank = 0;
};

void scan(const Formula& f, Scan& s, std::size_t depth) {
  switch (f.kind()) {
    case FormulaKind::DataEq:
      if (f.var() != f.var2()) s.restricted = false;
      break;
    case FormulaKind::Lt: s.restricted = false; break;
    case FormulaKind::In: s.has_in = true; break;
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      s.qrank = std::max(s.qrank, depth + 1);
      scan(f.child(), s, depth + 1);
      return;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO: s.has_so_quantifier = true; break;
    default: break;
  }
  for (const auto& c : f.children()) scan(c, s, depth);
}

}  // namespace

FragmentReport classify(const Formula& f) {
  FragmentReport r;
  Scan s;
  scan(f, s, 0);
  r.is_sentence = f.free_fo().empty() && f.free_so().empty();
  r.is_FO = !s.has_so_quantifier && !s.has_in;
  const Formula* kernel = &f;
  while (kernel->kind() == FormulaKind::ExistsSO) {
    ++r.so_prefix;
    kernel = &kernel->child();
  }
  Scan ks;
  scan(*kernel, ks, 0);
  r.is_EMSO = !ks.has_so_quantifier;
  r.is_rMSO = s.restricted;
  r.is_rFO = r.is_FO && r.is_rMSO;
  r.is_rEMSO = r.is_EMSO && r.is_rMSO;
  r.qrank = s.qrank;
  return r;
}

std::string FragmentReport::to_string() const {
  auto b = [](bool v) { return v ? "true" : "false"; };
  return std::string("sentence=") + b(is_sentence) + " FO=" + b(is_FO) + " EMSO=" + b(is_EMSO) +
         " rMSO=" + b(is_rMSO) + " rFO=" + b(is_rFO) + " rEMSO=" + b(is_rEMSO) + " qrank=" + std::to_string(qrank);
}

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Not: return Formula::negation(desugar(f.child()));
    case FormulaKind::Or: return Formula::disjunction(desugar(f.child(0)), desugar(f.child(1)));
    case FormulaKind::And:
      return Formula::negation(
          Formula::disjunction(Formula::negation(desugar(f.child(0))), Formula::negation(desugar(f.child(1)))));
    case FormulaKind::Implies: return Formula::disjunction(Formula::negation(desugar(f.child(0))), desugar(f.child(1)));
    case FormulaKind::Iff: {
      const Formula a = desugar(f.child(0));
      const Formula b = desugar(f.child(1));
      const Formula ab = Formula::disjunction(Formula::negation(a), b);
      const Formula ba = Formula::disjunction(Formula::negation(b), a);
      return Formula::negation(Formula::disjunction(Formula::negation(ab), Formula::negation(ba)));
    }
    case FormulaKind::ExistsFO: return Formula::exists(f.var(), desugar(f.child()));
    case FormulaKind::ForallFO:
      return Formula::negation(Formula::exists(f.var(), Formula::negation(desugar(f.child()))));
    case FormulaKind::ExistsSO: return Formula::exists_set(f.var(), desugar(f.child()));
    case FormulaKind::ForallSO:
      return Formula::negation(Formula::exists_set(f.var(), Formula::negation(desugar(f.child()))));
    default: return f;
  }
}

ParseContext ParseContext::of(const Signature& sig, const Alphabet& alphabet) {
  ParseContext c;
  for (const auto& s : sig.symbols()) c.relations.push_back(s.name);
  c.m = alphabet.arity();
  c.labels = alphabet.labels();
  return c;
}

}  // namespace dwcra
