// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/corpus.hpp"

#include "dwcra/cra_io.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/word_io.hpp"

namespace dwcra {
namespace {

const char* const kFig1Word = R"(#alphabet r a
#m 1
r 8
r 5
r 3
r 4
a 3
a 4
a 5
a 4
)";

// process creation and FIFO messages; position 1 is the root process 2
const char* const kFig2Word = R"(#alphabet n f ! ?
#m 2
n 2 2
f 2 3
n 3 2
f 2 1
n 1 2
! 2 3
? 3 2
! 1 3
! 1 3
? 3 1
? 3 1
)";

const char* const kFig3Word = R"(#alphabet r a
#m 1
r 8
r 5
a 8
a 5
)";

const char* const kReqAck = R"(signature: succ-cls1
alphabet: r a
m: 1
states: q1 q2
registers: r1 r2
transitions:
  [] true "r" -> q1 {r1 := d[1]@0}
  [succ=q1] true "r" -> q1 {r1 := d[1]@0, r2 := succ.r1}
  [cls1=q1, succ=q1] cls1.r2 = bot "a" -> q2 {r1 := d[1]@0}
  [cls1=q1, succ=q2] cls1.r2 = succ.r1 "a" -> q2 {r1 := d[1]@0}
final[cls1]: q2
final[succ]: q2
global: !(q1 <= 0)
)";

// every class reads (r a)+, no registers
const char* const kClassAlternation = R"(signature: succ-cls1
alphabet: r a
m: 1
states: qr qa
registers:
transitions:
  [] true "r" -> qr {}
  [succ=qr] true "r" -> qr {}
  [succ=qa] true "r" -> qr {}
  [cls1=qa, succ=qr] true "r" -> qr {}
  [cls1=qa, succ=qa] true "r" -> qr {}
  [cls1=qr, succ=qr] true "a" -> qa {}
  [cls1=qr, succ=qa] true "a" -> qa {}
final[cls1]: qa
final[succ]: qr qa
)";

// register automaton over succ-cls1: the last value equals the first one
std::string first_is_last() {
  std::string t = "signature: succ-cls1\nalphabet: r a\nm: 1\nstates: s e x\nregisters: first\ntransitions:\n";
  for (const char* l : {"r", "a"}) {
    t += std::string("  [] true \"") + l + "\" -> s {first := d[1]@0}\n";
    for (const char* sp : {"s", "e", "x"})
      for (const char* cp : {"", "s", "e", "x"}) {
        std::string src = *cp ? std::string("[cls1=") + cp + ", succ=" + sp + "]" : std::string("[succ=") + sp + "]";
        t += "  " + src + " d[1] = succ.first \"" + l + "\" -> e {first := succ.first}\n";
        t += "  " + src + " !(d[1] = succ.first) \"" + l + "\" -> x {first := succ.first}\n";
      }
  }
  return t + "final[succ]: s e\nfinal[cls1]: s e x\n";
}

std::vector<Fixture> build_catalog() {
  const std::vector<std::string> ra{"r", "a"};
  const std::vector<std::string> dyn{"n", "f", "!", "?"};
  std::vector<Fixture> c;
  auto word = [&](std::string name, std::string sig, std::string text, std::string note) {
    c.push_back({std::move(name), FixtureKind::Word, std::move(sig), std::move(text), std::move(note), {}, 0, {}});
  };
  auto formula = [&](std::string name, std::string sig, std::vector<std::string> labels, int m, std::string text,
                     std::string fragment, std::string note) {
    c.push_back({std::move(name), FixtureKind::Formula, std::move(sig), std::move(text), std::move(note),
                 std::move(labels), m, std::move(fragment)});
  };
  auto automaton = [&](std::string name, std::string sig, std::string text, std::string note) {
    c.push_back({std::move(name), FixtureKind::Automaton, std::move(sig), std::move(text), std::move(note), {}, 0, {}});
  };

  word("fig1-word", "succ-cls1", kFig1Word, "server log with one data value, 8 positions");
  word("fig2-word", "dyn", kFig2Word, "message sequence chart with process creation");
  word("fig3-word", "succ-cls1", kFig3Word, "input of the tabulated request/acknowledge run");

  automaton("fig3", "succ-cls1", kReqAck, "non-guessing request/acknowledge automaton");
  automaton("fig3-automaton", "succ-cls1", kReqAck, "alias of fig3");
  automaton("class-alternation", "succ-cls1", kClassAlternation, "class memory automaton: every class reads (r a)+");
  automaton("first-is-last", "succ-cls1", first_is_last(), "register automaton carrying the first value forward");

  formula("phi1", "succ-cls1", ra, 1, "E x. E y. (lab(x)=r & lab(y)=a & x cls1 y)", "rFO qrank=2",
          "some request is acknowledged");
  formula("phi2", "succ-cls1", ra, 1, "A x. E y. (lab(x)=r -> lab(y)=a & x cls1 y)", "rFO qrank=2",
          "every request is acknowledged before the next request of the same process");
  formula("phi3", "succ-cls1", ra, 1,
          "A x. A y. ((lab(x)=r & lab(y)=r & x succ y) -> E x1. E y1. (lab(x1)=a & lab(y1)=a & x cls1 x1 & x1 succ y1 "
          "& y cls1 y1))",
          "rFO qrank=4", "successive requests are acknowledged in order");
  formula("succ-rr", "succ-cls1", ra, 1, "E x. E y. (lab(x)=r & x succ y & lab(y)=r)", "rFO qrank=2",
          "two adjacent requests");
  formula("ack-has-request", "succ-cls1", ra, 1, "A x. (lab(x)=a -> E y. y cls1 x)", "rFO qrank=2",
          "no acknowledgement opens a class");

  const std::string root = "E x. (lab(x)=n & d[1](x)=d[2](x) & A y. (d[1](y)=d[2](y) -> x=y))";
  const std::string structure =
      "A x. ((lab(x)=f -> E y. x fork y) & (lab(x)=n <-> !E y. y proc x) & (lab(x)=n -> (d[1](x)=d[2](x) | E y. y "
      "fork x)))";
  const std::string channels = "A x. ((lab(x)=! | lab(x)=?) -> E y. (x msg y | y msg x))";
  formula("msc-root", "dyn", dyn, 2, root, "rFO qrank=2", "exactly one root process");
  formula("msc-structure", "dyn", dyn, 2, structure, "rFO qrank=2", "forks, new events and process starts");
  formula("msc-channels", "dyn", dyn, 2, channels, "rFO qrank=2", "sends and receives are matched");
  formula("msc-wf", "dyn", dyn, 2, "(" + root + ") & (" + structure + ") & (" + channels + ")", "rFO qrank=2",
          "MSC well-formedness");
  formula("fork-msg", "dyn", dyn, 2,
          "A x1. A y1. (x1 fork y1 -> E x2. E y2. (x1 proc x2 & y1 proc y2 & y2 msg x2))", "rFO qrank=4",
          "a forked process later messages its parent");
  formula("pattern", "cls1-cls2", {"a"}, 2,
          "A x. E x1. E x2. E x3. E x4. ((x=x1 | x=x2 | x=x3 | x=x4) & x1 cls1 x3 & x1 cls2 x4 & x2 cls2 x3 & x2 cls1 "
          "x4)",
          "rFO qrank=5", "every position lies on a closed 4-pattern");
  formula("emso-even", "succ-cls1", ra, 1,
          "E2 X. A x. ((A y. (x cls1 y -> (x in X <-> !(y in X)))) & ((!E y. y cls1 x) -> x in X) & ((!E y. x cls1 "
          "y) -> !(x in X)))",
          "rEMSO qrank=2", "every class has even size");

  c.push_back({"nested-patterns", FixtureKind::WordFamily, "cls1-cls2", "nested 2",
               "disjoint patterns nested k deep (shown for k=2)", {}, 0, {}});
  c.push_back({"merged-patterns", FixtureKind::WordFamily, "cls1-cls2", "merged",
               "nested(2) with two second values swapped", {}, 0, {}});
  return c;
}

}  // namespace

std::string kind_name(FixtureKind k) {
  switch (k) {
    case FixtureKind::Word: return "word";
    case FixtureKind::Formula: return "formula";
    case FixtureKind::Automaton: return "automaton";
    case FixtureKind::WordFamily: return "word_family";
  }
  return "?";
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> catalog = build_catalog();
  return catalog;
}

const Fixture* find_fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

const Fixture& fixture(std::string_view name) {
  const Fixture* f = find_fixture(name);
  if (!f) throw PreconditionError("unknown fixture '" + std::string(name) + "'");
  return *f;
}

DataWord fixture_word(std::string_view name) {
  const Fixture& f = fixture(name);
  if (f.kind == FixtureKind::Word) return parse_word(f.payload);
  if (f.kind == FixtureKind::WordFamily) return f.payload == "merged" ? gen_merged_patterns() : gen_nested_patterns(2);
  throw PreconditionError("fixture '" + f.name + "' is a " + kind_name(f.kind) + ", not a word");
}

Formula fixture_formula(std::string_view name) {
  const Fixture& f = fixture(name);
  if (f.kind != FixtureKind::Formula)
    throw PreconditionError("fixture '" + f.name + "' is a " + kind_name(f.kind) + ", not a formula");
  const auto ctx = ParseContext::of(Signature::builtin(f.signature), Alphabet(f.labels, f.m));
  return parse_formula(f.payload, &ctx);
}

CRA fixture_automaton(std::string_view name) {
  const Fixture& f = fixture(name);
  if (f.kind != FixtureKind::Automaton)
    throw PreconditionError("fixture '" + f.name + "' is a " + kind_name(f.kind) + ", not an automaton");
  return parse_cra(f.payload);
}

Signature fixture_signature(std::string_view name) { return Signature::builtin(fixture(name).signature); }

Alphabet fixture_alphabet(std::string_view name) {
  const Fixture& f = fixture(name);
  switch (f.kind) {
    case FixtureKind::Formula: return Alphabet(f.labels, f.m);
    case FixtureKind::Automaton: return fixture_automaton(name).alphabet;
    default: return fixture_word(name).alphabet();
  }
}

std::string fragment_summary(const FragmentReport& r) {
  std::string frag = r.is_rFO ? "rFO" : r.is_rEMSO ? "rEMSO" : r.is_rMSO ? "rMSO" : r.is_FO ? "FO" : r.is_EMSO ? "EMSO" : "MSO";
  return frag + " qrank=" + std::to_string(r.qrank);
}

DataWord gen_nested_patterns(std::size_t count) {
  if (count < 1) throw PreconditionError("nested patterns need count >= 1");
  // pattern p uses a=4p+1, c=4p+2 (first coordinate) and b=4p+3, d=4p+4 (second)
  auto a = [](std::size_t p) { return static_cast<Value>(4 * p + 1); };
  auto cc = [](std::size_t p) { return static_cast<Value>(4 * p + 2); };
  auto b = [](std::size_t p) { return static_cast<Value>(4 * p + 3); };
  auto d = [](std::size_t p) { return static_cast<Value>(4 * p + 4); };
  DataWord w(Alphabet({"a"}, 2));
  for (std::size_t p = count; p-- > 0;) w.push_back({0, {a(p), b(p)}});   // x1
  for (std::size_t p = count; p-- > 0;) w.push_back({0, {cc(p), d(p)}});  // x2
  for (std::size_t p = 0; p < count; ++p) w.push_back({0, {a(p), d(p)}});   // x3
  for (std::size_t p = 0; p < count; ++p) w.push_back({0, {cc(p), b(p)}});  // x4
  return w;
}

DataWord gen_merged_patterns() {
  const DataWord w = gen_nested_patterns(2);
  std::vector<Letter> letters = w.letters();
  std::swap(letters[0].data[1], letters[1].data[1]);
  return DataWord(w.alphabet(), std::move(letters));
}

std::vector<DataWord> reqack_language(std::size_t max_len) {
  const Alphabet alphabet({"r", "a"}, 1);
  std::vector<DataWord> out;
  for (std::size_t n = 1; 2 * n <= max_len; ++n) {
    DataWord w(alphabet);
    for (std::size_t i = 1; i <= n; ++i) w.push_back({0, {static_cast<Value>(i)}});
    for (std::size_t i = 1; i <= n; ++i) w.push_back({1, {static_cast<Value>(i)}});
    out.push_back(std::move(w));
  }
  return out;
}

bool in_reqack_language(const DataWord& w) {
  const std::size_t len = w.size();
  if (len == 0 || len % 2 != 0) return false;
  const std::size_t n = len / 2;
  const auto r = w.alphabet().find("r");
  const auto a = w.alphabet().find("a");
  if (!r || !a) return false;
  for (std::size_t i = 1; i <= n; ++i) {
    if (w.label(i) != *r || w.label(n + i) != *a) return false;
    if (w.value(i, 1) != w.value(n + i, 1)) return false;
    for (std::size_t j = 1; j < i; ++j)
      if (w.value(j, 1) == w.value(i, 1)) return false;
  }
  return true;
}

CRA exact_word_automaton(const Signature& sig, const DataWord& w) {
  const DWGraph g = build_graph(sig, w);
  CRA a;
  a.signature = sig;
  a.alphabet = w.alphabet();
  const std::size_t n = w.size();
  const std::size_t symbols = sig.size();
  a.finals.assign(symbols, std::vector<bool>(n, false));
  std::vector<GlobalCondition> once;
  for (std::size_t i = 1; i <= n; ++i) {
    a.states.push_back("q" + std::to_string(i));
    Transition t;
    t.guard = Guard::truth();
    t.label = w.label(i);
    t.target = i - 1;
    t.sources.assign(symbols, std::nullopt);
    for (std::size_t s = 0; s < symbols; ++s) {
      if (const auto p = g.prev(s, i)) t.sources[s] = p - 1;
      if (g.next(s, i) == 0) a.finals[s][i - 1] = true;
    }
    a.transitions.push_back(std::move(t));
    once.push_back(!GlobalCondition::atom({i - 1, 0}));
    once.push_back(GlobalCondition::atom({i - 1, 1}));
  }
  a.global = GlobalCondition::conj(std::move(once));
  return a;
}

CRA universal_automaton(const Signature& sig, const Alphabet& alphabet) {
  CRA a;
  a.signature = sig;
  a.alphabet = alphabet;
  a.states = {"q"};
  const std::size_t symbols = sig.size();
  a.finals.assign(symbols, std::vector<bool>(1, true));
  a.global = GlobalCondition::truth();
  for (LabelId l = 0; l < static_cast<LabelId>(alphabet.size()); ++l) {
    for (std::size_t dom = 0; dom < (std::size_t{1} << symbols); ++dom) {
      Transition t;
      t.guard = Guard::truth();
      t.label = l;
      t.target = 0;
      for (std::size_t s = 0; s < symbols; ++s)
        t.sources.push_back((dom >> s) & 1 ? std::optional<std::size_t>(0) : std::nullopt);
      a.transitions.push_back(std::move(t));
    }
  }
  return a;
}

CRA empty_word_automaton(const Signature& sig, const Alphabet& alphabet) {
  CRA a;
  a.signature = sig;
  a.alphabet = alphabet;
  a.states = {"q"};
  a.finals.assign(sig.size(), std::vector<bool>(1, true));
  a.global = GlobalCondition::truth();
  return a;
}

CRA alternating_marks_automaton(const Alphabet& base) {
  CRA a;
  a.signature = Signature::extended(Signature::builtin("succ-cls1"));
  a.alphabet = Alphabet::annotated(base, 1);
  a.states = {"u", "k"};
  const std::size_t succ = 0, cls = 1, u = 0, k = 1;
  a.finals = {{true, true}, {false, true}};
  a.global = GlobalCondition::truth();
  std::vector<std::optional<std::size_t>> succ_sources{std::nullopt, u, k};
  for (LabelId l = 0; l < static_cast<LabelId>(base.size()); ++l) {
    for (const auto& sp : succ_sources) {
      // class start: unmarked; then marks flip along the class
      const std::vector<std::pair<std::optional<std::size_t>, std::size_t>> moves{
          {std::nullopt, u}, {u, k}, {k, u}};
      for (const auto& [cp, target] : moves) {
        if (cp && !sp) continue;  // a class predecessor implies a successor predecessor
        Transition t;
        t.guard = Guard::truth();
        t.label = a.alphabet.extended_label(l, target == k ? 1u : 0u);
        t.target = target;
        t.sources.assign(2, std::nullopt);
        t.sources[succ] = sp;
        t.sources[cls] = cp;
        a.transitions.push_back(std::move(t));
      }
    }
  }
  return a;
}

}  // namespace dwcra
