// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "dwcra/closure.hpp"
#include "dwcra/corpus.hpp"
#include "dwcra/cra.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/hanf.hpp"
#include "dwcra/signature.hpp"
#include "dwcra/sphere.hpp"
#include "dwcra/sphere_automaton.hpp"
#include "dwcra/word_io.hpp"

namespace dwcra {
namespace {

// collects the first failure; later ones only bump the count
struct Check {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;
  std::mutex mu;

  void expect(bool ok, const std::string& what) {
    std::lock_guard<std::mutex> lock(mu);
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  template <class F>
  void expect_lazy(bool ok, F&& what) {
    if (ok) {
      std::lock_guard<std::mutex> lock(mu);
      ++cases;
      return;
    }
    expect(false, what());
  }
  std::string summary(const std::string& extra = {}) const {
    std::string s = std::to_string(cases) + " checks";
    if (!extra.empty()) s += ", " + extra;
    if (failures) s += "; " + std::to_string(failures) + " failed, first: " + first;
    return s;
  }
};

unsigned thread_count(const AcceptanceOptions& o) {
  if (o.threads) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs visit on every enumerated word, strided over worker threads.
void parallel_words(const Alphabet& alphabet, std::size_t max_len, std::size_t max_vals, unsigned threads,
                    const std::function<void(const DataWord&)>& visit) {
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      std::uint64_t index = 0;
      for_each_word(alphabet, max_len, max_vals, [&](const DataWord& w) {
        if (index++ % threads == t) visit(w);
      });
    });
  }
  for (auto& th : pool) th.join();
}

std::set<std::pair<std::size_t, std::size_t>> as_set(const Relation& r) { return {r.begin(), r.end()}; }

std::string pairs_text(const Relation& r) {
  std::string s = "{";
  for (const auto& [i, j] : as_set(r)) s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  return s + "}";
}

// --- 1
std::string server_log(Check& c) {
  const Signature sig = Signature::builtin("succ-cls1");
  const DataWord w1 = fixture_word("fig1-word");
  const auto rel = interpret(sig, w1);
  Relation succ;
  for (std::size_t i = 1; i < 8; ++i) succ.emplace_back(i, i + 1);
  c.expect(w1.size() == 8, "W1 has 8 positions");
  c.expect(as_set(rel[0]) == as_set(succ), "succ = " + pairs_text(rel[0]));
  const Relation cls{{2, 7}, {3, 5}, {4, 6}, {6, 8}};
  c.expect(as_set(rel[1]) == as_set(cls), "cls1 = " + pairs_text(rel[1]));
  const DWGraph g = build_graph(sig, w1);
  const auto d18 = dist(g, 1, 8);
  c.expect(d18 && *d18 == 3, "dist(1,8) != 3");
  const Sphere s = extract_sphere(g, 4, 1);
  std::set<std::size_t> nodes;
  for (int v = 0; v < s.size(); ++v) nodes.insert(s.node(v).position);
  c.expect(nodes == std::set<std::size_t>{3, 4, 5, 6}, "sphere node set");
  c.expect(s.node(s.center()).position == 4, "sphere center");
  std::set<std::pair<std::size_t, std::size_t>> edges[2];
  for (int sym = 0; sym < 2; ++sym)
    for (int v = 0; v < s.size(); ++v)
      if (s.succ(sym, v) >= 0) edges[sym].emplace(s.node(v).position, s.node(s.succ(sym, v)).position);
  c.expect(edges[0] == std::set<std::pair<std::size_t, std::size_t>>{{3, 4}, {4, 5}, {5, 6}}, "sphere succ edges");
  c.expect(edges[1] == std::set<std::pair<std::size_t, std::size_t>>{{3, 5}, {4, 6}}, "sphere cls1 edges");
  return c.summary();
}

// --- 2
std::string msc_word(Check& c) {
  const Signature sig = Signature::builtin("dyn");
  const DataWord w2 = fixture_word("fig2-word");
  const auto rel = interpret(sig, w2);
  const Relation proc{{1, 2}, {2, 4}, {4, 6}, {3, 7}, {7, 10}, {10, 11}, {5, 8}, {8, 9}};
  const Relation fork{{2, 3}, {4, 5}};
  const Relation msg{{6, 7}, {8, 10}, {9, 11}};
  c.expect(as_set(rel[*sig.index_of("proc")]) == as_set(proc), "proc = " + pairs_text(rel[*sig.index_of("proc")]));
  c.expect(as_set(rel[*sig.index_of("fork")]) == as_set(fork), "fork = " + pairs_text(rel[*sig.index_of("fork")]));
  c.expect(as_set(rel[*sig.index_of("msg")]) == as_set(msg), "msg = " + pairs_text(rel[*sig.index_of("msg")]));
  const Formula wf = fixture_formula("msc-wf");
  c.expect(eval_sentence(sig, w2, wf), "MSC well-formedness false on W2");
  const DataWord cut = w2.without_position(1);
  c.expect(!eval_sentence(sig, cut, wf), "MSC well-formedness true without position 1");
  c.expect(!eval_sentence(sig, cut, fixture_formula("msc-root")), "root clause survives deleting position 1");
  return c.summary();
}

// --- 3
std::string reqack(Check& c, unsigned threads) {
  const CRA a = fixture_automaton("fig3");
  const auto report = validate(a);
  c.expect(report.ok() && report.is_non_guessing, "fig3 automaton is not a valid non-guessing CRA");
  const DataWord w = fixture_word("fig3-word");
  Run run;
  auto conf = [](std::size_t q, std::optional<Value> r1, std::optional<Value> r2) {
    return Configuration{q, {r1, r2}};
  };
  run.configurations = {conf(0, 8, std::nullopt), conf(0, 5, 8), conf(1, 8, std::nullopt), conf(1, 5, std::nullopt)};
  run.witnesses = {0, 1, 2, 3};
  const auto verdict = run_check(a, w, run);
  c.expect(verdict.accepted, "tabulated run rejected: " + verdict.reason);
  c.expect(membership(a, w).accepted(), "membership finds no run on the fig3 word");
  c.expect(!membership(a, parse_inline_word("(r,8)(a,5)", a.alphabet)).accepted(), "(r,8)(a,5) accepted");
  std::atomic<std::uint64_t> members{0};
  parallel_words(a.alphabet, 8, 8, threads, [&](const DataWord& u) {
    const auto m = membership(a, u);
    const bool expected = in_reqack_language(u);
    if (expected) ++members;
    c.expect_lazy(m.status != MembershipStatus::BudgetExceeded && m.accepted() == expected, [&] {
      return format_inline_word(u) + (expected ? " rejected" : " accepted");
    });
  });
  c.expect(members.load() == reqack_language(8).size(), "generated language size mismatch");
  return c.summary(std::to_string(members.load()) + " members");
}

// --- 4 and 5 share the corpus
struct SphereCase {
  Signature sig;
  DataWord w;
  std::size_t radius;
};

std::vector<SphereCase> sphere_corpus() {
  std::vector<SphereCase> out;
  const Signature sig = Signature::builtin("succ-cls1");
  const auto words = enumerate_words(sig, Alphabet({"r", "a"}, 1), 6, 3);
  for (std::size_t b : {0, 1})
    for (const auto& w : words) out.push_back({sig, w, b});
  out.push_back({Signature::builtin("dyn"), fixture_word("fig2-word"), 1});
  return out;
}

std::string sphere_runs(Check& c, unsigned threads, std::uint64_t seed) {
  const auto corpus = sphere_corpus();
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < corpus.size(); k = next++) {
        const auto& sc = corpus[k];
        const std::string tag = format_inline_word(sc.w) + " B=" + std::to_string(sc.radius);
        try {
          const SphereRun run = build_canonical_run(sc.sig, sc.w, sc.radius);
          const auto v = verify_sphere_run(sc.sig, sc.w, sc.radius, run);
          c.expect_lazy(v.accepted, [&] { return tag + ": " + v.reason; });
          const DWGraph g = build_graph(sc.sig, sc.w);
          for (std::size_t i = 1; i <= sc.w.size(); ++i)
            c.expect_lazy(canonicalize(pi(run.states[i - 1])) == canonicalize(extract_sphere(g, i, sc.radius)),
                          [&] { return tag + ": pi(q" + std::to_string(i) + ") differs from its sphere"; });
        } catch (const std::exception& e) {
          c.expect(false, tag + ": " + e.what());
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  // perturb one register of a canonical run to a value outside the word
  std::mt19937_64 rng(seed);
  std::size_t done = 0, attempts = 0;
  while (done < 50 && attempts < 10000) {
    ++attempts;
    const auto& sc = corpus[std::uniform_int_distribution<std::size_t>(0, corpus.size() - 1)(rng)];
    if (sc.w.empty()) continue;
    SphereRun run = build_canonical_run(sc.sig, sc.w, sc.radius);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, sc.w.size() - 1)(rng);
    auto& regs = run.registers[i];
    if (regs.empty()) continue;
    auto it = regs.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, regs.size() - 1)(rng));
    Value fresh = 0;
    for (const auto& l : sc.w.letters())
      for (Value v : l.data) fresh = std::max(fresh, v);
    it->second = fresh + 1;
    const auto v = verify_sphere_run(sc.sig, sc.w, sc.radius, run);
    c.expect(!v.accepted, "perturbed run accepted: " + format_inline_word(sc.w) + " position " + std::to_string(i + 1));
    ++done;
  }
  c.expect(done == 50, "could not draw 50 perturbations");
  return c.summary(std::to_string(corpus.size()) + " runs, " + std::to_string(done) + " perturbations");
}

std::string coloring_and_invariance(Check& c, unsigned threads) {
  const auto corpus = sphere_corpus();
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < corpus.size(); k = next++) {
        const auto& sc = corpus[k];
        const std::string tag = format_inline_word(sc.w) + " B=" + std::to_string(sc.radius);
        try {
          const DWGraph g = build_graph(sc.sig, sc.w);
          const auto col = overlap_coloring(g, sc.radius);
          const auto bound = color_bound(sc.radius, sc.sig.size());
          const std::size_t n = sc.w.size();
          std::vector<CanonicalKey> keys;
          for (std::size_t i = 1; i <= n; ++i) keys.push_back(canonicalize(extract_sphere(g, i, sc.radius)));
          bool ok = true;
          for (std::size_t i = 1; i <= n && ok; ++i) {
            if (col[i - 1] < 1 || col[i - 1] > bound) ok = false;
            const auto d = g.distances_from(i, 2 * sc.radius + 1);
            for (std::size_t j = i + 1; j <= n && ok; ++j)
              if (d[j] && keys[i - 1] == keys[j - 1] && col[i - 1] == col[j - 1]) ok = false;
          }
          c.expect_lazy(ok, [&] { return tag + ": overlap coloring"; });
          const SphereRun run = build_canonical_run(sc.sig, sc.w, sc.radius);
          const auto inv = check_register_invariance(sc.sig, sc.w, run);
          c.expect_lazy(!inv, [&] { return tag + ": " + *inv; });
        } catch (const std::exception& e) {
          c.expect(false, tag + ": " + e.what());
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  return c.summary(std::to_string(corpus.size()) + " words");
}

// --- 6
std::string hanf_consistency(Check& c) {
  std::string params;
  for (const char* name : {"phi1", "phi2", "succ-rr", "ack-has-request"}) {
    const Signature sig = fixture_signature(name);
    const Alphabet alphabet = fixture_alphabet(name);
    const Formula phi = fixture_formula(name);
    CompileOptions opt;
    opt.max_len = 6;
    opt.max_vals = 3;
    try {
      const auto compiled = compile(sig, alphabet, phi, opt);
      const auto bad = validate_params(sig, alphabet, phi, compiled.params);
      c.expect_lazy(!bad, [&] {
        return std::string(name) + ": " + format_inline_word(bad->u) + " vs " + format_inline_word(bad->v);
      });
      params += std::string(params.empty() ? "" : " ") + name + ":B=" + std::to_string(compiled.params.radius) +
                ",t=" + std::to_string(compiled.params.threshold);
    } catch (const std::exception& e) {
      c.expect(false, std::string(name) + ": " + e.what());
    }
  }
  return c.summary(params);
}

// --- 7
std::string compiled_vs_eval(Check& c, unsigned threads) {
  std::string info;
  for (const char* name : {"phi1", "phi2", "emso-even"}) {
    const Signature sig = fixture_signature(name);
    const Alphabet alphabet = fixture_alphabet(name);
    const Formula phi = fixture_formula(name);
    CompileOptions opt;
    opt.max_len = 5;
    opt.max_vals = 3;
    try {
      const auto compiled = compile(sig, alphabet, phi, opt);
      std::atomic<std::size_t> words{0};
      parallel_words(alphabet, 5, 3, threads, [&](const DataWord& w) {
        ++words;
        const auto m = compiled_membership(compiled, w);
        const bool expected = eval_sentence(sig, w, phi);
        c.expect_lazy(m.status != CompiledStatus::OutOfCoverage, [&] {
          return std::string(name) + ": out of coverage on " + format_inline_word(w);
        });
        c.expect_lazy((m.status == CompiledStatus::Accepted) == expected, [&] {
          return std::string(name) + ": disagrees with eval on " + format_inline_word(w);
        });
      });
      info += std::string(info.empty() ? "" : " ") + name + ":" + std::to_string(compiled.table.entries.size()) +
              " types/" + std::to_string(words.load()) + " words";
    } catch (const std::exception& e) {
      c.expect(false, std::string(name) + ": " + e.what());
    }
  }
  return c.summary(info);
}

// --- 8
std::string closure_laws(Check& c, unsigned threads) {
  const Signature sig = Signature::builtin("succ-cls1");
  const Alphabet alphabet({"r", "a"}, 1);
  std::vector<std::pair<std::string, CRA>> autos;
  for (const char* name : {"fig3", "class-alternation", "first-is-last"}) autos.emplace_back(name, fixture_automaton(name));
  autos.emplace_back("universal", universal_automaton(sig, alphabet));
  autos.emplace_back("empty-word", empty_word_automaton(sig, alphabet));
  autos.emplace_back("exact-fig3-word", exact_word_automaton(sig, fixture_word("fig3-word")));

  struct Pair {
    std::string name;
    std::size_t a, b;
    CRA uni, inter;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = i; j < autos.size(); ++j)
      pairs.push_back({autos[i].first + "," + autos[j].first, i, j, cra_union(autos[i].second, autos[j].second),
                       cra_intersect(autos[i].second, autos[j].second)});
  const CRA marks = alternating_marks_automaton(alphabet);
  const CRA projected = cra_project(marks);
  const CRA projected_both = cra_project(cra_intersect(marks, marks));

  auto accepts = [&](const CRA& a, const DataWord& w, const std::string& what) {
    const auto m = membership(a, w);
    if (m.status == MembershipStatus::BudgetExceeded) c.expect(false, what + ": budget exceeded");
    return m.accepted();
  };
  parallel_words(alphabet, 5, 5, threads, [&](const DataWord& w) {
    const std::string ws = format_inline_word(w);
    std::vector<bool> base;
    for (const auto& [name, a] : autos) base.push_back(accepts(a, w, name));
    for (const auto& p : pairs) {
      c.expect_lazy(accepts(p.uni, w, p.name) == (base[p.a] || base[p.b]),
                    [&] { return "union " + p.name + " on " + ws; });
      c.expect_lazy(accepts(p.inter, w, p.name) == (base[p.a] && base[p.b]),
                    [&] { return "intersection " + p.name + " on " + ws; });
    }
    // projection: some annotation is accepted; oracle: all classes even
    bool some = false;
    const Alphabet ext = marks.alphabet;
    std::vector<std::uint32_t> masks(w.size(), 0);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << w.size()) && !some; ++x) {
      for (std::size_t i = 0; i < w.size(); ++i) masks[i] = (x >> i) & 1u;
      some = accepts(marks, annotate(w, ext, masks), "marks");
    }
    std::map<Value, std::size_t> sizes;
    for (std::size_t i = 1; i <= w.size(); ++i) ++sizes[w.value(i, 1)];
    bool even = true;
    for (const auto& [v, n] : sizes) even = even && n % 2 == 0;
    c.expect_lazy(some == even, [&] { return "annotated automaton vs even classes on " + ws; });
    c.expect_lazy(accepts(projected, w, "projection") == some, [&] { return "projection on " + ws; });
    c.expect_lazy(accepts(projected_both, w, "projection") == some, [&] { return "projection of product on " + ws; });
  });
  return c.summary(std::to_string(autos.size()) + " automata, " + std::to_string(pairs.size()) + " pairs");
}

// --- 9
std::string pattern_words(Check& c) {
  const Signature sig = fixture_signature("pattern");
  const Formula phi = fixture_formula("pattern");
  for (std::size_t k : {1, 2, 3}) {
    const DataWord w = gen_nested_patterns(k);
    c.expect(w.size() == 4 * k, "nested(" + std::to_string(k) + ") size");
    c.expect(eval_sentence(sig, w, phi), "pattern false on nested(" + std::to_string(k) + ")");
  }
  c.expect(!eval_sentence(sig, gen_merged_patterns(), phi), "pattern true on merged()");
  return c.summary();
}

// --- 10
std::string rmso_invariance(Check& c) {
  struct Group {
    std::string sig;
    Alphabet alphabet;
    std::size_t max_len, max_vals;
    std::vector<std::string> sentences;
  };
  const std::vector<Group> groups{
      {"cls1-cls2", Alphabet({"a"}, 2), 4, 3, {"pattern"}},
      {"dyn", Alphabet({"n", "f", "!", "?"}, 2), 3, 2,
       {"msc-root", "msc-structure", "msc-channels", "msc-wf", "fork-msg"}},
      {"succ-cls1", Alphabet({"r", "a"}, 1), 5, 3, {"phi1", "phi2", "phi3", "succ-rr", "ack-has-request", "emso-even"}},
  };
  std::size_t pairs = 0, structural = 0;
  for (const auto& grp : groups) {
    const Signature sig = Signature::builtin(grp.sig);
    std::vector<Formula> sentences;
    for (const auto& name : grp.sentences) {
      const Formula f = fixture_formula(name);
      c.expect(classify(f).is_rMSO, name + " is not rMSO");
      sentences.push_back(f);
    }
    // distinct words sharing a graph code first, then value renamings
    std::map<std::string, DataWord> first_of;
    std::vector<std::pair<DataWord, DataWord>> found;
    const std::size_t quota = 34;
    for (const auto& w : enumerate_words(sig, grp.alphabet, grp.max_len, grp.max_vals)) {
      if (found.size() >= quota) break;
      const auto code = graph_code(build_graph(sig, w));
      auto [it, fresh] = first_of.emplace(code, w);
      if (!fresh) found.emplace_back(it->second, w);
    }
    structural += found.size();
    for (const auto& [code, w] : first_of) {
      if (found.size() >= quota) break;
      std::vector<Letter> letters = w.letters();
      for (auto& l : letters)
        for (auto& v : l.data) v = 1000 - 7 * v;
      found.emplace_back(w, DataWord(w.alphabet(), letters));
    }
    for (const auto& [u, v] : found) {
      c.expect(equivalent(sig, u, v), "pair not equivalent: " + format_inline_word(u) + " / " + format_inline_word(v));
      for (std::size_t s = 0; s < sentences.size(); ++s)
        c.expect_lazy(eval_sentence(sig, u, sentences[s]) == eval_sentence(sig, v, sentences[s]), [&] {
          return grp.sentences[s] + " differs on " + format_inline_word(u) + " / " + format_inline_word(v);
        });
    }
    pairs += found.size();
  }
  c.expect(pairs >= 100, "fewer than 100 pairs");
  return c.summary(std::to_string(pairs) + " pairs (" + std::to_string(structural) + " with distinct normal forms)");
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<std::string(Check&, const AcceptanceOptions&)> body;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const unsigned threads = thread_count(options);
  const std::vector<Criterion> criteria{
      {1, "fig1-reproduction", 1, [](Check& c, const AcceptanceOptions&) { return server_log(c); }},
      {2, "fig2-reproduction", 1, [](Check& c, const AcceptanceOptions&) { return msc_word(c); }},
      {3, "fig3-reproduction", 30, [threads](Check& c, const AcceptanceOptions&) { return reqack(c, threads); }},
      {4, "sphere-automaton-runs", 300,
       [threads](Check& c, const AcceptanceOptions& o) { return sphere_runs(c, threads, o.seed); }},
      {5, "coloring-and-invariance", 120,
       [threads](Check& c, const AcceptanceOptions&) { return coloring_and_invariance(c, threads); }},
      {6, "hanf-consistency", 300, [](Check& c, const AcceptanceOptions&) { return hanf_consistency(c); }},
      {7, "compiled-membership", 600, [threads](Check& c, const AcceptanceOptions&) { return compiled_vs_eval(c, threads); }},
      {8, "closure-laws", 120, [threads](Check& c, const AcceptanceOptions&) { return closure_laws(c, threads); }},
      {9, "pattern-words", 1, [](Check& c, const AcceptanceOptions&) { return pattern_words(c); }},
      {10, "rmso-invariance", 120, [](Check& c, const AcceptanceOptions&) { return rmso_invariance(c); }},
  };
  std::vector<CriterionResult> out;
  for (const auto& cr : criteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), cr.id) == options.only.end())
      continue;
    CriterionResult r;
    r.id = cr.id;
    r.name = cr.name;
    r.limit_seconds = cr.limit;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = cr.body(check, options);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
      r.detail = check.summary();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = check.failures == 0 && r.seconds <= r.limit_seconds;
    if (check.failures == 0 && !r.passed) r.detail += "; time limit exceeded";
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.limit_seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + " (" + timing +
         "): " + r.detail;
}

}  // namespace dwcra
