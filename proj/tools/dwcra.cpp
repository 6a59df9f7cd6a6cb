// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
// dwcra: command-line front end. Exit 0 ok, 1 property failure, 2 usage/format error.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dwcra/acceptance.hpp"
#include "dwcra/corpus.hpp"
#include "dwcra/cra.hpp"
#include "dwcra/cra_io.hpp"
#include "dwcra/errors.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/hanf.hpp"
#include "dwcra/signature.hpp"
#include "dwcra/sphere.hpp"
#include "dwcra/sphere_automaton.hpp"
#include "dwcra/word_io.hpp"

using namespace dwcra;
using json = nlohmann::ordered_json;

namespace {

struct Args {
  std::string sig, word, formula, automaton, table, emit_dot, alphabet = "r,a", only;
  std::size_t radius = 1, threshold = 1, max_len = 4, max_vals = 3;
  std::optional<std::size_t> radius_opt, threshold_opt;
  std::uint64_t budget = 5'000'000;
  int m = 1;
  bool json = false, reject_uncovered = false;
  std::string name;
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_fixture(const std::string& s) { return s.rfind("fix:", 0) == 0; }
std::string fixture_name(const std::string& s) { return s.substr(4); }

bool is_file(const std::string& s) {
  std::error_code ec;
  return !s.empty() && std::filesystem::is_regular_file(s, ec);
}

void write_dot(const std::string& path, const std::string& dot) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << dot;
}

// --sig wins; otherwise the signature of the first fixture or automaton given
Signature resolve_signature(const Args& a) {
  if (!a.sig.empty()) {
    if (is_file(a.sig)) {
      std::istringstream in(read_file(a.sig));
      std::string line;
      while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        return Signature::builtin(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
      }
      throw FormatError("signature file '" + a.sig + "' is empty");
    }
    return Signature::builtin(a.sig);
  }
  if (!a.automaton.empty()) {
    if (is_fixture(a.automaton)) return fixture_signature(fixture_name(a.automaton));
    return parse_cra(read_file(a.automaton)).signature;
  }
  for (const auto* s : {&a.formula, &a.word})
    if (is_fixture(*s)) return fixture_signature(fixture_name(*s));
  return Signature::builtin("succ-cls1");
}

DataWord resolve_word(const std::string& spec, const std::optional<Alphabet>& alphabet = std::nullopt) {
  if (spec.empty()) throw PreconditionError("--word is required");
  if (is_fixture(spec)) return fixture_word(fixture_name(spec));
  if (is_file(spec)) return parse_word(read_file(spec));
  return parse_inline_word(spec, alphabet);
}

Formula resolve_formula(const std::string& spec, const ParseContext* ctx) {
  if (spec.empty()) throw PreconditionError("--formula is required");
  if (is_fixture(spec)) return fixture_formula(fixture_name(spec));
  if (is_file(spec)) return parse_formula(read_file(spec), ctx);
  return parse_formula(spec, ctx);
}

CRA resolve_automaton(const std::string& spec) {
  if (spec.empty()) throw PreconditionError("--automaton is required");
  if (is_fixture(spec)) return fixture_automaton(fixture_name(spec));
  return parse_cra(read_file(spec));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json relations_json(const Signature& sig, const DataWord& w) {
  const auto rel = interpret(sig, w);
  json j = json::object();
  for (std::size_t s = 0; s < sig.size(); ++s) {
    json pairs = json::array();
    for (const auto& [i, k] : rel[s]) pairs.push_back({i, k});
    j[sig.symbol(s).name] = pairs;
  }
  return j;
}

int cmd_validate(const Args& a) {
  if (!a.automaton.empty()) {
    const CRA c = resolve_automaton(a.automaton);
    const auto r = validate(c);
    if (a.json) {
      std::cout << json{{"ok", r.ok()},
                        {"cma", r.is_CMA},
                        {"non_guessing", r.is_non_guessing},
                        {"register_automaton", r.is_register_automaton},
                        {"problems", r.problems}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << (r.ok() ? "valid" : "invalid") << "\n";
      std::cout << "CMA: " << (r.is_CMA ? "yes" : "no") << "\nnon-guessing: " << (r.is_non_guessing ? "yes" : "no")
                << "\nregister automaton: " << (r.is_register_automaton ? "yes" : "no") << "\n";
      for (const auto& p : r.problems) std::cout << "problem: " << p << "\n";
    }
    return r.ok() ? 0 : 1;
  }
  if (!a.formula.empty()) {
    const Signature sig = resolve_signature(a);
    std::optional<ParseContext> ctx;
    if (!a.word.empty()) ctx = ParseContext::of(sig, resolve_word(a.word).alphabet());
    const Formula f = resolve_formula(a.formula, ctx ? &*ctx : nullptr);
    const auto r = classify(f);
    if (a.json)
      std::cout << json{{"formula", to_string(f)},
                        {"sentence", r.is_sentence},
                        {"FO", r.is_FO},
                        {"EMSO", r.is_EMSO},
                        {"rMSO", r.is_rMSO},
                        {"rFO", r.is_rFO},
                        {"rEMSO", r.is_rEMSO},
                        {"qrank", r.qrank}}
                       .dump(2)
                << "\n";
    else
      std::cout << to_string(f) << "\n" << r.to_string() << "\n";
    return 0;
  }
  const Signature sig = resolve_signature(a);
  const DataWord w = resolve_word(a.word);
  const auto v = axiom_check(sig, w);
  if (a.json)
    std::cout << json{{"ok", !v}, {"violation", v ? v->message() : ""}}.dump(2) << "\n";
  else
    std::cout << (v ? "violation: " + v->message() : std::string("axioms hold")) << "\n";
  return v ? 1 : 0;
}

int cmd_graph(const Args& a) {
  const Signature sig = resolve_signature(a);
  const DataWord w = resolve_word(a.word);
  const DWGraph g = build_graph(sig, w);
  if (!a.emit_dot.empty()) write_dot(a.emit_dot, graph_to_dot(g, w.alphabet()));
  if (a.json) {
    json nodes = json::array();
    for (std::size_t i = 1; i <= w.size(); ++i)
      nodes.push_back({{"pos", i}, {"label", w.label_name(i)}, {"nu", g.nu(i).to_string()}});
    std::cout << json{{"signature", sig.name()}, {"nodes", nodes}, {"relations", relations_json(sig, w)}}.dump(2)
              << "\n";
    return 0;
  }
  for (std::size_t i = 1; i <= w.size(); ++i) std::cout << i << " " << w.label_name(i) << " " << g.nu(i).to_string() << "\n";
  const auto rel = interpret(sig, w);
  for (std::size_t s = 0; s < sig.size(); ++s) {
    std::cout << sig.symbol(s).name << ":";
    for (const auto& [i, k] : rel[s]) std::cout << " (" << i << "," << k << ")";
    std::cout << "\n";
  }
  return 0;
}

int cmd_eval(const Args& a) {
  const Signature sig = resolve_signature(a);
  const DataWord w = resolve_word(a.word);
  const auto ctx = ParseContext::of(sig, w.alphabet());
  const Formula f = resolve_formula(a.formula, is_fixture(a.formula) ? nullptr : &ctx);
  const bool v = eval_sentence(sig, w, f);
  if (a.json)
    std::cout << json{{"value", v}}.dump() << "\n";
  else
    std::cout << (v ? "true" : "false") << "\n";
  return v ? 0 : 1;
}

int cmd_member(const Args& a, bool show_run) {
  if (!a.table.empty()) {
    const CompiledCRA c = compiled_from_json(read_file(a.table));
    const DataWord w = resolve_word(a.word, c.alphabet);
    const auto m = compiled_membership(c, w);
    const char* text = m.status == CompiledStatus::Accepted   ? "accepted"
                       : m.status == CompiledStatus::Rejected ? "no accepting run"
                                                              : "out of coverage";
    if (a.json)
      std::cout << json{{"status", text}, {"annotation", m.annotation}, {"annotations_tried", m.annotations_tried}}
                       .dump(2)
                << "\n";
    else
      std::cout << text << "\n";
    return m.status == CompiledStatus::Accepted ? 0 : 1;
  }
  const CRA c = resolve_automaton(a.automaton);
  const DataWord w = resolve_word(a.word, c.alphabet);
  const auto m = membership(c, w, {a.budget});
  if (m.status == MembershipStatus::BudgetExceeded) {
    std::cout << "budget exceeded after " << m.nodes << " nodes\n";
    return 1;
  }
  if (a.json) {
    json j{{"accepted", m.accepted()}, {"nodes", m.nodes}};
    if (m.run) {
      json states = json::array();
      for (const auto& conf : m.run->configurations) states.push_back(c.states[conf.state]);
      j["states"] = states;
    }
    std::cout << j.dump(2) << "\n";
  } else if (!m.accepted()) {
    std::cout << "no accepting run\n";
  } else if (show_run) {
    std::cout << format_run(c, w, *m.run);
  } else {
    std::cout << "accepted\n";
  }
  return m.accepted() ? 0 : 1;
}

int cmd_spheres(const Args& a) {
  const Signature sig = resolve_signature(a);
  const DataWord w = resolve_word(a.word);
  const DWGraph g = build_graph(sig, w);
  const auto colors = overlap_coloring(g, a.radius);
  json rows = json::array();
  std::string dot;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const Sphere s = extract_sphere(g, i, a.radius);
    std::vector<std::size_t> pos;
    for (int v = 0; v < s.size(); ++v) pos.push_back(s.node(v).position);
    std::sort(pos.begin(), pos.end());
    const auto key = canonicalize(s).hex();
    if (a.json) {
      rows.push_back({{"pos", i}, {"nodes", pos}, {"key", key}, {"color", colors[i - 1]}});
    } else {
      std::cout << i << " nodes={";
      for (std::size_t k = 0; k < pos.size(); ++k) std::cout << (k ? "," : "") << pos[k];
      std::cout << "} color=" << colors[i - 1] << " key=" << key << "\n";
    }
    if (!a.emit_dot.empty()) dot += sphere_to_dot(s, w.alphabet(), g.symbol_names());
  }
  if (!a.emit_dot.empty()) write_dot(a.emit_dot, dot);
  if (a.json) std::cout << json{{"radius", a.radius}, {"spheres", rows}}.dump(2) << "\n";
  return 0;
}

int cmd_hanf_type(const Args& a) {
  const Signature sig = resolve_signature(a);
  const DataWord w = resolve_word(a.word);
  const HanfType t = hanf_type(sig, w, a.radius, a.threshold);
  if (a.json) {
    json counts = json::array();
    for (const auto& [k, n] : t.counts) counts.push_back({{"key", k.hex()}, {"count", n}});
    std::cout << json{{"radius", t.radius}, {"threshold", t.threshold}, {"counts", counts}}.dump(2) << "\n";
  } else {
    std::cout << t.key() << "\n";
  }
  return 0;
}

int cmd_compile(const Args& a) {
  const Signature sig = resolve_signature(a);
  Alphabet alphabet = is_fixture(a.formula) ? fixture_alphabet(fixture_name(a.formula))
                                            : Alphabet(split_list(a.alphabet), a.m);
  const auto ctx = ParseContext::of(sig, alphabet);
  const Formula f = resolve_formula(a.formula, is_fixture(a.formula) ? nullptr : &ctx);
  CompileOptions opt;
  opt.max_len = a.max_len;
  opt.max_vals = a.max_vals;
  opt.policy = a.reject_uncovered ? CoveragePolicy::Reject : CoveragePolicy::Error;
  if (a.radius_opt || a.threshold_opt) {
    const auto d = default_params(rewrite_kernel(f, alphabet).kernel, a.max_len, a.max_vals);
    opt.params = HanfParams{a.radius_opt.value_or(d.radius), a.threshold_opt.value_or(d.threshold), a.max_len,
                            a.max_vals};
  }
  const CompiledCRA c = compile(sig, alphabet, f, opt);
  std::cout << compiled_to_json(c);
  return 0;
}

int cmd_enumerate(const Args& a) {
  const Signature sig = resolve_signature(a);
  const Alphabet alphabet(split_list(a.alphabet), a.m);
  const auto words = enumerate_words(sig, alphabet, a.max_len, a.max_vals);
  if (a.json) {
    json arr = json::array();
    for (const auto& w : words) arr.push_back(format_inline_word(w));
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& w : words) std::cout << (w.empty() ? "()" : format_inline_word(w)) << "\n";
  }
  return 0;
}

int cmd_oracle(const Args& a) {
  AcceptanceOptions opt;
  opt.threads = a.threads;
  for (const auto& s : split_list(a.only)) opt.only.push_back(std::stoi(s));
  opt.on_result = [&](const CriterionResult& r) {
    if (!a.json) std::cout << format_result(r) << std::endl;
  };
  const auto results = run_acceptance(opt);
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (a.json) std::cout << arr.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_examples_list(const Args& a) {
  if (a.json) {
    json arr = json::array();
    for (const auto& f : fixtures()) arr.push_back({{"name", f.name}, {"kind", kind_name(f.kind)}, {"note", f.note}});
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  for (const auto& f : fixtures()) std::cout << f.name << "\t" << kind_name(f.kind) << "\t" << f.note << "\n";
  return 0;
}

int cmd_examples_show(const Args& a) {
  const Fixture& f = fixture(a.name);
  std::cout << "# " << f.name << " (" << kind_name(f.kind) << ", " << f.signature << "): " << f.note << "\n";
  if (f.kind == FixtureKind::WordFamily)
    std::cout << format_word(fixture_word(f.name));
  else
    std::cout << f.payload << (f.payload.empty() || f.payload.back() == '\n' ? "" : "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data words, class register automata and Hanf compilation"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* c) {
    c->add_option("--sig", a.sig, "signature name or file");
    c->add_option("--word", a.word, "word file, fix:name or inline (r,8)(a,5)");
    c->add_flag("--json", a.json, "JSON output");
  };
  auto* validate_cmd = app.add_subcommand("validate", "validate an automaton, classify a formula or check axioms");
  common(validate_cmd);
  validate_cmd->add_option("--automaton", a.automaton);
  validate_cmd->add_option("--formula", a.formula);
  auto* graph_cmd = app.add_subcommand("graph", "print G(w)");
  common(graph_cmd);
  graph_cmd->add_option("--emit-dot", a.emit_dot);
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence on a word");
  common(eval_cmd);
  eval_cmd->add_option("--formula", a.formula)->required();
  auto* run_cmd = app.add_subcommand("run", "search an accepting run and print it");
  common(run_cmd);
  run_cmd->add_option("--automaton", a.automaton)->required();
  run_cmd->add_option("--budget", a.budget);
  auto* member_cmd = app.add_subcommand("member", "membership of a word");
  common(member_cmd);
  member_cmd->add_option("--automaton", a.automaton);
  member_cmd->add_option("--table", a.table, "compiled table (JSON)");
  member_cmd->add_option("--budget", a.budget);
  auto* spheres_cmd = app.add_subcommand("spheres", "B-spheres and overlap coloring");
  common(spheres_cmd);
  spheres_cmd->add_option("--radius", a.radius);
  spheres_cmd->add_option("--emit-dot", a.emit_dot);
  auto* hanf_cmd = app.add_subcommand("hanf-type", "Hanf type of a word");
  common(hanf_cmd);
  hanf_cmd->add_option("--radius", a.radius);
  hanf_cmd->add_option("--threshold", a.threshold);
  auto* compile_cmd = app.add_subcommand("compile", "compile an rEMSO sentence into a table");
  common(compile_cmd);
  compile_cmd->add_option("--formula", a.formula)->required();
  compile_cmd->add_option("--alphabet", a.alphabet, "comma-separated labels");
  compile_cmd->add_option("--m", a.m);
  compile_cmd->add_option("--radius", a.radius_opt);
  compile_cmd->add_option("--threshold", a.threshold_opt);
  compile_cmd->add_option("--max-len", a.max_len);
  compile_cmd->add_option("--max-vals", a.max_vals);
  compile_cmd->add_flag("--reject-uncovered", a.reject_uncovered);
  auto* enum_cmd = app.add_subcommand("enumerate", "normalized words");
  common(enum_cmd);
  enum_cmd->add_option("--alphabet", a.alphabet);
  enum_cmd->add_option("--m", a.m);
  enum_cmd->add_option("--max-len", a.max_len);
  enum_cmd->add_option("--max-vals", a.max_vals);
  auto* oracle_cmd = app.add_subcommand("oracle", "run the cross-validation suite");
  oracle_cmd->add_option("--only", a.only, "comma-separated criterion ids");
  oracle_cmd->add_option("--threads", a.threads);
  oracle_cmd->add_flag("--json", a.json);
  auto* examples_cmd = app.add_subcommand("examples", "built-in fixtures");
  examples_cmd->require_subcommand(1);
  auto* list_cmd = examples_cmd->add_subcommand("list");
  list_cmd->add_flag("--json", a.json);
  auto* show_cmd = examples_cmd->add_subcommand("show");
  show_cmd->add_option("name", a.name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*validate_cmd) return cmd_validate(a);
    if (*graph_cmd) return cmd_graph(a);
    if (*eval_cmd) return cmd_eval(a);
    if (*run_cmd) return cmd_member(a, true);
    if (*member_cmd) return cmd_member(a, false);
    if (*spheres_cmd) return cmd_spheres(a);
    if (*hanf_cmd) return cmd_hanf_type(a);
    if (*compile_cmd) return cmd_compile(a);
    if (*enum_cmd) return cmd_enumerate(a);
    if (*oracle_cmd) return cmd_oracle(a);
    if (*list_cmd) return cmd_examples_list(a);
    if (*show_cmd) return cmd_examples_show(a);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
