// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/hanf.hpp"

#include <algorithm>
#include <json.hpp>

#include "dwcra/errors.hpp"
#include "dwcra/graph.hpp"
#include "dwcra/word_io.hpp"

namespace dwcra {
namespace {

Formula rewrite(const Formula& f, const Alphabet& base, const Alphabet& ext, const std::map<std::string, int>& sets) {
  const auto count = ext.annotation_count();
  switch (f.kind()) {
    case FormulaKind::LabelIs: {
      std::vector<Formula> parts;
      if (const auto a = base.find(f.name()))
        for (std::uint32_t mask = 0; mask < count; ++mask)
          parts.push_back(Formula::label_is(f.var(), ext.name(ext.extended_label(*a, mask))));
      return Formula::any_of(parts);
    }
    case FormulaKind::In: {
      const auto it = sets.find(f.var2());
      if (it == sets.end()) throw PreconditionError("free set variable '" + f.var2() + "'");
      std::vector<Formula> parts;
      for (LabelId a = 0; a < static_cast<LabelId>(base.size()); ++a)
        for (std::uint32_t mask = 0; mask < count; ++mask)
          if (mask & (1u << it->second)) parts.push_back(Formula::label_is(f.var(), ext.name(ext.extended_label(a, mask))));
      return Formula::any_of(parts);
    }
    case FormulaKind::Not: return Formula::negation(rewrite(f.child(), base, ext, sets));
    case FormulaKind::Or:
      return Formula::disjunction(rewrite(f.child(0), base, ext, sets), rewrite(f.child(1), base, ext, sets));
    case FormulaKind::And:
      return Formula::conjunction(rewrite(f.child(0), base, ext, sets), rewrite(f.child(1), base, ext, sets));
    case FormulaKind::Implies:
      return Formula::implies(rewrite(f.child(0), base, ext, sets), rewrite(f.child(1), base, ext, sets));
    case FormulaKind::Iff:
      return Formula::iff(rewrite(f.child(0), base, ext, sets), rewrite(f.child(1), base, ext, sets));
    case FormulaKind::ExistsFO: return Formula::exists(f.var(), rewrite(f.child(), base, ext, sets));
    case FormulaKind::ForallFO: return Formula::forall(f.var(), rewrite(f.child(), base, ext, sets));
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO: throw PreconditionError("set quantifier inside the first-order kernel");
    default: return f;
  }
}

struct Fold {
  std::map<std::string, std::pair<bool, DataWord>> seen;
  std::optional<HanfCounterexample> conflict;
  std::size_t words = 0;
};

Fold fold(const Signature& sig, const Alphabet& alphabet, const Formula& kernel, const HanfParams& params,
          bool stop_at_conflict) {
  Fold out;
  const EvalOptions eval_options{64, 64};
  for_each_word(alphabet, params.max_len, params.max_vals, [&](const DataWord& w) {
    if (out.conflict && stop_at_conflict) return;
    ++out.words;
    const bool value = eval_sentence(sig, w, kernel, eval_options);
    const auto key = hanf_type(sig, w, params.radius, params.threshold).key();
    auto [it, fresh] = out.seen.emplace(key, std::make_pair(value, w));
    if (!fresh && it->second.first != value && !out.conflict)
      out.conflict = HanfCounterexample{it->second.second, w, it->second.first, value};
  });
  return out;
}

void enumerate(const Alphabet& alphabet, std::size_t length, std::size_t max_vals, std::vector<Letter>& letters,
               std::vector<std::size_t>& distinct, Value& next_value, std::vector<std::vector<bool>>& used,
               const std::function<void(const DataWord&)>& visit) {
  const std::size_t m = static_cast<std::size_t>(alphabet.arity());
  const std::size_t pos = letters.size();
  if (pos == length) {
    visit(DataWord(alphabet, letters));
    return;
  }
  for (LabelId a = 0; a < static_cast<LabelId>(alphabet.size()); ++a) {
    letters.push_back({a, std::vector<Value>(m, 0)});
    // Fill coordinates one by one: an existing value, or the next fresh one.
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
      if (k == m) {
        enumerate(alphabet, length, max_vals, letters, distinct, next_value, used, visit);
        return;
      }
      for (Value v = 1; v <= next_value; ++v) {
        const bool fresh_value = v == next_value;
        const bool new_in_coord = fresh_value || !used[k][v];
        if (new_in_coord && distinct[k] >= max_vals) continue;
        if (fresh_value) {
          ++next_value;
          for (auto& u : used) u.push_back(false);
        }
        if (new_in_coord) {
          used[k][v] = true;
          ++distinct[k];
        }
        letters.back().data[k] = v;
        fill(k + 1);
        if (new_in_coord) {
          used[k][v] = false;
          --distinct[k];
        }
        if (fresh_value) {
          --next_value;
          for (auto& u : used) u.pop_back();
        }
      }
    };
    fill(0);
    letters.pop_back();
  }
}

}  // namespace

KernelRewrite rewrite_kernel(const Formula& sentence, const Alphabet& alphabet) {
  const auto report = classify(sentence);
  if (!report.is_sentence) throw PreconditionError("not a sentence: " + report.to_string());
  if (!report.is_rEMSO) throw PreconditionError("not an rEMSO sentence: " + report.to_string());
  KernelRewrite out;
  std::map<std::string, int> sets;
  const Formula* kernel = &sentence;
  while (kernel->kind() == FormulaKind::ExistsSO) {
    sets[kernel->var()] = static_cast<int>(out.set_variables.size());
    out.set_variables.push_back(kernel->var());
    kernel = &kernel->child();
  }
  out.extended = Alphabet::annotated(alphabet, static_cast<int>(out.set_variables.size()));
  out.kernel = rewrite(*kernel, alphabet, out.extended, sets);
  return out;
}

std::size_t locality_radius(std::size_t qrank) {
  std::size_t b = 0;
  for (std::size_t k = 0; k < qrank; ++k) b = 3 * b + 1;
  return b;
}

HanfParams default_params(const Formula& kernel, std::size_t max_len, std::size_t max_vals) {
  const auto r = classify(kernel).qrank;
  return {locality_radius(r), std::max<std::size_t>(1, r), max_len, max_vals};
}

void for_each_word(const Alphabet& alphabet, std::size_t max_len, std::size_t max_vals,
                   const std::function<void(const DataWord&)>& visit) {
  const std::size_t m = static_cast<std::size_t>(alphabet.arity());
  for (std::size_t n = 0; n <= max_len; ++n) {
    if (n > 0 && m > 0 && max_vals == 0) break;
    std::vector<Letter> letters;
    std::vector<std::size_t> distinct(m, 0);
    Value next_value = 1;
    std::vector<std::vector<bool>> used(m, std::vector<bool>(2, false));
    enumerate(alphabet, n, max_vals, letters, distinct, next_value, used, visit);
  }
}

std::vector<DataWord> enumerate_words(const Signature& sig, const Alphabet& alphabet, std::size_t max_len,
                                      std::size_t max_vals) {
  if (!sig.renaming_invariant()) throw PreconditionError("enumeration needs a renaming-invariant signature");
  sig.check_arity(alphabet.arity());
  std::vector<DataWord> out;
  for_each_word(alphabet, max_len, max_vals, [&](const DataWord& w) { out.push_back(w); });
  return out;
}

std::optional<HanfCounterexample> validate_params(const Signature& sig, const Alphabet& alphabet,
                                                  const Formula& kernel, const HanfParams& params) {
  return fold(sig, alphabet, kernel, params, true).conflict;
}

std::optional<HanfParams> escalate_params(const Signature& sig, const Alphabet& alphabet, const Formula& kernel,
                                          HanfParams params, std::size_t max_steps) {
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (!validate_params(sig, alphabet, kernel, params)) return params;
    params.radius += 1;
    params.threshold *= 2;
  }
  return std::nullopt;
}

std::optional<bool> BetaTable::lookup(const HanfType& type) const {
  const auto it = entries.find(type.key());
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

namespace {

BetaTable table_of(const Fold& f, const HanfParams& params, CoveragePolicy policy) {
  BetaTable t;
  t.params = params;
  t.policy = policy;
  t.words = f.words;
  for (const auto& [key, entry] : f.seen) t.entries.emplace(key, entry.first);
  return t;
}

}  // namespace

BetaTable build_beta(const Signature& sig, const Alphabet& alphabet, const Formula& kernel, const HanfParams& params,
                     CoveragePolicy policy) {
  const auto f = fold(sig, alphabet, kernel, params, false);
  if (f.conflict)
    throw PreconditionError("inconsistent Hanf table: " + format_inline_word(f.conflict->u) + " and " +
                            format_inline_word(f.conflict->v) + " share a type but differ in truth value");
  return table_of(f, params, policy);
}

CompiledCRA compile(const Signature& sig, const Alphabet& alphabet, const Formula& sentence,
                    const CompileOptions& options) {
  CompiledCRA c;
  c.sentence = sentence;
  c.signature = sig;
  c.alphabet = alphabet;
  c.rewrite = rewrite_kernel(sentence, alphabet);
  c.extended_signature = Signature::extended(sig);
  HanfParams params = options.params ? *options.params : default_params(c.rewrite.kernel, options.max_len, options.max_vals);
  // one pass both validates and tabulates
  const Fold first = fold(c.extended_signature, c.rewrite.extended, c.rewrite.kernel, params, true);
  if (!first.conflict) {
    c.params = params;
    c.table = table_of(first, params, options.policy);
    return c;
  }
  const auto& bad = *first.conflict;
  std::optional<HanfParams> fixed;
  if (options.escalate && !options.params)
    fixed = escalate_params(c.extended_signature, c.rewrite.extended, c.rewrite.kernel, params);
  if (!fixed)
    throw PreconditionError("Hanf parameters B=" + std::to_string(params.radius) + " t=" +
                            std::to_string(params.threshold) + " fail validation: " + format_inline_word(bad.u) +
                            " vs " + format_inline_word(bad.v));
  params = *fixed;
  c.params = params;
  c.table = build_beta(c.extended_signature, c.rewrite.extended, c.rewrite.kernel, params, options.policy);
  return c;
}

CompiledMembership compiled_membership(const CompiledCRA& c, const DataWord& w, std::uint64_t annotation_cap) {
  if (!(w.alphabet() == c.alphabet)) throw PreconditionError("word alphabet differs from the compiled alphabet");
  const Alphabet& ext = c.rewrite.extended;
  const std::uint64_t gamma = ext.annotation_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (total > annotation_cap / gamma) throw BudgetExceeded("annotation enumeration exceeds its cap");
    total *= gamma;
  }
  CompiledMembership out;
  bool uncovered = false;
  std::vector<std::uint32_t> masks(w.size(), 0);
  for (std::uint64_t x = 0; x < total; ++x) {
    ++out.annotations_tried;
    const DataWord aw = annotate(w, ext, masks);
    SphereRun run = build_canonical_run(c.extended_signature, aw, c.params.radius);
    const auto value = c.table.lookup(hanf_type_of_run(run, c.params.threshold));
    if (!value) {
      uncovered = true;
    } else if (*value) {
      out.status = CompiledStatus::Accepted;
      out.annotation = masks;
      out.run = std::move(run);
      return out;
    }
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (++masks[i] < gamma) break;
      masks[i] = 0;
    }
  }
  out.status = uncovered && c.table.policy == CoveragePolicy::Error ? CompiledStatus::OutOfCoverage
                                                                    : CompiledStatus::Rejected;
  return out;
}

std::string policy_name(CoveragePolicy p) { return p == CoveragePolicy::Error ? "error" : "reject"; }

std::string compiled_to_json(const CompiledCRA& c) {
  nlohmann::ordered_json j;
  j["params"] = {{"radius", c.params.radius},
                 {"threshold", c.params.threshold},
                 {"max_len", c.params.max_len},
                 {"max_vals", c.params.max_vals}};
  j["formula"] = to_string(c.sentence);
  j["signature"] = c.signature.name();
  j["alphabet"] = c.alphabet.labels();
  j["m"] = c.alphabet.arity();
  j["policy"] = policy_name(c.table.policy);
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, value] : c.table.entries) entries.push_back({{"type_key", key}, {"value", value}});
  j["entries"] = entries;
  j["coverage"] = {{"max_len", c.params.max_len},
                   {"max_vals", c.params.max_vals},
                   {"words", c.table.words},
                   {"types", c.table.entries.size()}};
  return j.dump(2) + "\n";
}

CompiledCRA compiled_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("table: ") + e.what());
  }
  try {
    CompiledCRA c;
    c.signature = Signature::builtin(j.at("signature").get<std::string>());
    c.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>(), j.at("m").get<int>());
    c.sentence = parse_formula(j.at("formula").get<std::string>());
    c.rewrite = rewrite_kernel(c.sentence, c.alphabet);
    c.extended_signature = Signature::extended(c.signature);
    const auto& p = j.at("params");
    c.params = {p.at("radius").get<std::size_t>(), p.at("threshold").get<std::size_t>(),
                p.at("max_len").get<std::size_t>(), p.at("max_vals").get<std::size_t>()};
    const auto policy = j.at("policy").get<std::string>();
    if (policy != "error" && policy != "reject") throw FormatError("table: unknown policy '" + policy + "'");
    c.table.params = c.params;
    c.table.policy = policy == "error" ? CoveragePolicy::Error : CoveragePolicy::Reject;
    for (const auto& e : j.at("entries")) c.table.entries[e.at("type_key").get<std::string>()] = e.at("value").get<bool>();
    if (j.contains("coverage")) c.table.words = j["coverage"].value("words", std::size_t{0});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("table: ") + e.what());
  }
}

}  // namespace dwcra
