// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dwcra/core.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/signature.hpp"
#include "dwcra/sphere.hpp"
#include "dwcra/sphere_automaton.hpp"

namespace dwcra {

struct HanfParams {
  std::size_t radius = 0;
  std::size_t threshold = 1;
  /// Enumeration budget: word length and distinct values per coordinate.
  std::size_t max_len = 5;
  std::size_t max_vals = 3;

  bool operator==(const HanfParams&) const = default;
};

/// Σ×Γ with Γ = 2^{1..n} for the n set variables of the prefix, and the
/// first-order kernel with labels and memberships rewritten into Σ×Γ labels.
struct KernelRewrite {
  std::vector<std::string> set_variables;
  Alphabet extended;
  Formula kernel;
};

KernelRewrite rewrite_kernel(const Formula& sentence, const Alphabet& alphabet);

/// B(0) = 0, B(k+1) = 3·B(k) + 1.
std::size_t locality_radius(std::size_t qrank);

/// radius = locality_radius(qrank), threshold = max(1, qrank).
HanfParams default_params(const Formula& kernel, std::size_t max_len = 5, std::size_t max_vals = 3);

/// Every normalized word of length <= max_len with at most max_vals distinct
/// values per coordinate, in length-major order; each once.
void for_each_word(const Alphabet& alphabet, std::size_t max_len, std::size_t max_vals,
                   const std::function<void(const DataWord&)>& visit);
std::vector<DataWord> enumerate_words(const Signature& sig, const Alphabet& alphabet, std::size_t max_len,
                                      std::size_t max_vals);

struct HanfCounterexample {
  DataWord u;
  DataWord v;
  bool u_value = false;
  bool v_value = false;
};

/// First pair of enumerated words with equal Hanf type and different truth value.
std::optional<HanfCounterexample> validate_params(const Signature& sig, const Alphabet& alphabet,
                                                  const Formula& kernel, const HanfParams& params);

/// Applies (B+1, t·2) until validate_params passes; nullopt after max_steps.
std::optional<HanfParams> escalate_params(const Signature& sig, const Alphabet& alphabet, const Formula& kernel,
                                          HanfParams params, std::size_t max_steps = 6);

enum class CoveragePolicy { Error, Reject };

struct BetaTable {
  HanfParams params;
  CoveragePolicy policy = CoveragePolicy::Error;
  /// HanfType::key() -> truth value.
  std::map<std::string, bool> entries;
  std::size_t words = 0;

  std::optional<bool> lookup(const HanfType& type) const;
};

/// Throws PreconditionError on a type-equal, truth-different pair.
BetaTable build_beta(const Signature& sig, const Alphabet& alphabet, const Formula& kernel, const HanfParams& params,
                     CoveragePolicy policy = CoveragePolicy::Error);

struct CompiledCRA {
  Formula sentence;
  Signature signature;  // base signature
  Alphabet alphabet;    // base alphabet
  KernelRewrite rewrite;
  Signature extended_signature;
  HanfParams params;
  BetaTable table;
};

struct CompileOptions {
  std::optional<HanfParams> params;
  CoveragePolicy policy = CoveragePolicy::Error;
  /// Escalate defaulted parameters that fail validation.
  bool escalate = true;
  std::size_t max_len = 5;
  std::size_t max_vals = 3;
};

/// Throws PreconditionError for inputs that are not rEMSO sentences (the
/// message carries the fragment report).
CompiledCRA compile(const Signature& sig, const Alphabet& alphabet, const Formula& sentence,
                    const CompileOptions& options = {});

enum class CompiledStatus { Accepted, Rejected, OutOfCoverage };

struct CompiledMembership {
  CompiledStatus status = CompiledStatus::Rejected;
  /// Certificate: annotation masks (bit j-1 for the j-th set variable) and
  /// the canonical sphere run on the annotated word.
  std::vector<std::uint32_t> annotation;
  std::optional<SphereRun> run;
  std::uint64_t annotations_tried = 0;
};

CompiledMembership compiled_membership(const CompiledCRA& c, const DataWord& w,
                                       std::uint64_t annotation_cap = std::uint64_t{1} << 20);

std::string compiled_to_json(const CompiledCRA& c);
/// Rebuilds a compiled automaton from its JSON table (no re-enumeration).
CompiledCRA compiled_from_json(const std::string& text);

std::string policy_name(CoveragePolicy p);

}  // namespace dwcra
