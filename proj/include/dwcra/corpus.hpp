// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dwcra/core.hpp"
#include "dwcra/cra.hpp"
#include "dwcra/formula.hpp"
#include "dwcra/signature.hpp"

namespace dwcra {

enum class FixtureKind { Word, Formula, Automaton, WordFamily };

// Payloads are kept in the text formats of word_io / formula / cra_io.
struct Fixture {
  std::string name;
  FixtureKind kind = FixtureKind::Word;
  std::string signature;  // builtin signature name
  std::string payload;
  std::string note;
  // formulas only: labels, data arity and the expected fragment summary
  std::vector<std::string> labels;
  int m = 0;
  std::string fragment;
};

std::string kind_name(FixtureKind k);

const std::vector<Fixture>& fixtures();
const Fixture* find_fixture(std::string_view name);
const Fixture& fixture(std::string_view name);  // PreconditionError if unknown

DataWord fixture_word(std::string_view name);
Formula fixture_formula(std::string_view name);
CRA fixture_automaton(std::string_view name);
Signature fixture_signature(std::string_view name);
Alphabet fixture_alphabet(std::string_view name);

// Most specific fragment: rFO, rEMSO, rMSO, FO, EMSO or MSO, plus qrank.
std::string fragment_summary(const FragmentReport& r);

// Disjoint 4-position patterns nested k deep over signature cls1-cls2.
DataWord gen_nested_patterns(std::size_t count);
// nested(2) with the second values of its first two positions swapped.
DataWord gen_merged_patterns();

// Normalized members of the request/acknowledge language up to max_len.
std::vector<DataWord> reqack_language(std::size_t max_len);
bool in_reqack_language(const DataWord& w);

// Accepts exactly the words whose graph (labels and edges, not data) is G(w).
CRA exact_word_automaton(const Signature& sig, const DataWord& w);
CRA universal_automaton(const Signature& sig, const Alphabet& alphabet);
CRA empty_word_automaton(const Signature& sig, const Alphabet& alphabet);
// Over the extended signature and alphabet with one annotation bit: marks
// alternate along every cls1 class, starting unmarked and ending marked.
// Its projection accepts the words whose cls1 classes all have even size.
CRA alternating_marks_automaton(const Alphabet& base);

}  // namespace dwcra
