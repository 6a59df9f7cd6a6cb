// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dwcra/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dwcra/errors.hpp"

namespace dwcra {

Alphabet::Alphabet(std::vector<std::string> labels, int arity) : labels_(std::move(labels)), arity_(arity) {
  if (labels_.empty()) throw PreconditionError("alphabet must contain at least one label");
  if (arity_ < 0) throw PreconditionError("data arity must be non-negative");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw PreconditionError("empty label name");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[i] == labels_[j]) throw PreconditionError("duplicate label '" + labels_[i] + "'");
  }
}

std::string annotated_label_name(const std::string& base, std::uint32_t mask) {
  std::string out = base + "@{";
  bool first = true;
  for (int bit = 0; bit < 32; ++bit) {
    if (!(mask & (1u << bit))) continue;
    if (!first) out += ',';
    out += std::to_string(bit + 1);
    first = false;
  }
  return out + "}";
}

Alphabet Alphabet::annotated(const Alphabet& base, int bits) {
  if (bits < 0 || bits > 16) throw PreconditionError("annotation bits out of range");
  std::vector<std::string> names;
  const std::uint32_t count = 1u << bits;
  for (const auto& label : base.labels())
    for (std::uint32_t mask = 0; mask < count; ++mask) names.push_back(annotated_label_name(label, mask));
  Alphabet out(std::move(names), base.arity());
  out.base_ = std::make_shared<const Alphabet>(base);
  out.bits_ = bits;
  return out;
}

std::optional<LabelId> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<LabelId>(i);
  return std::nullopt;
}

LabelId Alphabet::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw FormatError("label '" + std::string(name) + "' not in alphabet");
}

const Alphabet& Alphabet::base() const {
  if (!base_) throw PreconditionError("alphabet is not annotated");
  return *base_;
}

LabelId Alphabet::base_label(LabelId id) const {
  return static_cast<LabelId>(static_cast<std::size_t>(id) >> bits_);
}

std::uint32_t Alphabet::annotation(LabelId id) const {
  return static_cast<std::uint32_t>(id) & ((1u << bits_) - 1u);
}

LabelId Alphabet::extended_label(LabelId base_label, std::uint32_t mask) const {
  return static_cast<LabelId>((static_cast<std::uint32_t>(base_label) << bits_) | mask);
}

bool Alphabet::operator==(const Alphabet& other) const {
  if (labels_ != other.labels_ || arity_ != other.arity_ || bits_ != other.bits_) return false;
  if (!base_ || !other.base_) return !base_ && !other.base_;
  return *base_ == *other.base_;
}

DataWord::DataWord(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

DataWord::DataWord(Alphabet alphabet, std::vector<Letter> letters) : alphabet_(std::move(alphabet)) {
  letters_.reserve(letters.size());
  for (auto& letter : letters) push_back(std::move(letter));
}

const Letter& DataWord::at(std::size_t i) const {
  if (i == 0 || i > letters_.size())
    throw PreconditionError("position " + std::to_string(i) + " out of range 1.." + std::to_string(letters_.size()));
  return letters_[i - 1];
}

Value DataWord::value(std::size_t i, int k) const {
  const auto& letter = at(i);
  if (k < 1 || k > arity()) throw PreconditionError("data index " + std::to_string(k) + " out of range");
  return letter.data[static_cast<std::size_t>(k - 1)];
}

void DataWord::push_back(Letter letter) {
  if (letter.label < 0 || static_cast<std::size_t>(letter.label) >= alphabet_.size())
    throw PreconditionError("label id out of alphabet range");
  if (letter.data.size() != static_cast<std::size_t>(alphabet_.arity()))
    throw PreconditionError("letter carries " + std::to_string(letter.data.size()) + " data values, expected " +
                            std::to_string(alphabet_.arity()));
  letters_.push_back(std::move(letter));
}

DataWord DataWord::without_position(std::size_t i) const {
  at(i);
  DataWord out(alphabet_);
  for (std::size_t j = 1; j <= size(); ++j)
    if (j != i) out.letters_.push_back(letters_[j - 1]);
  return out;
}

bool DataWord::operator==(const DataWord& other) const {
  return alphabet_ == other.alphabet_ && letters_ == other.letters_;
}

DataWord project(const DataWord& annotated) {
  const auto& ext = annotated.alphabet();
  DataWord out(ext.base());
  for (const auto& letter : annotated.letters()) out.push_back({ext.base_label(letter.label), letter.data});
  return out;
}

DataWord annotate(const DataWord& w, const Alphabet& extended, const std::vector<std::uint32_t>& masks) {
  if (masks.size() != w.size()) throw PreconditionError("one annotation per position required");
  if (!(extended.base() == w.alphabet())) throw PreconditionError("annotated alphabet does not extend the word's");
  DataWord out(extended);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (masks[i] >= extended.annotation_count()) throw PreconditionError("annotation mask out of range");
    out.push_back({extended.extended_label(w.letters()[i].label, masks[i]), w.letters()[i].data});
  }
  return out;
}

Partition::Partition(std::vector<std::uint8_t> block_of) : block_of_(std::move(block_of)) {
  std::uint8_t next = 0;
  for (auto b : block_of_) {
    if (b > next) throw PreconditionError("partition code is not a restricted growth string");
    if (b == next) ++next;
  }
}

Partition Partition::of_values(const std::vector<Value>& values) {
  std::vector<std::uint8_t> code(values.size());
  std::uint8_t blocks = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::size_t first = 0;
    while (values[first] != values[k]) ++first;
    code[k] = first == k ? blocks++ : code[first];
  }
  return Partition(std::move(code));
}

bool Partition::same_block(int k, int l) const {
  if (k < 1 || l < 1 || k > arity() || l > arity()) throw PreconditionError("coordinate out of range");
  return block_of_[static_cast<std::size_t>(k - 1)] == block_of_[static_cast<std::size_t>(l - 1)];
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out;
  for (std::size_t k = 0; k < block_of_.size(); ++k) {
    if (block_of_[k] >= out.size()) out.resize(block_of_[k] + 1u);
    out[block_of_[k]].push_back(static_cast<int>(k + 1));
  }
  return out;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first_block = true;
  for (const auto& block : blocks()) {
    if (!first_block) os << ',';
    first_block = false;
    os << '{';
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? "," : "") << block[i];
    os << '}';
  }
  os << '}';
  return os.str();
}

}  // namespace dwcra
