// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dwcra {

/// Data values are opaque tokens; only equality and a total order are used.
using Value = std::uint64_t;

/// Index of a label in its alphabet.
using LabelId = int;

/// The finite label set Σ together with the data arity m.
///
/// An alphabet may be an annotated extension Σ×Γ of a base alphabet, where Γ
/// is the powerset of {1..k} for k annotation bits. Extended label ids are laid
/// out base-major: id = base_label * |Γ| + mask.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> labels, int arity);

  /// Σ×Γ with Γ = 2^{1..bits}.
  static Alphabet annotated(const Alphabet& base, int bits);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  int arity() const noexcept { return arity_; }
  const std::string& name(LabelId id) const { return labels_.at(static_cast<std::size_t>(id)); }
  std::optional<LabelId> find(std::string_view name) const;
  LabelId id(std::string_view name) const;

  bool is_annotated() const noexcept { return base_ != nullptr; }
  const Alphabet& base() const;
  int annotation_bits() const noexcept { return bits_; }
  std::size_t annotation_count() const noexcept { return std::size_t{1} << bits_; }
  LabelId base_label(LabelId id) const;
  std::uint32_t annotation(LabelId id) const;
  LabelId extended_label(LabelId base_label, std::uint32_t mask) const;

  bool operator==(const Alphabet& other) const;

 private:
  std::vector<std::string> labels_;
  int arity_ = 0;
  std::shared_ptr<const Alphabet> base_;
  int bits_ = 0;
};

/// Printed name of an annotated label, e.g. `r@{1,2}`.
std::string annotated_label_name(const std::string& base, std::uint32_t mask);

/// One position of a data word: a label and exactly m data values.
struct Letter {
  LabelId label = 0;
  std::vector<Value> data;

  bool operator==(const Letter&) const = default;
};

/// A finite data word; positions are 1-based in every public interface.
class DataWord {
 public:
  DataWord() = default;
  explicit DataWord(Alphabet alphabet);
  DataWord(Alphabet alphabet, std::vector<Letter> letters);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int arity() const noexcept { return alphabet_.arity(); }

  /// Letter at 1-based position i.
  const Letter& at(std::size_t i) const;
  LabelId label(std::size_t i) const { return at(i).label; }
  const std::string& label_name(std::size_t i) const { return alphabet_.name(at(i).label); }
  /// k-th data value (1-based k) at 1-based position i.
  Value value(std::size_t i, int k) const;

  const std::vector<Letter>& letters() const noexcept { return letters_; }

  void push_back(Letter letter);
  DataWord without_position(std::size_t i) const;

  bool operator==(const DataWord& other) const;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// proj_Σ: drops the annotation of an annotated word.
DataWord project(const DataWord& annotated);

/// Extends w to Σ×Γ using one annotation mask per position.
DataWord annotate(const DataWord& w, const Alphabet& extended, const std::vector<std::uint32_t>& masks);

/// A partition of {1..m}, stored as a restricted growth string: block_of[k]
/// is the index of the block containing coordinate k+1, blocks numbered in
/// order of their smallest member.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::uint8_t> block_of);

  /// ν(i): coordinates grouped by equality of their data values.
  static Partition of_values(const std::vector<Value>& values);

  int arity() const noexcept { return static_cast<int>(block_of_.size()); }
  /// Same block test for 1-based coordinates.
  bool same_block(int k, int l) const;
  std::vector<std::vector<int>> blocks() const;
  const std::vector<std::uint8_t>& code() const noexcept { return block_of_; }
  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<std::uint8_t> block_of_;
};

}  // namespace dwcra
