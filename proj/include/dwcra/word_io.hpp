// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dwcra/core.hpp"
#include "dwcra/graph.hpp"

namespace dwcra {

/// Reads the line-oriented word format:
///
///     #alphabet r a
///     #m 1
///     r 8        # one position per line: label v1 ... vm
///
/// Any other `#` starts a comment. Without headers the alphabet is the labels
/// in order of appearance and m is taken from the first position.
DataWord parse_word(std::string_view text);

/// Reads the inline form `(r,8)(a,5)`; `()` or an empty string is the empty
/// word. Labels not in `alphabet` are rejected; without one the alphabet is
/// inferred.
DataWord parse_inline_word(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);

std::string format_word(const DataWord& w);
std::string format_inline_word(const DataWord& w);

/// DOT rendering of G(w): node `i:label/ν`, one edge style per symbol, in
/// position and symbol order.
std::string graph_to_dot(const DWGraph& g, const Alphabet& alphabet);

/// Edge style used for a relation symbol in DOT output.
std::string edge_style(const std::string& symbol);

}  // namespace dwcra
