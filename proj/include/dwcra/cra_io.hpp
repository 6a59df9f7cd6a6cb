// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "dwcra/cra.hpp"

namespace dwcra {

/// Line-oriented automaton format:
///
///     signature: succ-cls1
///     alphabet: r a
///     m: 1
///     states: q1 q2
///     registers: r1 r2
///     transitions:
///       [] true "r" -> q1 {r1 := d[1]@0}
///       [succ=q1] true "r" -> q1 {r1 := d[1]@0, r2 := succ.r1}
///       [succ=q1, cls1=q1] cls1.r2 = bot "a" -> q2 {r1 := d[1]@0}
///     final[cls1]: q2
///     global: !(q1 <= 0)
///
/// Guards use `!`, `&`, `|`, parentheses and atoms `t = t'` with t one of
/// `d[k]` or `rel.reg`; `t = bot` abbreviates `!(t = t)`. Missing final
/// sections are empty; a missing global condition is `true`.
CRA parse_cra(std::string_view text);

std::string format_cra(const CRA& a);

}  // namespace dwcra
