// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dwcra/cra.hpp"

namespace dwcra {

/// Disjoint union; the global condition forces a run to stay inside one
/// component: (Φ1 ∧ all Q2-counts 0) ∨ (Φ2 ∧ all Q1-counts 0).
/// States and registers are renamed `L_x` / `R_x`.
CRA cra_union(const CRA& a1, const CRA& a2);

/// Product automaton: states `q1^q2`, registers `L_r` / `R_r`, transitions
/// pair up equal labels and equal dom(p); guards conjoined. A factor atom
/// `q <= N` becomes "no composition of N+1 over the product states (q, ·)
/// fits under the counts".
CRA cra_intersect(const CRA& a1, const CRA& a2);

/// Projection of an automaton over Σ×Γ and S_Γ onto Σ and the base signature.
CRA cra_project(const CRA& a);

}  // namespace dwcra
