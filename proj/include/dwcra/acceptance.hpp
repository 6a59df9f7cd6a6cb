// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dwcra {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;  // property held and time limit met
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20261019;
  unsigned threads = 0;  // 0: hardware concurrency
  std::vector<int> only;  // empty: all criteria
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// "[PASS] 3 fig3-reproduction (12.1 s / 30 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace dwcra
