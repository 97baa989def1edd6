// Acceptance criteria 1-9 as a library, shared by the test binary and
// `eqa verify-paper`.

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "eqa/term.hpp"

namespace eqa {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

/// core = 1-5 and 9, nogo = 6 and 9, closure = 3, 7, 8, all = 1-9.
/// Throws std::invalid_argument on an unknown suite name.
std::vector<int> suite_criteria(std::string_view suite);

/// EQA_DATA_DIR from the environment, else the source tree's data/.
std::string default_data_dir();

/// Resolves a theory name: a catalog code, else data_dir/theories/NAME.eqt.
Theory resolve_theory(std::string_view name, const std::string& data_dir);

std::vector<CriterionResult> run_acceptance(
    std::string_view suite, const std::string& data_dir = default_data_dir(),
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [3] title (0.12 s / 1 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace eqa
