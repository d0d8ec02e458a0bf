/*
 * Copyright 2026 The ttorus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ttorus {

/// One named residual compared against its tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Outcome of an identity or property check on truncated operators.
struct VerificationReport {
  std::string name;
  int n = 0;
  int margin = 0;
  std::vector<Check> checks;
  /// Set when the inputs do not satisfy the check's preconditions; the
  /// identity itself was then not evaluated.
  std::optional<std::string> precondition_violation;
  /// Informational values that do not take part in pass/fail.
  std::map<std::string, double> metrics;

  /// Records `value <= tolerance` (NaN fails).
  void require_at_most(std::string check_name, double value, double tolerance);
  /// Records `value == 0` exactly.
  void require_zero(std::string check_name, double value);

  bool passed() const;
  /// Largest recorded residual.
  double max_value() const;
};

}  // namespace ttorus
