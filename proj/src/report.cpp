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

#include "ttorus/report.hpp"

#include <algorithm>

namespace ttorus {

void VerificationReport::require_at_most(std::string check_name, double value,
                                         double tolerance) {
  checks.push_back({std::move(check_name), value, tolerance, value <= tolerance});
}

void VerificationReport::require_zero(std::string check_name, double value) {
  checks.push_back({std::move(check_name), value, 0.0, value == 0.0});
}

bool VerificationReport::passed() const {
  if (precondition_violation || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

double VerificationReport::max_value() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.value);
  return m;
}

}  // namespace ttorus
