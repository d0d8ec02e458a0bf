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

#include <string>

#include "json.hpp"
#include "ttorus/dirac.hpp"
#include "ttorus/fourier.hpp"
#include "ttorus/operators.hpp"
#include "ttorus/report.hpp"
#include "ttorus/triple.hpp"

namespace ttorus {

using Json = nlohmann::ordered_json;

/// [{k, re, im}, …] sorted by k.
Json to_json(const FourierSeries& f);
FourierSeries fourier_from_json(const Json& j);

/// {dim, band, entries: [[r, c, re, im], …]} listing nonzero entries only.
Json to_json(const TruncatedOperator& a);
/// Row-major, one matrix row per line, entries formatted as "re+imi".
std::string to_csv(const TruncatedOperator& a);

Json to_json(const VerificationReport& r);
Json to_json(const WedgeReport& r);
Json to_json(const SpectrumReport& r);
/// index,eigenvalue,residual,boundary_mass,spurious
std::string to_csv(const SpectrumReport& r);
Json to_json(const SweepReport& r);
/// size,norm
std::string to_csv(const SweepReport& r);
Json to_json(const IndexReport& r);
Json to_json(const SummabilityDiagnostic& d);

}  // namespace ttorus
