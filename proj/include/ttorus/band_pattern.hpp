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

#include <cstdint>
#include <vector>

#include "ttorus/operators.hpp"

namespace ttorus {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// w(m) = Σ_i coeffs[i] m^i with rational coefficients.
class WeightPolynomial {
 public:
  WeightPolynomial() = default;
  explicit WeightPolynomial(std::vector<Rational> coeffs);
  static WeightPolynomial constant(std::int64_t c);
  /// w(m) = m + shift.
  static WeightPolynomial linear(std::int64_t shift);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  double evaluate(double m) const;
  /// Nonnegative integer zeros, exactly.
  std::vector<std::int64_t> nonnegative_integer_zeros() const;

 private:
  std::vector<Rational> coeffs_;  // trailing zeros trimmed
};

/// Exact description of a shift-type operator on ℓ₂(ℕ): for each offset d,
/// e_m ↦ weight_d(m) e_{m+d} (terms with m + d < 0 vanish).
struct BandPattern {
  std::vector<int> offsets;
  std::vector<WeightPolynomial> weights;
  int domain_start = 0;

  static BandPattern single(int offset, WeightPolynomial weight);
  /// Compression to span{e_0, …, e_{n-1}}.
  TruncatedOperator realize(int n) const;
};

BandPattern shift_pattern();
BandPattern shift_adjoint_pattern();
BandPattern number_pattern();
BandPattern dz_pattern();
BandPattern dz_star_pattern();

struct KernelDims {
  std::int64_t ker = 0;
  std::int64_t coker = 0;
  std::int64_t index() const { return ker - coker; }
};

/// Kernel and cokernel dimensions of a single weighted shift, computed on
/// the semi-infinite model without any truncation. Throws
/// std::invalid_argument for multi-offset patterns or a weight that
/// vanishes identically.
KernelDims pattern_kernel_dims(const BandPattern& p);

}  // namespace ttorus
