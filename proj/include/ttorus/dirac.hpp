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
#include <string>
#include <vector>

#include "ttorus/band_pattern.hpp"
#include "ttorus/operators.hpp"
#include "ttorus/report.hpp"

namespace ttorus {

/// The truncated Dirac operator D = (0 ∂_z; ∂_z* 0) on the doubled space
/// span{e_0..e_{n-1}} ⊕ span{e_0..e_{n-1}}.
class DiracBlock {
 public:
  explicit DiracBlock(int n);

  int n() const { return n_; }
  const TruncatedOperator& top_right() const { return top_right_; }
  const TruncatedOperator& bottom_left() const { return bottom_left_; }
  /// 2n×2n, first summand occupying indices [0, n).
  const TruncatedOperator& assembled() const { return assembled_; }

 private:
  int n_;
  TruncatedOperator top_right_;
  TruncatedOperator bottom_left_;
  TruncatedOperator assembled_;
};

DiracBlock dirac(int n);

/// γ = id ⊕ (-id).
TruncatedOperator grading(int n);
/// π(a) = a ⊕ a.
TruncatedOperator pi(const TruncatedOperator& a);
TruncatedOperator block_diagonal(const TruncatedOperator& a, const TruncatedOperator& b);
/// (0 top_right; bottom_left 0).
TruncatedOperator block_off_diagonal(const TruncatedOperator& top_right,
                                     const TruncatedOperator& bottom_left);
/// Restricts a doubled operator to indices [margin, n - margin) of each
/// summand.
TruncatedOperator doubled_interior(const TruncatedOperator& a, int margin);
/// Restricts a doubled operator to indices [0, n - margin) of each summand.
TruncatedOperator doubled_leading(const TruncatedOperator& a, int margin);
/// The (row, col) summand block of a doubled operator, each index 0 or 1.
TruncatedOperator summand_block(const TruncatedOperator& a, int row, int col);

/// b_k = (e_{k-1} ⊕ e_k)/√2, b_{-k} = (-e_{k-1} ⊕ e_k)/√2 for k > 0, and
/// b_0 = 0 ⊕ e_0.
Vector analytic_eigenvector(int k, int n);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending, with repetition
  std::vector<double> distinct;
  std::vector<int> multiplicities;  // parallel to `distinct`
  std::vector<int> spurious;        // indices into `eigenvalues`
  std::vector<double> residuals;    // ‖D v - λ v‖ per eigenpair
  std::vector<double> boundary_mass;  // |v(first-summand e_{n-1})|²
  Matrix eigenvectors;              // columns parallel to `eigenvalues`
};

/// Mass on first-summand e_{n-1} above which a mode is a truncation artifact.
inline constexpr double kSpuriousMass = 0.99;

/// Full Hermitian eigendecomposition. Eigenvalues closer than `tol` are one
/// cluster; inside a degenerate cluster the basis is rotated so that a
/// boundary-concentrated mode, if any, is isolated and flagged.
SpectrumReport spectrum(const DiracBlock& d, double tol = 1e-8);

struct PolarDecomposition {
  TruncatedOperator abs;    // |D| = (D²)^{1/2}
  TruncatedOperator phase;  // F = D · pinv(|D|)
};

/// Relative cutoff below which singular values of |D| count as zero.
inline constexpr double kPseudoInverseCutoff = 1e-8;

PolarDecomposition polar_decomposition(const DiracBlock& d);

/// Compares |D| with diag(N+1, N) and F with (0 S*; S 0) on interior blocks.
VerificationReport polar_check(int n, int margin);

/// dim ker - dim coker of a truncated column block: domain = first `domain`
/// columns, codomain = rows 0..R with R the last row the domain reaches.
KernelDims rectangular_kernel_dims(const TruncatedOperator& block, int domain);

struct IndexReport {
  int index = 0;                  // ind(F_{+-})
  KernelDims exact;               // from the S* pattern
  KernelDims numeric_small;       // rectangular rule at n_small
  KernelDims numeric_large;       // rectangular rule at n_large
  int minus_plus_index = 0;       // ind(F_{-+})
  KernelDims minus_plus_exact;
};

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of F_{+-} computed exactly and by rectangular truncations of the
/// numerically obtained phase at two sizes. Throws IndexError when the two
/// sizes or the two routes disagree.
IndexReport index_report(int n_small, int n_large);
int fredholm_index(int n_small, int n_large);

/// Σ_{|k| <= K} (1+|k|)^{-(1+ε)}.
double summability_partial_sum(double epsilon, std::int64_t K);

struct SummabilityDiagnostic {
  double epsilon = 0.0;
  std::int64_t K = 0;
  double partial_sum = 0.0;
  double doubled_sum = 0.0;        // partial sum at 2K
  double doubling_increment = 0.0;
  double tail_lower = 0.0;         // bounds on the sum beyond K (ε > 0)
  double tail_upper = 0.0;
  double extrapolated_limit = 0.0;
  bool trace_class = false;
  std::string verdict;
};

SummabilityDiagnostic summability_diagnostic(double epsilon, std::int64_t K);

}  // namespace ttorus
