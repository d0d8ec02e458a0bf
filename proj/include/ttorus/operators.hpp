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

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ttorus/fourier.hpp"

namespace ttorus {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Diagonal offsets d = row - col in [lower, upper] that may hold nonzeros.
struct Band {
  int lower = 0;
  int upper = 0;
  bool contains(int offset) const { return lower <= offset && offset <= upper; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Compression of an operator on ℓ₂(ℕ) to span{e_0, …, e_{n-1}}.
///
/// entries()(r, c) is the coefficient of e_r in the image of e_c. The
/// optional band records offsets outside of which all entries vanish; it is
/// validated on construction and used to skip zeros in products.
class TruncatedOperator {
 public:
  explicit TruncatedOperator(Matrix entries, std::optional<Band> band = {});

  static TruncatedOperator identity(int n);
  static TruncatedOperator zero(int n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  const std::optional<Band>& band() const { return band_; }
  Complex operator()(int r, int c) const { return entries_(r, c); }

  friend TruncatedOperator operator+(const TruncatedOperator& a,
                                     const TruncatedOperator& b);
  friend TruncatedOperator operator-(const TruncatedOperator& a,
                                     const TruncatedOperator& b);
  friend TruncatedOperator operator*(const TruncatedOperator& a,
                                     const TruncatedOperator& b);
  friend TruncatedOperator operator*(Complex s, const TruncatedOperator& a);

 private:
  Matrix entries_;
  std::optional<Band> band_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Power iteration gave up before reaching the requested accuracy.
class NormNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A[r][c] = f̂(r - c).
TruncatedOperator toeplitz(const FourierSeries& f, int n);

/// S e_m = e_{m+1}.
TruncatedOperator shift(int n);
/// S* e_m = e_{m-1}, S* e_0 = 0.
TruncatedOperator shift_adjoint(int n);
/// N e_m = m e_m.
TruncatedOperator number(int n);
/// ∂_z e_m = m e_{m-1}.
TruncatedOperator dz(int n);
/// ∂_z* e_m = (m+1) e_{m+1}; the image of e_{n-1} leaves the truncation and
/// is dropped.
TruncatedOperator dz_star(int n);

/// Embeds a k×k block in the top-left corner of an n×n operator.
TruncatedOperator finite_rank(const Matrix& block, int n);

TruncatedOperator multiply(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator scale(Complex s, const TruncatedOperator& a);
TruncatedOperator adjoint(const TruncatedOperator& a);
/// AB - BA.
TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b);

enum class NormMethod { automatic, power, dense };

inline constexpr int kDenseNormLimit = 64;
inline constexpr int kPowerIterationCap = 10'000;

/// Largest singular value. `automatic` uses a full decomposition up to
/// kDenseNormLimit and power iteration on A*A (all-ones start) beyond it;
/// power iteration throws NormNotConverged after kPowerIterationCap steps.
double operator_norm(const TruncatedOperator& a, double tol = 1e-12,
                     NormMethod method = NormMethod::automatic);

/// The (dim - 2·margin) square block starting at (margin, margin).
TruncatedOperator interior_block(const TruncatedOperator& a, int margin);
/// The leading (dim - margin) square block: the part of a truncation that is
/// unaffected by a boundary collar of width `margin` at the cut.
TruncatedOperator leading_block(const TruncatedOperator& a, int margin);

/// Recovers f̂(k), |k| <= max_freq, by averaging each diagonal over the
/// second half of its valid range.
FourierSeries symbol_estimate(const TruncatedOperator& a, int max_freq);

/// max |A - B| entrywise.
double max_deviation(const TruncatedOperator& a, const TruncatedOperator& b);
double max_abs_entry(const TruncatedOperator& a);

struct WeightGap {
  double sup = 0.0;
  int at = 0;
  bool monotone = true;
};

/// sup over 0 <= m < n of √(m(m+1)) - m, the gap between the Bergman-space
/// derivative weights and the integer weights of ∂_z.
WeightGap cauchy_riemann_weight_gap(int n);

}  // namespace ttorus
