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

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace ttorus {

using Complex = std::complex<double>;

/// Coefficients below this fraction of the largest magnitude are pruned.
inline constexpr double kDropTolerance = 1e-14;

/// Default number of equispaced points used by wedge checks.
inline constexpr int kWedgeSamples = 1024;

/// A finitely supported Fourier series f(θ) = Σ_k f̂(k) e^{ikθ} on the circle.
///
/// Series are immutable values. Construction prunes coefficients whose
/// magnitude is below kDropTolerance times the largest one, so bandwidth()
/// reflects the numerically meaningful support.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(std::map<int, Complex> coeffs);

  static FourierSeries constant(Complex c);
  static FourierSeries monomial(int k, Complex c = 1.0);
  /// cos(kθ), i.e. {±k ↦ 1/2}.
  static FourierSeries cosine(int k);
  /// sin(kθ), i.e. {k ↦ -i/2, -k ↦ i/2}.
  static FourierSeries sine(int k);

  const std::map<int, Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(int k) const;
  int bandwidth() const;
  bool is_zero() const { return coeffs_.empty(); }
  double max_coefficient() const;

  Complex evaluate(double theta) const;
  /// Values at the angles 2πj/count, j = 0..count-1.
  std::vector<Complex> sample(int count) const;

  friend FourierSeries operator+(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator-(const FourierSeries& a, const FourierSeries& b);
  /// Pointwise product (coefficient convolution).
  friend FourierSeries operator*(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator*(Complex s, const FourierSeries& a);

 private:
  std::map<int, Complex> coeffs_;
};

/// Largest coefficient-wise distance max_k |â(k) - b̂(k)|.
double coefficient_distance(const FourierSeries& a, const FourierSeries& b);

/// Discrete Fourier analysis of samples taken at 2πj/N, N a power of two
/// (N >= 8). Frequencies are centered in [-N/2, N/2).
FourierSeries from_samples(std::span<const Complex> values);

FourierSeries derivative(const FourierSeries& f);
FourierSeries derivative(const FourierSeries& f, int order);

/// Multiplication by u^m: the coefficient at k becomes f̂(k - m).
FourierSeries shift_multiply(const FourierSeries& f, int m);

/// Pointwise complex conjugate: coefficient at k is conj(f̂(-k)).
FourierSeries conjugate(const FourierSeries& f);

/// sup_θ |f(θ)|, located on a fine grid and refined by golden-section search.
double sup_norm(const FourierSeries& f);

struct WedgeReport {
  double max_violation_first = 0.0;   // |f(e^{it}) - f(-i e^{-it})|
  double max_violation_second = 0.0;  // |f(e^{-it}) - f(i e^{it})|
  double tolerance = 0.0;
  bool passed = false;
};

/// Evaluates both gluing relations of the wedge S¹∨S¹ at `sample_count`
/// equispaced t in [0, π/2] (endpoints included).
WedgeReport wedge_check(const FourierSeries& f, double tolerance,
                        int sample_count = kWedgeSamples);

struct WedgeSeries {
  FourierSeries series;
  /// A-posteriori interpolation error estimate (twice the coefficient mass
  /// in the upper half of the resolved band).
  double sampling_error = 0.0;
  /// Tolerance at which `series` is expected to pass wedge_check.
  double wedge_tolerance() const;
};

/// Samples h on [0, π/2] at `intervals + 1` equispaced points.
std::vector<Complex> sample_profile(const std::function<Complex(double)>& h,
                                    int intervals);

/// Builds a wedge function from its two circle profiles.
///
/// h1 is laid on the first-quadrant arc θ = t, h2 on the second-quadrant arc
/// θ = π/2 + t; the third and fourth quadrants follow from the gluing
/// relations. Both profiles hold q + 1 samples at t_j = jπ/(2q), where 4q is
/// a power of two, and all four endpoint values must equal `corner_value`.
WedgeSeries wedge_from_profiles(std::span<const Complex> h1,
                                std::span<const Complex> h2,
                                Complex corner_value);

}  // namespace ttorus
