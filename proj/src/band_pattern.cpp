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

#include "ttorus/band_pattern.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ttorus {

namespace {

using Int128 = __int128;

// Integer polynomial with the same zeros: multiply through by the lcm of
// the denominators.
std::vector<std::int64_t> clear_denominators(const std::vector<Rational>& coeffs) {
  std::int64_t l = 1;
  for (const auto& c : coeffs) l = std::lcm(l, c.den < 0 ? -c.den : c.den);
  std::vector<std::int64_t> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    Int128 v = static_cast<Int128>(c.num) * (l / c.den);
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("WeightPolynomial: coefficient overflow");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

bool is_root(const std::vector<std::int64_t>& p, std::int64_t x) {
  Int128 acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Int128 next;
    if (__builtin_mul_overflow(acc, static_cast<Int128>(x), &next) ||
        __builtin_add_overflow(next, static_cast<Int128>(*it), &next)) {
      throw std::overflow_error("WeightPolynomial: evaluation overflow");
    }
    acc = next;
  }
  return acc == 0;
}

}  // namespace

WeightPolynomial::WeightPolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) {
    if (c.den == 0) throw std::invalid_argument("WeightPolynomial: zero denominator");
    if (c.den < 0) {
      c.num = -c.num;
      c.den = -c.den;
    }
    const std::int64_t g = std::gcd(c.num, c.den);
    if (g > 1) {
      c.num /= g;
      c.den /= g;
    }
  }
  while (!coeffs_.empty() && coeffs_.back().num == 0) coeffs_.pop_back();
}

WeightPolynomial WeightPolynomial::constant(std::int64_t c) {
  return WeightPolynomial({Rational{c, 1}});
}

WeightPolynomial WeightPolynomial::linear(std::int64_t shift) {
  return WeightPolynomial({Rational{shift, 1}, Rational{1, 1}});
}

double WeightPolynomial::evaluate(double m) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * m + static_cast<double>(it->num) / static_cast<double>(it->den);
  return acc;
}

std::vector<std::int64_t> WeightPolynomial::nonnegative_integer_zeros() const {
  if (is_zero())
    throw std::invalid_argument("WeightPolynomial: identically zero weight");
  std::vector<std::int64_t> p = clear_denominators(coeffs_);
  std::vector<std::int64_t> zeros;
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) zeros.push_back(0);
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  if (p.size() == 1) return zeros;

  // Rational root theorem: a positive integer root divides p[0]. Cauchy's
  // bound restricts the candidates further.
  const std::int64_t a0 = p.front() < 0 ? -p.front() : p.front();
  const std::int64_t lead = p.back() < 0 ? -p.back() : p.back();
  std::int64_t biggest = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    biggest = std::max(biggest, p[i] < 0 ? -p[i] : p[i]);
  const std::int64_t bound = 1 + biggest / lead + 1;
  for (std::int64_t d = 1; d <= a0 && d <= bound; ++d) {
    if (a0 % d == 0 && is_root(p, d)) zeros.push_back(d);
  }
  return zeros;
}

BandPattern BandPattern::single(int offset, WeightPolynomial weight) {
  return BandPattern{{offset}, {std::move(weight)}, 0};
}

TruncatedOperator BandPattern::realize(int n) const {
  if (offsets.size() != weights.size())
    throw std::invalid_argument("BandPattern: offsets and weights differ in length");
  Matrix m = Matrix::Zero(n, n);
  int lo = 0, hi = 0;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const int d = offsets[i];
    lo = i == 0 ? d : std::min(lo, d);
    hi = i == 0 ? d : std::max(hi, d);
    for (int c = std::max(0, -d); c < n && c + d < n; ++c)
      m(c + d, c) += weights[i].evaluate(c);
  }
  return TruncatedOperator(std::move(m), Band{lo, hi});
}

BandPattern shift_pattern() { return BandPattern::single(1, WeightPolynomial::constant(1)); }
BandPattern shift_adjoint_pattern() {
  return BandPattern::single(-1, WeightPolynomial::constant(1));
}
BandPattern number_pattern() { return BandPattern::single(0, WeightPolynomial::linear(0)); }
BandPattern dz_pattern() { return BandPattern::single(-1, WeightPolynomial::linear(0)); }
BandPattern dz_star_pattern() { return BandPattern::single(1, WeightPolynomial::linear(1)); }

KernelDims pattern_kernel_dims(const BandPattern& p) {
  if (p.offsets.size() != 1 || p.weights.size() != 1) {
    throw std::invalid_argument(
        "pattern_kernel_dims: only single weighted shifts are supported; use a "
        "rectangular truncation for multi-offset patterns");
  }
  const std::int64_t d = p.offsets.front();
  // Columns m with m + d < 0 are killed by the range restriction; columns
  // with w(m) = 0 by the weight. Rows below d are never reached, and a row
  // r >= d is missed exactly when w(r - d) = 0.
  const std::int64_t first_live = std::max<std::int64_t>(0, -d);
  std::int64_t weight_zeros = 0;
  for (std::int64_t z : p.weights.front().nonnegative_integer_zeros())
    if (z >= first_live) ++weight_zeros;
  KernelDims k;
  k.ker = first_live + weight_zeros;
  k.coker = std::max<std::int64_t>(0, d) + weight_zeros;
  return k;
}

}  // namespace ttorus
