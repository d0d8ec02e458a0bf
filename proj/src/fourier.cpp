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

#include "ttorus/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace ttorus {

namespace {

constexpr double kPi = std::numbers::pi;

std::map<int, Complex> prune(std::map<int, Complex> coeffs) {
  double largest = 0.0;
  for (const auto& [k, c] : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("FourierSeries: non-finite coefficient at k=" +
                                  std::to_string(k));
    }
    largest = std::max(largest, std::abs(c));
  }
  const double cutoff = kDropTolerance * largest;
  std::erase_if(coeffs, [cutoff](const auto& kv) {
    return kv.second == Complex{} || std::abs(kv.second) < cutoff;
  });
  return coeffs;
}

// Golden-section maximization of |f| on [lo, hi].
double refine_maximum(const FourierSeries& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = std::abs(f.evaluate(c));
  double fd = std::abs(f.evaluate(d));
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(f.evaluate(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(f.evaluate(d));
    }
  }
  return std::max({fc, fd, std::abs(f.evaluate(0.5 * (a + b)))});
}

}  // namespace

FourierSeries::FourierSeries(std::map<int, Complex> coeffs)
    : coeffs_(prune(std::move(coeffs))) {}

FourierSeries FourierSeries::constant(Complex c) {
  return FourierSeries({{0, c}});
}

FourierSeries FourierSeries::monomial(int k, Complex c) {
  return FourierSeries({{k, c}});
}

FourierSeries FourierSeries::cosine(int k) {
  if (k == 0) return constant(1.0);
  return FourierSeries({{-k, 0.5}, {k, 0.5}});
}

FourierSeries FourierSeries::sine(int k) {
  if (k == 0) return {};
  return FourierSeries({{-k, Complex(0.0, 0.5)}, {k, Complex(0.0, -0.5)}});
}

Complex FourierSeries::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

int FourierSeries::bandwidth() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::abs(coeffs_.begin()->first),
                  std::abs(coeffs_.rbegin()->first));
}

double FourierSeries::max_coefficient() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex FourierSeries::evaluate(double theta) const {
  Complex sum{};
  for (const auto& [k, c] : coeffs_) sum += c * std::polar(1.0, k * theta);
  return sum;
}

std::vector<Complex> FourierSeries::sample(int count) const {
  std::vector<Complex> out(count);
  for (int j = 0; j < count; ++j) out[j] = evaluate(2.0 * kPi * j / count);
  return out;
}

FourierSeries operator+(const FourierSeries& a, const FourierSeries& b) {
  auto c = a.coeffs_;
  for (const auto& [k, v] : b.coeffs_) c[k] += v;
  return FourierSeries(std::move(c));
}

FourierSeries operator-(const FourierSeries& a, const FourierSeries& b) {
  auto c = a.coeffs_;
  for (const auto& [k, v] : b.coeffs_) c[k] -= v;
  return FourierSeries(std::move(c));
}

FourierSeries operator*(const FourierSeries& a, const FourierSeries& b) {
  std::map<int, Complex> c;
  for (const auto& [ka, va] : a.coeffs_)
    for (const auto& [kb, vb] : b.coeffs_) c[ka + kb] += va * vb;
  return FourierSeries(std::move(c));
}

FourierSeries operator*(Complex s, const FourierSeries& a) {
  auto c = a.coeffs_;
  for (auto& [k, v] : c) v *= s;
  return FourierSeries(std::move(c));
}

double coefficient_distance(const FourierSeries& a, const FourierSeries& b) {
  double d = 0.0;
  for (const auto& [k, v] : a.coefficients())
    d = std::max(d, std::abs(v - b.coefficient(k)));
  for (const auto& [k, v] : b.coefficients())
    d = std::max(d, std::abs(v - a.coefficient(k)));
  return d;
}

FourierSeries from_samples(std::span<const Complex> values) {
  const std::size_t count = values.size();
  if (count == 0) throw std::invalid_argument("from_samples: empty input");
  if (!std::has_single_bit(count) || count < 8) {
    throw std::invalid_argument(
        "from_samples: sample count must be a power of two >= 8, got " +
        std::to_string(count));
  }
  std::vector<Complex> in(values.begin(), values.end());
  std::vector<Complex> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  const int n = static_cast<int>(count);
  std::map<int, Complex> coeffs;
  for (int j = 0; j < n; ++j) {
    const int k = j < n / 2 ? j : j - n;
    coeffs[k] = out[j] / static_cast<double>(n);
  }
  return FourierSeries(std::move(coeffs));
}

FourierSeries derivative(const FourierSeries& f) {
  std::map<int, Complex> c;
  for (const auto& [k, v] : f.coefficients()) c[k] = Complex(0.0, k) * v;
  return FourierSeries(std::move(c));
}

FourierSeries derivative(const FourierSeries& f, int order) {
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  FourierSeries g = f;
  for (int i = 0; i < order; ++i) g = derivative(g);
  return g;
}

FourierSeries shift_multiply(const FourierSeries& f, int m) {
  std::map<int, Complex> c;
  for (const auto& [k, v] : f.coefficients()) c[k + m] = v;
  return FourierSeries(std::move(c));
}

FourierSeries conjugate(const FourierSeries& f) {
  std::map<int, Complex> c;
  for (const auto& [k, v] : f.coefficients()) c[-k] = std::conj(v);
  return FourierSeries(std::move(c));
}

double sup_norm(const FourierSeries& f) {
  if (f.is_zero()) return 0.0;
  if (f.bandwidth() == 0) return std::abs(f.coefficient(0));
  const int grid = std::max(4096, 64 * (f.bandwidth() + 1));
  const double h = 2.0 * kPi / grid;
  std::vector<double> mag(grid);
  double grid_max = 0.0;
  for (int j = 0; j < grid; ++j) {
    mag[j] = std::abs(f.evaluate(j * h));
    grid_max = std::max(grid_max, mag[j]);
  }
  // Refine the strongest local maxima; a trigonometric polynomial of
  // bandwidth b has at most 2b of them.
  std::vector<std::pair<double, int>> peaks;
  for (int j = 0; j < grid; ++j) {
    const double left = mag[(j + grid - 1) % grid];
    const double right = mag[(j + 1) % grid];
    if (mag[j] >= left && mag[j] >= right && mag[j] >= 0.99 * grid_max)
      peaks.emplace_back(mag[j], j);
  }
  std::sort(peaks.rbegin(), peaks.rend());
  if (peaks.size() > 64) peaks.resize(64);
  double best = grid_max;
  for (const auto& [value, j] : peaks)
    best = std::max(best, refine_maximum(f, (j - 1) * h, (j + 1) * h));
  return best;
}

WedgeReport wedge_check(const FourierSeries& f, double tolerance,
                        int sample_count) {
  if (sample_count < 16)
    throw std::invalid_argument("wedge_check: sample_count must be >= 16");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("wedge_check: tolerance must be positive");
  WedgeReport r;
  r.tolerance = tolerance;
  for (int j = 0; j < sample_count; ++j) {
    const double t = 0.5 * kPi * j / (sample_count - 1);
    r.max_violation_first = std::max(
        r.max_violation_first,
        std::abs(f.evaluate(t) - f.evaluate(-t - 0.5 * kPi)));
    r.max_violation_second = std::max(
        r.max_violation_second,
        std::abs(f.evaluate(-t) - f.evaluate(t + 0.5 * kPi)));
  }
  r.passed = r.max_violation_first <= tolerance &&
             r.max_violation_second <= tolerance;
  return r;
}

double WedgeSeries::wedge_tolerance() const {
  return std::max(1e-9, 2.0 * sampling_error);
}

std::vector<Complex> sample_profile(const std::function<Complex(double)>& h,
                                    int intervals) {
  if (intervals < 1)
    throw std::invalid_argument("sample_profile: intervals must be >= 1");
  std::vector<Complex> out(intervals + 1);
  for (int j = 0; j <= intervals; ++j) out[j] = h(0.5 * kPi * j / intervals);
  return out;
}

WedgeSeries wedge_from_profiles(std::span<const Complex> h1,
                                std::span<const Complex> h2,
                                Complex corner_value) {
  if (h1.size() != h2.size() || h1.size() < 3) {
    throw std::invalid_argument(
        "wedge_from_profiles: profiles must have equal length >= 3");
  }
  const std::size_t q = h1.size() - 1;
  if (!std::has_single_bit(4 * q)) {
    throw std::invalid_argument(
        "wedge_from_profiles: 4*(profile length - 1) must be a power of two");
  }
  constexpr double kCornerTolerance = 1e-9;
  for (Complex v : {h1.front(), h1.back(), h2.front(), h2.back()}) {
    if (std::abs(v - corner_value) > kCornerTolerance) {
      throw std::invalid_argument(
          "wedge_from_profiles: profile endpoints do not match the corner "
          "value; the glued function would be discontinuous");
    }
  }
  const std::size_t n = 4 * q;
  std::vector<Complex> samples(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j <= q) {
      samples[j] = h1[j];
    } else if (j <= 2 * q) {
      samples[j] = h2[j - q];
    } else if (j <= 3 * q) {
      samples[j] = h1[3 * q - j];  // θ ↦ -θ - π/2 back onto quadrant I
    } else {
      samples[j] = h2[4 * q - j];  // θ ↦ -θ + π/2 back onto quadrant II
    }
  }
  WedgeSeries out;
  out.series = from_samples(samples);
  const int high = static_cast<int>(n / 4);
  for (const auto& [k, c] : out.series.coefficients())
    if (std::abs(k) >= high) out.sampling_error += 2.0 * std::abs(c);
  return out;
}

}  // namespace ttorus
