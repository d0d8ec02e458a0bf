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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ttorus/fourier.hpp"
#include "ttorus/serialize.hpp"

namespace ttorus {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

FourierSeries random_series(std::mt19937_64& rng, int bandwidth) {
  std::normal_distribution<double> g;
  std::map<int, Complex> c;
  for (int k = -bandwidth; k <= bandwidth; ++k) c[k] = Complex(g(rng), g(rng));
  return FourierSeries(std::move(c));
}

void expect_coefficients(const FourierSeries& f, const std::map<int, Complex>& want,
                         double tol) {
  EXPECT_EQ(f.coefficients().size(), want.size());
  for (const auto& [k, c] : want) EXPECT_NEAR(std::abs(f.coefficient(k) - c), 0.0, tol) << k;
}

TEST(FromSamples, ConstantIsDcOnly) {
  std::vector<Complex> s(8, 1.0);
  expect_coefficients(from_samples(s), {{0, 1.0}}, 1e-15);
}

TEST(FromSamples, CosineFourGivesTwoHalves) {
  std::vector<Complex> s(64);
  for (int j = 0; j < 64; ++j) s[j] = std::cos(4.0 * 2.0 * kPi * j / 64);
  expect_coefficients(from_samples(s), {{-4, 0.5}, {4, 0.5}}, 1e-15);
}

TEST(FromSamples, SingleMode) {
  std::vector<Complex> s(16);
  for (int j = 0; j < 16; ++j) s[j] = std::polar(1.0, 2.0 * kPi * j / 16);
  expect_coefficients(from_samples(s), {{1, 1.0}}, 1e-15);
}

TEST(FromSamples, RejectsBadCounts) {
  std::vector<Complex> twelve(12, 1.0), four(4, 1.0), none;
  EXPECT_THROW(from_samples(twelve), std::invalid_argument);
  EXPECT_THROW(from_samples(four), std::invalid_argument);
  EXPECT_THROW(from_samples(none), std::invalid_argument);
}

TEST(FromSamples, FrequenciesAreCentered) {
  // The Nyquist mode lands at -N/2.
  std::vector<Complex> s(8);
  for (int j = 0; j < 8; ++j) s[j] = (j % 2 == 0) ? 1.0 : -1.0;
  expect_coefficients(from_samples(s), {{-4, 1.0}}, 1e-15);
}

TEST(FromSamples, InvertsSamplingOnBandLimitedSeries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int grid = 8 << (trial % 5);
    const FourierSeries f = random_series(rng, grid / 2 - 1);
    const FourierSeries g = from_samples(f.sample(grid));
    EXPECT_LT(coefficient_distance(f, g), 1e-12 * f.max_coefficient());
    // reproduces the samples
    const auto a = f.sample(grid), b = g.sample(grid);
    for (int j = 0; j < grid; ++j) EXPECT_LT(std::abs(a[j] - b[j]), 1e-12 * (1.0 + std::abs(a[j])));
  }
}

TEST(FourierSeries, PrunesRelativeToLargestCoefficient) {
  FourierSeries f({{0, 1.0}, {3, 1e-15}, {5, 1e-13}});
  EXPECT_EQ(f.coefficients().size(), 2u);
  EXPECT_EQ(f.bandwidth(), 5);
  EXPECT_TRUE(FourierSeries({{2, 0.0}}).is_zero());
  EXPECT_THROW(FourierSeries({{0, Complex(NAN, 0)}}), std::invalid_argument);
}

TEST(FourierSeries, EvaluationMatchesDefinition) {
  const FourierSeries f({{-2, Complex(1, 2)}, {3, Complex(-0.5, 0.25)}});
  for (double t : {0.0, 0.3, 2.0, -1.7}) {
    const Complex want = Complex(1, 2) * std::exp(-2.0 * kI * t) +
                         Complex(-0.5, 0.25) * std::exp(3.0 * kI * t);
    EXPECT_LT(std::abs(f.evaluate(t) - want), 1e-15);
  }
}

TEST(Derivative, ConstantVanishes) {
  EXPECT_TRUE(derivative(FourierSeries::constant(1.0)).is_zero());
}

TEST(Derivative, CosineFour) {
  expect_coefficients(derivative(FourierSeries::cosine(4)),
                      {{4, Complex(0, 2)}, {-4, Complex(0, -2)}}, 0.0);
}

TEST(Derivative, SecondDerivativeAgreesWithFiniteDifferences) {
  const FourierSeries f = FourierSeries::cosine(4);
  const FourierSeries f2 = derivative(f, 2);
  expect_coefficients(f2, {{4, -8.0}, {-4, -8.0}}, 0.0);  // -16 cos 4θ
  const double h = 1e-3;
  for (double t = 0.0; t < 2 * kPi; t += 0.37) {
    const Complex fd = (f.evaluate(t + h) - 2.0 * f.evaluate(t) + f.evaluate(t - h)) / (h * h);
    EXPECT_NEAR(std::abs(fd - f2.evaluate(t)), 0.0, 1e-4);
  }
}

TEST(Derivative, CoefficientRule) {
  std::mt19937_64 rng(11);
  const FourierSeries f = random_series(rng, 9);
  const FourierSeries d = derivative(f);
  for (int k = -9; k <= 9; ++k)
    EXPECT_EQ(d.coefficient(k), Complex(0.0, k) * f.coefficient(k));
}

TEST(ShiftMultiply, ConjugateUnitCancels) {
  expect_coefficients(shift_multiply(FourierSeries::monomial(1), -1), {{0, 1.0}}, 0.0);
}

TEST(ShiftMultiply, BarUTimesDerivativeOfCosineFour) {
  // ū f' with f = cos 4θ: ū · 2i(u⁴ - u⁻⁴) = 2i(u³ - u⁻⁵)
  expect_coefficients(shift_multiply(derivative(FourierSeries::cosine(4)), -1),
                      {{3, Complex(0, 2)}, {-5, Complex(0, -2)}}, 0.0);
}

TEST(ShiftMultiply, ZeroStaysZero) { EXPECT_TRUE(shift_multiply(FourierSeries{}, 7).is_zero()); }

TEST(Conjugate, Examples) {
  expect_coefficients(conjugate(FourierSeries::monomial(1)), {{-1, 1.0}}, 0.0);
  expect_coefficients(conjugate(FourierSeries::cosine(4)), {{-4, 0.5}, {4, 0.5}}, 0.0);
  expect_coefficients(conjugate(FourierSeries::monomial(2, kI)), {{-2, -kI}}, 0.0);
}

TEST(Conjugate, InvolutionCommutingWithDerivative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierSeries f = random_series(rng, 1 + trial);
    EXPECT_EQ(coefficient_distance(conjugate(conjugate(f)), f), 0.0);
    EXPECT_EQ(coefficient_distance(conjugate(derivative(f)), derivative(conjugate(f))), 0.0);
    for (double t : {0.1, 1.3, 4.0})
      EXPECT_LT(std::abs(conjugate(f).evaluate(t) - std::conj(f.evaluate(t))), 1e-12);
  }
}

TEST(Algebra, ProductIsPointwise) {
  std::mt19937_64 rng(5);
  const FourierSeries f = random_series(rng, 4), g = random_series(rng, 6);
  const FourierSeries h = f * g;
  EXPECT_EQ(h.bandwidth(), 10);
  for (double t : {0.2, 2.2, 5.1})
    EXPECT_LT(std::abs(h.evaluate(t) - f.evaluate(t) * g.evaluate(t)), 1e-12);
}

TEST(SupNorm, AgreesWithDenseGrid) {
  EXPECT_NEAR(sup_norm(FourierSeries::cosine(4)), 1.0, 1e-15);
  EXPECT_NEAR(sup_norm(4.0 * derivative(FourierSeries::cosine(3))), 12.0, 1e-12);
  std::mt19937_64 rng(9);
  const FourierSeries f = random_series(rng, 7);
  double grid = 0.0;
  for (int j = 0; j < 1 << 20; ++j) grid = std::max(grid, std::abs(f.evaluate(2 * kPi * j / (1 << 20))));
  const double s = sup_norm(f);
  EXPECT_GE(s, grid - 1e-12);
  EXPECT_LT(s - grid, 1e-8);
}

TEST(WedgeCheck, ConstantPassesExactly) {
  const WedgeReport r = wedge_check(FourierSeries::constant(2.5), 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_violation_first, 0.0);
  EXPECT_EQ(r.max_violation_second, 0.0);
}

TEST(WedgeCheck, CosineFourPasses) {
  // cos(4(-t - π/2)) = cos(4t + 2π) = cos 4t, checked pointwise as an oracle.
  for (int j = 0; j <= 100; ++j) {
    const double t = 0.5 * kPi * j / 100;
    EXPECT_NEAR(std::cos(4 * (-t - kPi / 2)), std::cos(4 * t), 1e-14);
  }
  EXPECT_TRUE(wedge_check(FourierSeries::cosine(4), 1e-10).passed);
}

TEST(WedgeCheck, SineFourFailsWithViolationTwo) {
  const WedgeReport r = wedge_check(FourierSeries::sine(4), 1e-10);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.max_violation_first, 2.0, 1e-4);
  EXPECT_NEAR(r.max_violation_second, 2.0, 1e-4);
}

TEST(WedgeCheck, MonomialFourFails) {
  EXPECT_GT(wedge_check(FourierSeries::monomial(4), 1e-10).max_violation_first, 0.5);
}

TEST(WedgeCheck, CosineFamily) {
  for (int k = 0; k <= 16; ++k) {
    const WedgeReport r = wedge_check(FourierSeries::cosine(4 * k), 1e-10);
    EXPECT_TRUE(r.passed) << k;
  }
}

TEST(WedgeCheck, RejectsBadArguments) {
  EXPECT_THROW(wedge_check(FourierSeries{}, 1e-9, 8), std::invalid_argument);
  EXPECT_THROW(wedge_check(FourierSeries{}, 0.0), std::invalid_argument);
}

TEST(WedgeFromProfiles, ConstantProfiles) {
  const std::vector<Complex> h(65, Complex(0.5, -1.0));
  const WedgeSeries w = wedge_from_profiles(h, h, Complex(0.5, -1.0));
  expect_coefficients(w.series, {{0, Complex(0.5, -1.0)}}, 1e-15);
}

TEST(WedgeFromProfiles, MatchingCosineProfilesReassembleCosine) {
  auto c4 = [](double t) { return Complex(std::cos(4 * t)); };
  const auto h = sample_profile(c4, 64);
  const WedgeSeries w = wedge_from_profiles(h, h, 1.0);
  expect_coefficients(w.series, {{-4, 0.5}, {4, 0.5}}, 1e-14);
  // oracle: samples of cos 4θ
  const auto got = w.series.sample(256);
  for (int j = 0; j < 256; ++j) EXPECT_NEAR(got[j].real(), std::cos(4 * 2 * kPi * j / 256), 1e-13);
  EXPECT_TRUE(wedge_check(w.series, 1e-8).passed);
}

TEST(WedgeFromProfiles, DistinctProfilesGiveWedgeFunction) {
  const auto h1 = sample_profile([](double t) { return Complex(std::cos(4 * t)); }, 256);
  const auto h2 = sample_profile([](double t) { return Complex(std::cos(8 * t)); }, 256);
  const WedgeSeries w = wedge_from_profiles(h1, h2, 1.0);
  EXPECT_GT(w.series.coefficients().size(), 2u);
  EXPECT_GT(w.sampling_error, 0.0);
  EXPECT_TRUE(wedge_check(w.series, w.wedge_tolerance()).passed);
  // the glued function takes profile values on the grid
  EXPECT_NEAR(w.series.evaluate(kPi / 2 + kPi / 8).real(), std::cos(8 * kPi / 8), 1e-12);
}

TEST(WedgeFromProfiles, Errors) {
  const auto h = sample_profile([](double t) { return Complex(std::cos(4 * t)); }, 64);
  const auto s = sample_profile([](double t) { return Complex(std::sin(t)); }, 64);
  EXPECT_THROW(wedge_from_profiles(h, s, 1.0), std::invalid_argument);
  EXPECT_THROW(wedge_from_profiles(h, h, 0.0), std::invalid_argument);
  const auto odd = sample_profile([](double) { return Complex(1.0); }, 10);
  EXPECT_THROW(wedge_from_profiles(odd, odd, 1.0), std::invalid_argument);
}

TEST(Serialization, JsonIsSortedAndRoundTrips) {
  std::mt19937_64 rng(1);
  const FourierSeries f = random_series(rng, 5);
  const Json j = to_json(f);
  ASSERT_EQ(j.size(), 11u);
  for (std::size_t i = 1; i < j.size(); ++i) EXPECT_LT(j[i - 1]["k"], j[i]["k"]);
  EXPECT_EQ(coefficient_distance(fourier_from_json(Json::parse(j.dump())), f), 0.0);
}

}  // namespace
}  // namespace ttorus
