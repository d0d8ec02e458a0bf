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

#include <gtest/gtest.h>

#include "ttorus/dirac.hpp"
#include "ttorus/serialize.hpp"

namespace ttorus {
namespace {

TEST(Dirac, SmallestAssembly) {
  const DiracBlock block = dirac(2);
  const TruncatedOperator& d = block.assembled();
  ASSERT_EQ(d.dim(), 4);
  // ∂_z e_1 = e_0 sits in the top-right block, ∂_z* e_0 = e_1 in the
  // bottom-left one.
  EXPECT_EQ(d(0, 3), Complex(1.0));
  EXPECT_EQ(d(3, 0), Complex(1.0));
  EXPECT_EQ(d.entries().cwiseAbs().sum(), 2.0);
  EXPECT_THROW(DiracBlock(1), std::invalid_argument);
}

TEST(Dirac, ExactlyHermitian) {
  for (int n : {2, 17, 128}) EXPECT_EQ(max_deviation(dirac(n).assembled(), adjoint(dirac(n).assembled())), 0.0);
}

TEST(Dirac, GradingRelations) {
  const int n = 12;
  const TruncatedOperator g = grading(n);
  const DiracBlock block = dirac(n);
  const TruncatedOperator& d = block.assembled();
  EXPECT_EQ(max_abs_entry(g * d + d * g), 0.0);
  EXPECT_EQ(max_deviation(g * g, TruncatedOperator::identity(2 * n)), 0.0);
  EXPECT_EQ(max_deviation(g, adjoint(g)), 0.0);
  const TruncatedOperator a = toeplitz(FourierSeries::cosine(4), n);
  EXPECT_EQ(max_abs_entry(commutator(g, pi(a))), 0.0);
}

TEST(Dirac, RepresentationIsMultiplicative) {
  const int n = 10;
  const TruncatedOperator a = toeplitz(FourierSeries::cosine(4), n) + shift(n);
  const TruncatedOperator b = dz(n);
  EXPECT_EQ(max_deviation(pi(a * b), pi(a) * pi(b)), 0.0);
  EXPECT_EQ(max_deviation(pi(adjoint(a)), adjoint(pi(a))), 0.0);
}

TEST(Dirac, BlockHelpers) {
  const TruncatedOperator s = shift(5);
  const TruncatedOperator m = block_off_diagonal(s, adjoint(s));
  EXPECT_EQ(max_deviation(summand_block(m, 0, 1), s), 0.0);
  EXPECT_EQ(max_deviation(summand_block(m, 1, 0), adjoint(s)), 0.0);
  EXPECT_EQ(max_abs_entry(summand_block(m, 0, 0)), 0.0);
  EXPECT_EQ(doubled_interior(m, 1).dim(), 6);
  EXPECT_EQ(doubled_leading(m, 1).dim(), 8);
}

TEST(Dirac, AnalyticEigenvectors) {
  const int n = 256;
  const DiracBlock block = dirac(n);
  const TruncatedOperator& d = block.assembled();
  for (int k = -(n - 2); k <= n - 2; ++k) {
    const Vector b = analytic_eigenvector(k, n);
    ASSERT_NEAR(b.norm(), 1.0, 1e-15);
    EXPECT_LT((d.entries() * b - double(k) * b).norm(), 1e-12) << k;
  }
  EXPECT_THROW(analytic_eigenvector(n, n), std::invalid_argument);
}

TEST(Dirac, AnalyticEigenbasisIsOrthonormal) {
  const int n = 40;
  Matrix basis(2 * n, 2 * n - 1);
  for (int k = -(n - 1); k <= n - 1; ++k) basis.col(k + n - 1) = analytic_eigenvector(k, n);
  const Matrix gram = basis.adjoint() * basis;
  EXPECT_LT((gram - Matrix::Identity(2 * n - 1, 2 * n - 1)).cwiseAbs().maxCoeff(), 1e-15);
}

void expect_truncated_spectrum(int n) {
  const SpectrumReport r = spectrum(dirac(n));
  ASSERT_EQ(r.eigenvalues.size(), size_t(2 * n));
  ASSERT_EQ(r.distinct.size(), size_t(2 * n - 1));
  for (int k = -(n - 1); k <= n - 1; ++k) {
    const size_t i = k + n - 1;
    EXPECT_NEAR(r.distinct[i], k, 1e-10 * n);
    EXPECT_EQ(r.multiplicities[i], k == 0 ? 2 : 1) << k;
  }
  for (double res : r.residuals) EXPECT_LT(res, 1e-10);
  ASSERT_EQ(r.spurious.size(), 1u);
  EXPECT_NEAR(r.eigenvalues[r.spurious[0]], 0.0, 1e-10);
  EXPECT_GT(r.boundary_mass[r.spurious[0]], 1.0 - 1e-12);
  const Matrix& v = r.eigenvectors;
  EXPECT_LT((v.adjoint() * v - Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Spectrum, TruncationsMatchIntegersWithOneSpuriousZero) {
  for (int n : {2, 8, 64, 256}) {
    SCOPED_TRACE(n);
    expect_truncated_spectrum(n);
  }
}

TEST(Spectrum, TrueZeroModeIsSecondSummandE0) {
  const int n = 16;
  const SpectrumReport r = spectrum(dirac(n));
  const Vector b0 = analytic_eigenvector(0, n);
  for (size_t i = 0; i < r.eigenvalues.size(); ++i) {
    if (std::abs(r.eigenvalues[i]) > 0.5) continue;
    const double overlap = std::abs(r.eigenvectors.col(i).dot(b0));
    const bool spurious = std::find(r.spurious.begin(), r.spurious.end(), int(i)) != r.spurious.end();
    EXPECT_NEAR(overlap, spurious ? 0.0 : 1.0, 1e-10);
  }
}

TEST(Spectrum, CsvDump) {
  const std::string csv = to_csv(spectrum(dirac(2)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,eigenvalue,residual,boundary_mass,spurious");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Polar, InteriorMatchesNumberAndPhase) {
  const VerificationReport r = polar_check(64, 2);
  EXPECT_TRUE(r.passed());
  for (const Check& c : r.checks) EXPECT_LT(c.value, 1e-10) << c.name;
  EXPECT_EQ(r.checks.size(), 3u);
}

TEST(Polar, PreconditionViolations) {
  EXPECT_TRUE(polar_check(64, 0).precondition_violation);
  EXPECT_TRUE(polar_check(8, 4).precondition_violation);
  EXPECT_FALSE(polar_check(8, 4).passed());
}

TEST(Polar, PhaseIsPartialIsometryAndAbsIsPositive) {
  const PolarDecomposition p = polar_decomposition(dirac(24));
  const TruncatedOperator& f = p.phase;
  EXPECT_LT(max_deviation(f * adjoint(f) * f, f), 1e-10);
  EXPECT_LT(max_deviation(p.abs, adjoint(p.abs)), 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(p.abs.entries());
  EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-10);
}

TEST(RectangularKernel, ShiftAdjointBlock) {
  // S* on columns 0..4 reaches rows 0..3: one kernel vector, onto.
  const KernelDims k = rectangular_kernel_dims(shift_adjoint(10), 5);
  EXPECT_EQ(k.ker, 1);
  EXPECT_EQ(k.coker, 0);
  const KernelDims s = rectangular_kernel_dims(shift(10), 5);
  EXPECT_EQ(s.ker, 0);
  EXPECT_EQ(s.coker, 1);
  EXPECT_THROW(rectangular_kernel_dims(shift(6), 5), IndexError);
}

TEST(Index, ExactAndNumericAgree) {
  for (auto [a, b] : {std::pair{16, 32}, {32, 64}, {64, 128}}) {
    const IndexReport r = index_report(a, b);
    EXPECT_EQ(r.index, 1);
    EXPECT_EQ(r.exact.index(), 1);
    EXPECT_EQ(r.numeric_small.index(), 1);
    EXPECT_EQ(r.numeric_large.index(), 1);
    EXPECT_EQ(r.minus_plus_index, -1);
    EXPECT_EQ(fredholm_index(a, b), 1);
  }
}

TEST(Summability, SmallPartialSums) {
  EXPECT_THROW(summability_partial_sum(0.0, 0), std::invalid_argument);
  EXPECT_THROW(summability_partial_sum(-0.5, 3), std::invalid_argument);
  EXPECT_DOUBLE_EQ(summability_partial_sum(0.0, 1), 2.0);
  EXPECT_DOUBLE_EQ(summability_partial_sum(1.0, 1), 1.5);
  EXPECT_DOUBLE_EQ(summability_partial_sum(1.0, 2), 1.5 + 2.0 / 9.0);
}

TEST(Summability, MonotoneInK) {
  for (double eps : {0.0, 0.5, 1.0}) {
    double prev = 0.0;
    for (std::int64_t k : {1, 5, 50, 1000}) {
      const double s = summability_partial_sum(eps, k);
      EXPECT_GT(s, prev);
      prev = s;
    }
  }
  EXPECT_GT(summability_partial_sum(0.5, 100), summability_partial_sum(1.0, 100));
}

TEST(Summability, DivergesLogarithmicallyAtZero) {
  const SummabilityDiagnostic d = summability_diagnostic(0.0, 100000);
  EXPECT_FALSE(d.trace_class);
  EXPECT_NEAR(d.doubling_increment, 2 * std::log(2.0), 0.02 * 2 * std::log(2.0));
  EXPECT_EQ(d.verdict.rfind("not trace class at eps=0", 0), 0u);
}

TEST(Summability, ConvergesToZetaOracle) {
  // Σ_{|k|<=∞} (1+|k|)^{-(1+ε)} = 2 ζ(1+ε) - 1
  for (double eps : {0.5, 1.0, 2.0}) {
    const double limit = 2.0 * std::riemann_zeta(1.0 + eps) - 1.0;
    const SummabilityDiagnostic d = summability_diagnostic(eps, 100000);
    EXPECT_TRUE(d.trace_class);
    EXPECT_LE(d.partial_sum + d.tail_lower, limit + 1e-12) << eps;
    EXPECT_GE(d.partial_sum + d.tail_upper, limit - 1e-12) << eps;
  }
  const SummabilityDiagnostic one = summability_diagnostic(1.0, 100000);
  EXPECT_NEAR(one.partial_sum + one.tail_lower, M_PI * M_PI / 3 - 1, 1e-3);
  EXPECT_NEAR(one.partial_sum + one.tail_upper, M_PI * M_PI / 3 - 1, 1e-3);
}

}  // namespace
}  // namespace ttorus
