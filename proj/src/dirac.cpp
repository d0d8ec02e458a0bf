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

#include "ttorus/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ttorus {

namespace {

TruncatedOperator assemble(const TruncatedOperator& top_right,
                           const TruncatedOperator& bottom_left) {
  return block_off_diagonal(top_right, bottom_left);
}

int summand_dim(const TruncatedOperator& a) {
  if (a.dim() % 2 != 0)
    throw DimensionMismatch("doubled operator must have even dimension");
  return a.dim() / 2;
}

TruncatedOperator select(const TruncatedOperator& a, int begin, int end) {
  const int n = summand_dim(a);
  const int k = end - begin;
  Matrix m(2 * k, 2 * k);
  for (int bc = 0; bc < 2; ++bc)
    for (int br = 0; br < 2; ++br)
      m.block(br * k, bc * k, k, k) = a.entries().block(br * n + begin, bc * n + begin, k, k);
  return TruncatedOperator(std::move(m));
}

}  // namespace

DiracBlock::DiracBlock(int n)
    : n_(n),
      top_right_(dz(std::max(n, 1))),
      bottom_left_(dz_star(std::max(n, 1))),
      assembled_(assemble(top_right_, bottom_left_)) {
  if (n < 2) throw std::invalid_argument("dirac: n must be >= 2");
}

DiracBlock dirac(int n) { return DiracBlock(n); }

TruncatedOperator grading(int n) {
  if (n < 1) throw std::invalid_argument("grading: n must be >= 1");
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    m(n + i, n + i) = -1.0;
  }
  return TruncatedOperator(std::move(m));
}

TruncatedOperator block_diagonal(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("block_diagonal: dimensions differ");
  const int n = a.dim();
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a.entries();
  m.bottomRightCorner(n, n) = b.entries();
  return TruncatedOperator(std::move(m));
}

TruncatedOperator block_off_diagonal(const TruncatedOperator& top_right,
                                     const TruncatedOperator& bottom_left) {
  if (top_right.dim() != bottom_left.dim())
    throw DimensionMismatch("block_off_diagonal: dimensions differ");
  const int n = top_right.dim();
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = top_right.entries();
  m.bottomLeftCorner(n, n) = bottom_left.entries();
  return TruncatedOperator(std::move(m));
}

TruncatedOperator pi(const TruncatedOperator& a) { return block_diagonal(a, a); }

TruncatedOperator doubled_interior(const TruncatedOperator& a, int margin) {
  const int n = summand_dim(a);
  if (margin < 0 || 2 * margin >= n)
    throw std::invalid_argument("doubled_interior: margin too large");
  return select(a, margin, n - margin);
}

TruncatedOperator doubled_leading(const TruncatedOperator& a, int margin) {
  const int n = summand_dim(a);
  if (margin < 0 || margin >= n)
    throw std::invalid_argument("doubled_leading: margin too large");
  return select(a, 0, n - margin);
}

TruncatedOperator summand_block(const TruncatedOperator& a, int row, int col) {
  const int n = summand_dim(a);
  return TruncatedOperator(a.entries().block(row * n, col * n, n, n));
}

Vector analytic_eigenvector(int k, int n) {
  if (n < 1 || std::abs(k) > n - 1) {
    throw std::invalid_argument("analytic_eigenvector: |k| must be <= n - 1");
  }
  Vector b = Vector::Zero(2 * n);
  if (k == 0) {
    b(n) = 1.0;
    return b;
  }
  const int j = std::abs(k);
  const double s = 1.0 / std::sqrt(2.0);
  b(j - 1) = k > 0 ? s : -s;
  b(n + j) = s;
  return b;
}

SpectrumReport spectrum(const DiracBlock& d, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectrum: tol must be positive");
  const Matrix& a = d.assembled().entries();
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectrum: Hermitian eigensolver failed");

  const int dim = static_cast<int>(a.rows());
  const int boundary = d.n() - 1;  // first-summand e_{n-1}
  SpectrumReport r;
  r.eigenvectors = es.eigenvectors();
  const Eigen::VectorXd values = es.eigenvalues();

  for (int begin = 0; begin < dim;) {
    int end = begin + 1;
    while (end < dim && values(end) - values(end - 1) <= tol) ++end;
    const int m = end - begin;
    double mean = 0.0;
    for (int i = begin; i < end; ++i) mean += values(i);
    mean /= m;
    r.distinct.push_back(mean);
    r.multiplicities.push_back(m);

    if (m > 1) {
      // Rotate the eigenspace so the projection of the boundary basis
      // vector becomes one of its basis vectors.
      const Matrix basis = r.eigenvectors.middleCols(begin, m);
      const Vector coords = basis.row(boundary).adjoint();
      const double mass = coords.squaredNorm();
      if (mass > kSpuriousMass) {
        const Vector q = basis * coords / std::sqrt(mass);
        const Matrix rest = basis - q * (q.adjoint() * basis);
        Eigen::JacobiSVD<Matrix> svd(rest, Eigen::ComputeThinU);
        r.eigenvectors.col(begin) = q;
        r.eigenvectors.middleCols(begin + 1, m - 1) = svd.matrixU().leftCols(m - 1);
      }
    }
    begin = end;
  }

  r.eigenvalues.assign(values.data(), values.data() + dim);
  for (int i = 0; i < dim; ++i) {
    const Vector v = r.eigenvectors.col(i);
    r.residuals.push_back((a * v - values(i) * v).norm());
    const double bm = std::norm(v(boundary));
    r.boundary_mass.push_back(bm);
    if (bm > kSpuriousMass) r.spurious.push_back(i);
  }
  return r;
}

PolarDecomposition polar_decomposition(const DiracBlock& d) {
  const Matrix& a = d.assembled().entries();
  // |D| from D² avoids the sign function near the double zero eigenvalue.
  Eigen::SelfAdjointEigenSolver<Matrix> es(a * a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("polar_decomposition: eigensolver failed");
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const double cutoff = kPseudoInverseCutoff * root.maxCoeff();
  Eigen::VectorXd inv(root.size());
  for (int i = 0; i < root.size(); ++i) inv(i) = root(i) > cutoff ? 1.0 / root(i) : 0.0;
  const Matrix& v = es.eigenvectors();
  Matrix abs = v * root.cast<Complex>().asDiagonal() * v.adjoint();
  Matrix pinv = v * inv.cast<Complex>().asDiagonal() * v.adjoint();
  Matrix phase = a * pinv;
  return {TruncatedOperator(std::move(abs)), TruncatedOperator(std::move(phase))};
}

VerificationReport polar_check(int n, int margin) {
  VerificationReport r;
  r.name = "polar_decomposition";
  r.n = n;
  r.margin = margin;
  if (n < 2 || margin < 1 || 2 * margin >= n) {
    r.precondition_violation = "polar_check requires margin >= 1 and 2*margin < n";
    return r;
  }
  const DiracBlock d(n);
  const PolarDecomposition p = polar_decomposition(d);
  const TruncatedOperator expected_abs =
      block_diagonal(number(n) + TruncatedOperator::identity(n), number(n));
  const TruncatedOperator expected_phase = block_off_diagonal(shift_adjoint(n), shift(n));

  constexpr double kTol = 1e-10;
  r.require_at_most("abs_vs_diag(N+1,N)",
                    max_deviation(doubled_interior(p.abs, margin),
                                  doubled_interior(expected_abs, margin)),
                    kTol);
  r.require_at_most("phase_vs_(0,S*;S,0)",
                    max_deviation(doubled_interior(p.phase, margin),
                                  doubled_interior(expected_phase, margin)),
                    kTol);
  r.require_at_most("phase_times_abs_vs_D",
                    max_deviation(doubled_interior(p.phase * p.abs, margin),
                                  doubled_interior(d.assembled(), margin)),
                    kTol);
  // The cut image of e_{n-1} shows up only in the collar.
  r.metrics["abs_full_deviation"] = max_deviation(p.abs, expected_abs);
  r.metrics["phase_full_deviation"] = max_deviation(p.phase, expected_phase);
  return r;
}

KernelDims rectangular_kernel_dims(const TruncatedOperator& block, int domain) {
  if (domain < 1 || domain > block.dim())
    throw std::invalid_argument("rectangular_kernel_dims: bad domain size");
  const Matrix cols = block.entries().leftCols(domain);
  const double scale = cols.cwiseAbs().maxCoeff();
  int last_row = -1;
  for (int r = 0; r < cols.rows(); ++r)
    if (cols.row(r).cwiseAbs().maxCoeff() > kPseudoInverseCutoff * std::max(scale, 1.0))
      last_row = r;
  if (last_row == block.dim() - 1) {
    throw IndexError(
        "rectangular_kernel_dims: the domain reaches the last row; the "
        "truncation is too small to contain its image");
  }
  KernelDims k;
  if (last_row < 0) {
    k.ker = domain;
    return k;
  }
  const Matrix rect = cols.topRows(last_row + 1);
  Eigen::JacobiSVD<Matrix> svd(rect);
  const auto& sv = svd.singularValues();
  const double cut = kPseudoInverseCutoff * (sv.size() > 0 ? sv(0) : 0.0);
  std::int64_t rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  k.ker = domain - rank;
  k.coker = (last_row + 1) - rank;
  return k;
}

IndexReport index_report(int n_small, int n_large) {
  if (n_small < 2 || n_small >= n_large)
    throw std::invalid_argument("fredholm_index: need 2 <= n_small < n_large");
  IndexReport r;
  r.exact = pattern_kernel_dims(shift_adjoint_pattern());
  r.minus_plus_exact = pattern_kernel_dims(shift_pattern());

  // Two guard rows keep the image of the domain inside the truncation.
  auto phase_blocks = [](int s) {
    const PolarDecomposition p = polar_decomposition(DiracBlock(s + 2));
    return std::pair{summand_block(p.phase, 0, 1), summand_block(p.phase, 1, 0)};
  };
  const auto [plus_minus_small, minus_plus_small] = phase_blocks(n_small);
  const auto [plus_minus_large, minus_plus_large] = phase_blocks(n_large);
  r.numeric_small = rectangular_kernel_dims(plus_minus_small, n_small);
  r.numeric_large = rectangular_kernel_dims(plus_minus_large, n_large);
  const KernelDims mp_small = rectangular_kernel_dims(minus_plus_small, n_small);
  const KernelDims mp_large = rectangular_kernel_dims(minus_plus_large, n_large);

  if (r.numeric_small.index() != r.numeric_large.index() ||
      mp_small.index() != mp_large.index()) {
    throw IndexError("fredholm_index: rectangular index differs between n = " +
                     std::to_string(n_small) + " and n = " + std::to_string(n_large));
  }
  if (r.numeric_small.index() != r.exact.index() ||
      mp_small.index() != r.minus_plus_exact.index()) {
    throw IndexError("fredholm_index: exact and numerical index disagree");
  }
  r.index = static_cast<int>(r.exact.index());
  r.minus_plus_index = static_cast<int>(r.minus_plus_exact.index());
  return r;
}

int fredholm_index(int n_small, int n_large) { return index_report(n_small, n_large).index; }

double summability_partial_sum(double epsilon, std::int64_t K) {
  if (K < 1) throw std::invalid_argument("summability_partial_sum: K must be >= 1");
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("summability_partial_sum: epsilon must be >= 0");
  const long double s = 1.0L + static_cast<long double>(epsilon);
  long double sum = 0.0L;
  for (std::int64_t j = K; j >= 1; --j) sum += std::pow(1.0L + j, -s);
  return static_cast<double>(1.0L + 2.0L * sum);
}

SummabilityDiagnostic summability_diagnostic(double epsilon, std::int64_t K) {
  SummabilityDiagnostic d;
  d.epsilon = epsilon;
  d.K = K;
  d.partial_sum = summability_partial_sum(epsilon, K);
  d.doubled_sum = summability_partial_sum(epsilon, 2 * K);
  d.doubling_increment = d.doubled_sum - d.partial_sum;
  d.trace_class = epsilon > 0.0;
  if (d.trace_class) {
    // Integral test on 2 Σ_{j>K} (1+j)^{-(1+ε)}.
    d.tail_lower = 2.0 * std::pow(static_cast<double>(K) + 2.0, -epsilon) / epsilon;
    d.tail_upper = 2.0 * std::pow(static_cast<double>(K), -epsilon) / epsilon;
    d.extrapolated_limit = d.partial_sum + 0.5 * (d.tail_lower + d.tail_upper);
    d.verdict = "trace class: limit in [" + std::to_string(d.partial_sum + d.tail_lower) +
                ", " + std::to_string(d.partial_sum + d.tail_upper) + "]";
  } else {
    d.tail_lower = std::numeric_limits<double>::infinity();
    d.tail_upper = std::numeric_limits<double>::infinity();
    d.extrapolated_limit = std::numeric_limits<double>::infinity();
    d.verdict = "not trace class at eps=0: partial sums grow like 2 ln K (doubling adds " +
                std::to_string(d.doubling_increment) + " vs 2 ln 2 = " +
                std::to_string(2.0 * std::numbers::ln2) + ")";
  }
  return d;
}

}  // namespace ttorus
