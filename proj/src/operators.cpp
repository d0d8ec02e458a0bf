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

#include "ttorus/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ttorus {

namespace {

std::optional<Band> clamp_band(std::optional<Band> band, int n) {
  if (!band) return band;
  Band b{std::max(band->lower, -(n - 1)), std::min(band->upper, n - 1)};
  if (b.lower > b.upper) b = {0, 0};
  return b;
}

void require_same_dim(const TruncatedOperator& a, const TruncatedOperator& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimensions " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " differ");
  }
}

void require_positive_dim(int n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

TruncatedOperator::TruncatedOperator(Matrix entries, std::optional<Band> band)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw std::invalid_argument("TruncatedOperator: entries must be square, n >= 1");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("TruncatedOperator: non-finite entry");
  }
  band_ = clamp_band(band, dim());
  if (band_) {
    for (int c = 0; c < dim(); ++c)
      for (int r = 0; r < dim(); ++r)
        if (!band_->contains(r - c) && entries_(r, c) != Complex{}) {
          throw std::invalid_argument(
              "TruncatedOperator: nonzero entry outside the declared band");
        }
  }
}

TruncatedOperator TruncatedOperator::identity(int n) {
  require_positive_dim(n, "identity");
  return TruncatedOperator(Matrix::Identity(n, n), Band{0, 0});
}

TruncatedOperator TruncatedOperator::zero(int n) {
  require_positive_dim(n, "zero");
  return TruncatedOperator(Matrix::Zero(n, n), Band{0, 0});
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_dim(a, b, "add");
  std::optional<Band> band;
  if (a.band_ && b.band_)
    band = Band{std::min(a.band_->lower, b.band_->lower),
                std::max(a.band_->upper, b.band_->upper)};
  return TruncatedOperator(a.entries_ + b.entries_, band);
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  return a + Complex(-1.0) * b;
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_dim(a, b, "multiply");
  const int n = a.dim();
  if (!a.band_ || !b.band_) return TruncatedOperator(a.entries_ * b.entries_);

  const Band ba = *a.band_, bb = *b.band_;
  Matrix out = Matrix::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const int j_lo = std::max(0, c + bb.lower), j_hi = std::min(n - 1, c + bb.upper);
    for (int j = j_lo; j <= j_hi; ++j) {
      const Complex bjc = b.entries_(j, c);
      if (bjc == Complex{}) continue;
      const int i_lo = std::max(0, j + ba.lower), i_hi = std::min(n - 1, j + ba.upper);
      for (int i = i_lo; i <= i_hi; ++i) out(i, c) += a.entries_(i, j) * bjc;
    }
  }
  return TruncatedOperator(std::move(out),
                           Band{ba.lower + bb.lower, ba.upper + bb.upper});
}

TruncatedOperator operator*(Complex s, const TruncatedOperator& a) {
  return TruncatedOperator(s * a.entries_, a.band_);
}

TruncatedOperator toeplitz(const FourierSeries& f, int n) {
  require_positive_dim(n, "toeplitz");
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [k, v] : f.coefficients()) {
    // column c, row c + k
    for (int c = std::max(0, -k); c < n && c + k < n; ++c) m(c + k, c) = v;
  }
  const int b = f.bandwidth();
  return TruncatedOperator(std::move(m), Band{-b, b});
}

TruncatedOperator shift(int n) {
  require_positive_dim(n, "shift");
  Matrix m = Matrix::Zero(n, n);
  for (int c = 0; c + 1 < n; ++c) m(c + 1, c) = 1.0;
  return TruncatedOperator(std::move(m), Band{1, 1});
}

TruncatedOperator shift_adjoint(int n) {
  require_positive_dim(n, "shift_adjoint");
  Matrix m = Matrix::Zero(n, n);
  for (int c = 1; c < n; ++c) m(c - 1, c) = 1.0;
  return TruncatedOperator(std::move(m), Band{-1, -1});
}

TruncatedOperator number(int n) {
  require_positive_dim(n, "number");
  Matrix m = Matrix::Zero(n, n);
  for (int c = 0; c < n; ++c) m(c, c) = static_cast<double>(c);
  return TruncatedOperator(std::move(m), Band{0, 0});
}

TruncatedOperator dz(int n) {
  require_positive_dim(n, "dz");
  Matrix m = Matrix::Zero(n, n);
  for (int c = 1; c < n; ++c) m(c - 1, c) = static_cast<double>(c);
  return TruncatedOperator(std::move(m), Band{-1, -1});
}

TruncatedOperator dz_star(int n) {
  require_positive_dim(n, "dz_star");
  Matrix m = Matrix::Zero(n, n);
  for (int c = 0; c + 1 < n; ++c) m(c + 1, c) = static_cast<double>(c + 1);
  return TruncatedOperator(std::move(m), Band{1, 1});
}

TruncatedOperator finite_rank(const Matrix& block, int n) {
  require_positive_dim(n, "finite_rank");
  if (block.rows() != block.cols())
    throw std::invalid_argument("finite_rank: block must be square");
  const int k = static_cast<int>(block.rows());
  if (k > n) {
    throw std::invalid_argument("finite_rank: block size " + std::to_string(k) +
                                " exceeds n = " + std::to_string(n));
  }
  Matrix m = Matrix::Zero(n, n);
  m.topLeftCorner(k, k) = block;
  return TruncatedOperator(std::move(m), Band{-std::max(k - 1, 0), std::max(k - 1, 0)});
}

TruncatedOperator multiply(const TruncatedOperator& a, const TruncatedOperator& b) {
  return a * b;
}

TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b) {
  return a + b;
}

TruncatedOperator scale(Complex s, const TruncatedOperator& a) { return s * a; }

TruncatedOperator adjoint(const TruncatedOperator& a) {
  std::optional<Band> band;
  if (a.band()) band = Band{-a.band()->upper, -a.band()->lower};
  return TruncatedOperator(a.entries().adjoint(), band);
}

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

double operator_norm(const TruncatedOperator& a, double tol, NormMethod method) {
  if (!(tol > 0.0)) throw std::invalid_argument("operator_norm: tol must be positive");
  const Matrix& m = a.entries();
  if (method == NormMethod::automatic)
    method = a.dim() <= kDenseNormLimit ? NormMethod::dense : NormMethod::power;

  if (method == NormMethod::dense) {
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("operator_norm: eigensolver failed");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }

  if (m.isZero(0.0)) return 0.0;
  Vector v = Vector::Ones(a.dim()) / std::sqrt(static_cast<double>(a.dim()));
  for (int it = 0; it < kPowerIterationCap; ++it) {
    const Vector w = m.adjoint() * (m * v);
    const double lambda = v.dot(w).real();
    const double wn = w.norm();
    if (wn == 0.0) break;
    if ((w - lambda * v).norm() <= tol * lambda) return std::sqrt(lambda);
    v = w / wn;
  }
  throw NormNotConverged("operator_norm: power iteration did not converge within " +
                         std::to_string(kPowerIterationCap) + " iterations");
}

TruncatedOperator interior_block(const TruncatedOperator& a, int margin) {
  if (margin < 0 || 2 * margin >= a.dim()) {
    throw std::invalid_argument("interior_block: margin " + std::to_string(margin) +
                                " too large for dim " + std::to_string(a.dim()));
  }
  const int k = a.dim() - 2 * margin;
  return TruncatedOperator(a.entries().block(margin, margin, k, k), a.band());
}

TruncatedOperator leading_block(const TruncatedOperator& a, int margin) {
  if (margin < 0 || margin >= a.dim()) {
    throw std::invalid_argument("leading_block: margin " + std::to_string(margin) +
                                " too large for dim " + std::to_string(a.dim()));
  }
  const int k = a.dim() - margin;
  return TruncatedOperator(a.entries().topLeftCorner(k, k), a.band());
}

FourierSeries symbol_estimate(const TruncatedOperator& a, int max_freq) {
  const int n = a.dim();
  if (max_freq < 0 || 4 * max_freq >= n) {
    throw std::invalid_argument("symbol_estimate: max_freq must be < dim/4");
  }
  std::map<int, Complex> coeffs;
  for (int k = -max_freq; k <= max_freq; ++k) {
    // Diagonal k holds entries (m + k, m) for m in [first, last].
    const int first = std::max(0, -k);
    const int last = n - 1 - std::max(0, k);
    const int start = first + (last - first + 1) / 2;
    Complex sum{};
    for (int m = start; m <= last; ++m) sum += a(m + k, m);
    coeffs[k] = sum / static_cast<double>(last - start + 1);
  }
  return FourierSeries(std::move(coeffs));
}

double max_deviation(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_dim(a, b, "max_deviation");
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

double max_abs_entry(const TruncatedOperator& a) {
  return a.entries().cwiseAbs().maxCoeff();
}

WeightGap cauchy_riemann_weight_gap(int n) {
  if (n < 1) throw std::invalid_argument("cauchy_riemann_weight_gap: n must be >= 1");
  WeightGap g;
  double prev = 0.0;
  for (int m = 0; m < n; ++m) {
    const double x = m;
    // √(m(m+1)) - m without cancellation
    const double gap = m == 0 ? 0.0 : x / (std::sqrt(x * (x + 1.0)) + x);
    if (gap < prev) g.monotone = false;
    if (gap >= g.sup) {
      g.sup = gap;
      g.at = m;
    }
    prev = gap;
  }
  return g;
}

}  // namespace ttorus
