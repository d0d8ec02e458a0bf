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

#include <functional>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttorus/dirac.hpp"
#include "ttorus/fourier.hpp"
#include "ttorus/operators.hpp"
#include "ttorus/report.hpp"

namespace ttorus {

/// Wedge tolerance a Toeplitz generator's symbol must meet.
inline constexpr double kMembershipTolerance = 1e-9;

class NotInAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of the *-algebra generated by Toeplitz operators with wedge
/// symbols and finite-rank corner blocks, kept as an expression tree.
///
/// Elements are cheap shared values. realize(n) evaluates the tree on the
/// n-dimensional truncation (products of truncations, adjoints as conjugate
/// transposes) and caches the result per n; concurrent calls for distinct
/// sizes are safe.
class AlgebraElement {
 public:
  /// Throws NotInAlgebra when f fails wedge_check at kMembershipTolerance.
  static AlgebraElement toeplitz(const FourierSeries& f);
  /// Skips the wedge guard; for negative controls only.
  static AlgebraElement toeplitz_unchecked(const FourierSeries& f);
  static AlgebraElement finite_rank(const Matrix& block);
  static AlgebraElement identity();

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(Complex s, const AlgebraElement& a);
  AlgebraElement adjoint() const;

  TruncatedOperator realize(int n) const;

  /// σ(a), evaluated through the homomorphism rules σ(T_f) = f, σ(K) = 0.
  FourierSeries symbol() const;
  /// Upper bound on the symbol bandwidth read off the word structure alone.
  int symbol_bandwidth_bound() const;
  /// Products add the depths of their factors; other nodes take the max.
  int multiplicative_depth() const;
  int max_generator_bandwidth() const;
  /// Largest finite-rank block among the generators.
  int max_block_size() const;
  /// Width of the truncation collar: depth · max bandwidth + extra.
  int auto_margin(int extra) const;
  /// True when every Toeplitz generator went through the wedge guard.
  bool checked() const;
  std::string describe() const;

  struct Node;

 private:
  explicit AlgebraElement(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Random word of tree depth <= max_depth over {T_{cos 4θ}, T_{cos 8θ},
/// rank-2 corner blocks} combined by +, ·, scalars and adjoints.
AlgebraElement random_word(std::mt19937_64& rng, int max_depth);

/// Checks interior([N, T_f]) = interior(-i T_{f'}).
VerificationReport verify_commutator_N(const FourierSeries& f, int n, int margin,
                                       double tol = 1e-12);
/// Checks interior([∂_z, T_f]) = interior(-i T_{ū f'}).
VerificationReport verify_commutator_dz(const FourierSeries& f, int n, int margin,
                                        double tol = 1e-12);
/// Checks interior(δ_N^k(T_f)) = interior((-i)^k T_{f^{(k)}}).
VerificationReport verify_delta_k(const FourierSeries& f, int k, int n, int margin,
                                  double tol = 1e-12);
/// Checks [∂_z*, a] = -[∂_z, a*]* on the interior.
VerificationReport verify_dzstar_via_adjoint(const AlgebraElement& a, int n, int margin,
                                             double tol = 1e-12);
/// Checks [|D|, π(a)] = π([N, a]) away from the cut, with |D| computed
/// numerically from D².
VerificationReport verify_abs_dirac_commutator(const AlgebraElement& a, int n);
/// γ* = γ, γ² = 1, γD = -Dγ and γπ(a) = π(a)γ, all with zero residual.
VerificationReport evenness_check(const AlgebraElement& a, int n);
/// Estimates σ(a) from the truncation and checks the wedge relations and
/// that a - T_{σ(a)} has vanishing symbol.
VerificationReport membership_check(const AlgebraElement& a, int n);

enum class SweepTarget { dirac_commutator, delta, delta_dz };

struct SweepKind {
  SweepTarget target = SweepTarget::dirac_commutator;
  int order = 0;  // k for δ_N^k
  std::string label() const;
};

enum class Trend { bounded, growing };

inline constexpr double kStabilizationTolerance = 1e-6;
/// Relative increase over the last step beyond which a sweep is growing.
inline constexpr double kGrowthThreshold = 1e-2;

struct SweepReport {
  std::string label;
  std::vector<int> sizes;
  std::vector<int> margins;
  /// ‖leading section‖ of the commutator at each size.
  std::vector<double> section_norms;
  /// ‖σ(commutator)‖_∞, a lower bound for the semi-infinite norm.
  std::vector<double> essential_norms;
  /// max(section, essential): the norm estimate used for stabilization.
  std::vector<double> values;
  bool stabilized = false;
  bool section_stabilized = false;
  Trend trend = Trend::bounded;
};

/// Norm estimates of a commutator of `a` across truncation sizes.
SweepReport boundedness_sweep(const AlgebraElement& a, std::span<const int> sizes,
                              SweepKind which);
/// Same, for an element that depends on the truncation size.
SweepReport boundedness_sweep(const std::function<AlgebraElement(int)>& family,
                              std::span<const int> sizes, SweepKind which);

/// T_f with f̂(k) = |k|^{-3/2} for 0 < |k| <= n/4: continuous symbol whose
/// derivative is not bounded as the cut-off grows.
AlgebraElement rough_symbol_control(int n);

}  // namespace ttorus
