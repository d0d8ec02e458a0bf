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

#include "ttorus/triple.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace ttorus {

struct AlgebraElement::Node {
  enum class Kind { toeplitz, finite_rank, sum, product, scaled, adjoint };
  Kind kind = Kind::toeplitz;
  FourierSeries symbol;
  bool checked = true;
  Matrix block;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  Complex scalar{1.0};

  mutable std::mutex mutex;
  mutable std::map<int, TruncatedOperator> cache;
};

namespace {

using Node = AlgebraElement::Node;
using Kind = Node::Kind;

TruncatedOperator evaluate(const Node& node, int n) {
  switch (node.kind) {
    case Kind::toeplitz:
      return toeplitz(node.symbol, n);
    case Kind::finite_rank:
      return finite_rank(node.block, n);
    case Kind::sum:
      return evaluate(*node.left, n) + evaluate(*node.right, n);
    case Kind::product:
      return evaluate(*node.left, n) * evaluate(*node.right, n);
    case Kind::scaled:
      return node.scalar * evaluate(*node.left, n);
    case Kind::adjoint:
      return ttorus::adjoint(evaluate(*node.left, n));
  }
  throw std::logic_error("AlgebraElement: unknown node kind");
}

FourierSeries symbol_of(const Node& node) {
  switch (node.kind) {
    case Kind::toeplitz:
      return node.symbol;
    case Kind::finite_rank:
      return {};
    case Kind::sum:
      return symbol_of(*node.left) + symbol_of(*node.right);
    case Kind::product:
      return symbol_of(*node.left) * symbol_of(*node.right);
    case Kind::scaled:
      return node.scalar * symbol_of(*node.left);
    case Kind::adjoint:
      return conjugate(symbol_of(*node.left));
  }
  throw std::logic_error("AlgebraElement: unknown node kind");
}

// Folds over the tree: leaf(node) at generators, combine(node, l, r) inside
// (r = l for unary nodes).
template <typename Leaf, typename Combine>
int fold(const Node& node, Leaf leaf, Combine combine) {
  switch (node.kind) {
    case Kind::toeplitz:
    case Kind::finite_rank:
      return leaf(node);
    case Kind::sum:
    case Kind::product: {
      const int l = fold(*node.left, leaf, combine);
      const int r = fold(*node.right, leaf, combine);
      return combine(node, l, r);
    }
    case Kind::scaled:
    case Kind::adjoint: {
      const int l = fold(*node.left, leaf, combine);
      return combine(node, l, l);
    }
  }
  throw std::logic_error("AlgebraElement: unknown node kind");
}

bool all_checked(const Node& node) {
  switch (node.kind) {
    case Kind::toeplitz:
      return node.checked;
    case Kind::finite_rank:
      return true;
    case Kind::sum:
    case Kind::product:
      return all_checked(*node.left) && all_checked(*node.right);
    default:
      return all_checked(*node.left);
  }
}

void describe_into(const Node& node, std::ostringstream& os) {
  switch (node.kind) {
    case Kind::toeplitz: {
      os << "T{";
      bool first = true;
      for (const auto& [k, c] : node.symbol.coefficients()) {
        if (!first) os << ",";
        first = false;
        os << k << ":" << c.real();
        if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
      }
      os << "}";
      return;
    }
    case Kind::finite_rank:
      os << "K" << node.block.rows();
      return;
    case Kind::sum:
    case Kind::product:
      os << "(";
      describe_into(*node.left, os);
      os << (node.kind == Kind::sum ? " + " : " * ");
      describe_into(*node.right, os);
      os << ")";
      return;
    case Kind::scaled:
      os << "(" << node.scalar.real() << (node.scalar.imag() >= 0 ? "+" : "")
         << node.scalar.imag() << "i)";
      describe_into(*node.left, os);
      return;
    case Kind::adjoint:
      os << "(";
      describe_into(*node.left, os);
      os << ")*";
      return;
  }
}

std::shared_ptr<Node> make(Kind kind) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  return node;
}

}  // namespace

AlgebraElement AlgebraElement::toeplitz(const FourierSeries& f) {
  const WedgeReport w = wedge_check(f, kMembershipTolerance);
  if (!w.passed) {
    throw NotInAlgebra("AlgebraElement::toeplitz: symbol violates the wedge relations (" +
                       std::to_string(std::max(w.max_violation_first, w.max_violation_second)) +
                       ")");
  }
  auto node = make(Kind::toeplitz);
  node->symbol = f;
  return AlgebraElement(std::move(node));
}

AlgebraElement AlgebraElement::toeplitz_unchecked(const FourierSeries& f) {
  auto node = make(Kind::toeplitz);
  node->symbol = f;
  node->checked = wedge_check(f, kMembershipTolerance).passed;
  return AlgebraElement(std::move(node));
}

AlgebraElement AlgebraElement::finite_rank(const Matrix& block) {
  if (block.rows() != block.cols() || block.rows() < 1)
    throw std::invalid_argument("AlgebraElement::finite_rank: block must be square");
  auto node = make(Kind::finite_rank);
  node->block = block;
  return AlgebraElement(std::move(node));
}

AlgebraElement AlgebraElement::identity() { return toeplitz(FourierSeries::constant(1.0)); }

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  auto node = make(Kind::sum);
  node->left = a.node_;
  node->right = b.node_;
  return AlgebraElement(std::move(node));
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  auto node = make(Kind::product);
  node->left = a.node_;
  node->right = b.node_;
  return AlgebraElement(std::move(node));
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
  auto node = make(Kind::scaled);
  node->scalar = s;
  node->left = a.node_;
  return AlgebraElement(std::move(node));
}

AlgebraElement AlgebraElement::adjoint() const {
  auto node = make(Kind::adjoint);
  node->left = node_;
  return AlgebraElement(std::move(node));
}

TruncatedOperator AlgebraElement::realize(int n) const {
  {
    std::lock_guard lock(node_->mutex);
    auto it = node_->cache.find(n);
    if (it != node_->cache.end()) return it->second;
  }
  TruncatedOperator value = evaluate(*node_, n);
  std::lock_guard lock(node_->mutex);
  return node_->cache.emplace(n, std::move(value)).first->second;
}

FourierSeries AlgebraElement::symbol() const { return symbol_of(*node_); }

int AlgebraElement::symbol_bandwidth_bound() const {
  return fold(
      *node_, [](const Node& n) { return n.kind == Kind::toeplitz ? n.symbol.bandwidth() : 0; },
      [](const Node& n, int l, int r) { return n.kind == Kind::product ? l + r : std::max(l, r); });
}

int AlgebraElement::multiplicative_depth() const {
  return fold(
      *node_, [](const Node&) { return 1; },
      [](const Node& n, int l, int r) { return n.kind == Kind::product ? l + r : std::max(l, r); });
}

int AlgebraElement::max_generator_bandwidth() const {
  return fold(
      *node_, [](const Node& n) { return n.kind == Kind::toeplitz ? n.symbol.bandwidth() : 0; },
      [](const Node&, int l, int r) { return std::max(l, r); });
}

int AlgebraElement::max_block_size() const {
  return fold(
      *node_,
      [](const Node& n) {
        return n.kind == Kind::finite_rank ? static_cast<int>(n.block.rows()) : 0;
      },
      [](const Node&, int l, int r) { return std::max(l, r); });
}

int AlgebraElement::auto_margin(int extra) const {
  return multiplicative_depth() * max_generator_bandwidth() + extra;
}

bool AlgebraElement::checked() const { return all_checked(*node_); }

std::string AlgebraElement::describe() const {
  std::ostringstream os;
  describe_into(*node_, os);
  return os.str();
}

AlgebraElement random_word(std::mt19937_64& rng, int max_depth) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto leaf = [&]() {
    const double pick = unit(rng);
    if (pick < 1.0 / 3.0) return AlgebraElement::toeplitz(FourierSeries::cosine(4));
    if (pick < 2.0 / 3.0) return AlgebraElement::toeplitz(FourierSeries::cosine(8));
    const int k = 2 + static_cast<int>(unit(rng) * 3.0) % 3;
    Matrix u(k, 2), v(2, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < 2; ++j) {
        u(i, j) = Complex(normal(rng), normal(rng));
        v(j, i) = Complex(normal(rng), normal(rng));
      }
    return AlgebraElement::finite_rank(u * v / static_cast<double>(k));
  };
  std::function<AlgebraElement(int)> word = [&](int depth) -> AlgebraElement {
    if (depth <= 1 || unit(rng) < 0.25) return leaf();
    const double op = unit(rng);
    if (op < 0.35) {
      AlgebraElement l = word(depth - 1);
      return l + word(depth - 1);
    }
    if (op < 0.75) {
      AlgebraElement l = word(depth - 1);
      return l * word(depth - 1);
    }
    if (op < 0.9) {
      const Complex s(normal(rng), normal(rng));
      return s * word(depth - 1);
    }
    return word(depth - 1).adjoint();
  };
  return word(max_depth);
}

namespace {

VerificationReport start_report(std::string name, int n, int margin) {
  VerificationReport r;
  r.name = std::move(name);
  r.n = n;
  r.margin = margin;
  return r;
}

bool interior_fits(VerificationReport& r, int n, int margin) {
  if (margin < 0 || n <= 4 * margin) {
    r.precondition_violation = "need n > 4*margin (n=" + std::to_string(n) +
                               ", margin=" + std::to_string(margin) + ")";
    return false;
  }
  return true;
}

}  // namespace

VerificationReport verify_commutator_N(const FourierSeries& f, int n, int margin,
                                       double tol) {
  auto r = start_report("commutator_N", n, margin);
  if (margin < f.bandwidth()) {
    r.precondition_violation = "margin below symbol bandwidth";
    return r;
  }
  if (!interior_fits(r, n, margin)) return r;
  const TruncatedOperator lhs = commutator(number(n), toeplitz(f, n));
  const TruncatedOperator rhs = Complex(0.0, -1.0) * toeplitz(derivative(f), n);
  r.require_at_most("interior_deviation",
                    max_deviation(interior_block(lhs, margin), interior_block(rhs, margin)), tol);
  return r;
}

VerificationReport verify_commutator_dz(const FourierSeries& f, int n, int margin,
                                        double tol) {
  auto r = start_report("commutator_dz", n, margin);
  if (margin < f.bandwidth() + 1) {
    r.precondition_violation = "margin below symbol bandwidth + 1";
    return r;
  }
  if (!interior_fits(r, n, margin)) return r;
  const TruncatedOperator lhs = commutator(dz(n), toeplitz(f, n));
  const TruncatedOperator rhs =
      Complex(0.0, -1.0) * toeplitz(shift_multiply(derivative(f), -1), n);
  r.require_at_most("interior_deviation",
                    max_deviation(interior_block(lhs, margin), interior_block(rhs, margin)), tol);
  return r;
}

VerificationReport verify_delta_k(const FourierSeries& f, int k, int n, int margin,
                                  double tol) {
  auto r = start_report("delta_N^" + std::to_string(k), n, margin);
  if (k < 1) {
    r.precondition_violation = "k must be >= 1";
    return r;
  }
  if (margin < k * f.bandwidth()) {
    r.precondition_violation = "margin below k * symbol bandwidth";
    return r;
  }
  if (!interior_fits(r, n, margin)) return r;
  const TruncatedOperator num = number(n);
  TruncatedOperator lhs = toeplitz(f, n);
  for (int i = 0; i < k; ++i) lhs = commutator(num, lhs);
  const Complex phase = std::pow(Complex(0.0, -1.0), k);
  const TruncatedOperator rhs = phase * toeplitz(derivative(f, k), n);
  r.require_at_most("interior_deviation",
                    max_deviation(interior_block(lhs, margin), interior_block(rhs, margin)), tol);
  return r;
}

VerificationReport verify_dzstar_via_adjoint(const AlgebraElement& a, int n, int margin,
                                             double tol) {
  auto r = start_report("dzstar_via_adjoint", n, margin);
  if (!interior_fits(r, n, margin)) return r;
  const TruncatedOperator lhs = commutator(dz_star(n), a.realize(n));
  const TruncatedOperator rhs =
      Complex(-1.0) * adjoint(commutator(dz(n), a.adjoint().realize(n)));
  r.require_at_most("interior_deviation",
                    max_deviation(interior_block(lhs, margin), interior_block(rhs, margin)), tol);
  return r;
}

VerificationReport verify_abs_dirac_commutator(const AlgebraElement& a, int n) {
  auto r = start_report("abs_dirac_commutator", n, 1);
  if (n < 4) {
    r.precondition_violation = "need n >= 4";
    return r;
  }
  const TruncatedOperator x = a.realize(n);
  const PolarDecomposition polar = polar_decomposition(DiracBlock(n));
  // The numerically computed |D| differs from diag(N+1, N) only at
  // first-summand e_{n-1}; a collar of one index removes it.
  const TruncatedOperator lhs = doubled_leading(commutator(polar.abs, pi(x)), 1);
  const TruncatedOperator rhs = doubled_leading(pi(commutator(number(n), x)), 1);
  const double scale = std::max(1.0, max_abs_entry(rhs));
  r.require_at_most("leading_deviation", max_deviation(lhs, rhs), 1e-9 * scale);
  return r;
}

VerificationReport evenness_check(const AlgebraElement& a, int n) {
  auto r = start_report("evenness", n, 0);
  if (n < 2) {
    r.precondition_violation = "need n >= 2";
    return r;
  }
  const TruncatedOperator g = grading(n);
  const DiracBlock dirac_block(n);
  const TruncatedOperator& d = dirac_block.assembled();
  const TruncatedOperator p = pi(a.realize(n));
  r.require_zero("gamma_selfadjoint", max_abs_entry(adjoint(g) - g));
  r.require_zero("gamma_squared_minus_one",
                 max_abs_entry(g * g - TruncatedOperator::identity(2 * n)));
  r.require_zero("gamma_anticommutes_D", max_abs_entry(g * d + d * g));
  r.require_zero("gamma_commutes_pi(a)", max_abs_entry(commutator(g, p)));
  return r;
}

VerificationReport membership_check(const AlgebraElement& a, int n) {
  const int margin = a.auto_margin(0);
  auto r = start_report("membership", n, margin);
  const int bound = a.symbol_bandwidth_bound();
  if (margin >= n || 4 * bound >= n - margin) {
    r.precondition_violation = "truncation too small to estimate the symbol";
    return r;
  }
  const TruncatedOperator x = a.realize(n);
  const FourierSeries estimate = symbol_estimate(leading_block(x, margin), bound);
  const WedgeReport w = wedge_check(estimate, kMembershipTolerance);
  r.require_at_most("wedge_first", w.max_violation_first, kMembershipTolerance);
  r.require_at_most("wedge_second", w.max_violation_second, kMembershipTolerance);

  const FourierSeries sigma = a.symbol();
  const FourierSeries compact =
      symbol_estimate(leading_block(x - toeplitz(sigma, n), margin), bound);
  r.require_at_most("compact_part_symbol", compact.max_coefficient(), 1e-8);
  r.metrics["symbol_estimate_error"] = coefficient_distance(estimate, sigma);
  return r;
}

std::string SweepKind::label() const {
  switch (target) {
    case SweepTarget::dirac_commutator:
      return "[D,pi(a)]";
    case SweepTarget::delta:
      return "delta_N^" + std::to_string(order) + "(a)";
    case SweepTarget::delta_dz:
      return "delta_N^" + std::to_string(order) + "([dz,a])";
  }
  return "?";
}

SweepReport boundedness_sweep(const AlgebraElement& a, std::span<const int> sizes,
                              SweepKind which) {
  return boundedness_sweep([&a](int) { return a; }, sizes, which);
}

SweepReport boundedness_sweep(const std::function<AlgebraElement(int)>& family,
                              std::span<const int> sizes, SweepKind which) {
  if (sizes.size() < 2) throw std::invalid_argument("boundedness_sweep: need >= 2 sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("boundedness_sweep: sizes must be strictly increasing");
  if (which.order < 0) throw std::invalid_argument("boundedness_sweep: negative order");

  SweepReport r;
  r.label = which.label();
  auto norm = [](const TruncatedOperator& x) {
    return operator_norm(x, 1e-12, NormMethod::dense);
  };
  for (int n : sizes) {
    const AlgebraElement a = family(n);
    const int extra = which.target == SweepTarget::delta ? which.order : which.order + 1;
    const int margin = a.auto_margin(extra);
    if (n <= margin + 1)
      throw std::invalid_argument("boundedness_sweep: size " + std::to_string(n) +
                                  " does not clear the collar " + std::to_string(margin));
    const TruncatedOperator x = a.realize(n);
    const FourierSeries sigma = a.symbol();
    double section = 0.0, essential = 0.0;
    switch (which.target) {
      case SweepTarget::dirac_commutator: {
        // [D, π(a)] = (0 [∂_z,a]; [∂_z*,a] 0), whose norm is the larger of
        // the two block norms.
        section = std::max(norm(leading_block(commutator(dz(n), x), margin)),
                           norm(leading_block(commutator(dz_star(n), x), margin)));
        essential = sup_norm(derivative(sigma));
        break;
      }
      case SweepTarget::delta: {
        TruncatedOperator c = x;
        for (int i = 0; i < which.order; ++i) c = commutator(number(n), c);
        section = norm(leading_block(c, margin));
        essential = sup_norm(derivative(sigma, which.order));
        break;
      }
      case SweepTarget::delta_dz: {
        TruncatedOperator c = commutator(dz(n), x);
        for (int i = 0; i < which.order; ++i) c = commutator(number(n), c);
        section = norm(leading_block(c, margin));
        essential = sup_norm(derivative(shift_multiply(derivative(sigma), -1), which.order));
        break;
      }
    }
    r.sizes.push_back(n);
    r.margins.push_back(margin);
    r.section_norms.push_back(section);
    r.essential_norms.push_back(essential);
    r.values.push_back(std::max(section, essential));
  }

  auto settled = [](const std::vector<double>& v) {
    const double last = v.back(), prev = v[v.size() - 2];
    const double diff = std::abs(last - prev);
    return diff == 0.0 || diff <= kStabilizationTolerance * std::max(std::abs(last), std::abs(prev));
  };
  r.stabilized = settled(r.values);
  r.section_stabilized = settled(r.section_norms);
  const double last = r.values.back(), prev = r.values[r.values.size() - 2];
  r.trend = !r.stabilized && last > (1.0 + kGrowthThreshold) * prev ? Trend::growing
                                                                     : Trend::bounded;
  return r;
}

AlgebraElement rough_symbol_control(int n) {
  std::map<int, Complex> c;
  for (int k = 1; k <= n / 4; ++k) {
    const double v = std::pow(static_cast<double>(k), -1.5);
    c[k] = v;
    c[-k] = v;
  }
  return AlgebraElement::toeplitz_unchecked(FourierSeries(std::move(c)));
}

}  // namespace ttorus
