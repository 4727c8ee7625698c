#include "sympdirac/weyl_fiber.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sympdirac/errors.hpp"

namespace sympdirac {

int MultiIndex::level() const { return std::accumulate(entries.begin(), entries.end(), 0); }

namespace {

// All beta with |beta| = level, lexicographically descending.
void enumerate_level(int n, int level, std::vector<std::vector<int>>& out) {
  std::vector<int> beta(n, 0);
  std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == n - 1) {
      beta[slot] = remaining;
      out.push_back(beta);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      beta[slot] = v;
      rec(slot + 1, remaining - v);
    }
  };
  rec(0, level);
}

}  // namespace

FiberBasis::FiberBasis(int n, int max_level) : n_(n), max_level_(max_level) {
  if (n < 1) throw InvalidArgument("fiber basis needs n >= 1");
  if (max_level < 0) throw InvalidArgument("fiber basis needs a non-negative level");
  for (int l = 0; l <= max_level; ++l) {
    std::vector<std::vector<int>> block;
    enumerate_level(n, l, block);
    for (auto& beta : block) {
      lookup_.emplace(beta, static_cast<int>(indices_.size()));
      indices_.push_back(MultiIndex{beta});
      levels_.push_back(l);
    }
  }
}

int FiberBasis::dim_through(int l) const {
  if (l < 0) return 0;
  return static_cast<int>(binomial(n_ + l, l));
}

int FiberBasis::ordinal(const std::vector<int>& beta) const {
  auto it = lookup_.find(beta);
  return it == lookup_.end() ? -1 : it->second;
}

FiberBasis build_basis(int n, int max_level) {
  if (n < 1) throw InvalidArgument("build_basis: n must be >= 1");
  if (max_level < 2) throw InvalidArgument("build_basis: truncation level must be >= 2");
  return FiberBasis(n, max_level);
}

namespace {

// Position (x_j) and derivative (d/dx_j) matrices in slot j.
void ladder_matrices(const FiberBasis& basis, int j, RealMatrix& position, RealMatrix& derivative) {
  const int dim = basis.dim();
  position = RealMatrix::Zero(dim, dim);
  derivative = RealMatrix::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    std::vector<int> beta = basis.index(c).entries;
    const int k = beta[j];
    if (k > 0) {
      beta[j] = k - 1;
      const int r = basis.ordinal(beta);
      position(r, c) += std::sqrt(k / 2.0);
      derivative(r, c) += std::sqrt(k / 2.0);
      beta[j] = k;
    }
    beta[j] = k + 1;
    const int r = basis.ordinal(beta);
    if (r >= 0) {
      position(r, c) += std::sqrt((k + 1) / 2.0);
      derivative(r, c) -= std::sqrt((k + 1) / 2.0);
    }
  }
}

std::vector<FiberOperator> all_generators(const FiberBasis& basis) {
  const int n = basis.n();
  std::vector<FiberOperator> out(2 * n);
  for (int j = 0; j < n; ++j) {
    RealMatrix position, derivative;
    ladder_matrices(basis, j, position, derivative);
    out[j] = kI * position.cast<Complex>();
    out[n + j] = derivative.cast<Complex>();
  }
  return out;
}

void check_sp(const ComplexMatrix& a, int n, const char* where) {
  if (a.rows() != 2 * n || a.cols() != 2 * n) {
    throw InvalidArgument(std::string(where) + ": matrix must be 2n x 2n");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (sp_residual(a) > 1e-12 * scale) {
    throw InvalidArgument(std::string(where) + ": matrix is not in sp(n)");
  }
}

}  // namespace

FiberOperator clifford_generator(const FiberBasis& basis, const NormalCoeffs& v) {
  if (v.size() != 2 * basis.n()) {
    throw InvalidArgument("clifford_generator: vector length must be 2n");
  }
  const auto gens = all_generators(basis);
  FiberOperator out = FiberOperator::Zero(basis.dim(), basis.dim());
  for (int a = 0; a < v.size(); ++a) {
    if (v[a] != Complex(0.0, 0.0)) out += v[a] * gens[a];
  }
  return out;
}

FiberOperator hamilton_operator(const FiberBasis& basis) {
  FiberOperator out = FiberOperator::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    out(i, i) = -(basis.level_of(i) + 0.5 * basis.n());
  }
  return out;
}

FiberOperator level_projection(const FiberBasis& basis, int level) {
  if (level < 0 || level > basis.max_level()) {
    throw InvalidArgument("level_projection: level out of range");
  }
  FiberOperator out = FiberOperator::Zero(basis.dim(), basis.dim());
  for (int i = basis.level_offset(level); i < basis.dim_through(level); ++i) out(i, i) = 1.0;
  return out;
}

FiberOperator protected_projection(const FiberBasis& basis, int q) {
  FiberOperator out = FiberOperator::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim_through(basis.max_level() - q); ++i) out(i, i) = 1.0;
  return out;
}

Complex fiber_inner(const FiberVector& f, const FiberVector& g) {
  if (f.size() != g.size()) throw InvalidArgument("fiber_inner: basis mismatch");
  // Eigen's dot conjugates its first argument.
  return g.dot(f);
}

FiberVector vacuum_state(const FiberBasis& basis) {
  FiberVector out = FiberVector::Zero(basis.dim());
  out[0] = 1.0;
  return out;
}

ComplexMatrix quadratic_action_coefficients(const ComplexMatrix& a) {
  const auto d = a.rows();
  const auto n = d / 2;
  // sigma(w_j) sigma(A v_j) - sigma(v_j) sigma(A w_j), expanded over sigma_b sigma_a
  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  const Complex inv = 1.0 / (2.0 * kI);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index r = 0; r < d; ++r) {
      c(n + j, r) += inv * a(r, j);
      c(j, r) -= inv * a(r, n + j);
    }
  }
  return c;
}

FiberOperator quadratic_action(const FiberBasis& basis, const ComplexMatrix& a) {
  const int n = basis.n();
  check_sp(a, n, "quadratic_action");
  const auto gens = all_generators(basis);
  const ComplexMatrix c = quadratic_action_coefficients(a);
  FiberOperator out = FiberOperator::Zero(basis.dim(), basis.dim());
  for (int b = 0; b < 2 * n; ++b) {
    FiberOperator row = FiberOperator::Zero(basis.dim(), basis.dim());
    bool any = false;
    for (int s = 0; s < 2 * n; ++s) {
      if (c(b, s) != Complex(0.0, 0.0)) {
        row += c(b, s) * gens[s];
        any = true;
      }
    }
    if (any) out += gens[b] * row;
  }
  return out;
}

FiberOperator quadratic_action(const FiberBasis& basis, const RealMatrix& a) {
  return quadratic_action(basis, ComplexMatrix(a.cast<Complex>()));
}

WeylAlgebra::WeylAlgebra(int n, int max_level) : basis_(n, max_level) {
  generators_ = all_generators(basis_);
  const int d = 2 * n;
  products_.resize(d * d);
  for (int b = 0; b < d; ++b) {
    for (int a = 0; a < d; ++a) products_[b * d + a] = generators_[b] * generators_[a];
  }
  hamilton_ = hamilton_operator(basis_);
}

FiberOperator WeylAlgebra::clifford(const NormalCoeffs& v) const {
  if (v.size() != 2 * n()) throw InvalidArgument("clifford: vector length must be 2n");
  FiberOperator out = FiberOperator::Zero(basis_.dim(), basis_.dim());
  for (int a = 0; a < v.size(); ++a) {
    if (v[a] != Complex(0.0, 0.0)) out += v[a] * generators_[a];
  }
  return out;
}

FiberOperator WeylAlgebra::quadratic_form(const ComplexMatrix& coeffs) const {
  const int d = 2 * n();
  if (coeffs.rows() != d || coeffs.cols() != d) {
    throw InvalidArgument("quadratic_form: coefficient matrix must be 2n x 2n");
  }
  FiberOperator out = FiberOperator::Zero(basis_.dim(), basis_.dim());
  for (int b = 0; b < d; ++b) {
    for (int a = 0; a < d; ++a) {
      if (coeffs(b, a) != Complex(0.0, 0.0)) out += coeffs(b, a) * products_[b * d + a];
    }
  }
  return out;
}

FiberOperator WeylAlgebra::quadratic_action(const ComplexMatrix& a) const {
  return quadratic_form(quadratic_action_coefficients(a));
}

}  // namespace sympdirac
