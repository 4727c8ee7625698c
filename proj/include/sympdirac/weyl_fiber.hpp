#pragma once

// Truncated Hermite model of the symplectic spinor fiber L^2(R^n).
//
// Basis vectors are the L^2-orthonormal Hermite functions h_beta, |beta| <= L,
// ordered by level and, within a level, lexicographically descending
// ((l,0,..,0) first). Levels are nested prefixes: the first dim_through(l)
// ordinals are exactly the states of level <= l.
//
// sigma(e_j) = i x_j and sigma(e_{n+j}) = d/dx_j, with
//   x |k>  = sqrt(k/2)|k-1> + sqrt((k+1)/2)|k+1>
//   d |k>  = sqrt(k/2)|k-1> - sqrt((k+1)/2)|k+1>
// in slot j. Inner products are linear in the first slot.

#include <map>
#include <vector>

#include "sympdirac/symplectic.hpp"

namespace sympdirac {

using FiberVector = ComplexVector;
using FiberOperator = ComplexMatrix;

struct MultiIndex {
  std::vector<int> entries;

  int level() const;
  bool operator==(const MultiIndex& other) const = default;
};

class FiberBasis {
 public:
  FiberBasis() = default;
  // No lower bound on L here; build_basis enforces the public contract.
  FiberBasis(int n, int max_level);

  int n() const { return n_; }
  int max_level() const { return max_level_; }
  int dim() const { return static_cast<int>(indices_.size()); }

  // Number of states with level <= l (0 for l < 0).
  int dim_through(int l) const;
  int level_offset(int l) const { return dim_through(l - 1); }
  int level_size(int l) const { return dim_through(l) - dim_through(l - 1); }

  const MultiIndex& index(int ordinal) const { return indices_.at(ordinal); }
  int level_of(int ordinal) const { return levels_.at(ordinal); }
  // -1 when beta is not in the basis.
  int ordinal(const std::vector<int>& beta) const;

  bool operator==(const FiberBasis& other) const {
    return n_ == other.n_ && max_level_ == other.max_level_;
  }

 private:
  int n_ = 0;
  int max_level_ = -1;
  std::vector<MultiIndex> indices_;
  std::vector<int> levels_;
  std::map<std::vector<int>, int> lookup_;
};

FiberBasis build_basis(int n, int max_level);

FiberOperator clifford_generator(const FiberBasis& basis, const NormalCoeffs& v);
FiberOperator hamilton_operator(const FiberBasis& basis);
FiberOperator level_projection(const FiberBasis& basis, int level);
// Projection onto levels <= L - q.
FiberOperator protected_projection(const FiberBasis& basis, int q);
Complex fiber_inner(const FiberVector& f, const FiberVector& g);
FiberVector vacuum_state(const FiberBasis& basis);
// (1/2i) sum_j { sigma(w_j) sigma(A v_j) - sigma(v_j) sigma(A w_j) } with
// truncated generators. A must lie in sp(n) (complexified) to 1e-12.
FiberOperator quadratic_action(const FiberBasis& basis, const ComplexMatrix& a);
FiberOperator quadratic_action(const FiberBasis& basis, const RealMatrix& a);

// Coefficient matrix C with quadratic action sum_{b,a} C(b,a) sigma_b sigma_a.
ComplexMatrix quadratic_action_coefficients(const ComplexMatrix& a);

// Generators and their pairwise products on a padded fiber. A product of q
// generators computed here is exact on states of level <= max_level - q + 1,
// so callers that keep inputs at level <= max_level - q get exact results.
class WeylAlgebra {
 public:
  WeylAlgebra(int n, int max_level);

  const FiberBasis& basis() const { return basis_; }
  int n() const { return basis_.n(); }
  int max_level() const { return basis_.max_level(); }
  int dim_through(int l) const { return basis_.dim_through(l); }

  const FiberOperator& generator(int a) const { return generators_.at(a); }
  // sigma(e_b) sigma(e_a)
  const FiberOperator& product(int b, int a) const { return products_.at(b * 2 * n() + a); }

  FiberOperator clifford(const NormalCoeffs& v) const;
  FiberOperator quadratic_form(const ComplexMatrix& coeffs) const;
  FiberOperator quadratic_action(const ComplexMatrix& a) const;
  const FiberOperator& hamilton() const { return hamilton_; }

 private:
  FiberBasis basis_;
  std::vector<FiberOperator> generators_;
  std::vector<FiberOperator> products_;
  FiberOperator hamilton_;
};

}  // namespace sympdirac
