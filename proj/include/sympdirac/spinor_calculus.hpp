#pragma once

// Spinor derivative, Dirac operators and the second order operators built
// from them, acting on basic spinor fields over a model foliation.
//
// Clifford generators are applied one at a time as sparse ladder matrices of
// a padded fiber: a product of q generators maps level l to level l + q, and
// the padded fiber must reach l + q, otherwise HeadroomError is thrown. Nothing
// is truncated in the Fourier variable either, so identities between operators
// hold to rounding.

#include <memory>
#include <string>
#include <vector>

#include "sympdirac/foliated_geometry.hpp"
#include "sympdirac/spinor_field.hpp"
#include "sympdirac/weyl_fiber.hpp"

namespace sympdirac {

enum class DiracVariant { Dprime, Dtildeprime, D, Dtilde };

enum class OperatorName { Dprime, Dtildeprime, D, Dtilde, P, ConnLaplacian, F, HJ };

std::string operator_label(OperatorName name);
OperatorName parse_operator_name(const std::string& label);

class SpinorBundle {
 public:
  static constexpr int kDefaultHeadroom = 8;

  SpinorBundle(const FoliationModel& model, int level, int headroom = kDefaultHeadroom);

  const FoliationModel& model() const { return *model_; }
  const WeylAlgebra& algebra() const { return *algebra_; }
  int n() const { return model_->n; }
  int d() const { return model_->d; }
  // Working truncation level L; random fields live on levels <= L - 3.
  int level() const { return level_; }

  // Constant fiber operator of the padded fiber mapping level l into l + raise.
  SpinorField apply(const FiberOperator& op, int raise, const SpinorField& phi) const;
  SpinorField multiply(const ScalarSeries& f, const SpinorField& phi) const;
  SpinorField derivative(int axis, const SpinorField& phi) const;

  SpinorField clifford(const ComplexVector& v, const SpinorField& phi) const;
  SpinorField clifford(const VectorSeries& s, const SpinorField& phi) const;
  // sum_{b,a} C(b,a) sigma_b sigma_a phi for a coefficient matrix field C.
  SpinorField quadratic(const MatrixSeries& coeffs, const SpinorField& phi) const;

  // Spinor derivative along e_X, along a constant direction, along a field.
  SpinorField nabla(int axis, const SpinorField& phi) const;
  SpinorField nabla(const ComplexVector& u, const SpinorField& phi) const;
  SpinorField nabla(const VectorSeries& s, const SpinorField& phi) const;

  // Quadratic action of R(e_i, e_j), and the bracket form
  // (i/2) sum_k { v_k . R w_k - w_k . R v_k }.
  SpinorField spinor_curvature(int i, int j, const SpinorField& phi) const;
  SpinorField spinor_curvature_bracket_form(int i, int j, const SpinorField& phi) const;

  SpinorField dirac(const SpinorField& phi, DiracVariant variant) const;
  // -sum J e_i . nabla_{e_i} and sum e_i . nabla_{e_i}
  SpinorField dirac_prime_unitary(const SpinorField& phi) const;
  SpinorField dirac_tilde_prime_unitary(const SpinorField& phi) const;

  // i [D~, D]; on fiber-only models the operator nabla*nabla + iF.
  SpinorField p_operator(const SpinorField& phi) const;
  SpinorField connection_laplacian(const SpinorField& phi) const;
  // Formal adjoint of phi -> (nabla_{e_i} phi)_i applied to (psi_i)_i.
  SpinorField connection_adjoint(const std::vector<SpinorField>& psi) const;
  SpinorField curvature_action_F(const SpinorField& phi) const;
  SpinorField hamilton_field(const SpinorField& phi) const;
  SpinorField apply_operator(OperatorName name, const SpinorField& phi) const;

  // P(s) = sum e_i . nabla_{J e_i} s, P~(s) = sum e_i . nabla_{e_i} s,
  // P(J)(s) = sum (nabla_{J e_i} J)(s) . e_i, as coefficient fields for quadratic().
  MatrixSeries clifford_P(const VectorSeries& s) const;
  MatrixSeries clifford_P_tilde(const VectorSeries& s) const;
  MatrixSeries clifford_PJ(const VectorSeries& s) const;

  const VectorSeries& mean_plus_torsion() const { return ct_; }
  const VectorSeries& j_mean_plus_torsion() const { return jct_; }
  const ScalarSeries& unit_divergence(int i) const { return unit_div_.at(i); }

  // <phi, psi> weighted by the leaf density.
  Complex inner(const SpinorField& phi, const SpinorField& psi) const;
  // x -> <phi(x), psi(x)>
  ScalarSeries pointwise_inner(const SpinorField& phi, const SpinorField& psi) const;

  SpinorField zero_field() const { return SpinorField(n(), 0); }
  // Random complex coefficients on levels <= max_level and |k|_inf <= cutoff.
  SpinorField random_field(Rng& rng, int max_level, int cutoff) const;
  SpinorField random_level_field(Rng& rng, int level, int cutoff) const;
  // Random real section of Q with |k|_inf <= cutoff.
  VectorSeries random_section(Rng& rng, int cutoff) const;

 private:
  const FoliationModel* model_;
  std::shared_ptr<const WeylAlgebra> algebra_;
  int level_;
  struct LadderEntry {
    int row;
    int col;
    Complex value;
  };
  using Block = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  int checked_level(int level) const;
  Block sigma(int a, const Block& x, int level) const;
  void scatter(const std::vector<const Mode*>& modes, const Mode& shift, const Block& y, SpinorField& out) const;

  std::vector<std::vector<LadderEntry>> ladders_;  // sorted by column
  std::vector<MatrixSeries> q_gamma_;               // coefficient fields
  std::vector<MatrixSeries> q_curvature_;
  VectorSeries ct_;
  VectorSeries jct_;
  std::vector<ScalarSeries> unit_div_;
};

}  // namespace sympdirac
