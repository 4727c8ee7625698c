#include "sympdirac/identity_checks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sympdirac {

namespace {

ComplexMatrix j_matrix(int n) { return complex_structure(n).cast<Complex>(); }

VectorSeries constant_vector(int d, const ComplexVector& v) { return VectorSeries::constant(d, v); }

ScalarSeries squared_length(const VectorSeries& c, int d) {
  return bilinear_series(c, ComplexMatrix::Identity(d, d), c);
}

void require(bool condition, const std::string& what) {
  if (!condition) throw HypothesisError(what);
}

void require_level_zero(const SpinorField& phi) {
  if (phi.occupied_level(0.0) > 0) throw InvalidArgument("field must live on the level-0 block");
}

double safe_norm(double x) { return x > 0.0 ? x : 1.0; }

// -|c|^2/4 phi + (i/2){P(Jc) - P~(c)} phi
SpinorField mean_torsion_terms(const SpinorBundle& bundle, const VectorSeries& c, const SpinorField& phi) {
  const int d = bundle.d();
  SpinorField out = bundle.multiply(squared_length(c, d), phi).scaled(-0.25);
  const VectorSeries jc = left_apply(j_matrix(bundle.n()), c);
  MatrixSeries q = bundle.clifford_P(jc);
  q -= bundle.clifford_P_tilde(c);
  out += bundle.quadratic(q, phi).scaled(Complex(0.0, 0.5));
  return out;
}

// (i/2){P(kappa^g) + P~(J kappa^g)} phi - |kappa|^2/4 phi
SpinorField kahler_mean_terms(const SpinorBundle& bundle, const SpinorField& phi) {
  const FoliationModel& m = bundle.model();
  SpinorField out = bundle.multiply(squared_length(m.kappa_sharp_g, m.d), phi).scaled(-0.25);
  MatrixSeries q = bundle.clifford_P(m.kappa_sharp_g);
  q += bundle.clifford_P_tilde(left_apply(j_matrix(m.n), m.kappa_sharp_g));
  out += bundle.quadratic(q, phi).scaled(Complex(0.0, 0.5));
  return out;
}

// i sum_i P(J)(Je_i) . nabla_{e_i} phi
SpinorField complex_structure_terms(const SpinorBundle& bundle, const SpinorField& phi) {
  const int d = bundle.d();
  const ComplexMatrix j0 = j_matrix(bundle.n());
  SpinorField out(bundle.n(), phi.level() + 4);
  for (int i = 0; i < d; ++i) {
    const MatrixSeries pj = bundle.clifford_PJ(constant_vector(d, j0.col(i)));
    if (pj.empty()) continue;
    out += bundle.quadratic(pj, bundle.nabla(i, phi));
  }
  return out.scaled(kI);
}

// i sum_{i,j} e_i . Je_j . nabla_{T(e_i, e_j)} phi
SpinorField torsion_terms(const SpinorBundle& bundle, const SpinorField& phi) {
  const FoliationModel& m = bundle.model();
  const ComplexMatrix j0 = j_matrix(m.n);
  SpinorField out(m.n, phi.level() + 4);
  for (int i = 0; i < m.d; ++i) {
    for (int j = 0; j < m.d; ++j) {
      const VectorSeries& t = m.torsion_at(i, j);
      if (t.empty()) continue;
      out += bundle.clifford(m.unit(i), bundle.clifford(ComplexVector(j0.col(j)), bundle.nabla(t, phi)));
    }
  }
  return out.scaled(kI);
}

ScalarSeries scalar_curvature(const FoliationModel& model) { return symplectic_ricci(model).r; }

// div(s - i Js)
ScalarSeries complexified_divergence(const FoliationModel& model, const VectorSeries& s) {
  VectorSeries sc = s;
  sc -= left_apply(j_matrix(model.n), s).scaled(kI);
  return transversal_divergence(model, sc);
}

double hypothesis_h(const FoliationModel& model) {
  require(model.flags.kahler && model.flags.chsc_h.has_value(),
          "constant holomorphic sectional curvature requires a Kahler model with fitted h");
  return *model.flags.chsc_h;
}

}  // namespace

std::string formula_label(WeitzenbockFormula formula) {
  switch (formula) {
    case WeitzenbockFormula::General:
      return "General";
    case WeitzenbockFormula::Fedosov:
      return "Fedosov";
    case WeitzenbockFormula::MinimalFlow:
      return "MinimalFlow";
    case WeitzenbockFormula::VacuumFedosov:
      return "VacuumFedosov";
    case WeitzenbockFormula::Kahler:
      return "Kahler";
    case WeitzenbockFormula::ConstantHolomorphic:
      return "ConstantHolomorphic";
  }
  return "?";
}

std::string vacuum_formula_label(VacuumFormula formula) {
  switch (formula) {
    case VacuumFormula::General:
      return "General";
    case VacuumFormula::Flow:
      return "Flow";
    case VacuumFormula::Kahler:
      return "Kahler";
    case VacuumFormula::ConstantHolomorphic:
      return "ConstantHolomorphic";
  }
  return "?";
}

double relative_residual(const SpinorField& lhs, const SpinorField& rhs, const SpinorField& phi) {
  return (lhs - rhs).norm() / safe_norm(phi.norm());
}

SpinorField weitzenbock_rhs(const SpinorBundle& bundle, const SpinorField& phi, WeitzenbockFormula formula) {
  const FoliationModel& m = bundle.model();
  const ModelFlags& f = m.flags;
  SpinorField rhs = bundle.connection_laplacian(phi);
  switch (formula) {
    case WeitzenbockFormula::General:
      rhs += bundle.curvature_action_F(phi).scaled(kI);
      rhs += mean_torsion_terms(bundle, bundle.mean_plus_torsion(), phi);
      rhs += complex_structure_terms(bundle, phi);
      rhs += torsion_terms(bundle, phi);
      return rhs;
    case WeitzenbockFormula::Fedosov:
      require(f.fedosov, "Fedosov formula requires a torsion-free symplectic connection");
      rhs += bundle.curvature_action_F(phi).scaled(kI);
      rhs += mean_torsion_terms(bundle, m.kappa_sharp, phi);
      if (!f.preserves_J) rhs += complex_structure_terms(bundle, phi);
      return rhs;
    case WeitzenbockFormula::MinimalFlow:
      require(f.minimal, "minimal flow formula requires kappa = 0");
      rhs += bundle.curvature_action_F(phi).scaled(kI);
      if (f.fedosov && f.preserves_J) return rhs;
      rhs += mean_torsion_terms(bundle, m.tau, phi);
      rhs += complex_structure_terms(bundle, phi);
      rhs += torsion_terms(bundle, phi);
      return rhs;
    case WeitzenbockFormula::VacuumFedosov: {
      require(f.fedosov && f.preserves_J, "vacuum Fedosov formula requires a Fedosov connection with nabla J = 0");
      require_level_zero(phi);
      ScalarSeries pot = scalar_curvature(m);
      pot += squared_length(m.kappa_sharp, m.d);
      rhs -= bundle.multiply(pot, phi).scaled(0.25);
      rhs += bundle.multiply(complexified_divergence(m, m.kappa_sharp), phi).scaled(Complex(0.0, 0.5));
      return rhs;
    }
    case WeitzenbockFormula::Kahler:
      require(f.kahler, "Kahler formula requires a Fedosov connection with nabla J = 0");
      rhs += bundle.curvature_action_F(phi).scaled(kI);
      rhs += kahler_mean_terms(bundle, phi);
      return rhs;
    case WeitzenbockFormula::ConstantHolomorphic: {
      const double h = hypothesis_h(m);
      const int n = m.n;
      rhs += phi.scaled(h / 4.0 * n * (n - 1));
      rhs -= bundle.hamilton_field(bundle.hamilton_field(phi)).scaled(2.0 * h);
      rhs += kahler_mean_terms(bundle, phi);
      return rhs;
    }
  }
  throw InvalidArgument("unknown Weitzenbock formula");
}

double weitzenbock_residual(const SpinorBundle& bundle, const SpinorField& phi, WeitzenbockFormula formula) {
  const SpinorField rhs = weitzenbock_rhs(bundle, phi, formula);
  return relative_residual(bundle.p_operator(phi), rhs, phi);
}

SpinorField vacuum_weitzenbock_rhs(const SpinorBundle& bundle, const SpinorField& phi0, VacuumFormula formula) {
  const FoliationModel& m = bundle.model();
  const ModelFlags& f = m.flags;
  require_level_zero(phi0);
  SpinorField rhs = bundle.connection_laplacian(phi0);
  ScalarSeries pot = scalar_curvature(m);
  switch (formula) {
    case VacuumFormula::General: {
      require(f.preserves_J, "level-0 formula requires nabla J = 0");
      const VectorSeries& c = bundle.mean_plus_torsion();
      pot += squared_length(c, m.d);
      rhs -= bundle.multiply(pot, phi0).scaled(0.25);
      rhs += bundle.multiply(complexified_divergence(m, c), phi0).scaled(Complex(0.0, 0.5));
      rhs += bundle.nabla(m.tau, phi0).scaled(kI);
      return rhs;
    }
    case VacuumFormula::Flow:
      require(f.preserves_J && f.minimal, "level-0 flow formula requires kappa = 0 and nabla J = 0");
      if (f.fedosov) {
        rhs -= bundle.multiply(pot, phi0).scaled(0.25);
        return rhs;
      }
      pot += squared_length(m.tau, m.d);
      rhs -= bundle.multiply(pot, phi0).scaled(0.25);
      rhs += bundle.multiply(complexified_divergence(m, m.tau), phi0).scaled(Complex(0.0, 0.5));
      rhs += bundle.nabla(m.tau, phi0).scaled(kI);
      return rhs;
    case VacuumFormula::Kahler:
      require(f.kahler, "level-0 Kahler formula requires a Kahler model");
      pot += squared_length(m.kappa_sharp_g, m.d);
      rhs -= bundle.multiply(pot, phi0).scaled(0.25);
      rhs += bundle.multiply(complexified_divergence(m, m.kappa_sharp_g), phi0).scaled(0.5);
      return rhs;
    case VacuumFormula::ConstantHolomorphic: {
      const double h = hypothesis_h(m);
      const int n = m.n;
      rhs -= phi0.scaled(h / 4.0 * n * (n + 1));
      rhs -= bundle.multiply(squared_length(m.kappa_sharp_g, m.d), phi0).scaled(0.25);
      rhs += bundle.multiply(complexified_divergence(m, m.kappa_sharp_g), phi0).scaled(0.5);
      return rhs;
    }
  }
  throw InvalidArgument("unknown vacuum formula");
}

double vacuum_weitzenbock_residual(const SpinorBundle& bundle, const SpinorField& phi0, VacuumFormula formula) {
  const SpinorField rhs = vacuum_weitzenbock_rhs(bundle, phi0, formula);
  return relative_residual(bundle.p_operator(phi0), rhs, phi0);
}

CommutatorResiduals clifford_commutator_check(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi) {
  const FoliationModel& m = bundle.model();
  const ComplexMatrix om = symplectic_form(m.n).cast<Complex>();
  const VectorSeries& c = bundle.mean_plus_torsion();
  const VectorSeries js = left_apply(j_matrix(m.n), s);
  const SpinorField sphi = bundle.clifford(s, phi);
  CommutatorResiduals out;

  SpinorField rhs = bundle.clifford(s, bundle.dirac(phi, DiracVariant::D));
  rhs += bundle.quadratic(bundle.clifford_P(s), phi);
  rhs -= bundle.nabla(s, phi).scaled(kI);
  rhs -= bundle.multiply(bilinear_series(s, om, c), phi).scaled(Complex(0.0, 0.5));
  out.dirac = relative_residual(bundle.dirac(sphi, DiracVariant::D), rhs, phi);

  SpinorField rhs_t = bundle.clifford(s, bundle.dirac(phi, DiracVariant::Dtilde));
  rhs_t += bundle.quadratic(bundle.clifford_P_tilde(s), phi);
  rhs_t += bundle.nabla(js, phi).scaled(kI);
  rhs_t += bundle.multiply(bilinear_series(js, om, c), phi).scaled(Complex(0.0, 0.5));
  out.dirac_tilde = relative_residual(bundle.dirac(sphi, DiracVariant::Dtilde), rhs_t, phi);
  return out;
}

double clifford_quadratic_relation(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi) {
  const FoliationModel& m = bundle.model();
  const int d = m.d;
  const ComplexMatrix om = symplectic_form(m.n).cast<Complex>();
  const ComplexMatrix j0 = j_matrix(m.n);
  const VectorSeries js = left_apply(j0, s);

  MatrixSeries lhs = bundle.clifford_P(s);
  lhs += bundle.clifford_P_tilde(js);

  SpinorField rhs = bundle.quadratic(bundle.clifford_PJ(js), phi).scaled(-1.0);
  rhs -= bundle.multiply(transversal_divergence(m, s), phi).scaled(kI);
  // coefficient field c_ij in front of e_i . Je_j
  MatrixSeries coeff(d, ComplexMatrix::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      // omega(e_j, Js) = (Omega Js)_j
      ScalarSeries cij = component(left_apply(om, js), j).derivative(i);
      cij -= component(left_apply(om, js), i).derivative(j);
      cij -= bilinear_series(m.torsion_at(i, j), om, js);
      cij.prune();
      if (cij.empty()) continue;
      // e_i . Je_j = sum_a J_{aj} sigma_i sigma_a
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit.row(i) = j0.col(j).transpose();
      coeff += times_matrix(cij, unit);
    }
  }
  coeff.prune();
  rhs += bundle.quadratic(coeff, phi);
  return relative_residual(bundle.quadratic(lhs, phi), rhs, phi);
}

GradingResiduals grading_commutation_check(const SpinorBundle& bundle, const SpinorField& phi) {
  require(bundle.model().flags.preserves_J, "grading identities require nabla J = 0");
  GradingResiduals out;
  const SpinorField hphi = bundle.hamilton_field(phi);
  const SpinorField dphi = bundle.dirac(phi, DiracVariant::D);
  const SpinorField dtphi = bundle.dirac(phi, DiracVariant::Dtilde);
  out.dirac = relative_residual(bundle.hamilton_field(dphi),
                                bundle.dirac(hphi, DiracVariant::D) + dtphi.scaled(kI), phi);
  out.dirac_tilde = relative_residual(bundle.hamilton_field(dtphi),
                                      bundle.dirac(hphi, DiracVariant::Dtilde) - dphi.scaled(kI), phi);
  out.p_operator = relative_residual(bundle.hamilton_field(bundle.p_operator(phi)), bundle.p_operator(hphi), phi);
  return out;
}

namespace {

// sum_j J(nabla_X J)e_j . e_j as a fiber operator field.
MatrixSeries hamilton_correction(const SpinorBundle& bundle, int axis) {
  const ComplexMatrix j0 = j_matrix(bundle.n());
  const MatrixSeries dj = complex_structure_derivative(bundle.model().connection, axis);
  MatrixSeries coeff = dj.map([&j0](const ComplexMatrix& a) -> ComplexMatrix { return j0 * a; });
  coeff.prune();
  return coeff;
}

}  // namespace

double hamilton_parallel_residual(const SpinorBundle& bundle, const SpinorField& phi, double coefficient) {
  double worst = 0.0;
  const SpinorField hphi = bundle.hamilton_field(phi);
  for (int x = 0; x < bundle.d(); ++x) {
    SpinorField lhs = bundle.hamilton_field(bundle.nabla(x, phi));
    lhs += bundle.quadratic(hamilton_correction(bundle, x), phi).scaled(coefficient);
    worst = std::max(worst, relative_residual(lhs, bundle.nabla(x, hphi), phi));
  }
  return worst;
}

double hamilton_parallel_correction_size(const SpinorBundle& bundle, const SpinorField& phi) {
  double worst = 0.0;
  for (int x = 0; x < bundle.d(); ++x) {
    worst = std::max(worst, bundle.quadratic(hamilton_correction(bundle, x), phi).norm() / safe_norm(phi.norm()));
  }
  return worst;
}

double level_leakage(const SpinorBundle& bundle, const SpinorField& phi, int level) {
  const SpinorField out = bundle.p_operator(phi);
  return (out - out.level_window(level, level)).norm() / safe_norm(phi.norm());
}

double vacuum_clifford_residual(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi0) {
  require_level_zero(phi0);
  const VectorSeries js = left_apply(j_matrix(bundle.n()), s);
  return relative_residual(bundle.clifford(js, phi0), bundle.clifford(s, phi0).scaled(kI), phi0);
}

double complexified_divergence_residual(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi0) {
  require(bundle.model().flags.preserves_J, "complexified divergence identity requires nabla J = 0");
  require_level_zero(phi0);
  const VectorSeries js = left_apply(j_matrix(bundle.n()), s);
  MatrixSeries q = bundle.clifford_P(js);
  q -= bundle.clifford_P_tilde(s);
  const SpinorField rhs = bundle.multiply(complexified_divergence(bundle.model(), s), phi0);
  return relative_residual(bundle.quadratic(q, phi0), rhs, phi0);
}

double vacuum_curvature_residual(const SpinorBundle& bundle, const SpinorField& phi0) {
  require(bundle.model().flags.preserves_J, "level-0 curvature identity requires nabla J = 0");
  require_level_zero(phi0);
  const SpinorField rhs = bundle.multiply(scalar_curvature(bundle.model()), phi0).scaled(Complex(0.0, 0.25));
  return relative_residual(bundle.curvature_action_F(phi0), rhs, phi0);
}

double mean_curvature_automorphic_residual(const SpinorBundle& bundle, const SpinorField& phi) {
  const FoliationModel& m = bundle.model();
  require(m.flags.kahler && m.flags.automorphic, "requires a Kahler model with automorphic mean curvature");
  MatrixSeries q = bundle.clifford_P(m.kappa_sharp_g);
  q -= bundle.clifford_P_tilde(left_apply(j_matrix(m.n), m.kappa_sharp_g));
  return bundle.quadratic(q, phi).norm() / safe_norm(phi.norm());
}

double mean_curvature_harmonic_residual(const FoliationModel& model) {
  require(model.flags.kahler && model.flags.basic_harmonic, "requires a Kahler model with basic harmonic kappa");
  ScalarSeries diff = complexified_divergence(model, model.kappa_sharp_g);
  diff -= squared_length(model.kappa_sharp_g, model.d);
  return diff.max_abs();
}

RicciSpinorResiduals ricci_spinor_identities(const SpinorBundle& bundle, const SpinorField& phi) {
  const FoliationModel& m = bundle.model();
  require(m.flags.kahler, "Ricci spinor identities require a Kahler model");
  const int d = m.d;
  const ComplexMatrix j0 = j_matrix(m.n);
  RicciSpinorResiduals out;
  SpinorField lhs(m.n, phi.level() + 2);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (j0(k, j) != Complex(0.0, 0.0)) lhs += bundle.spinor_curvature(j, k, phi).scaled(j0(k, j));
    }
  }
  const MatrixSeries ric = ricci_operator(m.curvature);
  const SpinorField rhs = bundle.quadratic(ric, phi).scaled(kI);
  out.curvature_trace = relative_residual(lhs, rhs, phi);

  const MatrixSeries ric_j = ric.map([&j0](const ComplexMatrix& a) -> ComplexMatrix { return a * j0.transpose(); });
  const SpinorField lhs2 = bundle.quadratic(ric_j, phi);
  const SpinorField rhs2 = bundle.multiply(scalar_curvature(m), phi).scaled(Complex(0.0, -0.5));
  out.ricci_trace = relative_residual(lhs2, rhs2, phi);
  return out;
}

double chsc_curvature_action_residual(const SpinorBundle& bundle, const SpinorField& phi) {
  const double h = hypothesis_h(bundle.model());
  const int n = bundle.n();
  SpinorField rhs = phi.scaled(h / 4.0 * n * (n - 1));
  rhs -= bundle.hamilton_field(bundle.hamilton_field(phi)).scaled(2.0 * h);
  return relative_residual(bundle.curvature_action_F(phi).scaled(kI), rhs, phi);
}

double weighted_norm(const SpinorBundle& bundle, const SpinorField& phi) {
  return std::sqrt(std::max(0.0, bundle.inner(phi, phi).real()));
}

double adjointness_defect(const SpinorBundle& bundle, OperatorName name, const SpinorField& phi, const SpinorField& psi) {
  const ModelFlags& f = bundle.model().flags;
  if (name == OperatorName::Dtilde || name == OperatorName::P) {
    require(f.preserves_J, "formal self-adjointness of D~ and P requires nabla J = 0");
  }
  if (name == OperatorName::Dprime || name == OperatorName::Dtildeprime) {
    throw InvalidArgument("uncorrected operators are not formally self-adjoint");
  }
  const Complex a = bundle.inner(bundle.apply_operator(name, phi), psi);
  const Complex b = bundle.inner(phi, bundle.apply_operator(name, psi));
  return std::abs(a - b) / safe_norm(weighted_norm(bundle, phi) * weighted_norm(bundle, psi));
}

double dirac_prime_adjointness_defect(const SpinorBundle& bundle, const SpinorField& phi, const SpinorField& psi) {
  const Complex a = bundle.inner(bundle.dirac(phi, DiracVariant::Dprime), psi);
  const Complex b = bundle.inner(phi, bundle.dirac(psi, DiracVariant::Dprime));
  return std::abs(a - b) / safe_norm(weighted_norm(bundle, phi) * weighted_norm(bundle, psi));
}

double principal_symbol_residual(const SpinorBundle& bundle, const ScalarSeries& f, const SpinorField& phi) {
  const int d = bundle.d();
  VectorSeries df(d, ComplexVector::Zero(d));
  for (int a = 0; a < d; ++a) df += times_vector(f.derivative(a), ComplexVector(RealVector::Unit(d, a).cast<Complex>()));
  const VectorSeries sharp = left_apply(symplectic_form(bundle.n()).cast<Complex>(), df);
  SpinorField lhs = bundle.dirac(bundle.multiply(f, phi), DiracVariant::Dprime);
  lhs -= bundle.multiply(f, bundle.dirac(phi, DiracVariant::Dprime));
  return relative_residual(lhs, bundle.clifford(sharp, phi), phi);
}

double connection_laplacian_two_path(const SpinorBundle& bundle, const SpinorField& phi, const SpinorField& psi) {
  Complex rhs{0.0, 0.0};
  for (int i = 0; i < bundle.d(); ++i) rhs += bundle.inner(bundle.nabla(i, phi), bundle.nabla(i, psi));
  const Complex lhs = bundle.inner(bundle.connection_laplacian(phi), psi);
  return std::abs(lhs - rhs) / safe_norm(weighted_norm(bundle, phi) * weighted_norm(bundle, psi));
}

double connection_adjoint_defect(const SpinorBundle& bundle, const SpinorField& phi, const std::vector<SpinorField>& psi) {
  Complex lhs{0.0, 0.0};
  double psi_sq = 0.0;
  for (int i = 0; i < bundle.d(); ++i) {
    lhs += bundle.inner(bundle.nabla(i, phi), psi.at(i));
    psi_sq += bundle.inner(psi[i], psi[i]).real();
  }
  const Complex rhs = bundle.inner(phi, bundle.connection_adjoint(psi));
  return std::abs(lhs - rhs) / safe_norm(weighted_norm(bundle, phi) * std::sqrt(std::max(0.0, psi_sq)));
}

DiracFormResiduals dirac_unitary_forms(const SpinorBundle& bundle, const SpinorField& phi) {
  DiracFormResiduals out;
  out.dirac_prime = relative_residual(bundle.dirac(phi, DiracVariant::Dprime), bundle.dirac_prime_unitary(phi), phi);
  out.dirac_tilde_prime =
      relative_residual(bundle.dirac(phi, DiracVariant::Dtildeprime), bundle.dirac_tilde_prime_unitary(phi), phi);
  return out;
}

double spinor_curvature_commutator_residual(const SpinorBundle& bundle, const SpinorField& phi) {
  require(!bundle.model().flags.fiber_only, "the commutator [nabla_i, nabla_j] needs a base");
  const int d = bundle.d();
  std::vector<SpinorField> first;
  for (int j = 0; j < d; ++j) first.push_back(bundle.nabla(j, phi));
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const SpinorField commutator = bundle.nabla(i, first[j]) - bundle.nabla(j, first[i]);
      worst = std::max(worst, relative_residual(bundle.spinor_curvature(i, j, phi), commutator, phi));
    }
  }
  return worst;
}

double spinor_curvature_forms_residual(const SpinorBundle& bundle, const SpinorField& phi) {
  double worst = 0.0;
  for (int i = 0; i < bundle.d(); ++i) {
    for (int j = 0; j < bundle.d(); ++j) {
      worst = std::max(worst, relative_residual(bundle.spinor_curvature(i, j, phi),
                                                bundle.spinor_curvature_bracket_form(i, j, phi), phi));
    }
  }
  return worst;
}

double metric_compatibility_residual(const SpinorBundle& bundle, const SpinorField& phi, const SpinorField& psi) {
  double worst = 0.0;
  for (int x = 0; x < bundle.d(); ++x) {
    ScalarSeries defect = bundle.pointwise_inner(phi, psi).derivative(x);
    defect -= bundle.pointwise_inner(bundle.nabla(x, phi), psi);
    defect -= bundle.pointwise_inner(phi, bundle.nabla(x, psi));
    worst = std::max(worst, defect.max_abs());
  }
  return worst / safe_norm(phi.norm() * psi.norm());
}

double clifford_leibniz_residual(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi) {
  double worst = 0.0;
  for (int x = 0; x < bundle.d(); ++x) {
    const SpinorField lhs = bundle.nabla(x, bundle.clifford(s, phi));
    SpinorField rhs = bundle.clifford(covariant_derivative(bundle.model().connection, x, s), phi);
    rhs += bundle.clifford(s, bundle.nabla(x, phi));
    worst = std::max(worst, relative_residual(lhs, rhs, phi));
  }
  return worst;
}

}  // namespace sympdirac
