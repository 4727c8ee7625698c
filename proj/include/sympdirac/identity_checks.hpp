#pragma once

// Residuals of the identities satisfied by the spinor operators. Each
// function returns ||LHS - RHS|| / ||phi|| unless stated otherwise and throws
// HypothesisError when the model does not satisfy the identity's hypotheses.

#include <string>
#include <vector>

#include "sympdirac/spinor_calculus.hpp"

namespace sympdirac {

enum class WeitzenbockFormula {
  // P = nabla*nabla + iF - |c|^2/4 + (i/2){P(Jc) - P~(c)} + i sum P(J)(Je_i) nabla_i
  //     + i sum e_i . Je_j . nabla_{T(e_i, e_j)},  c = kappa^sharp + tau
  General,
  // torsion-free symplectic connection; the P(J) term drops when nabla J = 0
  Fedosov,
  // kappa = 0; reduces to nabla*nabla + iF for a Fedosov connection with nabla J = 0
  MinimalFlow,
  // level-0 fields, Fedosov with nabla J = 0:
  // nabla*nabla - (r + |kappa|^2)/4 + (i/2) div((kappa^sharp)^c)
  VacuumFedosov,
  // transverse Kahler: nabla*nabla + iF - |kappa|^2/4 + (i/2){P(kappa^g) + P~(J kappa^g)}
  Kahler,
  // constant holomorphic sectional curvature h: iF replaced by h n(n-1)/4 - 2h H^2
  ConstantHolomorphic,
};

std::string formula_label(WeitzenbockFormula formula);

double relative_residual(const SpinorField& lhs, const SpinorField& rhs, const SpinorField& phi);

// Right-hand side of the chosen formula applied to phi.
SpinorField weitzenbock_rhs(const SpinorBundle& bundle, const SpinorField& phi, WeitzenbockFormula formula);
double weitzenbock_residual(const SpinorBundle& bundle, const SpinorField& phi, WeitzenbockFormula formula);

enum class VacuumFormula {
  // nabla J = 0: nabla*nabla - (r + |c|^2)/4 + (i/2) div(c^c) + i nabla_tau
  General,
  // kappa = 0 and nabla J = 0: nabla*nabla - (r + |tau|^2)/4 + (i/2) div(tau^c) + i nabla_tau,
  // and nabla*nabla - r/4 for a Fedosov connection
  Flow,
  // Kahler: nabla*nabla - (r + |kappa|^2)/4 + (1/2) div((kappa^g)^c)
  Kahler,
  // CHSC h: nabla*nabla - h n(n+1)/4 - |kappa|^2/4 + (1/2) div((kappa^g)^c)
  ConstantHolomorphic,
};

std::string vacuum_formula_label(VacuumFormula formula);
SpinorField vacuum_weitzenbock_rhs(const SpinorBundle& bundle, const SpinorField& phi0, VacuumFormula formula);
double vacuum_weitzenbock_residual(const SpinorBundle& bundle, const SpinorField& phi0, VacuumFormula formula);

struct CommutatorResiduals {
  // D(s.phi) = s.D phi + P(s).phi - i nabla_s phi - (i/2) omega(s, c) phi
  double dirac = 0.0;
  // D~(s.phi) = s.D~ phi + P~(s).phi + i nabla_{Js} phi + (i/2) omega(Js, c) phi
  double dirac_tilde = 0.0;
};
CommutatorResiduals clifford_commutator_check(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi);

// P(s) + P~(Js) = -P(J)(Js) - i div(s) + sum {e_i omega(e_j, Js) - e_j omega(e_i, Js)} e_i . Je_j
//                 - sum omega(T(e_i, e_j), Js) e_i . Je_j, applied to phi.
double clifford_quadratic_relation(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi);

struct GradingResiduals {
  double dirac = 0.0;        // H(D phi) = D(H phi) + i D~ phi
  double dirac_tilde = 0.0;  // H(D~ phi) = D~(H phi) - i D phi
  double p_operator = 0.0;   // H(P phi) = P(H phi)
};
// Requires nabla J = 0.
GradingResiduals grading_commutation_check(const SpinorBundle& bundle, const SpinorField& phi);

// H(nabla_X phi) + c sum_j J(nabla_X J)e_j . e_j . phi = nabla_X(H phi), maximised over X.
double hamilton_parallel_residual(const SpinorBundle& bundle, const SpinorField& phi, double coefficient);
// Size of sum_j J(nabla_X J)e_j . e_j . phi relative to phi, maximised over X.
double hamilton_parallel_correction_size(const SpinorBundle& bundle, const SpinorField& phi);

// ||phi_out - Pi_l phi_out|| / ||phi|| for phi_out = P phi and phi on level l.
double level_leakage(const SpinorBundle& bundle, const SpinorField& phi, int level);

// Level-0 identities; phi0 must live on level 0.
double vacuum_clifford_residual(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi0);
double complexified_divergence_residual(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi0);
double vacuum_curvature_residual(const SpinorBundle& bundle, const SpinorField& phi0);

// {P(kappa^g) - P~(J kappa^g)} phi, relative; requires an automorphic kappa.
double mean_curvature_automorphic_residual(const SpinorBundle& bundle, const SpinorField& phi);
// max |div((kappa^g)^c) - |kappa|^2| over Fourier coefficients; requires a
// basic harmonic kappa.
double mean_curvature_harmonic_residual(const FoliationModel& model);

struct RicciSpinorResiduals {
  double curvature_trace = 0.0;  // sum R^S(e_j, Je_j) = i sum Ric(e_j) . e_j
  double ricci_trace = 0.0;      // sum Ric(e_j) . Je_j = -(i/2) r
};
RicciSpinorResiduals ricci_spinor_identities(const SpinorBundle& bundle, const SpinorField& phi);

// iF phi = h n(n-1)/4 phi - 2h H^2 phi on a CHSC model.
double chsc_curvature_action_residual(const SpinorBundle& bundle, const SpinorField& phi);

// Formal adjointness defects relative to ||phi|| ||psi|| (weighted norms).
double adjointness_defect(const SpinorBundle& bundle, OperatorName name, const SpinorField& phi, const SpinorField& psi);
// Same for D' (uncorrected) on the weighted product.
double dirac_prime_adjointness_defect(const SpinorBundle& bundle, const SpinorField& phi, const SpinorField& psi);

// Weighted L^2 norm.
double weighted_norm(const SpinorBundle& bundle, const SpinorField& phi);

// [D', f] phi - (df)^sharp . phi for a basic function f.
double principal_symbol_residual(const SpinorBundle& bundle, const ScalarSeries& f, const SpinorField& phi);

// nabla*nabla from the local formula against the adjoint of nabla:
// |<nabla*nabla phi, psi> - sum <nabla_i phi, nabla_i psi>| / (||phi|| ||psi||)
double connection_laplacian_two_path(const SpinorBundle& bundle, const SpinorField& phi, const SpinorField& psi);
// |<nabla phi, Psi> - <phi, nabla* Psi>| / (||phi|| ||Psi||)
double connection_adjoint_defect(const SpinorBundle& bundle, const SpinorField& phi, const std::vector<SpinorField>& psi);

struct DiracFormResiduals {
  double dirac_prime = 0.0;        // D' = -sum Je_i . nabla_{e_i}
  double dirac_tilde_prime = 0.0;  // D~' = sum e_i . nabla_{e_i}
};
DiracFormResiduals dirac_unitary_forms(const SpinorBundle& bundle, const SpinorField& phi);

// max over i, j of R^S(e_i, e_j) against [nabla_i, nabla_j]; requires a base.
double spinor_curvature_commutator_residual(const SpinorBundle& bundle, const SpinorField& phi);
// max over i, j of the quadratic action of R(e_i, e_j) against the bracket form.
double spinor_curvature_forms_residual(const SpinorBundle& bundle, const SpinorField& phi);

// max over X of |e_X <phi, psi> - <nabla_X phi, psi> - <phi, nabla_X psi>|
// (coefficientwise) / (||phi|| ||psi||)
double metric_compatibility_residual(const SpinorBundle& bundle, const SpinorField& phi, const SpinorField& psi);
// max over X of nabla_X(s . phi) - (nabla_X s) . phi - s . nabla_X phi
double clifford_leibniz_residual(const SpinorBundle& bundle, const VectorSeries& s, const SpinorField& phi);

}  // namespace sympdirac
