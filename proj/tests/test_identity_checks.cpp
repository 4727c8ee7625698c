#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sympdirac/errors.hpp"
#include "sympdirac/identity_checks.hpp"

using namespace sympdirac;

namespace {

FoliationModel catalog(ModelKind kind, int n = 1, bool jc = false, double h = 0.0) {
  ModelSpec spec = default_model_spec(kind, n, 2, 21);
  spec.j_compatible = jc;
  spec.h = h;
  return build_model(spec);
}

const std::vector<std::pair<ModelKind, bool>> kCurved = {
    {ModelKind::FlatKahlerTorus, false},         {ModelKind::HeisenbergFlow, false},
    {ModelKind::WarpedNonTaut, false},           {ModelKind::SymmetricPerturbedFedosov, false},
    {ModelKind::SymmetricPerturbedFedosov, true}, {ModelKind::TorsionPerturbedSymplectic, false},
    {ModelKind::TorsionPerturbedSymplectic, true},
};

}  // namespace

TEST_CASE("general Weitzenbock formula on every catalog model") {
  Rng rng(1);
  for (const auto& [kind, jc] : kCurved) {
    CAPTURE(model_name(kind));
    CAPTURE(jc);
    const FoliationModel m = catalog(kind, 1, jc);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1);
    CHECK(weitzenbock_residual(bundle, phi, WeitzenbockFormula::General) < 1e-8);
    // P computed as i[D~, D] differs from nabla*nabla alone on curved models
    if (kind == ModelKind::TorsionPerturbedSymplectic) {
      CHECK(relative_residual(bundle.p_operator(phi), bundle.connection_laplacian(phi), phi) > 1e-3);
    }
  }
}

TEST_CASE("self-adjointness of the corrected Dirac operators") {
  Rng rng(2);
  for (const auto& [kind, jc] : kCurved) {
    CAPTURE(model_name(kind));
    const FoliationModel m = catalog(kind, 1, jc);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1), psi = bundle.random_field(rng, 5, 1);
    CHECK(adjointness_defect(bundle, OperatorName::D, phi, psi) < 1e-10);
    if (m.flags.preserves_J) {
      CHECK(adjointness_defect(bundle, OperatorName::Dtilde, phi, psi) < 1e-10);
    } else {
      CHECK_THROWS_AS(adjointness_defect(bundle, OperatorName::Dtilde, phi, psi), HypothesisError);
    }
  }
  const FoliationModel warped = catalog(ModelKind::WarpedNonTaut);
  const SpinorBundle bundle(warped, 8);
  const SpinorField phi = bundle.random_field(rng, 5, 1), psi = bundle.random_field(rng, 5, 1);
  CHECK(dirac_prime_adjointness_defect(bundle, phi, psi) > 1e-9);
}

TEST_CASE("Hamilton field is parallel only with the half correction") {
  Rng rng(3);
  const FoliationModel m = catalog(ModelKind::SymmetricPerturbedFedosov);
  REQUIRE_FALSE(m.flags.preserves_J);
  const SpinorBundle bundle(m, 8);
  const SpinorField phi = bundle.random_field(rng, 5, 1);
  CHECK(hamilton_parallel_residual(bundle, phi, 0.5) < 1e-8);
  CHECK(hamilton_parallel_residual(bundle, phi, 1.0) > 1e-4);
  CHECK(hamilton_parallel_residual(bundle, phi, 0.0) > 1e-4);
  CHECK(hamilton_parallel_correction_size(bundle, phi) > 1e-4);

  const FoliationModel jc = catalog(ModelKind::SymmetricPerturbedFedosov, 1, true);
  const SpinorBundle parallel(jc, 8);
  CHECK(hamilton_parallel_correction_size(parallel, phi) < 1e-12);
  CHECK(hamilton_parallel_residual(parallel, phi, 0.0) < 1e-8);
}

TEST_CASE("grading identities and level blocks require nabla J = 0") {
  Rng rng(4);
  for (ModelKind kind : {ModelKind::SymmetricPerturbedFedosov, ModelKind::TorsionPerturbedSymplectic}) {
    const FoliationModel jc = catalog(kind, 1, true);
    const SpinorBundle bundle(jc, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1);
    const GradingResiduals g = grading_commutation_check(bundle, phi);
    CHECK(g.dirac < 1e-10);
    CHECK(g.dirac_tilde < 1e-10);
    CHECK(g.p_operator < 1e-10);
    for (int l = 0; l <= 4; ++l) CHECK(level_leakage(bundle, bundle.random_level_field(rng, l, 1), l) < 1e-10);

    const FoliationModel raw = catalog(kind, 1, false);
    if (!raw.flags.preserves_J) {
      const SpinorBundle curved(raw, 8);
      CHECK_THROWS_AS(grading_commutation_check(curved, curved.random_field(rng, 5, 1)), HypothesisError);
    }
  }
}

TEST_CASE("Clifford commutators and the quadratic relation") {
  Rng rng(5);
  for (const auto& [kind, jc] : kCurved) {
    CAPTURE(model_name(kind));
    const FoliationModel m = catalog(kind, 1, jc);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1);
    const VectorSeries s = bundle.random_section(rng, 1);
    const CommutatorResiduals r = clifford_commutator_check(bundle, s, phi);
    CHECK(r.dirac < 1e-8);
    CHECK(r.dirac_tilde < 1e-8);
    CHECK(clifford_quadratic_relation(bundle, s, phi) < 1e-8);
    CHECK(principal_symbol_residual(bundle, component(s, 0), phi) < 1e-10);
  }
}

TEST_CASE("vacuum sector identities") {
  Rng rng(6);
  for (const auto& [kind, jc] : kCurved) {
    CAPTURE(model_name(kind));
    const FoliationModel m = catalog(kind, 1, jc);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi0 = bundle.random_level_field(rng, 0, 1);
    const VectorSeries s = bundle.random_section(rng, 1);
    CHECK(vacuum_clifford_residual(bundle, s, phi0) < 1e-12);
    if (!m.flags.preserves_J) {
      CHECK_THROWS_AS(complexified_divergence_residual(bundle, s, phi0), HypothesisError);
    } else {
      CHECK(complexified_divergence_residual(bundle, s, phi0) < 1e-9);
      CHECK(vacuum_curvature_residual(bundle, phi0) < 1e-9);
      CHECK(vacuum_weitzenbock_residual(bundle, phi0, VacuumFormula::General) < 1e-8);
    }
  }
  for (int n = 1; n <= 2; ++n) {
    for (double h : {-2.0, 0.0, 1.0}) {
      const FoliationModel m = catalog(ModelKind::ChscFiber, n, false, h);
      const SpinorBundle bundle(m, 8);
      const SpinorField phi0 = bundle.random_level_field(rng, 0, 0);
      CHECK(vacuum_weitzenbock_residual(bundle, phi0, VacuumFormula::ConstantHolomorphic) < 1e-10);
      CHECK(vacuum_curvature_residual(bundle, phi0) < 1e-9);
    }
  }
}

TEST_CASE("constant holomorphic sectional curvature identities") {
  Rng rng(7);
  for (int n = 1; n <= 2; ++n) {
    for (double h : {-2.0, 0.0, 1.0}) {
      CAPTURE(n);
      CAPTURE(h);
      const FoliationModel m = catalog(ModelKind::ChscFiber, n, false, h);
      const SpinorBundle bundle(m, 8);
      const SpinorField phi = bundle.random_field(rng, 5, 0);
      CHECK(chsc_curvature_action_residual(bundle, phi) < 1e-11);
      const RicciSpinorResiduals ric = ricci_spinor_identities(bundle, phi);
      CHECK(ric.curvature_trace < 1e-11);
      CHECK(ric.ricci_trace < 1e-11);
      CHECK(weitzenbock_residual(bundle, phi, WeitzenbockFormula::ConstantHolomorphic) < 1e-8);
      CHECK(spinor_curvature_forms_residual(bundle, phi) < 1e-12);
    }
  }
}

TEST_CASE("Kahler formulas on Kahler models and rejection elsewhere") {
  Rng rng(8);
  for (ModelKind kind : {ModelKind::FlatKahlerTorus, ModelKind::WarpedNonTaut}) {
    const FoliationModel m = catalog(kind);
    REQUIRE(m.flags.kahler);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1);
    CHECK(weitzenbock_residual(bundle, phi, WeitzenbockFormula::Kahler) < 1e-8);
    const SpinorField phi0 = bundle.random_level_field(rng, 0, 1);
    if (m.flags.automorphic) {
      CHECK(mean_curvature_automorphic_residual(bundle, phi0) < 1e-10);
    } else {
      CHECK_THROWS_AS(mean_curvature_automorphic_residual(bundle, phi0), HypothesisError);
    }
    CHECK(vacuum_weitzenbock_residual(bundle, bundle.random_level_field(rng, 0, 1), VacuumFormula::Kahler) < 1e-8);
  }
  const FoliationModel torsion = catalog(ModelKind::TorsionPerturbedSymplectic, 1, true);
  if (!torsion.flags.kahler) {
    const SpinorBundle bundle(torsion, 8);
    CHECK_THROWS_AS(weitzenbock_residual(bundle, bundle.random_field(rng, 5, 1), WeitzenbockFormula::Kahler), HypothesisError);
  }
}

TEST_CASE("connection Laplacian two-path and adjoint agree") {
  Rng rng(9);
  for (const auto& [kind, jc] : kCurved) {
    const FoliationModel m = catalog(kind, 1, jc);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1), psi = bundle.random_field(rng, 5, 1);
    CHECK(connection_laplacian_two_path(bundle, phi, psi) < 1e-9);
    std::vector<SpinorField> big;
    for (int i = 0; i < m.d; ++i) big.push_back(bundle.random_field(rng, 5, 1));
    CHECK(connection_adjoint_defect(bundle, phi, big) < 1e-9);
    CHECK(metric_compatibility_residual(bundle, phi, psi) < 1e-11);
  }
}

TEST_CASE("formula labels are distinct") {
  std::set<std::string> labels;
  for (auto f : {WeitzenbockFormula::General, WeitzenbockFormula::Fedosov, WeitzenbockFormula::MinimalFlow,
                 WeitzenbockFormula::VacuumFedosov, WeitzenbockFormula::Kahler, WeitzenbockFormula::ConstantHolomorphic}) {
    labels.insert(formula_label(f));
  }
  CHECK(labels.size() == 6);
}
