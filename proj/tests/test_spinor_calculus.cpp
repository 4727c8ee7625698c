#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles/grid.hpp"
#include "sympdirac/errors.hpp"
#include "sympdirac/spinor_calculus.hpp"

using namespace sympdirac;

namespace {

FoliationModel catalog(ModelKind kind, int n, bool jc = false, double h = 0.0) {
  ModelSpec spec = default_model_spec(kind, n, 2, 13);
  spec.j_compatible = jc;
  spec.h = h;
  return build_model(spec);
}

SpinorField mode_field(int n, int level, const Mode& k, const FiberBasis& basis) {
  SpinorField phi(n, level);
  phi.add(k, ComplexVector::Random(basis.dim_through(level)));
  return phi;
}

ComplexVector padded(const ComplexVector& v, int dim) {
  ComplexVector out = ComplexVector::Zero(dim);
  out.head(v.size()) = v;
  return out;
}

double diff(const SpinorField& a, const SpinorField& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("spinor derivative on the flat torus is the Fourier symbol") {
  const FoliationModel m = catalog(ModelKind::FlatKahlerTorus, 2);
  const SpinorBundle bundle(m, 6);
  const Mode k{1, -2, 0, 1};
  const SpinorField phi = mode_field(2, 3, k, bundle.algebra().basis());
  for (int j = 0; j < 4; ++j) {
    CHECK(diff(bundle.nabla(j, phi), phi.scaled(Complex(0.0, 2.0 * kPi * k[j]))) < 1e-13);
  }
  SpinorField constant(2, 3);
  constant.add(zero_mode(4), ComplexVector::Random(bundle.algebra().dim_through(3)));
  for (int j = 0; j < 4; ++j) CHECK(bundle.nabla(j, constant).norm() == 0.0);
}

TEST_CASE("Dirac operators on the flat torus") {
  const FoliationModel m = catalog(ModelKind::FlatKahlerTorus, 1);
  const SpinorBundle bundle(m, 8);
  const FiberBasis& fb = bundle.algebra().basis();
  SpinorField vac(1, 0);
  vac.add(zero_mode(2), vacuum_state(fb).head(1));
  CHECK(bundle.dirac(vac, DiracVariant::D).norm() == 0.0);
  CHECK(bundle.dirac(vac, DiracVariant::Dtilde).norm() == 0.0);

  const Mode k{2, -1};
  const SpinorField phi = mode_field(1, 4, k, fb);
  const ComplexVector v = padded(phi.coefficient(k), fb.dim());
  ComplexVector expected = ComplexVector::Zero(fb.dim());
  for (int j = 0; j < 2; ++j) {
    expected += Complex(0.0, 2.0 * kPi * k[j]) * (clifford_generator(fb, RealVector::Unit(2, j).cast<Complex>()) * v);
  }
  const SpinorField out = bundle.dirac(phi, DiracVariant::Dtildeprime);
  CHECK((padded(out.coefficient(k), fb.dim()) - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(diff(out, bundle.dirac_tilde_prime_unitary(phi)) < 1e-12);
}

TEST_CASE("corrected Dirac operator on a warped model: pure correction term") {
  const FoliationModel m = catalog(ModelKind::WarpedNonTaut, 1);
  const SpinorBundle bundle(m, 8);
  SpinorField vac(1, 0);
  vac.add(zero_mode(2), ComplexVector::Ones(1));
  const SpinorField expected = bundle.clifford(m.kappa_sharp, vac).scaled(-0.5);
  CHECK(bundle.dirac(vac, DiracVariant::Dprime).norm() == 0.0);
  CHECK(diff(bundle.dirac(vac, DiracVariant::D), expected) < 1e-14);
  CHECK(expected.norm() > 0.1);
}

TEST_CASE("second order operators on a flat mode") {
  for (int n = 1; n <= 2; ++n) {
    const FoliationModel m = catalog(ModelKind::FlatKahlerTorus, n);
    const SpinorBundle bundle(m, 8);
    Mode k(2 * n, 0);
    k[0] = 1;
    k[2 * n - 1] = -1;
    const SpinorField phi = mode_field(n, 5, k, bundle.algebra().basis());
    const double k2 = 2.0;
    CHECK(diff(bundle.p_operator(phi), phi.scaled(4.0 * kPi * kPi * k2)) < 1e-9);
    CHECK(diff(bundle.connection_laplacian(phi), phi.scaled(4.0 * kPi * kPi * k2)) < 1e-9);
    CHECK(bundle.curvature_action_F(phi).norm() == 0.0);
    SpinorField constant = mode_field(n, 5, zero_mode(2 * n), bundle.algebra().basis());
    CHECK(bundle.p_operator(constant).norm() < 1e-12);
    CHECK(bundle.connection_laplacian(constant).norm() == 0.0);
  }
}

TEST_CASE("Hamilton field and curvature action on the vacuum") {
  for (int n = 1; n <= 2; ++n) {
    for (double h : {-2.0, 0.0, 1.0}) {
      const FoliationModel m = catalog(ModelKind::ChscFiber, n, false, h);
      const SpinorBundle bundle(m, 8);
      SpinorField vac(n, 0);
      vac.add(zero_mode(2 * n), ComplexVector::Ones(1));
      CHECK(diff(bundle.hamilton_field(vac), vac.scaled(-0.5 * n)) == 0.0);
      const Complex r = symplectic_ricci(m).r.coefficient(zero_mode(2 * n));
      const SpinorField iF = bundle.curvature_action_F(vac).scaled(kI);
      CHECK(diff(iF, vac.scaled(-r / 4.0)) < 1e-13);
      CHECK(std::abs(r - h * n * (n + 1)) < 1e-13);
    }
  }
}

TEST_CASE("weighted inner product agrees with grid quadrature of e^f") {
  const FoliationModel m = catalog(ModelKind::WarpedNonTaut, 1);
  const SpinorBundle bundle(m, 6);
  Rng rng(4);
  const SpinorField phi = bundle.random_field(rng, 3, 1), psi = bundle.random_field(rng, 3, 1);
  const int dim = bundle.algebra().dim_through(3);
  auto rho = [&m](const RealVector& x) { return std::exp(m.warp.evaluate(x).real()); };
  const Complex grid = oracle::grid_mean(2, 32, [&](const RealVector& x) {
    const ComplexVector a = oracle::evaluate(phi, x, dim), b = oracle::evaluate(psi, x, dim);
    return Complex((b.adjoint() * a)(0, 0)) * rho(x);
  });
  CHECK(std::abs(bundle.inner(phi, psi) - grid) < 1e-10 + 10.0 * m.leaf_density_tail);
  CHECK(bundle.inner(phi, phi).real() > 0.0);
}

TEST_CASE("metric compatibility and Clifford Leibniz rule on curved models") {
  Rng rng(5);
  for (ModelKind kind : {ModelKind::SymmetricPerturbedFedosov, ModelKind::TorsionPerturbedSymplectic}) {
    const FoliationModel m = catalog(kind, 1, true);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1), psi = bundle.random_field(rng, 5, 1);
    for (int x = 0; x < 2; ++x) {
      const ScalarSeries lhs = bundle.pointwise_inner(phi, psi).derivative(x);
      const ScalarSeries rhs = bundle.pointwise_inner(bundle.nabla(x, phi), psi) + bundle.pointwise_inner(phi, bundle.nabla(x, psi));
      CHECK((lhs - rhs).max_abs() < 1e-11 * phi.norm() * psi.norm());
    }
    const VectorSeries s = bundle.random_section(rng, 1);
    for (int x = 0; x < 2; ++x) {
      const SpinorField lhs = bundle.nabla(x, bundle.clifford(s, phi));
      const SpinorField rhs = bundle.clifford(covariant_derivative(m.connection, x, s), phi) + bundle.clifford(s, bundle.nabla(x, phi));
      CHECK(diff(lhs, rhs) < 1e-11 * phi.norm() * std::max(1.0, s.max_abs()));
    }
  }
}

TEST_CASE("spinor curvature equals the commutator of covariant derivatives") {
  Rng rng(6);
  const FoliationModel m = catalog(ModelKind::SymmetricPerturbedFedosov, 1);
  const SpinorBundle bundle(m, 8);
  const SpinorField phi = bundle.random_field(rng, 5, 1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const SpinorField comm = bundle.nabla(i, bundle.nabla(j, phi)) - bundle.nabla(j, bundle.nabla(i, phi));
      CHECK(diff(bundle.spinor_curvature(i, j, phi), comm) < 1e-9 * phi.norm());
      CHECK(diff(bundle.spinor_curvature(i, j, phi), bundle.spinor_curvature_bracket_form(i, j, phi)) < 1e-12 * phi.norm());
    }
  }
}

TEST_CASE("connection Laplacian is the square of the covariant derivative") {
  Rng rng(7);
  for (ModelKind kind : {ModelKind::FlatKahlerTorus, ModelKind::TorsionPerturbedSymplectic, ModelKind::SymmetricPerturbedFedosov}) {
    const FoliationModel m = catalog(kind, 1, true);
    const SpinorBundle bundle(m, 8);
    const SpinorField phi = bundle.random_field(rng, 5, 1);
    double grad = 0.0;
    for (int i = 0; i < 2; ++i) grad += bundle.inner(bundle.nabla(i, phi), bundle.nabla(i, phi)).real();
    const Complex q = bundle.inner(bundle.connection_laplacian(phi), phi);
    CHECK(q.real() >= -1e-10);
    CHECK(std::abs(q - grad) < 1e-9 * std::max(1.0, grad));
  }
}

TEST_CASE("padded fiber headroom is enforced") {
  const FoliationModel m = catalog(ModelKind::FlatKahlerTorus, 1);
  const SpinorBundle tight(m, 4, 2);
  Rng rng(8);
  const SpinorField low = tight.random_level_field(rng, 0, 1);  // P raises by 6 levels
  CHECK_NOTHROW(tight.p_operator(low));
  SpinorField high(1, 4);
  high.add(zero_mode(2), ComplexVector::Ones(tight.algebra().dim_through(4)));
  CHECK_THROWS_AS(tight.p_operator(high), HeadroomError);
  CHECK_THROWS_AS(SpinorBundle(m, 1), InvalidArgument);
}

TEST_CASE("operator names round-trip") {
  for (OperatorName name : {OperatorName::Dprime, OperatorName::Dtildeprime, OperatorName::D, OperatorName::Dtilde,
                            OperatorName::P, OperatorName::ConnLaplacian, OperatorName::F, OperatorName::HJ}) {
    CHECK(parse_operator_name(operator_label(name)) == name);
  }
  CHECK_THROWS_AS(parse_operator_name("Q"), InvalidArgument);
}
