#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles/grid.hpp"
#include "sympdirac/errors.hpp"
#include "sympdirac/foliated_geometry.hpp"

using namespace sympdirac;

namespace {

FoliationModel catalog(ModelKind kind, int n, bool jc = false, double h = 0.0) {
  ModelSpec spec = default_model_spec(kind, n, 2, 11);
  spec.j_compatible = jc;
  spec.h = h;
  return build_model(spec);
}

VectorSeries random_section(int d, int cutoff, Rng& rng) {
  std::normal_distribution<double> normal;
  VectorSeries s(d, ComplexVector::Zero(d));
  for (const Mode& k : mode_cube(d, cutoff)) {
    if (k > negate_mode(k)) continue;
    ComplexVector c(d);
    for (int a = 0; a < d; ++a) c[a] = Complex(normal(rng), linf(k) == 0 ? 0.0 : normal(rng));
    s.add(k, c);
    if (linf(k) != 0) s.add(negate_mode(k), c.conjugate());
  }
  return s;
}

// omega(R(X,Y)Z,W) for constant holomorphic sectional curvature h
double chsc_form(int n, double h, const RealVector& x, const RealVector& y, const RealVector& z, const RealVector& w) {
  const RealMatrix om = symplectic_form(n), j = complex_structure(n);
  auto o = [&om](const RealVector& a, const RealVector& b) { return a.dot(om * b); };
  return h / 4.0 *
         (o(x, z) * o(y, j * w) + o(x, w) * o(y, j * z) - o(y, z) * o(x, j * w) - o(y, w) * o(x, j * z) +
          2.0 * o(x, y) * o(z, j * w));
}

}  // namespace

TEST_CASE("flat torus data") {
  const FoliationModel m = catalog(ModelKind::FlatKahlerTorus, 1);
  CHECK(m.kappa_form.max_abs() == 0.0);
  CHECK(m.tau.max_abs() == 0.0);
  for (const MatrixSeries& r : m.curvature.components) CHECK(r.max_abs() == 0.0);
  CHECK(m.flags.minimal);
  CHECK(m.flags.fedosov);
  CHECK(m.flags.kahler);
  CHECK(m.flags.preserves_J);
  CHECK(symplectic_ricci(m).r.max_abs() == 0.0);
  CHECK(symplectic_ricci(m).sric.max_abs() == 0.0);
}

TEST_CASE("model names round-trip and bad specs are rejected") {
  for (ModelKind k : {ModelKind::FlatKahlerTorus, ModelKind::HeisenbergFlow, ModelKind::WarpedNonTaut,
                      ModelKind::SymmetricPerturbedFedosov, ModelKind::TorsionPerturbedSymplectic, ModelKind::ChscFiber}) {
    CHECK(parse_model_kind(model_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_model_kind("Sphere"), InvalidArgument);
  CHECK_THROWS_AS(build_model(default_model_spec(ModelKind::HeisenbergFlow, 2, 1, 1)), InvalidArgument);
  ModelSpec bad = default_model_spec(ModelKind::FlatKahlerTorus, 1, 1, 1);
  bad.warp.push_back({unit_mode(2, 0), 0.1, 0.0});
  CHECK_THROWS_AS(build_model(bad), InvalidArgument);
}

TEST_CASE("warped leaf metric: kappa = -df from the Koszul formula and density e^f") {
  ModelSpec spec;
  spec.kind = ModelKind::WarpedNonTaut;
  spec.n = 1;
  spec.cutoff = 2;
  spec.warp.push_back({unit_mode(2, 0), 0.1, 0.0});
  const FoliationModel m = build_model(spec);
  CHECK_FALSE(m.flags.minimal);
  Rng rng(1);
  for (const RealVector& x : sample_points(2, 20, rng)) {
    const ComplexVector k = m.kappa_form.evaluate(x);
    CHECK(std::abs(k[0] - 0.2 * kPi * std::sin(2.0 * kPi * x[0])) < 1e-14);
    CHECK(std::abs(k[1]) < 1e-15);
    // omega(kappa^sharp, s) = kappa(s)
    const ComplexVector s = ComplexVector::Random(2);
    CHECK(std::abs(omega(m.kappa_sharp.evaluate(x), s) - (k.array() * s.array()).sum()) < 1e-14);
    const double rho = std::exp(0.1 * std::cos(2.0 * kPi * x[0]));
    CHECK(std::abs(m.leaf_density.evaluate(x) - rho) < 1e-12);
  }
}

TEST_CASE("torsion vector of a constant sp(n) perturbation") {
  for (int n = 1; n <= 2; ++n) {
    const int d = 2 * n;
    Rng rng(7);
    std::vector<RealMatrix> a;
    TensorTerm term{{zero_mode(d), 1.0, 0.0}, std::vector<double>(d * d * d)};
    for (int x = 0; x < d; ++x) {
      a.push_back(0.3 * random_sp(n, rng));
      for (int l = 0; l < d; ++l) {
        for (int k = 0; k < d; ++k) term.values[(x * d + l) * d + k] = a[x](l, k);
      }
    }
    ModelSpec spec;
    spec.kind = ModelKind::TorsionPerturbedSymplectic;
    spec.n = n;
    spec.torsion.push_back(term);
    const FoliationModel m = build_model(spec);
    RealVector tau = RealVector::Zero(d);
    for (int i = 0; i < n; ++i) tau += a[i].col(n + i) - a[n + i].col(i);
    CHECK((m.tau.coefficient(zero_mode(d)) - tau.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(m.flags.minimal);
    CHECK_FALSE(m.flags.torsion_free);
  }
}

TEST_CASE("J-compatible modification") {
  const FoliationModel flat = catalog(ModelKind::FlatKahlerTorus, 1);
  const ConnectionData same = make_j_compatible(flat.connection);
  for (const MatrixSeries& g : same.gamma) CHECK(g.max_abs() == 0.0);
  Rng rng(2);
  for (int n = 1; n <= 2; ++n) {
    const FoliationModel m = catalog(ModelKind::SymmetricPerturbedFedosov, n);
    CHECK_FALSE(m.connection.preserves_J);
    const ConnectionData out = make_j_compatible(m.connection);
    CHECK(out.preserves_J);
    CHECK(out.is_symplectic);
    CHECK(complex_structure_residual(out) < 1e-12);
    std::vector<VectorSeries> sections;
    for (int i = 0; i < 4; ++i) sections.push_back(random_section(2 * n, 1, rng));
    CHECK(metric_residual(out, sections) < 1e-12);
  }
}

TEST_CASE("divergence of sin(2 pi x) e_1 on the flat torus") {
  const FoliationModel m = catalog(ModelKind::FlatKahlerTorus, 1);
  VectorSeries s(2, ComplexVector::Zero(2));
  s.add({1, 0}, ComplexVector::Unit(2, 0) * Complex(0.0, -0.5));
  s.add({-1, 0}, ComplexVector::Unit(2, 0) * Complex(0.0, 0.5));
  const ScalarSeries div = transversal_divergence(m, s);
  Rng rng(3);
  for (const RealVector& x : sample_points(2, 10, rng)) {
    CHECK(std::abs(div.evaluate(x) - 2.0 * kPi * std::cos(2.0 * kPi * x[0])) < 1e-13);
  }
  VectorSeries constant = VectorSeries::constant(2, ComplexVector::Ones(2));
  CHECK(transversal_divergence(m, constant).max_abs() == 0.0);
}

TEST_CASE("divergence is independent of the symplectic frame") {
  Rng rng(4);
  for (ModelKind kind : {ModelKind::TorsionPerturbedSymplectic, ModelKind::SymmetricPerturbedFedosov}) {
    const FoliationModel m = catalog(kind, 2);
    const VectorSeries s = random_section(4, 1, rng);
    const ScalarSeries base = transversal_divergence(m, s);
    for (int trial = 0; trial < 3; ++trial) {
      const RealMatrix u = random_symplectic_frame(2, rng);
      CHECK((transversal_divergence(m, s, &u) - base).max_abs() < 1e-12 * std::max(1.0, s.max_abs()));
      CHECK((torsion_vector(m, &u) - m.tau).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("divergence theorem against grid quadrature") {
  Rng rng(5);
  ModelSpec spec;
  spec.kind = ModelKind::WarpedNonTaut;
  spec.n = 1;
  spec.cutoff = 2;
  spec.warp.push_back({unit_mode(2, 0), 0.1, 0.0});
  const FoliationModel warped = build_model(spec);
  for (int trial = 0; trial < 5; ++trial) {
    const VectorSeries s = random_section(2, 1, rng);
    // flat connection: div s = d_1 s_1 + d_2 s_2, kappa(s) = 0.2 pi sin(2 pi x) s_1
    const VectorSeries ds0 = s.derivative(0), ds1 = s.derivative(1);
    auto rho = [](const RealVector& x) { return std::exp(0.1 * std::cos(2.0 * kPi * x[0])); };
    const Complex lhs = oracle::grid_mean(2, 40, [&](const RealVector& x) {
      return (ds0.evaluate(x)[0] + ds1.evaluate(x)[1]) * rho(x);
    });
    const Complex rhs = oracle::grid_mean(2, 40, [&](const RealVector& x) {
      return 0.2 * kPi * std::sin(2.0 * kPi * x[0]) * s.evaluate(x)[0] * rho(x);
    });
    CHECK(std::abs(lhs - rhs) < 1e-12);
    const DivergenceBalance b = divergence_theorem(warped, s);
    CHECK(std::abs(b.lhs - lhs) < 1e-10);
    CHECK(b.residual() < 1e-10);
  }
  for (ModelKind kind : {ModelKind::FlatKahlerTorus, ModelKind::TorsionPerturbedSymplectic, ModelKind::WarpedNonTaut}) {
    for (int n = 1; n <= 2; ++n) {
      const FoliationModel m = catalog(kind, n);
      for (int trial = 0; trial < 20; ++trial) CHECK(divergence_theorem_residual(m, random_section(2 * n, 1, rng)) < 1e-10);
    }
  }
  const FoliationModel flat = catalog(ModelKind::FlatKahlerTorus, 1);
  const DivergenceBalance zero = divergence_theorem(flat, VectorSeries::constant(2, ComplexVector::Ones(2)));
  CHECK(std::abs(zero.lhs) == 0.0);
  CHECK(std::abs(zero.rhs) == 0.0);
}

TEST_CASE("curvature agrees with finite differences of the connection") {
  Rng rng(6);
  for (ModelKind kind : {ModelKind::SymmetricPerturbedFedosov, ModelKind::TorsionPerturbedSymplectic}) {
    const FoliationModel m = catalog(kind, 1, true);
    for (const RealVector& x : sample_points(2, 5, rng)) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const ComplexMatrix fd = oracle::curvature_fd(m.connection, i, j, x);
          CHECK((m.curvature.at(i, j).evaluate(x) - fd).cwiseAbs().maxCoeff() < 1e-7);
        }
      }
    }
  }
}

TEST_CASE("curvature symmetries") {
  for (int n = 1; n <= 2; ++n) {
    const FoliationModel fed = catalog(ModelKind::SymmetricPerturbedFedosov, n);
    CHECK(curvature_antisymmetry_residual(fed.curvature) < 1e-12);
    CHECK(curvature_symplectic_residual(fed.curvature) < 1e-11);
    CHECK(curvature_j_invariance_residual(fed.curvature) > 1e-3);
    const FoliationModel jc = catalog(ModelKind::SymmetricPerturbedFedosov, n, true);
    CHECK(curvature_j_invariance_residual(jc.curvature) < 1e-11);
    CHECK(curvature_symplectic_residual(jc.curvature) < 1e-11);
  }
}

TEST_CASE("constant holomorphic sectional curvature tensor") {
  Rng rng(8);
  for (int n = 1; n <= 2; ++n) {
    const int d = 2 * n;
    for (double h : {-2.0, 0.0, 1.0}) {
      const FoliationModel m = catalog(ModelKind::ChscFiber, n, false, h);
      REQUIRE(m.flags.chsc_h.has_value());
      CHECK(*m.flags.chsc_h == h);
      const RealMatrix om = symplectic_form(n);
      double worst = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const ComplexMatrix r = m.curvature.at(i, j).coefficient(zero_mode(d));
          for (int k = 0; k < d; ++k) {
            for (int l = 0; l < d; ++l) {
              const RealVector ek = RealVector::Unit(d, k), el = RealVector::Unit(d, l);
              const Complex lib = (r * ek.cast<Complex>()).dot(om.cast<Complex>() * el.cast<Complex>());
              worst = std::max(worst, std::abs(lib - chsc_form(n, h, RealVector::Unit(d, i), RealVector::Unit(d, j), ek, el)));
            }
          }
        }
      }
      CHECK(worst < 1e-14);
      std::vector<RealVector> dirs;
      for (int t = 0; t < 100; ++t) dirs.push_back(RealVector::Random(d).normalized());
      CHECK(holomorphic_sectional_residual(m.curvature, h, {RealVector::Zero(d)}, dirs) < 1e-12);
      CHECK(chsc_tensor_residual(m.curvature, h) < 1e-12);
      CHECK(ricci_half_trace_residual(m.curvature) < 1e-12);

      // r = 1/2 sum_{i,j} omega(R(e_i, Je_i)e_j, e_j) by direct summation
      const RealMatrix j0 = complex_structure(n);
      double r = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const RealVector ei = RealVector::Unit(d, i), ej = RealVector::Unit(d, j);
          r += 0.5 * chsc_form(n, h, ei, j0 * ei, ej, ej);
        }
      }
      CHECK(std::abs(r - h * n * (n + 1)) < 1e-12);
      const SymplecticRicci ric = symplectic_ricci(m);
      CHECK(std::abs(ric.r.coefficient(zero_mode(d)) - r) < 1e-12);
      CHECK((ric.r - ric.r_alternate).max_abs() < 1e-12);
      if (n == 1) CHECK(std::abs(r - 2.0 * h) < 1e-14);
      for (int t = 0; t < 3; ++t) {
        const RealMatrix u = random_unitary_frame(n, rng);
        CHECK((symplectic_ricci(m, &u).r - ric.r).max_abs() < 1e-12);
      }
    }
  }
}

TEST_CASE("Ricci as half trace: brute-force frame sums") {
  const int n = 2, d = 4;
  const FoliationModel m = catalog(ModelKind::ChscFiber, n, false, -2.0);
  const RealMatrix j0 = complex_structure(n);
  for (int x = 0; x < d; ++x) {
    const ComplexVector ex = RealVector::Unit(d, x).cast<Complex>();
    ComplexVector ric = ComplexVector::Zero(d), half = ComplexVector::Zero(d);
    for (int j = 0; j < d; ++j) {
      ric += m.curvature.at(x, j).coefficient(zero_mode(d)) * RealVector::Unit(d, j).cast<Complex>();
      const RealVector ej = RealVector::Unit(d, j);
      const ComplexMatrix r = m.curvature.evaluate(ej.cast<Complex>(), (j0 * ej).cast<Complex>()).coefficient(zero_mode(d));
      half += 0.5 * r * (j0.cast<Complex>() * ex);
    }
    CHECK((ric - half).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("non-Kahler curvature fails the Kahler identities") {
  const FoliationModel m = catalog(ModelKind::SymmetricPerturbedFedosov, 1);
  CHECK_FALSE(m.flags.kahler);
  CHECK_FALSE(m.flags.chsc_h.has_value());
  CHECK(chsc_tensor_residual(m.curvature, 0.0) > 1e-3);
}
