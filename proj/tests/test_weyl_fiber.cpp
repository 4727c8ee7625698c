#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles/enumeration.hpp"
#include "oracles/hermite_quadrature.hpp"
#include "sympdirac/errors.hpp"
#include "sympdirac/weyl_fiber.hpp"

using namespace sympdirac;

namespace {

ComplexVector unit_coeffs(int d, int a) { return RealVector::Unit(d, a).cast<Complex>(); }

RealVector gaussian_vector(int d, Rng& rng) {
  std::normal_distribution<double> normal;
  RealVector v(d);
  for (int a = 0; a < d; ++a) v[a] = normal(rng);
  return v;
}

double max_on_levels(const FiberBasis& b, const ComplexMatrix& m, int top) {
  const int cols = b.dim_through(top);
  return m.leftCols(cols).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("basis dimensions match brute-force enumeration") {
  CHECK(build_basis(1, 8).dim() == 9);
  const FiberBasis b = build_basis(2, 3);
  CHECK(b.dim() == 10);
  CHECK(b.level_size(3) == 4);
  for (int n = 1; n <= 3; ++n) {
    for (int L = 2; L <= 6; ++L) {
      const FiberBasis basis = build_basis(n, L);
      CHECK(basis.dim() == static_cast<int>(oracle::multi_indices(n, L).size()));
      for (int l = 0; l <= L; ++l) {
        CHECK(basis.level_size(l) == oracle::count_level(n, l));
        CHECK(basis.level_size(l) == static_cast<int>(binomial(n + l - 1, l)));
      }
    }
  }
}

TEST_CASE("levels are nested prefixes ordered descending lexicographically") {
  const FiberBasis b = build_basis(2, 4);
  for (int o = 1; o < b.dim(); ++o) {
    const MultiIndex& prev = b.index(o - 1);
    const MultiIndex& cur = b.index(o);
    CHECK(prev.level() <= cur.level());
    if (prev.level() == cur.level()) CHECK(prev.entries > cur.entries);
  }
  CHECK(b.index(b.level_offset(2)).entries == std::vector<int>{2, 0});
  const FiberBasis small = build_basis(2, 2);
  for (int o = 0; o < small.dim(); ++o) CHECK(small.index(o) == b.index(o));
  CHECK(b.ordinal({1, 2}) == b.level_offset(3) + 2);
  CHECK(b.ordinal({5, 0}) == -1);
}

TEST_CASE("invalid basis parameters are rejected") {
  CHECK_THROWS_AS(build_basis(0, 4), InvalidArgument);
  CHECK_THROWS_AS(build_basis(1, 1), InvalidArgument);
  const FiberBasis b = build_basis(1, 4);
  CHECK_THROWS_AS(clifford_generator(b, ComplexVector::Zero(3)), InvalidArgument);
  CHECK_THROWS_AS(level_projection(b, 5), InvalidArgument);
  RealMatrix not_sp = RealMatrix::Identity(2, 2);
  CHECK_THROWS_AS(quadratic_action(b, not_sp), InvalidArgument);
}

TEST_CASE("generator matrix elements agree with Hermite quadrature") {
  const int L = 6;
  const FiberBasis b = build_basis(1, L);
  const oracle::HermiteGrid grid(L + 1);
  const ComplexMatrix sx = clifford_generator(b, unit_coeffs(2, 0));
  const ComplexMatrix sd = clifford_generator(b, unit_coeffs(2, 1));
  for (int a = 0; a <= L; ++a) {
    for (int c = 0; c <= L; ++c) {
      CHECK(std::abs(sx(a, c) - Complex(0.0, grid.position(a, c))) < 1e-10);
      CHECK(std::abs(sd(a, c) - Complex(grid.derivative(a, c), 0.0)) < 1e-8);
    }
  }
  const ComplexVector vac = vacuum_state(b);
  CHECK(std::abs((sx * vac)[1] - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs((sd * vac)[1] - Complex(-1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
}

TEST_CASE("basis is orthonormal against quadrature of Hermite products") {
  const oracle::HermiteGrid grid(4);
  const FiberBasis b = build_basis(1, 4);
  for (int a = 0; a < b.dim(); ++a) {
    for (int c = 0; c < b.dim(); ++c) {
      const ComplexVector ea = ComplexVector::Unit(b.dim(), a), ec = ComplexVector::Unit(b.dim(), c);
      CHECK(std::abs(fiber_inner(ea, ec) - grid.overlap(a, c)) < 1e-12);
    }
  }
}

TEST_CASE("canonical commutation on levels <= L-1") {
  Rng rng(3);
  for (int n = 1; n <= 2; ++n) {
    const FiberBasis b = build_basis(n, 8);
    const int d = 2 * n;
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexVector v = gaussian_vector(d, rng).cast<Complex>(), w = gaussian_vector(d, rng).cast<Complex>();
      const ComplexMatrix sv = clifford_generator(b, v), sw = clifford_generator(b, w);
      ComplexMatrix defect = sv * sw - sw * sv;
      defect += kI * omega(v, w) * ComplexMatrix::Identity(b.dim(), b.dim());
      CHECK(max_on_levels(b, defect, 7) < 1e-12);
    }
  }
  const FiberBasis b = build_basis(1, 8);
  const ComplexMatrix s1 = clifford_generator(b, unit_coeffs(2, 0)), s2 = clifford_generator(b, unit_coeffs(2, 1));
  const ComplexMatrix c = s1 * s2 - s2 * s1;
  CHECK(max_on_levels(b, c + kI * ComplexMatrix::Identity(9, 9), 7) < 1e-12);
  CHECK(clifford_generator(b, ComplexVector::Zero(2)).isZero(0.0));
}

TEST_CASE("generators are skew-adjoint exactly") {
  Rng rng(5);
  const FiberBasis b = build_basis(2, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix s = clifford_generator(b, gaussian_vector(4, rng).cast<Complex>());
    CHECK((s + s.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    const ComplexVector f = ComplexVector::Random(b.dim()), g = ComplexVector::Random(b.dim());
    CHECK(std::abs(fiber_inner(s * f, g) + fiber_inner(f, s * g)) < 1e-13);
  }
  const ComplexVector f = ComplexVector::Random(b.dim());
  CHECK(fiber_inner(f, f).real() > 0.0);
  CHECK(fiber_inner(ComplexVector::Zero(b.dim()), ComplexVector::Zero(b.dim())) == Complex(0.0, 0.0));
}

TEST_CASE("Hamilton operator spectrum and Clifford form") {
  const FiberBasis b1 = build_basis(1, 8);
  CHECK(hamilton_operator(b1)(0, 0) == Complex(-0.5, 0.0));
  const FiberBasis b2 = build_basis(2, 8);
  const ComplexMatrix h = hamilton_operator(b2);
  const int o = b2.ordinal({1, 2});
  CHECK(h(o, o) == Complex(-4.0, 0.0));
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  ComplexMatrix sum = ComplexMatrix::Zero(b2.dim(), b2.dim());
  for (int a = 0; a < 4; ++a) {
    const ComplexMatrix s = clifford_generator(b2, unit_coeffs(4, a));
    sum += 0.5 * s * s;
  }
  CHECK(max_on_levels(b2, sum - h, 6) < 1e-12);
  for (int l = 0; l <= 8; ++l) {
    const ComplexMatrix p = level_projection(b2, l);
    CHECK(std::abs(p.trace().real() - binomial(l + 1, l)) == 0.0);
    CHECK((p * h - h * p).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p * h + (l + 1.0) * p).cwiseAbs().maxCoeff() == 0.0);
  }
  const ComplexMatrix p0 = level_projection(b1, 0);
  CHECK(p0.trace() == Complex(1.0, 0.0));
  CHECK(p0(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("vacuum is holomorphic and normalised") {
  for (int n = 1; n <= 3; ++n) {
    const FiberBasis b = build_basis(n, 4);
    const ComplexVector vac = vacuum_state(b);
    CHECK(fiber_inner(vac, vac) == Complex(1.0, 0.0));
    for (int j = 0; j < n; ++j) {
      const ComplexVector lhs = clifford_generator(b, unit_coeffs(2 * n, n + j)) * vac;
      const ComplexVector rhs = kI * (clifford_generator(b, unit_coeffs(2 * n, j)) * vac);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("quadratic action") {
  const FiberBasis b = build_basis(1, 6);
  CHECK(quadratic_action(b, RealMatrix(RealMatrix::Zero(2, 2))).isZero(0.0));
  const ComplexMatrix qj = quadratic_action(b, complex_structure(1));
  CHECK(max_on_levels(b, qj + kI * hamilton_operator(b), 4) < 1e-12);
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix a = random_sp(1, rng);
    const RealVector v = gaussian_vector(2, rng);
    const ComplexMatrix q = quadratic_action(b, a);
    const ComplexMatrix sv = clifford_generator(b, v.cast<Complex>());
    const ComplexMatrix sav = clifford_generator(b, (a * v).cast<Complex>());
    CHECK(max_on_levels(b, q * sv - sv * q - sav, 3) < 1e-12);
  }
}

TEST_CASE("padded algebra agrees with the dense generators") {
  const WeylAlgebra algebra(2, 6);
  const FiberBasis& b = algebra.basis();
  for (int a = 0; a < 4; ++a) {
    CHECK((algebra.generator(a) - clifford_generator(b, unit_coeffs(4, a))).cwiseAbs().maxCoeff() == 0.0);
    for (int c = 0; c < 4; ++c) {
      const ComplexMatrix expected = algebra.generator(a) * algebra.generator(c);
      CHECK(max_on_levels(b, algebra.product(a, c) - expected, 5) < 1e-14);
    }
  }
  CHECK((algebra.hamilton() - hamilton_operator(b)).cwiseAbs().maxCoeff() == 0.0);
}
