#include "sympdirac/symplectic.hpp"

#include <cmath>

#include "sympdirac/errors.hpp"

namespace sympdirac {

RealMatrix symplectic_form(int n) {
  RealMatrix omega_matrix = RealMatrix::Zero(2 * n, 2 * n);
  omega_matrix.topRightCorner(n, n).setIdentity();
  omega_matrix.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return omega_matrix;
}

RealMatrix complex_structure(int n) {
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -RealMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n).setIdentity();
  return j;
}

Complex omega(const ComplexVector& s, const ComplexVector& t) {
  if (s.size() != t.size() || s.size() % 2 != 0) {
    throw InvalidArgument("omega: normal vectors must share an even length");
  }
  const auto n = s.size() / 2;
  // s^T Omega t = sum_j s_j t_{n+j} - s_{n+j} t_j
  Complex acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < n; ++j) {
    acc += s[j] * t[n + j] - s[n + j] * t[j];
  }
  return acc;
}

Complex metric(const ComplexVector& s, const ComplexVector& t) {
  if (s.size() != t.size()) {
    throw InvalidArgument("metric: normal vectors must share a length");
  }
  Complex acc{0.0, 0.0};
  for (Eigen::Index a = 0; a < s.size(); ++a) acc += s[a] * t[a];
  return acc;
}

ComplexVector omega_sharp(const ComplexVector& one_form) {
  const auto n = one_form.size() / 2;
  ComplexVector out(one_form.size());
  // omega(x, t) = alpha(t)  =>  x = Omega alpha
  out.head(n) = one_form.tail(n);
  out.tail(n) = -one_form.head(n);
  return out;
}

double sp_residual(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw InvalidArgument("sp_residual: expected a square matrix of even order");
  }
  const ComplexMatrix om = symplectic_form(static_cast<int>(a.rows() / 2)).cast<Complex>();
  return (a.transpose() * om + om * a).cwiseAbs().maxCoeff();
}

double sp_residual(const RealMatrix& a) { return sp_residual(ComplexMatrix(a.cast<Complex>())); }

RealMatrix random_sp(int n, Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix sym(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i; j < 2 * n; ++j) {
      sym(i, j) = sym(j, i) = scale * normal(rng);
    }
  }
  return symplectic_form(n) * sym;
}

RealMatrix random_symplectic_frame(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  // diag(A, A^{-T}) * [[I, B], [0, I]] * [[I, 0], [C, I]] with B, C symmetric
  RealMatrix a = RealMatrix::Identity(n, n);
  RealMatrix b(n, n), c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) += 0.3 * normal(rng);
    for (int j = i; j < n; ++j) {
      b(i, j) = b(j, i) = 0.5 * normal(rng);
      c(i, j) = c(j, i) = 0.5 * normal(rng);
    }
  }
  RealMatrix block = RealMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a;
  block.bottomRightCorner(n, n) = a.inverse().transpose();
  RealMatrix upper = RealMatrix::Identity(2 * n, 2 * n);
  upper.topRightCorner(n, n) = b;
  RealMatrix lower = RealMatrix::Identity(2 * n, 2 * n);
  lower.bottomLeftCorner(n, n) = c;
  return block * upper * lower;
}

RealMatrix random_unitary_frame(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  }
  const ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(z).householderQ();
  // U = X + iY acts on (x, y) as [[X, -Y], [Y, X]], which commutes with J_0.
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = u.real();
  out.topRightCorner(n, n) = -u.imag();
  out.bottomLeftCorner(n, n) = u.imag();
  out.bottomRightCorner(n, n) = u.real();
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

}  // namespace sympdirac
