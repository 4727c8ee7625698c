#pragma once

// Pointwise evaluation on uniform torus grids. A grid with N points per axis
// integrates trigonometric polynomials of degree < N exactly.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "sympdirac/foliated_geometry.hpp"
#include "sympdirac/spinor_field.hpp"

namespace oracle {

using sympdirac::Complex;
using sympdirac::ComplexMatrix;
using sympdirac::ComplexVector;
using sympdirac::RealVector;

inline std::vector<RealVector> torus_grid(int d, int per_axis) {
  std::vector<RealVector> out;
  std::vector<int> idx(d, 0);
  while (true) {
    RealVector x(d);
    for (int a = 0; a < d; ++a) x[a] = static_cast<double>(idx[a]) / per_axis;
    out.push_back(x);
    int slot = 0;
    while (slot < d && ++idx[slot] == per_axis) idx[slot++] = 0;
    if (slot == d) break;
  }
  return out;
}

inline Complex grid_mean(int d, int per_axis, const std::function<Complex(const RealVector&)>& f) {
  Complex sum = 0.0;
  const auto points = torus_grid(d, per_axis);
  for (const RealVector& x : points) sum += f(x);
  return sum / static_cast<double>(points.size());
}

inline ComplexVector evaluate(const sympdirac::SpinorField& phi, const RealVector& x, int dim) {
  ComplexVector out = ComplexVector::Zero(dim);
  for (const auto& [k, v] : phi.modes()) {
    double phase = 0.0;
    for (int a = 0; a < x.size(); ++a) phase += k[a] * x[a];
    const Complex e = std::exp(Complex(0.0, 2.0 * M_PI * phase));
    out.head(v.size()) += e * v;
  }
  return out;
}

// R(e_i, e_j) at x from central differences of the pointwise connection matrices.
inline ComplexMatrix curvature_fd(const sympdirac::ConnectionData& connection, int i, int j, const RealVector& x,
                                  double h = 1e-4) {
  auto gamma = [&connection](int axis, const RealVector& y) { return connection.gamma[axis].evaluate(y); };
  auto partial = [&](int dir, int axis) {
    RealVector plus = x, minus = x;
    plus[dir] += h;
    minus[dir] -= h;
    return ComplexMatrix((gamma(axis, plus) - gamma(axis, minus)) / (2.0 * h));
  };
  const ComplexMatrix gi = gamma(i, x), gj = gamma(j, x);
  return partial(i, j) - partial(j, i) + gi * gj - gj * gi;
}

}  // namespace oracle
