#include "sympdirac/trig_series.hpp"

namespace sympdirac {

Mode zero_mode(int d) { return Mode(d, 0); }

Mode unit_mode(int d, int axis, int value) {
  Mode k(d, 0);
  k.at(axis) = value;
  return k;
}

Mode add_modes(const Mode& a, const Mode& b) {
  Mode out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Mode negate_mode(const Mode& a) {
  Mode out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

int linf(const Mode& a) {
  int m = 0;
  for (int v : a) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Mode> mode_cube(int d, int cutoff) {
  if (cutoff < 0) throw InvalidArgument("mode_cube: negative cutoff");
  std::vector<Mode> out;
  Mode k(d, -cutoff);
  while (true) {
    out.push_back(k);
    int axis = d - 1;
    while (axis >= 0 && k[axis] == cutoff) {
      k[axis] = -cutoff;
      --axis;
    }
    if (axis < 0) break;
    ++k[axis];
  }
  return out;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  return series_product(a, b, [](const Complex& x, const Complex& y) { return x * y; });
}

VectorSeries apply_series(const MatrixSeries& m, const VectorSeries& v) {
  return series_product(m, v, [](const ComplexMatrix& x, const ComplexVector& y) -> ComplexVector { return x * y; });
}

MatrixSeries matmul_series(const MatrixSeries& a, const MatrixSeries& b) {
  return series_product(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) -> ComplexMatrix { return x * y; });
}

MatrixSeries commutator_series(const MatrixSeries& a, const MatrixSeries& b) {
  return matmul_series(a, b) - matmul_series(b, a);
}

ScalarSeries bilinear_series(const VectorSeries& a, const ComplexMatrix& m, const VectorSeries& b) {
  return series_product(a, b, [&m](const ComplexVector& x, const ComplexVector& y) -> Complex {
    return (x.transpose() * m * y)(0, 0);
  });
}

ScalarSeries component(const VectorSeries& v, int a) {
  return v.map([a](const ComplexVector& x) -> Complex { return x.size() ? x[a] : Complex(0.0, 0.0); });
}

VectorSeries times_vector(const ScalarSeries& f, const ComplexVector& v) {
  VectorSeries out(f.dim(), ComplexVector::Zero(v.size()));
  for (const auto& [k, c] : f.terms()) out.add(k, c * v);
  return out;
}

MatrixSeries times_matrix(const ScalarSeries& f, const ComplexMatrix& m) {
  MatrixSeries out(f.dim(), ComplexMatrix::Zero(m.rows(), m.cols()));
  for (const auto& [k, c] : f.terms()) out.add(k, c * m);
  return out;
}

VectorSeries left_apply(const ComplexMatrix& m, const VectorSeries& v) {
  return v.map([&m](const ComplexVector& x) -> ComplexVector {
    return x.size() ? ComplexVector(m * x) : ComplexVector::Zero(m.rows());
  });
}

Complex integrate_weighted(const ScalarSeries& f, const ScalarSeries& rho) {
  Complex acc{0.0, 0.0};
  for (const auto& [p, r] : rho.terms()) acc += r * f.coefficient(negate_mode(p));
  return acc;
}

}  // namespace sympdirac
