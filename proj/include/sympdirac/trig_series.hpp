#pragma once

// Sparse trigonometric series f(x) = sum_k f_k exp(2 pi i k.x) on the torus
// T^d. Coefficients are scalars, vectors or matrices. Products are exact:
// the support of a product is the sumset of the supports, nothing is cut.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "sympdirac/errors.hpp"
#include "sympdirac/symplectic.hpp"

namespace sympdirac {

using Mode = std::vector<int>;

Mode zero_mode(int d);
Mode unit_mode(int d, int axis, int value = 1);
Mode add_modes(const Mode& a, const Mode& b);
Mode negate_mode(const Mode& a);
int linf(const Mode& a);
// All modes with |k|_inf <= K, in lexicographic order.
std::vector<Mode> mode_cube(int d, int cutoff);

namespace detail {
inline double max_abs(const Complex& c) { return std::abs(c); }
inline double max_abs(const ComplexVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double sq_norm(const Complex& c) { return std::norm(c); }
inline double sq_norm(const ComplexVector& v) { return v.squaredNorm(); }
inline double sq_norm(const ComplexMatrix& m) { return m.squaredNorm(); }
inline Complex conj_of(const Complex& c) { return std::conj(c); }
inline ComplexVector conj_of(const ComplexVector& v) { return v.conjugate(); }
inline ComplexMatrix conj_of(const ComplexMatrix& m) { return m.conjugate(); }
inline bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
inline bool is_zero(const ComplexVector& v) { return v.isZero(0.0); }
inline bool is_zero(const ComplexMatrix& m) { return m.isZero(0.0); }
}  // namespace detail

template <class T>
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(int dim, T zero) : dim_(dim), zero_(std::move(zero)) {}

  static TrigSeries constant(int dim, const T& value) {
    TrigSeries out(dim, value * Complex(0.0, 0.0));
    out.add(zero_mode(dim), value);
    return out;
  }

  int dim() const { return dim_; }
  const T& zero() const { return zero_; }
  const std::map<Mode, T>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const Mode& k, const T& value) {
    if (static_cast<int>(k.size()) != dim_) throw InvalidArgument("TrigSeries: mode dimension mismatch");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, value);
    } else {
      it->second += value;
    }
  }

  T coefficient(const Mode& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? zero_ : it->second;
  }

  int bandwidth() const {
    int b = 0;
    for (const auto& [k, v] : terms_) b = std::max(b, linf(k));
    return b;
  }

  TrigSeries& operator+=(const TrigSeries& other) {
    for (const auto& [k, v] : other.terms_) add(k, v);
    return *this;
  }
  TrigSeries& operator-=(const TrigSeries& other) {
    for (const auto& [k, v] : other.terms_) add(k, -v);
    return *this;
  }
  TrigSeries operator+(const TrigSeries& other) const { return TrigSeries(*this) += other; }
  TrigSeries operator-(const TrigSeries& other) const { return TrigSeries(*this) -= other; }

  TrigSeries scaled(Complex c) const {
    TrigSeries out(dim_, zero_);
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
    return out;
  }

  // Exact derivative along coordinate axis.
  TrigSeries derivative(int axis) const {
    TrigSeries out(dim_, zero_);
    for (const auto& [k, v] : terms_) {
      if (k[axis] != 0) out.terms_.emplace(k, v * Complex(0.0, kTwoPi * k[axis]));
    }
    return out;
  }

  template <class F>
  auto map(F f) const {
    using R = decltype(f(zero_));
    TrigSeries<R> out(dim_, f(zero_));
    for (const auto& [k, v] : terms_) out.add(k, f(v));
    return out;
  }

  T evaluate(const RealVector& x) const {
    T out = zero_;
    for (const auto& [k, v] : terms_) {
      double phase = 0.0;
      for (int a = 0; a < dim_; ++a) phase += k[a] * x[a];
      out += v * std::exp(Complex(0.0, kTwoPi * phase));
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : terms_) m = std::max(m, detail::max_abs(v));
    return m;
  }

  // Upper bound on sup_x |f(x)|.
  double abs_sum() const {
    double s = 0.0;
    for (const auto& [k, v] : terms_) s += detail::max_abs(v);
    return s;
  }

  // max |f_{-k} - conj(f_k)|; zero for real-valued fields.
  double reality_defect() const {
    double m = 0.0;
    for (const auto& [k, v] : terms_) {
      m = std::max(m, detail::max_abs(T(coefficient(negate_mode(k)) - detail::conj_of(v))));
    }
    return m;
  }

  // Drops terms with |k|_inf > cutoff; returns the discarded energy.
  double truncate(int cutoff) {
    double discarded = 0.0;
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (linf(it->first) > cutoff) {
        discarded += detail::sq_norm(it->second);
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    return discarded;
  }

  // Removes coefficients whose magnitude is at most tol.
  void prune(double tol = 0.0) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (detail::max_abs(it->second) <= tol) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
  }

 private:
  int dim_ = 0;
  T zero_{};
  std::map<Mode, T> terms_;
};

using ScalarSeries = TrigSeries<Complex>;
using VectorSeries = TrigSeries<ComplexVector>;
using MatrixSeries = TrigSeries<ComplexMatrix>;

// Exact convolution product with a bilinear pointwise combiner f(a, b).
template <class A, class B, class F>
auto series_product(const TrigSeries<A>& a, const TrigSeries<B>& b, F f) {
  using R = decltype(f(a.zero(), b.zero()));
  if (a.dim() != b.dim()) throw InvalidArgument("series_product: dimension mismatch");
  TrigSeries<R> out(a.dim(), f(a.zero(), b.zero()));
  for (const auto& [ka, va] : a.terms()) {
    for (const auto& [kb, vb] : b.terms()) out.add(add_modes(ka, kb), f(va, vb));
  }
  return out;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);
// Matrix field times vector field, pointwise.
VectorSeries apply_series(const MatrixSeries& m, const VectorSeries& v);
MatrixSeries matmul_series(const MatrixSeries& a, const MatrixSeries& b);
MatrixSeries commutator_series(const MatrixSeries& a, const MatrixSeries& b);
// Pointwise a^T M b for constant M.
ScalarSeries bilinear_series(const VectorSeries& a, const ComplexMatrix& m, const VectorSeries& b);
// Component a of a vector field.
ScalarSeries component(const VectorSeries& v, int a);
// Scalar field times constant vector / matrix.
VectorSeries times_vector(const ScalarSeries& f, const ComplexVector& v);
MatrixSeries times_matrix(const ScalarSeries& f, const ComplexMatrix& m);
// Constant matrix acting on a vector field.
VectorSeries left_apply(const ComplexMatrix& m, const VectorSeries& v);

// Integral over the unit torus of f * rho, where rho has the given Fourier
// coefficients: sum_p rho_p f_{-p}.
Complex integrate_weighted(const ScalarSeries& f, const ScalarSeries& rho);

}  // namespace sympdirac
