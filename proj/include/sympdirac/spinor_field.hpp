#pragma once

// Basic symplectic spinor fields phi(x) = sum_k exp(2 pi i k.x) phi_k with
// fiber vectors phi_k on levels <= level(). Levels are nested prefixes of the
// fiber basis, so raising the level is zero padding.

#include <map>

#include "sympdirac/trig_series.hpp"

namespace sympdirac {

class SpinorField {
 public:
  SpinorField() = default;
  SpinorField(int n, int level);

  int n() const { return n_; }
  int torus_dim() const { return 2 * n_; }
  int level() const { return level_; }
  int fiber_dim() const;
  const std::map<Mode, ComplexVector>& modes() const { return modes_; }
  bool empty() const { return modes_.empty(); }

  // Accumulates v into mode k; v may be shorter than fiber_dim().
  void add(const Mode& k, const ComplexVector& v);
  ComplexVector coefficient(const Mode& k) const;

  SpinorField raised(int level) const;
  SpinorField scaled(Complex c) const;
  SpinorField& operator+=(const SpinorField& other);
  SpinorField& operator-=(const SpinorField& other);
  SpinorField operator+(const SpinorField& other) const { return SpinorField(*this) += other; }
  SpinorField operator-(const SpinorField& other) const { return SpinorField(*this) -= other; }

  // Unweighted L^2 norm over the unit torus.
  double norm() const;
  int bandwidth() const;
  // Components on levels in [lo, hi]; level() is kept.
  SpinorField level_window(int lo, int hi) const;
  // Largest level carrying a nonzero coefficient (-1 for the zero field).
  int occupied_level(double tol = 0.0) const;

 private:
  int n_ = 0;
  int level_ = 0;
  std::map<Mode, ComplexVector> modes_;
};

}  // namespace sympdirac
