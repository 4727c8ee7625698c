#include "sympdirac/spinor_field.hpp"

#include <cmath>

namespace sympdirac {

SpinorField::SpinorField(int n, int level) : n_(n), level_(level) {
  if (n < 1) throw InvalidArgument("SpinorField: n must be >= 1");
  if (level < 0) throw InvalidArgument("SpinorField: negative level");
}

int SpinorField::fiber_dim() const { return static_cast<int>(binomial(n_ + level_, level_)); }

void SpinorField::add(const Mode& k, const ComplexVector& v) {
  if (static_cast<int>(k.size()) != 2 * n_) throw InvalidArgument("SpinorField: mode dimension mismatch");
  const int dim = fiber_dim();
  if (v.size() > dim) throw InvalidArgument("SpinorField: fiber vector exceeds the field level");
  auto it = modes_.find(k);
  if (it == modes_.end()) {
    ComplexVector padded = ComplexVector::Zero(dim);
    padded.head(v.size()) = v;
    modes_.emplace(k, std::move(padded));
  } else {
    it->second.head(v.size()) += v;
  }
}

ComplexVector SpinorField::coefficient(const Mode& k) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? ComplexVector(ComplexVector::Zero(fiber_dim())) : it->second;
}

SpinorField SpinorField::raised(int level) const {
  if (level < level_) throw InvalidArgument("SpinorField::raised: cannot lower the level");
  if (level == level_) return *this;
  SpinorField out(n_, level);
  for (const auto& [k, v] : modes_) out.add(k, v);
  return out;
}

SpinorField SpinorField::scaled(Complex c) const {
  SpinorField out = *this;
  for (auto& [k, v] : out.modes_) v *= c;
  return out;
}

SpinorField& SpinorField::operator+=(const SpinorField& other) {
  if (n_ == 0) {
    *this = other;
    return *this;
  }
  if (other.n_ == 0) return *this;
  if (other.n_ != n_) throw InvalidArgument("SpinorField: dimension mismatch");
  if (other.level_ > level_) *this = raised(other.level_);
  for (const auto& [k, v] : other.modes_) add(k, v);
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
  if (other.n_ == 0) return *this;
  return *this += other.scaled(-1.0);
}

double SpinorField::norm() const {
  double s = 0.0;
  for (const auto& [k, v] : modes_) s += v.squaredNorm();
  return std::sqrt(s);
}

int SpinorField::bandwidth() const {
  int b = 0;
  for (const auto& [k, v] : modes_) b = std::max(b, linf(k));
  return b;
}

SpinorField SpinorField::level_window(int lo, int hi) const {
  SpinorField out(n_, level_);
  const int begin = static_cast<int>(binomial(n_ + lo - 1, lo - 1 < 0 ? 0 : lo - 1));
  const int first = lo <= 0 ? 0 : begin;
  const int last = hi >= level_ ? fiber_dim() : static_cast<int>(binomial(n_ + hi, hi));
  for (const auto& [k, v] : modes_) {
    ComplexVector w = ComplexVector::Zero(v.size());
    if (last > first) w.segment(first, last - first) = v.segment(first, last - first);
    out.modes_.emplace(k, std::move(w));
  }
  return out;
}

int SpinorField::occupied_level(double tol) const {
  int top = -1;
  for (int l = level_; l >= 0; --l) {
    const int first = l == 0 ? 0 : static_cast<int>(binomial(n_ + l - 1, l - 1));
    const int last = static_cast<int>(binomial(n_ + l, l));
    for (const auto& [k, v] : modes_) {
      if (v.segment(first, last - first).cwiseAbs().maxCoeff() > tol) {
        top = l;
        break;
      }
    }
    if (top >= 0) break;
  }
  return top;
}

}  // namespace sympdirac
