#include "sympdirac/spinor_calculus.hpp"

#include <map>

namespace sympdirac {

namespace {

const std::map<std::string, OperatorName>& operator_table() {
  static const std::map<std::string, OperatorName> table = {
      {"Dprime", OperatorName::Dprime}, {"Dtildeprime", OperatorName::Dtildeprime},
      {"D", OperatorName::D},           {"Dtilde", OperatorName::Dtilde},
      {"P", OperatorName::P},           {"ConnLaplacian", OperatorName::ConnLaplacian},
      {"F", OperatorName::F},           {"HJ", OperatorName::HJ},
  };
  return table;
}

ComplexMatrix row_matrix(int d, int row, const ComplexVector& v) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m.row(row) = v.transpose();
  return m;
}

ComplexMatrix col_matrix(int d, int col, const ComplexVector& v) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m.col(col) = v;
  return m;
}

}  // namespace

std::string operator_label(OperatorName name) {
  for (const auto& [label, op] : operator_table()) {
    if (op == name) return label;
  }
  throw InvalidArgument("unknown operator");
}

OperatorName parse_operator_name(const std::string& label) {
  auto it = operator_table().find(label);
  if (it == operator_table().end()) throw InvalidArgument("unknown operator name: " + label);
  return it->second;
}

SpinorBundle::SpinorBundle(const FoliationModel& model, int level, int headroom)
    : model_(&model), level_(level) {
  if (level < 2) throw InvalidArgument("SpinorBundle: truncation level must be >= 2");
  if (headroom < 2) throw InvalidArgument("SpinorBundle: headroom must be >= 2");
  algebra_ = std::make_shared<WeylAlgebra>(model.n, level + headroom);
  const int dim = d();
  for (int a = 0; a < dim; ++a) {
    const FiberOperator& g = algebra_->generator(a);
    std::vector<LadderEntry> entries;
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      for (Eigen::Index r = 0; r < g.rows(); ++r) {
        if (g(r, c) != Complex(0.0, 0.0)) entries.push_back({static_cast<int>(r), static_cast<int>(c), g(r, c)});
      }
    }
    ladders_.push_back(std::move(entries));
  }
  const ComplexMatrix j0 = complex_structure(model.n).cast<Complex>();
  auto coefficients = [](const ComplexMatrix& a) -> ComplexMatrix { return quadratic_action_coefficients(a); };
  for (int x = 0; x < dim; ++x) q_gamma_.push_back(model.connection.gamma[x].map(coefficients));
  for (const auto& r : model.curvature.components) q_curvature_.push_back(r.map(coefficients));
  ct_ = model.mean_plus_torsion();
  jct_ = left_apply(j0, ct_);
  for (int i = 0; i < dim; ++i) {
    unit_div_.push_back(transversal_divergence(model, VectorSeries::constant(dim, model.unit(i))));
  }
}

int SpinorBundle::checked_level(int level) const {
  if (level > algebra_->max_level()) {
    throw HeadroomError("fiber level " + std::to_string(level) + " exceeds the padded fiber (" +
                        std::to_string(algebra_->max_level()) + ")");
  }
  return level;
}

SpinorBundle::Block SpinorBundle::sigma(int a, const Block& x, int level) const {
  const int din = algebra_->dim_through(level);
  Block y = Block::Zero(algebra_->dim_through(checked_level(level + 1)), x.cols());
  for (const LadderEntry& e : ladders_[a]) {
    if (e.col >= din) break;
    y.row(e.row) += e.value * x.row(e.col);
  }
  return y;
}

void SpinorBundle::scatter(const std::vector<const Mode*>& modes, const Mode& shift, const Block& y,
                           SpinorField& out) const {
  for (Eigen::Index c = 0; c < y.cols(); ++c) out.add(add_modes(*modes[c], shift), y.col(c));
}

namespace {

template <class Block>
Block gather(const SpinorField& phi, std::vector<const Mode*>& modes) {
  Block x(phi.fiber_dim(), static_cast<Eigen::Index>(phi.modes().size()));
  Eigen::Index c = 0;
  for (const auto& [k, v] : phi.modes()) {
    modes.push_back(&k);
    x.col(c++) = v;
  }
  return x;
}

}  // namespace

SpinorField SpinorBundle::apply(const FiberOperator& op, int raise, const SpinorField& phi) const {
  const int lin = phi.level();
  const int lout = checked_level(lin + raise);
  SpinorField out(n(), lout);
  if (phi.empty()) return out;
  std::vector<const Mode*> modes;
  const Block x = gather<Block>(phi, modes);
  const Block y = op.topLeftCorner(algebra_->dim_through(lout), algebra_->dim_through(lin)) * x;
  scatter(modes, zero_mode(d()), y, out);
  return out;
}

SpinorField SpinorBundle::clifford(const ComplexVector& v, const SpinorField& phi) const {
  return clifford(VectorSeries::constant(d(), v), phi);
}

SpinorField SpinorBundle::clifford(const VectorSeries& s, const SpinorField& phi) const {
  const int level = phi.level();
  SpinorField out(n(), checked_level(level + 1));
  if (phi.empty() || s.empty()) return out;
  std::vector<const Mode*> modes;
  const Block x = gather<Block>(phi, modes);
  std::vector<Block> z(d());
  for (int a = 0; a < d(); ++a) z[a] = sigma(a, x, level);
  for (const auto& [p, v] : s.terms()) {
    Block y = Block::Zero(z[0].rows(), z[0].cols());
    for (int a = 0; a < d(); ++a) {
      if (v[a] != Complex(0.0, 0.0)) y += v[a] * z[a];
    }
    scatter(modes, p, y, out);
  }
  return out;
}

SpinorField SpinorBundle::quadratic(const MatrixSeries& coeffs, const SpinorField& phi) const {
  const int level = phi.level();
  const int dim = d();
  SpinorField out(n(), checked_level(level + 2));
  if (phi.empty() || coeffs.empty()) return out;
  std::vector<bool> used(dim * dim, false);
  for (const auto& [p, c] : coeffs.terms()) {
    for (int b = 0; b < dim; ++b) {
      for (int a = 0; a < dim; ++a) {
        if (c(b, a) != Complex(0.0, 0.0)) used[b * dim + a] = true;
      }
    }
  }
  std::vector<const Mode*> modes;
  const Block x = gather<Block>(phi, modes);
  std::vector<Block> z(dim);
  std::vector<Block> w(dim * dim);
  for (int a = 0; a < dim; ++a) {
    bool needed = false;
    for (int b = 0; b < dim; ++b) needed = needed || used[b * dim + a];
    if (!needed) continue;
    z[a] = sigma(a, x, level);
    for (int b = 0; b < dim; ++b) {
      if (used[b * dim + a]) w[b * dim + a] = sigma(b, z[a], level + 1);
    }
  }
  const Eigen::Index rows = algebra_->dim_through(level + 2);
  for (const auto& [p, c] : coeffs.terms()) {
    Block y = Block::Zero(rows, x.cols());
    for (int b = 0; b < dim; ++b) {
      for (int a = 0; a < dim; ++a) {
        if (c(b, a) != Complex(0.0, 0.0)) y += c(b, a) * w[b * dim + a];
      }
    }
    scatter(modes, p, y, out);
  }
  return out;
}

SpinorField SpinorBundle::multiply(const ScalarSeries& f, const SpinorField& phi) const {
  SpinorField out(n(), phi.level());
  for (const auto& [p, c] : f.terms()) {
    for (const auto& [k, v] : phi.modes()) out.add(add_modes(k, p), c * v);
  }
  return out;
}

SpinorField SpinorBundle::derivative(int axis, const SpinorField& phi) const {
  SpinorField out(n(), phi.level());
  for (const auto& [k, v] : phi.modes()) {
    if (k[axis] != 0) out.add(k, Complex(0.0, kTwoPi * k[axis]) * v);
  }
  return out;
}

SpinorField SpinorBundle::nabla(int axis, const SpinorField& phi) const {
  SpinorField out = derivative(axis, phi).raised(phi.level() + 2);
  out += quadratic(q_gamma_.at(axis), phi);
  return out;
}

SpinorField SpinorBundle::nabla(const ComplexVector& u, const SpinorField& phi) const {
  SpinorField out(n(), phi.level() + 2);
  for (int x = 0; x < d(); ++x) {
    if (u[x] != Complex(0.0, 0.0)) out += nabla(x, phi).scaled(u[x]);
  }
  return out;
}

SpinorField SpinorBundle::nabla(const VectorSeries& s, const SpinorField& phi) const {
  SpinorField out(n(), phi.level() + 2);
  for (int x = 0; x < d(); ++x) {
    const ScalarSeries sx = component(s, x);
    if (!sx.empty()) out += multiply(sx, nabla(x, phi));
  }
  return out;
}

SpinorField SpinorBundle::spinor_curvature(int i, int j, const SpinorField& phi) const {
  return quadratic(q_curvature_.at(i * d() + j), phi);
}

SpinorField SpinorBundle::spinor_curvature_bracket_form(int i, int j, const SpinorField& phi) const {
  const int nn = n();
  const MatrixSeries& r = model_->curvature.at(i, j);
  SpinorField out(nn, phi.level() + 2);
  for (int k = 0; k < nn; ++k) {
    // v_k . R w_k - w_k . R v_k
    const VectorSeries rw = r.map([nn, k](const ComplexMatrix& m) -> ComplexVector { return m.col(nn + k); });
    const VectorSeries rv = r.map([k](const ComplexMatrix& m) -> ComplexVector { return m.col(k); });
    out += clifford(model_->unit(k), clifford(rw, phi));
    out -= clifford(model_->unit(nn + k), clifford(rv, phi));
  }
  return out.scaled(Complex(0.0, 0.5));
}

SpinorField SpinorBundle::dirac(const SpinorField& phi, DiracVariant variant) const {
  const int nn = n();
  SpinorField out(nn, phi.level() + 3);
  if (variant == DiracVariant::Dprime || variant == DiracVariant::D) {
    for (int j = 0; j < nn; ++j) {
      out += clifford(model_->unit(j), nabla(nn + j, phi));
      out -= clifford(model_->unit(nn + j), nabla(j, phi));
    }
    if (variant == DiracVariant::D) out -= clifford(ct_, phi).scaled(0.5);
  } else {
    for (int a = 0; a < d(); ++a) out += clifford(model_->unit(a), nabla(a, phi));
    if (variant == DiracVariant::Dtilde) out -= clifford(jct_, phi).scaled(0.5);
  }
  return out;
}

SpinorField SpinorBundle::dirac_prime_unitary(const SpinorField& phi) const {
  const ComplexMatrix j0 = complex_structure(n()).cast<Complex>();
  SpinorField out(n(), phi.level() + 3);
  for (int i = 0; i < d(); ++i) out -= clifford(ComplexVector(j0.col(i)), nabla(i, phi));
  return out;
}

SpinorField SpinorBundle::dirac_tilde_prime_unitary(const SpinorField& phi) const {
  SpinorField out(n(), phi.level() + 3);
  for (int i = 0; i < d(); ++i) out += clifford(model_->unit(i), nabla(i, phi));
  return out;
}

SpinorField SpinorBundle::p_operator(const SpinorField& phi) const {
  if (model_->flags.fiber_only) {
    return connection_laplacian(phi) + curvature_action_F(phi).scaled(kI);
  }
  SpinorField out = dirac(dirac(phi, DiracVariant::D), DiracVariant::Dtilde);
  out -= dirac(dirac(phi, DiracVariant::Dtilde), DiracVariant::D);
  return out.scaled(kI);
}

SpinorField SpinorBundle::connection_laplacian(const SpinorField& phi) const {
  SpinorField out(n(), phi.level() + 4);
  for (int i = 0; i < d(); ++i) {
    const SpinorField ni = nabla(i, phi);
    out -= nabla(i, ni);
    out -= multiply(unit_div_[i], ni);
  }
  out += nabla(jct_, phi);
  return out;
}

SpinorField SpinorBundle::connection_adjoint(const std::vector<SpinorField>& psi) const {
  if (static_cast<int>(psi.size()) != d()) throw InvalidArgument("connection_adjoint: need 2n components");
  SpinorField out(n(), 0);
  for (int i = 0; i < d(); ++i) {
    out -= nabla(i, psi[i]);
    out -= multiply(unit_div_[i], psi[i]);
    out += multiply(component(jct_, i), psi[i]);
  }
  return out;
}

SpinorField SpinorBundle::curvature_action_F(const SpinorField& phi) const {
  const ComplexMatrix j0 = complex_structure(n()).cast<Complex>();
  SpinorField out(n(), phi.level() + 4);
  for (int i = 0; i < d(); ++i) {
    SpinorField inner(n(), phi.level() + 3);
    for (int j = 0; j < d(); ++j) {
      if (q_curvature_[i * d() + j].empty()) continue;
      inner += clifford(model_->unit(j), spinor_curvature(i, j, phi));
    }
    out += clifford(ComplexVector(j0.col(i)), inner);
  }
  return out;
}

SpinorField SpinorBundle::hamilton_field(const SpinorField& phi) const {
  return apply(algebra_->hamilton(), 0, phi);
}

SpinorField SpinorBundle::apply_operator(OperatorName name, const SpinorField& phi) const {
  switch (name) {
    case OperatorName::Dprime:
      return dirac(phi, DiracVariant::Dprime);
    case OperatorName::Dtildeprime:
      return dirac(phi, DiracVariant::Dtildeprime);
    case OperatorName::D:
      return dirac(phi, DiracVariant::D);
    case OperatorName::Dtilde:
      return dirac(phi, DiracVariant::Dtilde);
    case OperatorName::P:
      return p_operator(phi);
    case OperatorName::ConnLaplacian:
      return connection_laplacian(phi);
    case OperatorName::F:
      return curvature_action_F(phi);
    case OperatorName::HJ:
      return hamilton_field(phi);
  }
  throw InvalidArgument("unknown operator");
}

MatrixSeries SpinorBundle::clifford_P(const VectorSeries& s) const {
  const ComplexMatrix j0 = complex_structure(n()).cast<Complex>();
  const int dim = d();
  MatrixSeries coeffs(dim, ComplexMatrix::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    const VectorSeries ds = covariant_derivative(model_->connection, ComplexVector(j0.col(i)), s);
    coeffs += ds.map([dim, i](const ComplexVector& v) -> ComplexMatrix { return row_matrix(dim, i, v); });
  }
  coeffs.prune();
  return coeffs;
}

MatrixSeries SpinorBundle::clifford_P_tilde(const VectorSeries& s) const {
  const int dim = d();
  MatrixSeries coeffs(dim, ComplexMatrix::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    const VectorSeries ds = covariant_derivative(model_->connection, i, s);
    coeffs += ds.map([dim, i](const ComplexVector& v) -> ComplexMatrix { return row_matrix(dim, i, v); });
  }
  coeffs.prune();
  return coeffs;
}

MatrixSeries SpinorBundle::clifford_PJ(const VectorSeries& s) const {
  const ComplexMatrix j0 = complex_structure(n()).cast<Complex>();
  const int dim = d();
  MatrixSeries coeffs(dim, ComplexMatrix::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    MatrixSeries dj(dim, ComplexMatrix::Zero(dim, dim));
    for (int x = 0; x < dim; ++x) {
      if (j0(x, i) != Complex(0.0, 0.0)) dj += complex_structure_derivative(model_->connection, x).scaled(j0(x, i));
    }
    const VectorSeries u = apply_series(dj, s);
    coeffs += u.map([dim, i](const ComplexVector& v) -> ComplexMatrix { return col_matrix(dim, i, v); });
  }
  coeffs.prune();
  return coeffs;
}

Complex SpinorBundle::inner(const SpinorField& phi, const SpinorField& psi) const {
  Complex acc{0.0, 0.0};
  for (const auto& [p, r] : model_->leaf_density.terms()) {
    for (const auto& [k, v] : phi.modes()) {
      auto it = psi.modes().find(add_modes(k, p));
      if (it == psi.modes().end()) continue;
      const auto m = std::min(v.size(), it->second.size());
      acc += r * fiber_inner(ComplexVector(v.head(m)), ComplexVector(it->second.head(m)));
    }
  }
  return acc;
}

ScalarSeries SpinorBundle::pointwise_inner(const SpinorField& phi, const SpinorField& psi) const {
  ScalarSeries out(d(), Complex(0.0, 0.0));
  for (const auto& [k, v] : phi.modes()) {
    for (const auto& [m, w] : psi.modes()) {
      const auto len = std::min(v.size(), w.size());
      out.add(add_modes(k, negate_mode(m)), fiber_inner(ComplexVector(v.head(len)), ComplexVector(w.head(len))));
    }
  }
  return out;
}

SpinorField SpinorBundle::random_field(Rng& rng, int max_level, int cutoff) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int cut = model_->flags.fiber_only ? 0 : cutoff;
  SpinorField out(n(), max_level);
  const int dim = algebra_->dim_through(max_level);
  for (const Mode& k : mode_cube(d(), cut)) {
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(normal(rng), normal(rng));
    out.add(k, v);
  }
  return out;
}

SpinorField SpinorBundle::random_level_field(Rng& rng, int level, int cutoff) const {
  return random_field(rng, level, cutoff).level_window(level, level);
}

VectorSeries SpinorBundle::random_section(Rng& rng, int cutoff) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int dim = d();
  const int cut = model_->flags.fiber_only ? 0 : cutoff;
  VectorSeries out(dim, ComplexVector::Zero(dim));
  for (const Mode& k : mode_cube(dim, cut)) {
    // one representative per +-k pair keeps the section real
    if (k > negate_mode(k)) continue;
    ComplexVector v(dim);
    if (k == negate_mode(k)) {
      for (int a = 0; a < dim; ++a) v[a] = normal(rng);
      out.add(k, v);
    } else {
      for (int a = 0; a < dim; ++a) v[a] = Complex(normal(rng), normal(rng)) * 0.5;
      out.add(k, v);
      out.add(negate_mode(k), ComplexVector(v.conjugate()));
    }
  }
  return out;
}

}  // namespace sympdirac
