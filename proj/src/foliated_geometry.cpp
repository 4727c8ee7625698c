#include "sympdirac/foliated_geometry.hpp"

#include <cmath>

namespace sympdirac {

namespace {

constexpr double kFlagTol = 1e-12;
constexpr int kDensityGrid = 32;
constexpr int kDensityCutoff = 12;

ComplexVector zero_vec(int d) { return ComplexVector::Zero(d); }
ComplexMatrix zero_mat(int d) { return ComplexMatrix::Zero(d, d); }

double connection_scale(const ConnectionData& c) {
  double m = 1.0;
  for (const auto& g : c.gamma) m = std::max(m, g.max_abs());
  return m;
}

void validate_term(const RealTerm& term, int d, int cutoff) {
  if (static_cast<int>(term.k.size()) != d) throw InvalidArgument("model term: mode has wrong dimension");
  if (linf(term.k) > cutoff) throw InvalidArgument("model term: mode exceeds the Fourier cutoff");
}

ComplexMatrix tensor_slice(const std::vector<double>& values, int d, int x) {
  ComplexMatrix out(d, d);
  for (int b = 0; b < d; ++b) {
    for (int c = 0; c < d; ++c) out(b, c) = values[(x * d + b) * d + c];
  }
  return out;
}

// Fourier coefficients of exp(f) by a separable grid transform over the axes
// f depends on.
void leaf_density_from_warp(FoliationModel& model) {
  const int d = model.d;
  if (model.warp.empty()) {
    model.leaf_density = ScalarSeries::constant(d, Complex(1.0, 0.0));
    model.leaf_density_tail = 0.0;
    return;
  }
  std::vector<int> active;
  for (int a = 0; a < d; ++a) {
    for (const auto& [k, v] : model.warp.terms()) {
      if (k[a] != 0) {
        active.push_back(a);
        break;
      }
    }
  }
  const int na = static_cast<int>(active.size());
  const int N = kDensityGrid;
  int total = 1;
  for (int i = 0; i < na; ++i) total *= N;
  std::vector<Complex> values(total);
  RealVector x = RealVector::Zero(d);
  for (int g = 0; g < total; ++g) {
    int rem = g;
    for (int i = na - 1; i >= 0; --i) {
      x[active[i]] = static_cast<double>(rem % N) / N;
      rem /= N;
    }
    values[g] = std::exp(model.warp.evaluate(x));
  }
  // In-place DFT along each active axis (row-major, last axis fastest).
  std::vector<Complex> line(N), out(N);
  int stride = 1;
  for (int i = na - 1; i >= 0; --i) {
    for (int start = 0; start < total; ++start) {
      if ((start / stride) % N != 0) continue;
      for (int m = 0; m < N; ++m) line[m] = values[start + m * stride];
      for (int p = 0; p < N; ++p) {
        Complex acc{0.0, 0.0};
        for (int m = 0; m < N; ++m) acc += line[m] * std::exp(Complex(0.0, -kTwoPi * p * m / N));
        out[p] = acc / static_cast<double>(N);
      }
      for (int p = 0; p < N; ++p) values[start + p * stride] = out[p];
    }
    stride *= N;
  }
  model.leaf_density = ScalarSeries(d, Complex(0.0, 0.0));
  double tail = 0.0;
  for (int g = 0; g < total; ++g) {
    Mode k = zero_mode(d);
    int rem = g;
    for (int i = na - 1; i >= 0; --i) {
      int p = rem % N;
      rem /= N;
      if (p >= N / 2) p -= N;
      k[active[i]] = p;
    }
    if (linf(k) <= kDensityCutoff) {
      if (values[g] != Complex(0.0, 0.0)) model.leaf_density.add(k, values[g]);
    } else {
      tail += std::norm(values[g]);
    }
  }
  model.leaf_density_tail = std::sqrt(tail);
}

std::optional<double> fit_chsc(const CurvatureTensor& curvature, int n) {
  const int d = 2 * n;
  double scale = 0.0;
  for (const auto& c : curvature.components) scale = std::max(scale, c.max_abs());
  if (scale <= 1e-13) return 0.0;
  // Only a constant tensor can match.
  const CurvatureTensor unit = chsc_curvature(n, 1.0);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < d * d; ++i) {
    const ComplexMatrix r0 = curvature.components[i].coefficient(zero_mode(d));
    const ComplexMatrix u0 = unit.components[i].coefficient(zero_mode(d));
    num += (u0.adjoint() * r0).trace().real();
    den += u0.squaredNorm();
  }
  const double h = num / den;
  double defect = 0.0;
  for (int i = 0; i < d * d; ++i) {
    MatrixSeries diff = curvature.components[i] - unit.components[i].scaled(h);
    defect = std::max(defect, diff.max_abs());
  }
  if (defect > 1e-10 * std::max(1.0, scale)) return std::nullopt;
  return h;
}

ScalarSeries flat_divergence(const VectorSeries& w, int d) {
  ScalarSeries out(d, Complex(0.0, 0.0));
  for (int a = 0; a < d; ++a) out += component(w, a).derivative(a);
  return out;
}

void derive(FoliationModel& model) {
  const int d = model.d;
  const int n = model.n;
  model.torsion = torsion_tensor(model.connection);
  model.tau = VectorSeries(d, zero_vec(d));
  for (int j = 0; j < n; ++j) model.tau += model.torsion_at(j, n + j);

  if (model.flags.fiber_only) {
    model.curvature = chsc_curvature(n, model.spec.h);
  } else {
    model.curvature = curvature_from_connection(model.connection);
  }

  ModelFlags& f = model.flags;
  f.symplectic = model.connection.is_symplectic;
  f.torsion_free = model.connection.is_torsion_free;
  f.preserves_J = model.connection.preserves_J;
  f.fedosov = f.symplectic && f.torsion_free;
  f.kahler = f.fedosov && f.preserves_J;
  f.minimal = model.kappa_form.max_abs() <= 1e-14;

  const RealMatrix j0 = complex_structure(n);
  double auto_defect = 0.0;
  for (int a = 0; a < d; ++a) {
    const VectorSeries lhs = left_apply(j0.cast<Complex>(), covariant_derivative(model.connection, a, model.kappa_sharp_g));
    const VectorSeries rhs = covariant_derivative(model.connection, ComplexVector(j0.col(a).cast<Complex>()), model.kappa_sharp_g);
    auto_defect = std::max(auto_defect, (lhs - rhs).max_abs());
  }
  f.automorphic = auto_defect <= kFlagTol * std::max(1.0, model.kappa_sharp_g.max_abs());

  // Closed: d kappa = 0. Co-closed for the weighted product:
  // div_flat(rho kappa^g) = 0 and the same for J kappa^g.
  double harmonic_defect = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const ScalarSeries curl = component(model.kappa_form, b).derivative(a) - component(model.kappa_form, a).derivative(b);
      harmonic_defect = std::max(harmonic_defect, curl.max_abs());
    }
  }
  for (const VectorSeries& field : {model.kappa_sharp_g, left_apply(j0.cast<Complex>(), model.kappa_sharp_g)}) {
    const VectorSeries weighted = series_product(model.leaf_density, field,
                                                 [](const Complex& r, const ComplexVector& v) -> ComplexVector { return r * v; });
    harmonic_defect = std::max(harmonic_defect, flat_divergence(weighted, d).max_abs());
  }
  f.basic_harmonic = harmonic_defect <= 1e-10;

  f.chsc_h.reset();
  if (f.kahler) f.chsc_h = fit_chsc(model.curvature, n);
}

}  // namespace

ScalarSeries real_term_series(int dim, const RealTerm& term) {
  ScalarSeries out(dim, Complex(0.0, 0.0));
  if (linf(term.k) == 0) {
    out.add(term.k, Complex(term.cos_coeff, 0.0));
    return out;
  }
  out.add(term.k, Complex(0.5 * term.cos_coeff, -0.5 * term.sin_coeff));
  out.add(negate_mode(term.k), Complex(0.5 * term.cos_coeff, 0.5 * term.sin_coeff));
  out.prune();
  return out;
}

ConnectionData make_connection(int n, std::vector<MatrixSeries> gamma) {
  const int d = 2 * n;
  if (static_cast<int>(gamma.size()) != d) throw InvalidArgument("connection: need one matrix field per direction");
  ConnectionData c;
  c.n = n;
  c.gamma = std::move(gamma);
  const double scale = connection_scale(c);
  c.is_symplectic = symplectic_residual(c) <= kFlagTol * scale;
  c.preserves_J = complex_structure_residual(c) <= kFlagTol * scale;
  double torsion = 0.0;
  for (const auto& t : torsion_tensor(c)) torsion = std::max(torsion, t.max_abs());
  c.is_torsion_free = torsion <= kFlagTol * scale;
  return c;
}

double symplectic_residual(const ConnectionData& connection) {
  double m = 0.0;
  for (const auto& g : connection.gamma) {
    for (const auto& [k, a] : g.terms()) m = std::max(m, sp_residual(a));
  }
  return m;
}

double complex_structure_residual(const ConnectionData& connection) {
  double m = 0.0;
  for (int x = 0; x < 2 * connection.n; ++x) m = std::max(m, complex_structure_derivative(connection, x).max_abs());
  return m;
}

MatrixSeries complex_structure_derivative(const ConnectionData& connection, int axis) {
  const ComplexMatrix j0 = complex_structure(connection.n).cast<Complex>();
  return connection.gamma.at(axis).map([&j0](const ComplexMatrix& g) -> ComplexMatrix { return g * j0 - j0 * g; });
}

ConnectionData make_j_compatible(const ConnectionData& connection) {
  if (!connection.is_symplectic) throw InvalidArgument("make_j_compatible: connection is not symplectic");
  const ComplexMatrix j0 = complex_structure(connection.n).cast<Complex>();
  std::vector<MatrixSeries> gamma;
  for (const auto& g : connection.gamma) {
    // nabla = nabla' + 1/2 (nabla' J) J
    gamma.push_back(g.map([&j0](const ComplexMatrix& a) -> ComplexMatrix {
      return a + 0.5 * (a * j0 - j0 * a) * j0;
    }));
  }
  ConnectionData out = make_connection(connection.n, std::move(gamma));
  if (!out.is_symplectic || !out.preserves_J) {
    throw InvalidArgument("make_j_compatible: result failed validation");
  }
  return out;
}

std::vector<VectorSeries> torsion_tensor(const ConnectionData& connection) {
  const int d = 2 * connection.n;
  std::vector<VectorSeries> out;
  out.reserve(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      // T(e_i, e_j) = Gamma(i) e_j - Gamma(j) e_i
      VectorSeries t = connection.gamma[i].map([j](const ComplexMatrix& g) -> ComplexVector { return g.col(j); });
      t -= connection.gamma[j].map([i](const ComplexMatrix& g) -> ComplexVector { return g.col(i); });
      t.prune();
      out.push_back(std::move(t));
    }
  }
  return out;
}

VectorSeries covariant_derivative(const ConnectionData& connection, int axis, const VectorSeries& s) {
  VectorSeries out = s.derivative(axis);
  out += apply_series(connection.gamma.at(axis), s);
  return out;
}

VectorSeries covariant_derivative(const ConnectionData& connection, const ComplexVector& u, const VectorSeries& s) {
  VectorSeries out(s.dim(), zero_vec(2 * connection.n));
  for (int x = 0; x < u.size(); ++x) {
    if (u[x] != Complex(0.0, 0.0)) out += covariant_derivative(connection, x, s).scaled(u[x]);
  }
  return out;
}

double metric_residual(const ConnectionData& connection, const std::vector<VectorSeries>& sections) {
  const int d = 2 * connection.n;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  double m = 0.0;
  for (std::size_t a = 0; a < sections.size(); ++a) {
    for (std::size_t b = 0; b < sections.size(); ++b) {
      const ScalarSeries g = bilinear_series(sections[a], id, sections[b]);
      for (int x = 0; x < d; ++x) {
        ScalarSeries r = g.derivative(x);
        r -= bilinear_series(covariant_derivative(connection, x, sections[a]), id, sections[b]);
        r -= bilinear_series(sections[a], id, covariant_derivative(connection, x, sections[b]));
        m = std::max(m, r.max_abs());
      }
    }
  }
  return m;
}

MatrixSeries CurvatureTensor::evaluate(const ComplexVector& x, const ComplexVector& y) const {
  const int d = 2 * n;
  MatrixSeries out(components.front().dim(), zero_mat(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex c = x[i] * y[j];
      if (c != Complex(0.0, 0.0)) out += at(i, j).scaled(c);
    }
  }
  return out;
}

CurvatureTensor curvature_from_connection(const ConnectionData& connection) {
  const int d = 2 * connection.n;
  CurvatureTensor out;
  out.n = connection.n;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      MatrixSeries r = connection.gamma[j].derivative(i);
      r -= connection.gamma[i].derivative(j);
      r += commutator_series(connection.gamma[i], connection.gamma[j]);
      r.prune();
      out.components.push_back(std::move(r));
    }
  }
  return out;
}

RealMatrix chsc_component(int n, double h, int i, int j) {
  const int d = 2 * n;
  const RealMatrix om = symplectic_form(n);
  const RealMatrix j0 = complex_structure(n);
  auto w = [&](int a, const RealVector& y) { return om.row(a).dot(y); };
  RealMatrix m(d, d);
  for (int z = 0; z < d; ++z) {
    for (int q = 0; q < d; ++q) {
      const RealVector jw = j0.col(q), jz = j0.col(z);
      m(z, q) = h / 4.0 *
                (om(i, z) * w(j, jw) + om(i, q) * w(j, jz) - om(j, z) * w(i, jw) - om(j, q) * w(i, jz) +
                 2.0 * om(i, j) * w(z, jw));
    }
  }
  // omega(R e_z, e_w) = M_{zw}  =>  R = Omega M^T
  return om * m.transpose();
}

CurvatureTensor chsc_curvature(int n, double h) {
  const int d = 2 * n;
  CurvatureTensor out;
  out.n = n;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      MatrixSeries r(d, zero_mat(d));
      if (h != 0.0) r.add(zero_mode(d), chsc_component(n, h, i, j).cast<Complex>());
      out.components.push_back(std::move(r));
    }
  }
  return out;
}

std::string FoliationModel::name() const { return model_name(spec.kind); }

VectorSeries FoliationModel::mean_plus_torsion() const {
  VectorSeries out = kappa_sharp;
  out += tau;
  out.prune();
  return out;
}

ComplexVector FoliationModel::unit(int a) const {
  ComplexVector e = ComplexVector::Zero(d);
  e[a] = 1.0;
  return e;
}

FoliationModel build_model(const ModelSpec& spec) {
  if (spec.n < 1) throw InvalidArgument("build_model: n must be >= 1");
  if (spec.cutoff < 0) throw InvalidArgument("build_model: cutoff must be >= 0");
  if (spec.kind == ModelKind::HeisenbergFlow && spec.n != 1) {
    throw InvalidArgument("build_model: HeisenbergFlow has codimension 2 (n = 1)");
  }
  const int n = spec.n;
  const int d = 2 * n;
  FoliationModel model;
  model.spec = spec;
  model.n = n;
  model.d = d;
  model.flags.fiber_only = spec.kind == ModelKind::ChscFiber;
  if (model.flags.fiber_only) model.spec.cutoff = 0;
  model.leaf_dimension =
      (spec.kind == ModelKind::HeisenbergFlow || spec.kind == ModelKind::WarpedNonTaut) ? 1 : 0;

  if (!spec.warp.empty() && spec.kind != ModelKind::WarpedNonTaut) {
    throw InvalidArgument("build_model: warp terms only apply to WarpedNonTaut");
  }
  if (!spec.symmetric.empty() && spec.kind != ModelKind::SymmetricPerturbedFedosov) {
    throw InvalidArgument("build_model: symmetric terms only apply to SymmetricPerturbedFedosov");
  }
  if (!spec.torsion.empty() && spec.kind != ModelKind::TorsionPerturbedSymplectic) {
    throw InvalidArgument("build_model: torsion terms only apply to TorsionPerturbedSymplectic");
  }

  const RealMatrix om = symplectic_form(n);
  std::vector<MatrixSeries> gamma(d, MatrixSeries(d, zero_mat(d)));
  for (const auto& term : spec.symmetric) {
    validate_term(term.wave, d, spec.cutoff);
    if (static_cast<int>(term.values.size()) != d * d * d) throw InvalidArgument("symmetric term: need (2n)^3 values");
    const auto& v = term.values;
    double scale = 1.0, defect = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          const double x = v[(a * d + b) * d + c];
          defect = std::max({defect, std::abs(x - v[(b * d + a) * d + c]), std::abs(x - v[(a * d + c) * d + b])});
        }
      }
    }
    if (defect > 1e-12 * scale) throw InvalidArgument("symmetric term: tensor is not totally symmetric");
    const ScalarSeries wave = real_term_series(d, term.wave);
    // omega(Gamma(X) s, t) = S(X, s, t)  =>  Gamma(X) = Omega S_X
    for (int x = 0; x < d; ++x) gamma[x] += times_matrix(wave, om.cast<Complex>() * tensor_slice(v, d, x));
  }
  for (const auto& term : spec.torsion) {
    validate_term(term.wave, d, spec.cutoff);
    if (static_cast<int>(term.values.size()) != d * d * d) throw InvalidArgument("torsion term: need (2n)^3 values");
    const ScalarSeries wave = real_term_series(d, term.wave);
    for (int x = 0; x < d; ++x) {
      const ComplexMatrix a = tensor_slice(term.values, d, x);
      if (sp_residual(a) > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("torsion term: A(X) is not in sp(n)");
      }
      gamma[x] += times_matrix(wave, a);
    }
  }
  for (auto& g : gamma) g.prune();
  model.connection = make_connection(n, std::move(gamma));
  if (!model.connection.is_symplectic) throw InvalidArgument("build_model: connection is not symplectic");

  model.warp = ScalarSeries(d, Complex(0.0, 0.0));
  for (const auto& term : spec.warp) {
    validate_term(term, d, spec.cutoff);
    model.warp += real_term_series(d, term);
  }
  model.warp.prune();
  // kappa = -df, kappa^sharp = Omega kappa, kappa^{sharp g} = kappa
  model.kappa_form = VectorSeries(d, zero_vec(d));
  for (int a = 0; a < d; ++a) {
    const ScalarSeries da = model.warp.derivative(a).scaled(-1.0);
    model.kappa_form += times_vector(da, ComplexVector(RealVector::Unit(d, a).cast<Complex>()));
  }
  model.kappa_form.prune();
  model.kappa_sharp = left_apply(om.cast<Complex>(), model.kappa_form);
  model.kappa_sharp_g = model.kappa_form;
  leaf_density_from_warp(model);

  if (spec.j_compatible) model.connection = make_j_compatible(model.connection);
  derive(model);
  return model;
}

FoliationModel with_connection(const FoliationModel& model, const ConnectionData& connection) {
  if (connection.n != model.n) throw InvalidArgument("with_connection: dimension mismatch");
  FoliationModel out = model;
  out.connection = connection;
  derive(out);
  return out;
}

ScalarSeries transversal_divergence(const FoliationModel& model, const VectorSeries& s, const RealMatrix* frame) {
  const int n = model.n;
  const int d = model.d;
  const RealMatrix u = frame ? *frame : RealMatrix::Identity(d, d);
  const RealMatrix om = symplectic_form(n);
  ScalarSeries out(d, Complex(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    const ComplexVector v = u.col(j).cast<Complex>();
    const ComplexVector w = u.col(n + j).cast<Complex>();
    const ComplexVector om_w = om.cast<Complex>() * w;
    const ComplexVector om_v = om.cast<Complex>() * v;
    // omega(x, w) = x^T Omega w, bilinear
    out += covariant_derivative(model.connection, v, s).map([&om_w](const ComplexVector& x) -> Complex {
      return (x.array() * om_w.array()).sum();
    });
    out -= covariant_derivative(model.connection, w, s).map([&om_v](const ComplexVector& x) -> Complex {
      return (x.array() * om_v.array()).sum();
    });
  }
  out.prune();
  return out;
}

DivergenceBalance divergence_theorem(const FoliationModel& model, const VectorSeries& s) {
  DivergenceBalance out;
  out.lhs = integrate_weighted(transversal_divergence(model, s), model.leaf_density);
  const ComplexMatrix om = symplectic_form(model.n).cast<Complex>();
  out.rhs = integrate_weighted(bilinear_series(model.mean_plus_torsion(), om, s), model.leaf_density);
  return out;
}

double divergence_theorem_residual(const FoliationModel& model, const VectorSeries& s) {
  return divergence_theorem(model, s).residual();
}

VectorSeries torsion_vector(const FoliationModel& model, const RealMatrix* frame) {
  const int n = model.n;
  const int d = model.d;
  const RealMatrix u = frame ? *frame : RealMatrix::Identity(d, d);
  VectorSeries out(d, zero_vec(d));
  for (int j = 0; j < n; ++j) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const double c = u(a, j) * u(b, n + j);
        if (c != 0.0) out += model.torsion_at(a, b).scaled(c);
      }
    }
  }
  out.prune(1e-300);
  return out;
}

SymplecticRicci symplectic_ricci(const FoliationModel& model, const RealMatrix* frame) {
  const int n = model.n;
  const int d = model.d;
  const RealMatrix u = frame ? *frame : RealMatrix::Identity(d, d);
  const ComplexMatrix om = symplectic_form(n).cast<Complex>();
  const ComplexMatrix j0 = complex_structure(n).cast<Complex>();
  const int dim = model.curvature.components.front().dim();
  SymplecticRicci out;
  out.sric = MatrixSeries(dim, zero_mat(d));
  for (int j = 0; j < n; ++j) {
    const MatrixSeries r = model.curvature.evaluate(u.col(j).cast<Complex>(), u.col(n + j).cast<Complex>());
    out.sric += r.map([&om](const ComplexMatrix& m) -> ComplexMatrix { return m.transpose() * om; });
  }
  const ComplexMatrix uc = u.cast<Complex>();
  out.r = out.sric.map([&uc](const ComplexMatrix& m) -> Complex { return (uc.transpose() * m * uc).trace(); });
  out.r_alternate = ScalarSeries(dim, Complex(0.0, 0.0));
  for (int i = 0; i < d; ++i) {
    const ComplexVector ei = uc.col(i);
    const MatrixSeries r = model.curvature.evaluate(ei, j0 * ei);
    out.r_alternate += r.map([&om, &uc](const ComplexMatrix& m) -> Complex {
      // sum_j omega(R e_j, e_j) = tr(U^T R^T Omega U)
      return 0.5 * (uc.transpose() * m.transpose() * om * uc).trace();
    });
  }
  out.r.prune();
  out.r_alternate.prune();
  return out;
}

MatrixSeries ricci_operator(const CurvatureTensor& curvature) {
  const int d = 2 * curvature.n;
  MatrixSeries out(curvature.components.front().dim(), zero_mat(d));
  for (int a = 0; a < d; ++a) {
    for (int j = 0; j < d; ++j) {
      // column a collects R(e_a, e_j) e_j
      out += curvature.at(a, j).map([a, j, d](const ComplexMatrix& m) -> ComplexMatrix {
        ComplexMatrix c = ComplexMatrix::Zero(d, d);
        c.col(a) = m.col(j);
        return c;
      });
    }
  }
  return out;
}

namespace {

double curvature_scale(const CurvatureTensor& curvature) {
  double m = 1.0;
  for (const auto& r : curvature.components) m = std::max(m, r.max_abs());
  return m;
}

template <class F>
double coefficientwise(const CurvatureTensor& curvature, F defect) {
  const int d = 2 * curvature.n;
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (const auto& [k, m] : curvature.at(i, j).terms()) worst = std::max(worst, defect(i, j, k, m));
    }
  }
  return worst / curvature_scale(curvature);
}

}  // namespace

double curvature_antisymmetry_residual(const CurvatureTensor& curvature) {
  return coefficientwise(curvature, [&](int i, int j, const Mode& k, const ComplexMatrix& m) {
    return (m + curvature.at(j, i).coefficient(k)).cwiseAbs().maxCoeff();
  });
}

double curvature_symplectic_residual(const CurvatureTensor& curvature) {
  const ComplexMatrix om = symplectic_form(curvature.n).cast<Complex>();
  return coefficientwise(curvature, [&](int, int, const Mode&, const ComplexMatrix& m) {
    return (m.transpose() * om + om * m).cwiseAbs().maxCoeff();
  });
}

double curvature_j_invariance_residual(const CurvatureTensor& curvature) {
  const ComplexMatrix om = symplectic_form(curvature.n).cast<Complex>();
  const ComplexMatrix j0 = complex_structure(curvature.n).cast<Complex>();
  return coefficientwise(curvature, [&](int, int, const Mode&, const ComplexMatrix& m) {
    return (j0.transpose() * m.transpose() * om * j0 - m.transpose() * om).cwiseAbs().maxCoeff();
  });
}

double ricci_half_trace_residual(const CurvatureTensor& curvature) {
  const int d = 2 * curvature.n;
  const ComplexMatrix j0 = complex_structure(curvature.n).cast<Complex>();
  MatrixSeries rhs(curvature.components.front().dim(), zero_mat(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (j0(k, j) != Complex(0.0, 0.0)) rhs += curvature.at(j, k).scaled(0.5 * j0(k, j));
    }
  }
  rhs = rhs.map([&j0](const ComplexMatrix& m) -> ComplexMatrix { return m * j0; });
  MatrixSeries defect = ricci_operator(curvature);
  defect -= rhs;
  return defect.max_abs() / curvature_scale(curvature);
}

double holomorphic_sectional_residual(const CurvatureTensor& curvature, double h, const std::vector<RealVector>& points,
                                      const std::vector<RealVector>& directions) {
  const int d = 2 * curvature.n;
  const ComplexMatrix j0 = complex_structure(curvature.n).cast<Complex>();
  double worst = 0.0;
  for (const RealVector& x : points) {
    std::vector<ComplexMatrix> r;
    for (const auto& c : curvature.components) r.push_back(c.evaluate(x));
    for (const RealVector& dir : directions) {
      const ComplexVector u = dir.normalized().cast<Complex>();
      const ComplexVector ju = j0 * u;
      ComplexMatrix rx = ComplexMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) rx += u[i] * ju[j] * r[i * d + j];
      }
      const Complex w = omega(u, ju);
      worst = std::max(worst, std::abs(omega(rx * u, u) - h * w * w));
    }
  }
  return worst / curvature_scale(curvature);
}

double chsc_tensor_residual(const CurvatureTensor& curvature, double h) {
  const int d = 2 * curvature.n;
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      MatrixSeries defect = curvature.at(i, j);
      defect.add(zero_mode(defect.dim()), -chsc_component(curvature.n, h, i, j).cast<Complex>());
      worst = std::max(worst, defect.max_abs());
    }
  }
  return worst / curvature_scale(curvature);
}

std::vector<RealVector> sample_points(int d, int count, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<RealVector> out;
  for (int i = 0; i < count; ++i) {
    RealVector x(d);
    for (int a = 0; a < d; ++a) x[a] = uniform(rng);
    out.push_back(x);
  }
  return out;
}

}  // namespace sympdirac
