#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "sympdirac/errors.hpp"
#include "sympdirac/identity_checks.hpp"
#include "sympdirac/verifier.hpp"

namespace sympdirac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  Outcome(double residual, std::string note = {}) : residual(residual), note(std::move(note)) {}
  double residual;
  std::string note;
  std::optional<double> tolerance;
};

class Context {
 public:
  explicit Context(const SuiteConfig& config) : config(config) {
    ModelSpec spec = default_model_spec(config.model, config.n, config.modes, config.seed, config.amplitude);
    spec.j_compatible = config.j_compatible;
    if (config.model == ModelKind::ChscFiber) spec.h = config.h;
    model = build_model(spec);
    fiber = build_basis(config.n, config.level);
  }

  const SuiteConfig& config;
  FoliationModel model;
  FiberBasis fiber;
  std::vector<SpectrumRecord> spectra;

  const SpinorBundle& bundle() {
    if (!bundle_) bundle_ = std::make_unique<SpinorBundle>(model, config.level);
    return *bundle_;
  }
  int field_level() const { return config.level - 3; }
  int field_cutoff() const { return config.modes - 1; }

  SpinorField field(Rng& rng) { return bundle().random_field(rng, field_level(), field_cutoff()); }
  SpinorField vacuum_field(Rng& rng) { return bundle().random_level_field(rng, 0, field_cutoff()); }
  VectorSeries section(Rng& rng) { return bundle().random_section(rng, std::max(1, field_cutoff())); }

  bool flat_connection() const {
    for (const auto& g : model.connection.gamma) {
      if (!g.empty() && g.max_abs() > 0.0) return false;
    }
    return true;
  }

  const Spectrum& spectrum(std::optional<int> level) {
    const int key = level.value_or(-1);
    auto it = spectra_cache_.find(key);
    if (it != spectra_cache_.end()) return it->second;
    SpectrumRequest request;
    request.name = OperatorName::P;
    request.cutoff = config.effective_spectral_modes();
    request.level = level;
    Spectrum s = compute_spectrum(bundle(), request);
    SpectrumRecord record;
    record.operator_name = operator_label(s.name);
    record.level = level;
    record.cutoff = model.flags.fiber_only ? 0 : request.cutoff;
    record.hermiticity_residual = s.hermiticity_residual;
    for (const Eigenpair& e : s.eigenpairs) {
      record.eigenvalues.push_back(e.eigenvalue);
      std::ostringstream mode;
      for (std::size_t a = 0; a < e.dominant_mode.size(); ++a) mode << (a ? " " : "") << e.dominant_mode[a];
      record.dominant_modes.push_back(mode.str());
      record.dominant_levels.push_back(e.dominant_level);
    }
    spectra.push_back(std::move(record));
    return spectra_cache_.emplace(key, std::move(s)).first->second;
  }

 private:
  std::unique_ptr<SpinorBundle> bundle_;
  std::map<int, Spectrum> spectra_cache_;
};

using CheckFn = std::function<Outcome(Context&, Rng&)>;

struct Registered {
  CheckDefinition definition;
  CheckFn run;
};

void require(bool condition, const std::string& what) {
  if (!condition) throw HypothesisError(what);
}

RealVector random_vector(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector v(d);
  for (int a = 0; a < d; ++a) v[a] = normal(rng);
  return v;
}

// Columns restricted to levels <= L - q.
double protected_max(const FiberBasis& basis, const ComplexMatrix& m, int q) {
  const int cols = basis.dim_through(basis.max_level() - q);
  return cols > 0 ? m.leftCols(cols).cwiseAbs().maxCoeff() : 0.0;
}

std::string format_value(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

// sup of a real Fourier series is at most c_0 + sum_{k != 0} |c_k|
double upper_bound(const ScalarSeries& f) {
  double out = 0.0;
  for (const auto& [k, c] : f.terms()) out += linf(k) == 0 ? c.real() : std::abs(c);
  return out;
}

double min_squared_length(const VectorSeries& v, int d, Rng& rng) {
  if (v.empty()) return 0.0;
  double best = kInf;
  for (const RealVector& x : sample_points(d, 256, rng)) best = std::min(best, v.evaluate(x).squaredNorm());
  return best;
}

// ---- Weyl algebra -------------------------------------------------------

Outcome canonical_commutation(Context& c, Rng& rng) {
  const int d = 2 * c.config.n;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector v = random_vector(d, rng), w = random_vector(d, rng);
    const ComplexMatrix sv = clifford_generator(c.fiber, v.cast<Complex>());
    const ComplexMatrix sw = clifford_generator(c.fiber, w.cast<Complex>());
    ComplexMatrix defect = sv * sw - sw * sv;
    defect += kI * omega(v.cast<Complex>(), w.cast<Complex>()) * ComplexMatrix::Identity(c.fiber.dim(), c.fiber.dim());
    worst = std::max(worst, protected_max(c.fiber, defect, 1));
  }
  return {worst, "50 random pairs"};
}

Outcome generator_skew_adjoint(Context& c, Rng& rng) {
  const int d = 2 * c.config.n;
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    const ComplexMatrix s = clifford_generator(c.fiber, RealVector::Unit(d, a).cast<Complex>());
    worst = std::max(worst, (s + s.adjoint()).cwiseAbs().maxCoeff());
  }
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix s = clifford_generator(c.fiber, random_vector(d, rng).cast<Complex>());
    worst = std::max(worst, (s + s.adjoint()).cwiseAbs().maxCoeff());
  }
  return {worst, {}};
}

Outcome hamilton_spectrum(Context& c, Rng&) {
  const int n = c.config.n;
  const ComplexMatrix h = hamilton_operator(c.fiber);
  double worst = 0.0;
  std::vector<int> multiplicity(c.fiber.max_level() + 1, 0);
  for (int o = 0; o < c.fiber.dim(); ++o) {
    const int l = c.fiber.index(o).level();
    ++multiplicity[l];
    worst = std::max(worst, std::abs(h(o, o) - Complex(-(l + 0.5 * n), 0.0)));
  }
  worst = std::max(worst, (h - ComplexMatrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
  for (int l = 0; l <= c.fiber.max_level(); ++l) {
    if (multiplicity[l] != static_cast<int>(binomial(n + l - 1, l))) return {kInf, "multiplicity mismatch at level " + std::to_string(l)};
  }
  return {worst, {}};
}

Outcome level_block_ranks(Context& c, Rng&) {
  const int n = c.config.n;
  const int dim = c.fiber.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  std::vector<ComplexMatrix> projections;
  double worst = 0.0;
  for (int l = 0; l <= c.fiber.max_level(); ++l) {
    projections.push_back(level_projection(c.fiber, l));
    const ComplexMatrix& p = projections.back();
    worst = std::max(worst, std::abs(p.trace() - Complex(binomial(n + l - 1, l), 0.0)));
    worst = std::max(worst, (p * p - p).cwiseAbs().maxCoeff());
    sum += p;
  }
  for (std::size_t a = 0; a < projections.size(); ++a) {
    for (std::size_t b = a + 1; b < projections.size(); ++b) {
      worst = std::max(worst, (projections[a] * projections[b]).cwiseAbs().maxCoeff());
    }
  }
  worst = std::max(worst, (sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff());
  return {worst, {}};
}

Outcome hamilton_clifford_form(Context& c, Rng&) {
  const int d = 2 * c.config.n;
  ComplexMatrix sum = ComplexMatrix::Zero(c.fiber.dim(), c.fiber.dim());
  for (int a = 0; a < d; ++a) {
    const ComplexMatrix s = clifford_generator(c.fiber, RealVector::Unit(d, a).cast<Complex>());
    sum += 0.5 * s * s;
  }
  return {protected_max(c.fiber, sum - hamilton_operator(c.fiber), 2), {}};
}

Outcome hamilton_self_adjoint(Context& c, Rng&) {
  const ComplexMatrix h = hamilton_operator(c.fiber);
  return {(h - h.adjoint()).cwiseAbs().maxCoeff(), {}};
}

Outcome hamilton_clifford_commutator(Context& c, Rng& rng) {
  const int d = 2 * c.config.n;
  const RealMatrix j0 = complex_structure(c.config.n);
  const ComplexMatrix h = hamilton_operator(c.fiber);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RealVector s = random_vector(d, rng);
    const ComplexMatrix ss = clifford_generator(c.fiber, s.cast<Complex>());
    const ComplexMatrix sjs = clifford_generator(c.fiber, (j0 * s).cast<Complex>());
    worst = std::max(worst, protected_max(c.fiber, h * ss - ss * h - kI * sjs, 1));
  }
  return {worst, {}};
}

Outcome vacuum_holomorphic(Context& c, Rng& rng) {
  const int d = 2 * c.config.n;
  const RealMatrix j0 = complex_structure(c.config.n);
  const ComplexVector vac = vacuum_state(c.fiber);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RealVector s = random_vector(d, rng);
    const ComplexVector lhs = clifford_generator(c.fiber, (j0 * s).cast<Complex>()) * vac;
    const ComplexVector rhs = kI * (clifford_generator(c.fiber, s.cast<Complex>()) * vac);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return {worst, {}};
}

Outcome twisted_clifford_trace(Context& c, Rng&) {
  const int n = c.config.n;
  const int d = 2 * n;
  const RealMatrix j0 = complex_structure(n);
  ComplexMatrix sum = ComplexMatrix::Zero(c.fiber.dim(), c.fiber.dim());
  for (int j = 0; j < d; ++j) {
    const RealVector e = RealVector::Unit(d, j);
    sum += clifford_generator(c.fiber, (j0 * e).cast<Complex>()) * clifford_generator(c.fiber, e.cast<Complex>());
  }
  sum -= kI * static_cast<double>(n) * ComplexMatrix::Identity(c.fiber.dim(), c.fiber.dim());
  return {protected_max(c.fiber, sum, 2), {}};
}

Outcome quadratic_action_commutator(Context& c, Rng& rng) {
  const int d = 2 * c.config.n;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix a = random_sp(c.config.n, rng);
    const RealVector v = random_vector(d, rng);
    const ComplexMatrix q = quadratic_action(c.fiber, a);
    const ComplexMatrix sv = clifford_generator(c.fiber, v.cast<Complex>());
    const ComplexMatrix sav = clifford_generator(c.fiber, (a * v).cast<Complex>());
    worst = std::max(worst, protected_max(c.fiber, q * sv - sv * q - sav, 3));
  }
  return {worst, {}};
}

Outcome quadratic_action_complex_structure(Context& c, Rng&) {
  const ComplexMatrix q = quadratic_action(c.fiber, complex_structure(c.config.n));
  return {protected_max(c.fiber, q + kI * hamilton_operator(c.fiber), 2), {}};
}

// ---- Geometry -------------------------------------------------------------

Outcome connection_symplectic(Context& c, Rng&) { return {symplectic_residual(c.model.connection), {}}; }

Outcome torsion_vector_definition(Context& c, Rng& rng) {
  VectorSeries defect = torsion_vector(c.model);
  defect -= c.model.tau;
  double worst = defect.max_abs();
  for (int trial = 0; trial < 5; ++trial) {
    const RealMatrix frame = random_symplectic_frame(c.config.n, rng);
    VectorSeries rotated = torsion_vector(c.model, &frame);
    rotated -= c.model.tau;
    worst = std::max(worst, rotated.max_abs());
  }
  return {worst, "unitary frame and 5 random symplectic frames"};
}

Outcome divergence_frame_independence(Context& c, Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const VectorSeries s = c.section(rng);
    const RealMatrix frame = random_symplectic_frame(c.config.n, rng);
    ScalarSeries defect = transversal_divergence(c.model, s, &frame);
    defect -= transversal_divergence(c.model, s);
    worst = std::max(worst, defect.max_abs() / std::max(1.0, s.max_abs()));
  }
  return {worst, {}};
}

Outcome divergence_theorem_check(Context& c, Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    worst = std::max(worst, divergence_theorem_residual(c.model, c.section(rng)));
  }
  return {worst, "20 random sections"};
}

Outcome j_compatible_connection(Context& c, Rng& rng) {
  const ConnectionData out = make_j_compatible(c.model.connection);
  std::vector<VectorSeries> sections;
  for (int trial = 0; trial < 4; ++trial) sections.push_back(c.section(rng));
  double worst = std::max(symplectic_residual(out), complex_structure_residual(out));
  worst = std::max(worst, metric_residual(out, sections));
  if (c.model.connection.preserves_J) {
    for (std::size_t x = 0; x < out.gamma.size(); ++x) {
      MatrixSeries defect = out.gamma[x];
      defect -= c.model.connection.gamma[x];
      worst = std::max(worst, defect.max_abs());
    }
  }
  return {worst, {}};
}

Outcome curvature_antisymmetry(Context& c, Rng&) { return {curvature_antisymmetry_residual(c.model.curvature), {}}; }

Outcome curvature_symplectic_symmetry(Context& c, Rng&) {
  require(c.model.flags.symplectic, "requires a symplectic connection");
  return {curvature_symplectic_residual(c.model.curvature), {}};
}

Outcome curvature_j_invariance(Context& c, Rng&) {
  require(c.model.flags.preserves_J, "requires nabla J = 0");
  return {curvature_j_invariance_residual(c.model.curvature), {}};
}

Outcome scalar_curvature_two_forms(Context& c, Rng&) {
  const SymplecticRicci ric = symplectic_ricci(c.model);
  ScalarSeries defect = ric.r;
  defect -= ric.r_alternate;
  return {defect.max_abs(), {}};
}

Outcome scalar_curvature_frame_invariance(Context& c, Rng& rng) {
  const ScalarSeries r = symplectic_ricci(c.model).r;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const RealMatrix frame = random_unitary_frame(c.config.n, rng);
    ScalarSeries defect = symplectic_ricci(c.model, &frame).r;
    defect -= r;
    worst = std::max(worst, defect.max_abs());
  }
  return {worst, {}};
}

double chsc_h(const Context& c) {
  require(c.model.flags.kahler && c.model.flags.chsc_h.has_value(),
          "requires a Kahler model of constant holomorphic sectional curvature");
  return *c.model.flags.chsc_h;
}

Outcome holomorphic_sectional_curvature(Context& c, Rng& rng) {
  const double h = chsc_h(c);
  std::vector<RealVector> directions;
  for (int trial = 0; trial < 100; ++trial) directions.push_back(random_vector(c.model.d, rng).normalized());
  const std::vector<RealVector> points = sample_points(c.model.d, c.model.flags.fiber_only ? 1 : 8, rng);
  return {holomorphic_sectional_residual(c.model.curvature, h, points, directions), "h = " + format_value(h)};
}

Outcome chsc_tensor_form(Context& c, Rng&) {
  const double h = chsc_h(c);
  return {chsc_tensor_residual(c.model.curvature, h), "h = " + format_value(h)};
}

Outcome ricci_half_trace(Context& c, Rng&) {
  require(c.model.flags.kahler, "requires a Kahler model");
  return {ricci_half_trace_residual(c.model.curvature), {}};
}

Outcome scalar_curvature_chsc(Context& c, Rng&) {
  const double h = chsc_h(c);
  const int n = c.config.n;
  ScalarSeries defect = symplectic_ricci(c.model).r;
  defect.add(zero_mode(c.model.d), Complex(-h * n * (n + 1), 0.0));
  return {defect.max_abs(), "h n(n+1) = " + format_value(h * n * (n + 1))};
}

// ---- Spinor operators -----------------------------------------------------

Outcome spinor_metric_compatibility(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng), psi = c.field(rng);
  return {metric_compatibility_residual(c.bundle(), phi, psi), {}};
}

Outcome spinor_clifford_leibniz(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng);
  return {clifford_leibniz_residual(c.bundle(), c.section(rng), phi), {}};
}

Outcome spinor_curvature_forms(Context& c, Rng& rng) {
  return {spinor_curvature_forms_residual(c.bundle(), c.field(rng)), {}};
}

Outcome spinor_curvature_commutator(Context& c, Rng& rng) {
  return {spinor_curvature_commutator_residual(c.bundle(), c.field(rng)), {}};
}

Outcome dirac_unitary_frame_form(Context& c, Rng& rng) {
  return {dirac_unitary_forms(c.bundle(), c.field(rng)).dirac_prime, {}};
}

Outcome dirac_tilde_unitary_frame_form(Context& c, Rng& rng) {
  return {dirac_unitary_forms(c.bundle(), c.field(rng)).dirac_tilde_prime, {}};
}

Outcome principal_symbol(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng);
  const VectorSeries s = c.section(rng);
  double worst = principal_symbol_residual(c.bundle(), ScalarSeries::constant(c.model.d, Complex(1.5, 0.0)), phi);
  for (int a = 0; a < c.model.d; ++a) worst = std::max(worst, principal_symbol_residual(c.bundle(), component(s, a), phi));
  return {worst, {}};
}

Outcome self_adjoint(Context& c, Rng& rng, OperatorName name) {
  const SpinorField phi = c.field(rng), psi = c.field(rng);
  return {adjointness_defect(c.bundle(), name, phi, psi), {}};
}

Outcome uncorrected_dirac_not_self_adjoint(Context& c, Rng& rng) {
  require(c.bundle().mean_plus_torsion().max_abs() > 1e-12, "requires kappa^sharp + tau != 0");
  const SpinorField phi = c.field(rng), psi = c.field(rng);
  const double corrected = adjointness_defect(c.bundle(), OperatorName::D, phi, psi);
  return {dirac_prime_adjointness_defect(c.bundle(), phi, psi), "corrected D defect " + format_value(corrected)};
}

Outcome connection_laplacian_two_path_check(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng), psi = c.field(rng);
  return {connection_laplacian_two_path(c.bundle(), phi, psi), {}};
}

Outcome connection_adjoint(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng);
  std::vector<SpinorField> psi;
  for (int i = 0; i < c.model.d; ++i) psi.push_back(c.field(rng));
  return {connection_adjoint_defect(c.bundle(), phi, psi), {}};
}

Outcome connection_laplacian_nonnegative(Context& c, Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const SpinorField phi = c.field(rng);
    const double q = c.bundle().inner(c.bundle().connection_laplacian(phi), phi).real();
    const double norm_sq = c.bundle().inner(phi, phi).real();
    worst = std::max(worst, std::max(0.0, -q / norm_sq));
  }
  return {worst, {}};
}

Outcome dirac_clifford_commutator(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng);
  return {clifford_commutator_check(c.bundle(), c.section(rng), phi).dirac, {}};
}

Outcome dirac_tilde_clifford_commutator(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng);
  return {clifford_commutator_check(c.bundle(), c.section(rng), phi).dirac_tilde, {}};
}

Outcome clifford_quadratic_relation_check(Context& c, Rng& rng) {
  const SpinorField phi = c.field(rng);
  return {clifford_quadratic_relation(c.bundle(), c.section(rng), phi), {}};
}

Outcome weitzenbock(Context& c, Rng& rng, WeitzenbockFormula formula) {
  Outcome out(weitzenbock_residual(c.bundle(), c.field(rng), formula));
  if (formula == WeitzenbockFormula::General && c.flat_connection() && c.model.mean_plus_torsion().empty()) {
    out.tolerance = 1e-9;
  }
  return out;
}

Outcome vacuum_weitzenbock_fedosov(Context& c, Rng& rng) {
  return {weitzenbock_residual(c.bundle(), c.vacuum_field(rng), WeitzenbockFormula::VacuumFedosov), {}};
}

Outcome vacuum_weitzenbock(Context& c, Rng& rng, VacuumFormula formula) {
  return {vacuum_weitzenbock_residual(c.bundle(), c.vacuum_field(rng), formula), {}};
}

Outcome hamilton_parallel(Context& c, Rng& rng) {
  return {hamilton_parallel_residual(c.bundle(), c.field(rng), 0.5), {}};
}

Outcome hamilton_parallel_correction_necessary(Context& c, Rng& rng) {
  require(!c.model.flags.preserves_J, "requires nabla J != 0");
  const SpinorField phi = c.field(rng);
  const double literal = hamilton_parallel_residual(c.bundle(), phi, 1.0);
  return {hamilton_parallel_residual(c.bundle(), phi, 0.0),
          "residual with unit coefficient " + format_value(literal) + ", with 1/2 " +
              format_value(hamilton_parallel_residual(c.bundle(), phi, 0.5))};
}

Outcome grading(Context& c, Rng& rng, int which) {
  const GradingResiduals g = grading_commutation_check(c.bundle(), c.field(rng));
  return {which == 0 ? g.dirac : which == 1 ? g.dirac_tilde : g.p_operator, {}};
}

Outcome p_level_blocks(Context& c, Rng& rng) {
  require(c.model.flags.preserves_J, "requires nabla J = 0");
  double worst = 0.0;
  for (int l = 0; l <= c.field_level(); ++l) {
    const SpinorField phi = c.bundle().random_level_field(rng, l, c.field_cutoff());
    worst = std::max(worst, level_leakage(c.bundle(), phi, l));
  }
  return {worst, "levels 0.." + std::to_string(c.field_level())};
}

Outcome vacuum_clifford(Context& c, Rng& rng) {
  const SpinorField phi0 = c.vacuum_field(rng);
  return {vacuum_clifford_residual(c.bundle(), c.section(rng), phi0), {}};
}

Outcome complexified_divergence(Context& c, Rng& rng) {
  const SpinorField phi0 = c.vacuum_field(rng);
  return {complexified_divergence_residual(c.bundle(), c.section(rng), phi0), {}};
}

Outcome vacuum_curvature(Context& c, Rng& rng) {
  return {vacuum_curvature_residual(c.bundle(), c.vacuum_field(rng)), {}};
}

Outcome mean_curvature_automorphic(Context& c, Rng& rng) {
  return {mean_curvature_automorphic_residual(c.bundle(), c.vacuum_field(rng)), {}};
}

Outcome mean_curvature_divergence(Context& c, Rng&) { return {mean_curvature_harmonic_residual(c.model), {}}; }

Outcome ricci_spinor(Context& c, Rng& rng, bool trace) {
  const RicciSpinorResiduals r = ricci_spinor_identities(c.bundle(), c.field(rng));
  return {trace ? r.curvature_trace : r.ricci_trace, {}};
}

Outcome chsc_curvature_action(Context& c, Rng& rng) {
  return {chsc_curvature_action_residual(c.bundle(), c.field(rng)), {}};
}

// ---- Spectra --------------------------------------------------------------

Outcome flat_golden_spectrum(Context& c, Rng&) {
  require(c.model.spec.kind == ModelKind::FlatKahlerTorus || c.model.spec.kind == ModelKind::HeisenbergFlow,
          "requires a flat torus model");
  const Spectrum& s = c.spectrum(std::nullopt);
  const int cutoff = c.config.effective_spectral_modes();
  std::vector<double> expected;
  const int fiber_dim = c.bundle().algebra().dim_through(c.config.level);
  for (const Mode& k : mode_cube(c.model.d, cutoff)) {
    double k2 = 0.0;
    for (int a : k) k2 += static_cast<double>(a) * a;
    for (int f = 0; f < fiber_dim; ++f) expected.push_back(4.0 * kPi * kPi * k2);
  }
  std::sort(expected.begin(), expected.end());
  if (static_cast<int>(expected.size()) != s.dimension()) return {kInf, "dimension mismatch"};
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) worst = std::max(worst, std::abs(s.eigenpairs[i].eigenvalue - expected[i]));
  return {worst, std::to_string(expected.size()) + " eigenvalues, |k|_inf <= " + std::to_string(cutoff)};
}

Outcome p_spectrum_hermiticity(Context& c, Rng&) {
  require(c.model.flags.preserves_J, "P is formally self-adjoint only when nabla J = 0");
  return {c.spectrum(std::nullopt).hermiticity_residual, {}};
}

Outcome vacuum_kernel_trivial(Context& c, Rng&) {
  const ModelFlags& f = c.model.flags;
  require(f.fedosov && f.preserves_J && f.minimal, "requires a minimal foliation with a Fedosov connection, nabla J = 0");
  const double r_max = upper_bound(symplectic_ricci(c.model).r);
  require(r_max < 0.0, "requires r < 0");
  const double lambda = c.spectrum(0).min_eigenvalue();
  return {std::max(0.0, -r_max / 4.0 - lambda),
          "min eigenvalue of P^0 " + format_value(lambda) + ", -max r / 4 = " + format_value(-r_max / 4.0)};
}

Outcome vacuum_eigenvalue_bound(Context& c, Rng& rng) {
  const double h = chsc_h(c);
  require(c.model.flags.basic_harmonic, "requires a basic harmonic mean curvature form");
  const int n = c.config.n;
  const double bound = -h / 4.0 * n * (n + 1) + 0.25 * min_squared_length(c.model.kappa_sharp_g, c.model.d, rng);
  const double lambda = c.spectrum(0).min_eigenvalue();
  return {std::max(0.0, bound - lambda), "min eigenvalue " + format_value(lambda) + ", bound " + format_value(bound)};
}

Outcome eigenvalue_bound(Context& c, Rng&) {
  const double h = chsc_h(c);
  require(h <= 0.0, "requires h <= 0");
  require(c.model.flags.minimal, "requires a minimal foliation");
  const int n = c.config.n;
  const double bound = -h / 4.0 * n * (n - 1);
  const double lambda = c.spectrum(std::nullopt).min_eigenvalue();
  return {std::max(0.0, bound - lambda), "min eigenvalue " + format_value(lambda) + ", bound " + format_value(bound)};
}

// ---- Registry ---------------------------------------------------------------

const std::vector<Registered>& registry() {
  using W = WeitzenbockFormula;
  using V = VacuumFormula;
  static const std::vector<Registered> table = [] {
    std::vector<Registered> t;
    auto add = [&t](std::string name, std::string suite, std::string anchor, double tol, CheckFn fn,
                    Comparison cmp = Comparison::AtMost) {
      t.push_back({{std::move(name), std::move(suite), std::move(anchor), tol, cmp}, std::move(fn)});
    };
    const std::string weyl = "weyl", geo = "geometry", ops = "operators", spec = "spectral";

    add("canonical_commutation", weyl, "sigma(v) sigma(w) - sigma(w) sigma(v) = -i omega(v, w) on levels <= L-1", 1e-12, canonical_commutation);
    add("generator_skew_adjoint", weyl, "<s.phi, psi> = -<phi, s.psi>", 0.0, generator_skew_adjoint);
    add("hamilton_spectrum", weyl, "H0 h_beta = -(|beta| + n/2) h_beta, multiplicity C(n+l-1, l)", 0.0, hamilton_spectrum);
    add("level_block_ranks", weyl, "rank Sp_l = C(n+l-1, l); level projections orthogonal, summing to 1", 0.0, level_block_ranks);
    add("hamilton_clifford_form", weyl, "H(phi) = 1/2 sum_j e_j . e_j . phi on levels <= L-2", 1e-12, hamilton_clifford_form);
    add("hamilton_self_adjoint", weyl, "<H(phi), psi> = <phi, H(psi)>", 0.0, hamilton_self_adjoint);
    add("hamilton_clifford_commutator", weyl, "H(s.phi) = s.H(phi) + i Js.phi on levels <= L-1", 1e-12, hamilton_clifford_commutator);
    add("vacuum_holomorphic", weyl, "Js.phi = i s.phi for phi on level 0", 1e-12, vacuum_holomorphic);
    add("twisted_clifford_trace", weyl, "sum_j Je_j . e_j . phi = i n phi on levels <= L-2", 1e-12, twisted_clifford_trace);
    add("quadratic_action_commutator", weyl, "[Q(A), sigma(v)] = sigma(Av) on levels <= L-3", 1e-12, quadratic_action_commutator);
    add("quadratic_action_complex_structure", weyl, "Q(J0) = (1/2i) sum_j {w_j . J0 v_j - v_j . J0 w_j} = -i H on levels <= L-2", 1e-12, quadratic_action_complex_structure);

    add("connection_symplectic", geo, "omega(Gamma(X)s, t) + omega(s, Gamma(X)t) = 0", 1e-12, connection_symplectic);
    add("torsion_vector_definition", geo, "tau = sum_i T(v_i, w_i), independent of the symplectic frame", 1e-12, torsion_vector_definition);
    add("divergence_frame_independence", geo, "div(s) = sum {omega(nabla_{v_i} s, w_i) - omega(nabla_{w_i} s, v_i)} independent of the frame", 1e-12, divergence_frame_independence);
    add("divergence_theorem", geo, "int div(s) mu = int omega(kappa^sharp + tau, s) mu", 1e-10, divergence_theorem_check);
    add("j_compatible_connection", geo, "nabla_X s = nabla'_X s + 1/2 (nabla'_X J) J s has nabla omega = 0, nabla J = 0, nabla g = 0", 1e-12, j_compatible_connection);
    add("curvature_antisymmetry", geo, "R(X, Y) = -R(Y, X)", 1e-12, curvature_antisymmetry);
    add("curvature_symplectic_symmetry", geo, "omega(R(X, Y)s, t) = omega(R(X, Y)t, s)", 1e-11, curvature_symplectic_symmetry);
    add("curvature_j_invariance", geo, "omega(R(X, Y)Js, Jt) = omega(R(X, Y)s, t)", 1e-11, curvature_j_invariance);
    add("scalar_curvature_two_forms", geo, "r = sum_j Sric(e_j, e_j) = 1/2 sum_{i,j} omega(R(e_i, Je_i)e_j, e_j)", 1e-11, scalar_curvature_two_forms);
    add("scalar_curvature_frame_invariance", geo, "r = sum_j Sric(e_j, e_j) independent of the unitary frame", 1e-12, scalar_curvature_frame_invariance);
    add("holomorphic_sectional_curvature", geo, "omega(R(X, JX)X, X) = h omega(X, JX)^2", 1e-12, holomorphic_sectional_curvature);
    add("chsc_tensor_form", geo, "omega(R(X,Y)Z,W) = h/4 {omega(X,Z)omega(Y,JW) + omega(X,W)omega(Y,JZ) - omega(Y,Z)omega(X,JW) - omega(Y,W)omega(X,JZ) + 2 omega(X,Y)omega(Z,JW)}", 1e-12, chsc_tensor_form);
    add("ricci_half_trace", geo, "Ric(X) = 1/2 sum_j R(e_j, Je_j) JX", 1e-12, ricci_half_trace);
    add("scalar_curvature_chsc", geo, "r = h n(n+1)", 1e-12, scalar_curvature_chsc);

    add("spinor_metric_compatibility", ops, "X<phi, psi> = <nabla_X phi, psi> + <phi, nabla_X psi>", 1e-11, spinor_metric_compatibility);
    add("spinor_clifford_leibniz", ops, "nabla_X(s.phi) = (nabla_X s).phi + s.nabla_X phi", 1e-10, spinor_clifford_leibniz);
    add("spinor_curvature_forms", ops, "R^S(X,Y) = (i/2) sum {v_i . R(X,Y)w_i - w_i . R(X,Y)v_i} = (1/2i) sum {w_i . R(X,Y)v_i - v_i . R(X,Y)w_i}", 1e-12, spinor_curvature_forms);
    add("spinor_curvature_commutator", ops, "R^S(e_i, e_j) phi = (nabla_i nabla_j - nabla_j nabla_i) phi", 1e-9, spinor_curvature_commutator);
    add("dirac_unitary_frame_form", ops, "sum {v_i . nabla_{w_i} - w_i . nabla_{v_i}} phi = -sum Je_i . nabla_{e_i} phi", 1e-12, dirac_unitary_frame_form);
    add("dirac_tilde_unitary_frame_form", ops, "sum {Jv_i . nabla_{w_i} - Jw_i . nabla_{v_i}} phi = sum e_i . nabla_{e_i} phi", 1e-12, dirac_tilde_unitary_frame_form);
    add("principal_symbol", ops, "D'(f phi) - f D'(phi) = (df)^sharp . phi", 1e-10, principal_symbol);
    add("dirac_self_adjoint", ops, "<D phi, psi> = <phi, D psi>, D = D' - 1/2 (kappa^sharp + tau).", 1e-10,
        [](Context& c, Rng& r) { return self_adjoint(c, r, OperatorName::D); });
    add("dirac_tilde_self_adjoint", ops, "<D~ phi, psi> = <phi, D~ psi>, D~ = D~' - 1/2 J(kappa^sharp + tau).", 1e-10,
        [](Context& c, Rng& r) { return self_adjoint(c, r, OperatorName::Dtilde); });
    add("p_operator_self_adjoint", ops, "<P phi, psi> = <phi, P psi>, P = i(D~ D - D D~)", 1e-10,
        [](Context& c, Rng& r) { return self_adjoint(c, r, OperatorName::P); });
    add("uncorrected_dirac_not_self_adjoint", ops, "<D' phi, psi> != <phi, D' psi> when kappa^sharp + tau != 0", 1e-9,
        uncorrected_dirac_not_self_adjoint, Comparison::AtLeast);
    add("connection_laplacian_two_path", ops, "<nabla*nabla phi, psi> = sum_i <nabla_{e_i} phi, nabla_{e_i} psi>, nabla*nabla = -sum {nabla_i nabla_i + div(e_i) nabla_i} + nabla_{J(kappa^sharp + tau)}", 1e-9, connection_laplacian_two_path_check);
    add("connection_adjoint", ops, "<nabla phi, Psi> = <phi, -tr(nabla Psi) + Psi(J(kappa^sharp + tau))>", 1e-9, connection_adjoint);
    add("connection_laplacian_nonnegative", ops, "<nabla*nabla phi, phi> >= 0", 1e-10, connection_laplacian_nonnegative);
    add("dirac_clifford_commutator", ops, "D(s.phi) = s.D phi + P(s).phi - i nabla_s phi - (i/2) omega(s, kappa^sharp + tau) phi", 1e-8, dirac_clifford_commutator);
    add("dirac_tilde_clifford_commutator", ops, "D~(s.phi) = s.D~ phi + P~(s).phi + i nabla_{Js} phi + (i/2) omega(Js, kappa^sharp + tau) phi", 1e-8, dirac_tilde_clifford_commutator);
    add("clifford_quadratic_relation", ops, "P(s) + P~(Js) = -P(J)(Js) - i div(s) + sum {e_i omega(e_j, Js) - e_j omega(e_i, Js)} e_i . Je_j - sum omega(T(e_i, e_j), Js) e_i . Je_j", 1e-8, clifford_quadratic_relation_check);
    add("weitzenbock_general", ops, "P = nabla*nabla + iF - |c|^2/4 + (i/2){P(Jc) - P~(c)} + i sum P(J)(Je_i) nabla_i + i sum e_i . Je_j . nabla_{T(e_i,e_j)}, c = kappa^sharp + tau", 1e-8,
        [](Context& c, Rng& r) { return weitzenbock(c, r, W::General); });
    add("weitzenbock_fedosov", ops, "P = nabla*nabla + iF - |kappa|^2/4 + (i/2){P(J kappa^sharp) - P~(kappa^sharp)} + i sum P(J)(Je_i) nabla_i", 1e-8,
        [](Context& c, Rng& r) { return weitzenbock(c, r, W::Fedosov); });
    add("weitzenbock_minimal_flow", ops, "P = nabla*nabla + iF - |tau|^2/4 + (i/2){P(J tau) - P~(tau)} + i sum P(J)(Je_i) nabla_i + i sum e_i . Je_j . nabla_{T(e_i,e_j)}", 1e-8,
        [](Context& c, Rng& r) { return weitzenbock(c, r, W::MinimalFlow); });
    add("hamilton_parallel", ops, "nabla_X(H phi) = H(nabla_X phi) + 1/2 sum_j J(nabla_X J)e_j . e_j . phi", 1e-8, hamilton_parallel);
    add("hamilton_parallel_correction_necessary", ops, "nabla_X(H phi) != H(nabla_X phi) when nabla J != 0", 1e-6,
        hamilton_parallel_correction_necessary, Comparison::AtLeast);
    add("grading_dirac", ops, "H(D phi) = D(H phi) + i D~ phi", 1e-10, [](Context& c, Rng& r) { return grading(c, r, 0); });
    add("grading_dirac_tilde", ops, "H(D~ phi) = D~(H phi) - i D phi", 1e-10, [](Context& c, Rng& r) { return grading(c, r, 1); });
    add("grading_p_operator", ops, "H(P phi) = P(H phi)", 1e-10, [](Context& c, Rng& r) { return grading(c, r, 2); });
    add("p_level_blocks", ops, "P maps Sp_l into Sp_l when nabla J = 0", 1e-10, p_level_blocks);
    add("vacuum_clifford", ops, "Js.phi = i s.phi for phi in Sp_0", 1e-12, vacuum_clifford);
    add("complexified_divergence", ops, "{P(Js) - P~(s)}.phi = div(s - iJs) phi for phi in Sp_0", 1e-9, complexified_divergence);
    add("vacuum_curvature", ops, "F(phi) = (i/4) r phi for phi in Sp_0", 1e-9, vacuum_curvature);
    add("vacuum_weitzenbock_general", ops, "P phi = nabla*nabla phi - (r + |c|^2)/4 phi + (i/2) div(c - iJc) phi + i nabla_tau phi on Sp_0, c = kappa^sharp + tau", 1e-8,
        [](Context& c, Rng& r) { return vacuum_weitzenbock(c, r, V::General); });
    add("vacuum_weitzenbock_fedosov", ops, "P phi = nabla*nabla phi - (r + |kappa|^2)/4 phi + (i/2) div(kappa^sharp - iJ kappa^sharp) phi on Sp_0", 1e-8, vacuum_weitzenbock_fedosov);
    add("vacuum_weitzenbock_flow", ops, "P phi = nabla*nabla phi - (r + |tau|^2)/4 phi + (i/2) div(tau - iJ tau) phi + i nabla_tau phi on Sp_0", 1e-8,
        [](Context& c, Rng& r) { return vacuum_weitzenbock(c, r, V::Flow); });
    add("mean_curvature_automorphic", ops, "{P(kappa^g) - P~(J kappa^g)}.phi = 0 when J nabla_Y kappa^g = nabla_{JY} kappa^g", 1e-10, mean_curvature_automorphic);
    add("weitzenbock_kahler", ops, "P = nabla*nabla + iF - |kappa|^2/4 + (i/2){P(kappa^g) + P~(J kappa^g)}", 1e-8,
        [](Context& c, Rng& r) { return weitzenbock(c, r, W::Kahler); });
    add("vacuum_weitzenbock_kahler", ops, "P phi = nabla*nabla phi - (r + |kappa|^2)/4 phi + 1/2 div(kappa^g - iJ kappa^g) phi on Sp_0", 1e-8,
        [](Context& c, Rng& r) { return vacuum_weitzenbock(c, r, V::Kahler); });
    add("mean_curvature_divergence", ops, "div(kappa^g - iJ kappa^g) = |kappa|^2", 1e-10, mean_curvature_divergence);
    add("ricci_spinor_curvature_trace", ops, "sum_j R^S(e_j, Je_j) phi = i sum_j Ric(e_j) . e_j . phi", 1e-11,
        [](Context& c, Rng& r) { return ricci_spinor(c, r, true); });
    add("ricci_clifford_trace", ops, "sum_j Ric(e_j) . Je_j . phi = -(i/2) r phi", 1e-11,
        [](Context& c, Rng& r) { return ricci_spinor(c, r, false); });
    add("chsc_curvature_action", ops, "iF(phi) = h/4 n(n-1) phi - 2h H^2 phi", 1e-11, chsc_curvature_action);
    add("weitzenbock_chsc", ops, "P = nabla*nabla + h/4 n(n-1) - 2h H^2 - |kappa|^2/4 + (i/2){P(kappa^g) + P~(J kappa^g)}", 1e-8,
        [](Context& c, Rng& r) { return weitzenbock(c, r, W::ConstantHolomorphic); });
    add("vacuum_weitzenbock_chsc", ops, "P phi = nabla*nabla phi - h/4 n(n+1) phi - |kappa|^2/4 phi + 1/2 div(kappa^g - iJ kappa^g) phi on Sp_0", 1e-10,
        [](Context& c, Rng& r) { return vacuum_weitzenbock(c, r, V::ConstantHolomorphic); });

    add("flat_golden_spectrum", spec, "P(e^{2 pi i k.x} f) = 4 pi^2 |k|^2 e^{2 pi i k.x} f on the flat torus", 1e-9, flat_golden_spectrum);
    add("p_spectrum_hermiticity", spec, "<P e_j, e_i> = conj <P e_i, e_j> on the Galerkin space", 1e-10, p_spectrum_hermiticity);
    add("vacuum_kernel_trivial", spec, "ker P^0 = 0 when r < 0: lambda(P^0) >= -max r / 4", 1e-10, vacuum_kernel_trivial);
    add("vacuum_eigenvalue_bound", spec, "lambda(P^0) >= -h/4 n(n+1) + 1/4 min |kappa|^2", 1e-10, vacuum_eigenvalue_bound);
    add("eigenvalue_bound", spec, "lambda(P) >= -h/4 n(n-1) for h <= 0 on a minimal foliation", 1e-10, eigenvalue_bound);
    return t;
  }();
  return table;
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

Rng check_rng(std::uint64_t seed, const std::string& name) {
  const std::uint64_t h = name_hash(name);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

bool passes(double residual, double tolerance, Comparison comparison) {
  if (std::isnan(residual)) return false;
  return comparison == Comparison::AtMost ? residual <= tolerance : residual >= tolerance;
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buffer;
}

}  // namespace

const std::vector<CheckDefinition>& check_catalog() {
  static const std::vector<CheckDefinition> out = [] {
    std::vector<CheckDefinition> v;
    for (const Registered& r : registry()) v.push_back(r.definition);
    return v;
  }();
  return out;
}

const CheckDefinition* find_check(const std::string& name) {
  for (const CheckDefinition& d : check_catalog()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

VerificationReport run_suite(const SuiteConfig& config) {
  validate_suite_config(config);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.timing.started_at = timestamp();
  Context context(config);

  ReportMetadata& meta = report.metadata;
  meta.model = model_name(config.model);
  meta.n = config.n;
  meta.level = config.level;
  meta.modes = config.modes;
  meta.spectral_modes = config.effective_spectral_modes();
  meta.seed = config.seed;
  meta.tol_scale = config.tol_scale;
  meta.j_compatible = config.j_compatible;
  meta.h = context.model.flags.chsc_h.value_or(config.model == ModelKind::ChscFiber ? config.h : 0.0);
  meta.amplitude = config.amplitude;
  meta.aliasing_residual = context.model.leaf_density_tail;
  meta.library_version = kLibraryVersion;

  for (const Registered& entry : registry()) {
    const CheckDefinition& def = entry.definition;
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), def.name) == config.only.end()) {
      continue;
    }
    CheckRecord record;
    record.name = def.name;
    record.suite = def.suite;
    record.anchor = def.anchor;
    record.comparison = def.comparison;
    record.tolerance = def.tolerance * config.tol_scale;
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = check_rng(config.seed, def.name);
    try {
      const Outcome outcome = entry.run(context, rng);
      if (outcome.tolerance) record.tolerance = *outcome.tolerance * config.tol_scale;
      record.residual = outcome.residual;
      record.note = outcome.note;
      record.status = passes(record.residual, record.tolerance, record.comparison) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const HypothesisError& e) {
      record.status = CheckStatus::Skipped;
      record.residual = 0.0;
      record.note = std::string("hypothesis: ") + e.what();
    } catch (const Error& e) {
      record.status = CheckStatus::Fail;
      record.residual = kInf;
      record.note = std::string("error: ") + e.what();
    }
    report.timing.check_seconds[def.name] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.checks.push_back(std::move(record));
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  report.spectra = std::move(context.spectra);
  report.timing.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sympdirac
