#pragma once

// Desk-scale transversely symplectic foliations over the torus T^{2n}.
//
// All transverse data are basic and expanded in the unitary frame
// (e_1..e_n, Je_1..Je_n), which is also a coordinate frame on the torus, so
// frame brackets vanish. A connection is given by matrix fields Gamma(X),
// nabla_{e_X} e_k = sum_l Gamma(X)_{lk} e_l.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sympdirac/trig_series.hpp"

namespace sympdirac {

enum class ModelKind {
  FlatKahlerTorus,
  HeisenbergFlow,
  WarpedNonTaut,
  SymmetricPerturbedFedosov,
  TorsionPerturbedSymplectic,
  ChscFiber,
};

std::string model_name(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

// c cos(2 pi k.x) + s sin(2 pi k.x)
struct RealTerm {
  Mode k;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

// A real 3-tensor (2n)^3 modulated by a real wave. Entry (a, b, c) sits at
// values[(a * 2n + b) * 2n + c].
struct TensorTerm {
  RealTerm wave;
  std::vector<double> values;
};

struct ModelSpec {
  ModelKind kind = ModelKind::FlatKahlerTorus;
  int n = 1;
  int cutoff = 2;
  double h = 0.0;
  bool j_compatible = false;
  // WarpedNonTaut: leaf metric exp(2 f) dtheta^2.
  std::vector<RealTerm> warp;
  // SymmetricPerturbedFedosov: S(X, s, t), totally symmetric.
  std::vector<TensorTerm> symmetric;
  // TorsionPerturbedSymplectic: A(X)_{lk}, each A(X) in sp(n).
  std::vector<TensorTerm> torsion;
};

// Catalog defaults; perturbations use modes with |k|_inf <= 1 and random
// tensors drawn from seed.
ModelSpec default_model_spec(ModelKind kind, int n, int cutoff, std::uint64_t seed, double amplitude = 0.2);

ScalarSeries real_term_series(int dim, const RealTerm& term);

struct ConnectionData {
  int n = 0;
  std::vector<MatrixSeries> gamma;
  bool is_symplectic = false;
  bool is_torsion_free = false;
  bool preserves_J = false;
};

// Builds connection data and recomputes its flags.
ConnectionData make_connection(int n, std::vector<MatrixSeries> gamma);
ConnectionData make_j_compatible(const ConnectionData& connection);

double symplectic_residual(const ConnectionData& connection);
double complex_structure_residual(const ConnectionData& connection);
std::vector<VectorSeries> torsion_tensor(const ConnectionData& connection);

// nabla_{e_X} s and nabla_u s for a constant direction u.
VectorSeries covariant_derivative(const ConnectionData& connection, int axis, const VectorSeries& s);
VectorSeries covariant_derivative(const ConnectionData& connection, const ComplexVector& u, const VectorSeries& s);
// (nabla_{e_X} J) = [Gamma(X), J]
MatrixSeries complex_structure_derivative(const ConnectionData& connection, int axis);

// max over random section pairs of |(nabla g)(s, t)| coefficients, using
// exact derivatives.
double metric_residual(const ConnectionData& connection, const std::vector<VectorSeries>& sections);

struct CurvatureTensor {
  int n = 0;
  // R(e_i, e_j) at index i * 2n + j
  std::vector<MatrixSeries> components;

  const MatrixSeries& at(int i, int j) const { return components.at(i * 2 * n + j); }
  // R(X, Y) for constant X, Y, pointwise matrix series.
  MatrixSeries evaluate(const ComplexVector& x, const ComplexVector& y) const;
};

CurvatureTensor curvature_from_connection(const ConnectionData& connection);
// Constant tensor of constant holomorphic sectional curvature h.
CurvatureTensor chsc_curvature(int n, double h);
RealMatrix chsc_component(int n, double h, int i, int j);

struct ModelFlags {
  bool symplectic = false;
  bool torsion_free = false;
  bool preserves_J = false;
  bool fedosov = false;
  bool kahler = false;
  bool minimal = false;
  // J nabla_Y kappa^g = nabla_{JY} kappa^g for all Y
  bool automorphic = false;
  // kappa closed and co-closed for the leaf-density weighted product
  bool basic_harmonic = false;
  bool fiber_only = false;
  std::optional<double> chsc_h;
};

class FoliationModel {
 public:
  ModelSpec spec;
  int n = 0;
  int d = 0;
  int leaf_dimension = 0;
  ConnectionData connection;
  std::vector<VectorSeries> torsion;  // T(e_i, e_j) at i * 2n + j
  VectorSeries tau;
  VectorSeries kappa_form;
  VectorSeries kappa_sharp;
  VectorSeries kappa_sharp_g;
  ScalarSeries warp;
  ScalarSeries leaf_density;
  double leaf_density_tail = 0.0;
  CurvatureTensor curvature;
  ModelFlags flags;

  std::string name() const;
  const VectorSeries& torsion_at(int i, int j) const { return torsion.at(i * d + j); }
  // kappa^sharp + tau
  VectorSeries mean_plus_torsion() const;
  ComplexVector unit(int a) const;
};

FoliationModel build_model(const ModelSpec& spec);
// Same foliation data with a different transverse connection.
FoliationModel with_connection(const FoliationModel& model, const ConnectionData& connection);

// Symplectic-trace divergence; frame columns (v_1..v_n, w_1..w_n) must form
// a symplectic frame. The default is the unitary frame.
ScalarSeries transversal_divergence(const FoliationModel& model, const VectorSeries& s,
                                    const RealMatrix* frame = nullptr);

struct DivergenceBalance {
  Complex lhs;
  Complex rhs;
  double residual() const { return std::abs(lhs - rhs); }
};

// Both sides of int div(s) mu = int omega(kappa^sharp + tau, s) mu.
DivergenceBalance divergence_theorem(const FoliationModel& model, const VectorSeries& s);
double divergence_theorem_residual(const FoliationModel& model, const VectorSeries& s);

// Torsion vector sum_j T(v_j, w_j) for a symplectic frame.
VectorSeries torsion_vector(const FoliationModel& model, const RealMatrix* frame = nullptr);

struct SymplecticRicci {
  MatrixSeries sric;        // Sric(s, t) = s^T M t
  ScalarSeries r;           // trace form over the unitary frame
  ScalarSeries r_alternate; // 1/2 sum_ij omega(R(e_i, Je_i) e_j, e_j)
};

SymplecticRicci symplectic_ricci(const FoliationModel& model, const RealMatrix* frame = nullptr);
// Ric(X) = sum_j R(X, e_j) e_j as a matrix field.
MatrixSeries ricci_operator(const CurvatureTensor& curvature);

// Curvature identities, maximised over components and Fourier coefficients and
// divided by max(1, max |R|).
// R(X, Y) = -R(Y, X)
double curvature_antisymmetry_residual(const CurvatureTensor& curvature);
// omega(R(X, Y)s, t) = omega(R(X, Y)t, s)
double curvature_symplectic_residual(const CurvatureTensor& curvature);
// omega(R(X, Y)Js, Jt) = omega(R(X, Y)s, t)
double curvature_j_invariance_residual(const CurvatureTensor& curvature);
// Ric(X) = 1/2 sum_j R(e_j, Je_j) J X
double ricci_half_trace_residual(const CurvatureTensor& curvature);
// omega(R(X, JX)X, X) = h omega(X, JX)^2 at the given points and unit directions.
double holomorphic_sectional_residual(const CurvatureTensor& curvature, double h, const std::vector<RealVector>& points,
                                      const std::vector<RealVector>& directions);
// Difference from the closed-form tensor of constant holomorphic sectional curvature h.
double chsc_tensor_residual(const CurvatureTensor& curvature, double h);

// Sample points used for pointwise tensor identities.
std::vector<RealVector> sample_points(int d, int count, Rng& rng);

}  // namespace sympdirac
