#pragma once

// Galerkin assembly and spectra of the spinor operators on the finite space
// spanned by e_(k, beta): Fourier mode k with |k|_inf <= cutoff and fiber
// state beta with level in [min_level, max_level].
//
//   M_ij = <A e_j, e_i>,   G_ij = <e_j, e_i>
//
// in the leaf-density weighted product; eigenvalues solve M x = lambda G x.
// Hermiticity of M is checked, never forced.

#include <iosfwd>
#include <optional>
#include <vector>

#include "sympdirac/spinor_calculus.hpp"

namespace sympdirac {

struct GalerkinElement {
  Mode mode;
  int ordinal = 0;
  int level = 0;
};

struct GalerkinWindow {
  int cutoff = 1;
  int min_level = 0;
  int max_level = 0;
};

std::vector<GalerkinElement> galerkin_basis(const SpinorBundle& bundle, const GalerkinWindow& window);

struct AssembledOperator {
  OperatorName name = OperatorName::P;
  GalerkinWindow window;
  std::vector<GalerkinElement> basis;
  ComplexMatrix matrix;
  ComplexMatrix gram;
  // ||M - M^*|| / ||M|| (Frobenius)
  double hermiticity_residual = 0.0;
};

AssembledOperator assemble_operator(const SpinorBundle& bundle, OperatorName name, const GalerkinWindow& window);

struct Eigenpair {
  double eigenvalue = 0.0;
  Mode dominant_mode;
  int dominant_level = 0;
};

struct SpectrumRequest {
  OperatorName name = OperatorName::P;
  int cutoff = 1;
  // Highest fiber level of the trial space; defaults to the bundle level.
  std::optional<int> max_level;
  // Restrict to one level block (P^l).
  std::optional<int> level;
  double hermiticity_tol = 1e-10;
};

struct Spectrum {
  OperatorName name = OperatorName::P;
  std::vector<Eigenpair> eigenpairs;  // ascending
  double hermiticity_residual = 0.0;
  // Level blocks assembled separately (P with nabla J = 0), else empty.
  std::vector<int> block_levels;
  int dimension() const { return static_cast<int>(eigenpairs.size()); }
  double min_eigenvalue() const;
};

// Throws NonHermitianError when an assembled block fails the gate and
// HypothesisError for operators that are not formally self-adjoint on the model.
Spectrum compute_spectrum(const SpinorBundle& bundle, const SpectrumRequest& request);

// Header plus one line per eigenvalue:
// operator,index,eigenvalue,dominant_mode,dominant_level
void write_spectrum_csv(std::ostream& out, const std::vector<Spectrum>& spectra);

}  // namespace sympdirac
