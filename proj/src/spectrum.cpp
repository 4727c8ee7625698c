#include "sympdirac/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "sympdirac/errors.hpp"

namespace sympdirac {

namespace {

int effective_cutoff(const SpinorBundle& bundle, int cutoff) {
  return bundle.model().flags.fiber_only ? 0 : cutoff;
}

// Coefficients <f, e_i> for every basis element.
ComplexVector project(const SpinorBundle& bundle, const SpinorField& f, const std::vector<GalerkinElement>& basis) {
  const auto& rho = bundle.model().leaf_density.terms();
  std::map<Mode, ComplexVector> weighted;
  ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const GalerkinElement& e = basis[i];
    auto it = weighted.find(e.mode);
    if (it == weighted.end()) {
      ComplexVector acc = ComplexVector::Zero(f.fiber_dim());
      for (const auto& [p, r] : rho) {
        auto src = f.modes().find(add_modes(e.mode, negate_mode(p)));
        if (src != f.modes().end()) acc += r * src->second;
      }
      it = weighted.emplace(e.mode, std::move(acc)).first;
    }
    if (e.ordinal < it->second.size()) out[static_cast<Eigen::Index>(i)] = it->second[e.ordinal];
  }
  return out;
}

void require_self_adjoint(const FoliationModel& model, OperatorName name) {
  switch (name) {
    case OperatorName::Dprime:
    case OperatorName::Dtildeprime:
    case OperatorName::F:
      throw HypothesisError(operator_label(name) + " is not formally self-adjoint");
    case OperatorName::Dtilde:
    case OperatorName::P:
      if (!model.flags.preserves_J) {
        throw HypothesisError(operator_label(name) + " is formally self-adjoint only when nabla J = 0");
      }
      return;
    default:
      return;
  }
}

std::vector<Eigenpair> solve(const AssembledOperator& op, double tol) {
  if (op.hermiticity_residual > tol) {
    throw NonHermitianError("assembled " + operator_label(op.name) + " has Hermiticity residual " +
                            std::to_string(op.hermiticity_residual) + " above " + std::to_string(tol));
  }
  std::vector<Eigenpair> out;
  if (op.basis.empty()) return out;
  // Only the lower triangle is read by the solver.
  Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> solver(op.matrix, op.gram);
  if (solver.info() != Eigen::Success) throw Error("generalized eigensolver failed for " + operator_label(op.name));
  const RealVector& values = solver.eigenvalues();
  const ComplexMatrix& vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < values.size(); ++c) {
    Eigen::Index best = 0;
    vectors.col(c).cwiseAbs2().maxCoeff(&best);
    out.push_back({values[c], op.basis[best].mode, op.basis[best].level});
  }
  return out;
}

}  // namespace

std::vector<GalerkinElement> galerkin_basis(const SpinorBundle& bundle, const GalerkinWindow& window) {
  if (window.cutoff < 0) throw InvalidArgument("galerkin_basis: negative cutoff");
  if (window.min_level < 0 || window.max_level < window.min_level || window.max_level > bundle.level()) {
    throw InvalidArgument("galerkin_basis: level window [" + std::to_string(window.min_level) + ", " +
                          std::to_string(window.max_level) + "] outside 0.." + std::to_string(bundle.level()));
  }
  const FiberBasis& fiber = bundle.algebra().basis();
  std::vector<GalerkinElement> out;
  for (const Mode& k : mode_cube(bundle.d(), effective_cutoff(bundle, window.cutoff))) {
    for (int o = fiber.level_offset(window.min_level); o < fiber.dim_through(window.max_level); ++o) {
      out.push_back({k, o, fiber.level_of(o)});
    }
  }
  return out;
}

AssembledOperator assemble_operator(const SpinorBundle& bundle, OperatorName name, const GalerkinWindow& window) {
  AssembledOperator op;
  op.name = name;
  op.window = window;
  op.basis = galerkin_basis(bundle, window);
  const auto size = static_cast<Eigen::Index>(op.basis.size());
  op.matrix = ComplexMatrix::Zero(size, size);
  op.gram = ComplexMatrix::Zero(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    const GalerkinElement& e = op.basis[j];
    SpinorField ej(bundle.n(), e.level);
    ComplexVector v = ComplexVector::Zero(e.ordinal + 1);
    v[e.ordinal] = 1.0;
    ej.add(e.mode, v);
    op.gram.col(j) = project(bundle, ej, op.basis);
    op.matrix.col(j) = project(bundle, bundle.apply_operator(name, ej), op.basis);
  }
  const double scale = op.matrix.norm();
  op.hermiticity_residual = scale > 0.0 ? (op.matrix - op.matrix.adjoint()).norm() / scale : 0.0;
  return op;
}

double Spectrum::min_eigenvalue() const {
  if (eigenpairs.empty()) throw InvalidArgument("empty spectrum");
  return eigenpairs.front().eigenvalue;
}

Spectrum compute_spectrum(const SpinorBundle& bundle, const SpectrumRequest& request) {
  require_self_adjoint(bundle.model(), request.name);
  const int top = request.max_level.value_or(bundle.level());
  Spectrum out;
  out.name = request.name;
  std::vector<GalerkinWindow> windows;
  if (request.level) {
    windows.push_back({request.cutoff, *request.level, *request.level});
  } else if (request.name == OperatorName::P || request.name == OperatorName::HJ) {
    // both preserve the level blocks when nabla J = 0
    for (int l = 0; l <= top; ++l) {
      windows.push_back({request.cutoff, l, l});
      out.block_levels.push_back(l);
    }
  } else {
    windows.push_back({request.cutoff, 0, top});
  }
  for (const GalerkinWindow& w : windows) {
    const AssembledOperator op = assemble_operator(bundle, request.name, w);
    out.hermiticity_residual = std::max(out.hermiticity_residual, op.hermiticity_residual);
    const std::vector<Eigenpair> pairs = solve(op, request.hermiticity_tol);
    out.eigenpairs.insert(out.eigenpairs.end(), pairs.begin(), pairs.end());
  }
  std::stable_sort(out.eigenpairs.begin(), out.eigenpairs.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.eigenvalue < b.eigenvalue; });
  return out;
}

void write_spectrum_csv(std::ostream& out, const std::vector<Spectrum>& spectra) {
  out << "operator,index,eigenvalue,dominant_mode,dominant_level\n";
  char buffer[64];
  for (const Spectrum& s : spectra) {
    for (std::size_t i = 0; i < s.eigenpairs.size(); ++i) {
      const Eigenpair& e = s.eigenpairs[i];
      std::snprintf(buffer, sizeof buffer, "%.17g", e.eigenvalue);
      out << operator_label(s.name) << ',' << i << ',' << buffer << ",\"";
      for (std::size_t a = 0; a < e.dominant_mode.size(); ++a) out << (a ? " " : "") << e.dominant_mode[a];
      out << "\"," << e.dominant_level << '\n';
    }
  }
}

}  // namespace sympdirac
