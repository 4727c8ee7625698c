#pragma once

// Linear algebra on the model normal space R^{2n}.
//
// Frame ordering is (e_1..e_n, e_{n+1}=Je_1..e_{2n}=Je_n). The symplectic
// frame is v_j = e_j, w_j = e_{n+j}, so omega(s,t) = s^T Omega t with
// Omega = [[0, I], [-I, 0]] and J_0 = [[0, -I], [I, 0]]. The metric
// g(s,t) = omega(s, Jt) is the identity in this frame.

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace sympdirac {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Coefficients of a (possibly complexified) normal vector in the unitary frame.
using NormalCoeffs = ComplexVector;

using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline const Complex kI{0.0, 1.0};

RealMatrix symplectic_form(int n);
RealMatrix complex_structure(int n);

// omega(s, t), complex-bilinear.
Complex omega(const ComplexVector& s, const ComplexVector& t);
// g(s, t) = omega(s, Jt), complex-bilinear.
Complex metric(const ComplexVector& s, const ComplexVector& t);

// omega-dual of a 1-form: the vector s with i(s)omega = alpha.
ComplexVector omega_sharp(const ComplexVector& one_form);

// max |A^T Omega + Omega A|; zero iff A lies in sp(n, R) (complexified).
double sp_residual(const ComplexMatrix& a);
double sp_residual(const RealMatrix& a);

// Random element Omega * S of sp(n, R) with S symmetric Gaussian.
RealMatrix random_sp(int n, Rng& rng, double scale = 1.0);

// Random linear symplectic map U (U^T Omega U = Omega); its columns form a
// symplectic frame (v'_1..v'_n, w'_1..w'_n).
RealMatrix random_symplectic_frame(int n, Rng& rng);

// Random unitary-and-symplectic map (commutes with J_0).
RealMatrix random_unitary_frame(int n, Rng& rng);

double binomial(int n, int k);

}  // namespace sympdirac
