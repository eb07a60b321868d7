#pragma once

#include <Eigen/Dense>
#include <complex>

#include "softtorus/error.hpp"
#include "softtorus/rng.hpp"
#include "softtorus/tolerances.hpp"

namespace softtorus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// ---- validation ------------------------------------------------------

bool is_finite(const Matrix& a);
void require_finite(const Matrix& a);
void require_square(const Matrix& a);

// ||A - A*|| relative to max(1, ||A||), operator norm
double hermitian_defect(const Matrix& a);
// ||U*U - I||, operator norm
double unitary_defect(const Matrix& u);

bool is_hermitian(const Matrix& a, double tol = kDefaultTol.hermitian_tol);
bool is_unitary(const Matrix& u, double tol = kDefaultTol.unitary_tol);
void require_hermitian(const Matrix& a, double tol = kDefaultTol.hermitian_tol);
void require_unitary(const Matrix& u, double tol = kDefaultTol.unitary_tol);

// ---- norms and traces ------------------------------------------------

// largest singular value
double op_norm(const Matrix& a);

// smallest eigenvalue of X*X - XX*; X is d-hyponormal iff result >= -d
double hyponormal_defect(const Matrix& x);

// (1/dim) * tr(X)
Complex normalized_trace(const Matrix& x);

// ---- spectral calculus -----------------------------------------------

// H = basis * diag(values) * basis^*, values ascending, each basis column
// rotated so its first component of modulus >= 1e-8 is real positive.
struct HermEig {
  RealVector values;
  Matrix basis;
};
HermEig herm_eig(const Matrix& h, const Tolerances& tol = kDefaultTol);

// U = basis * diag(exp(i*phases)) * basis^*, phases in (-pi, pi] ascending.
struct UnitaryEig {
  RealVector phases;
  Matrix basis;
};
UnitaryEig unitary_eig(const Matrix& u, const Tolerances& tol = kDefaultTol);

// principal Theta with U = exp(i*Theta), spectrum in (-pi, pi].
// Eigenvalues with phase inside branch_margin of -pi raise BranchCut.
Matrix unitary_log(const Matrix& u, const Tolerances& tol = kDefaultTol);

// S >= 0 with S^2 = P; eigenvalues below -psd_clip raise NotPSD,
// negatives inside the clip are clamped to zero.
Matrix psd_sqrt(const Matrix& p, const Tolerances& tol = kDefaultTol);

// U^t on principal eigenphases, t in [0, 1]
Matrix unitary_power(const Matrix& u, double t,
                     const Tolerances& tol = kDefaultTol);

// exp(i*scale*H) for Hermitian H
Matrix exp_i_hermitian(const Matrix& h, double scale = 1.0,
                       const Tolerances& tol = kDefaultTol);

// ---- seeded samplers ---------------------------------------------------

// iid complex Gaussian entries
Matrix random_complex_matrix(SeededRng& rng, int dim);
// Haar-distributed via QR of a Gaussian matrix with the phase fix
Matrix random_unitary(SeededRng& rng, int dim);
// GUE-like Hermitian, entries O(1)
Matrix random_hermitian(SeededRng& rng, int dim);
// Hermitian with operator norm uniform in [0, radius]
Matrix random_hermitian_ball(SeededRng& rng, int dim, double radius);

}  // namespace softtorus
