#include "softtorus/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace softtorus {

namespace {

constexpr double kPi = std::numbers::pi;

// Deterministic phase fix: first component of modulus >= floor is made
// real positive. Eigenvector bases stay bases under column phases.
void phase_normalize_columns(Matrix& basis) {
  constexpr double kFloor = 1e-8;
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      const Complex z = basis(r, c);
      const double m = std::abs(z);
      if (m >= kFloor) {
        basis.col(c) *= std::conj(z) / m;
        break;
      }
    }
  }
}

void check_branch(const RealVector& phases, double margin) {
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    if (phases[i] < -kPi + margin) {
      raise(ErrorCode::BranchCut,
            "eigenphase " + std::to_string(phases[i]) +
                " lies within the branch margin of -pi");
    }
  }
}

}  // namespace

bool is_finite(const Matrix& a) { return a.allFinite(); }

void require_finite(const Matrix& a) {
  if (!a.allFinite()) raise(ErrorCode::NonFinite, "matrix has NaN/Inf entries");
}

void require_square(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    raise(ErrorCode::InvalidArgument,
          "expected a nonempty square matrix, got " + std::to_string(a.rows()) +
              "x" + std::to_string(a.cols()));
  }
}

double hermitian_defect(const Matrix& a) {
  const double scale = std::max(1.0, op_norm(a));
  return op_norm(Matrix(a - a.adjoint())) / scale;
}

double unitary_defect(const Matrix& u) {
  return op_norm(Matrix(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())));
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && a.allFinite() && hermitian_defect(a) <= tol;
}

bool is_unitary(const Matrix& u, double tol) {
  return u.rows() == u.cols() && u.allFinite() && unitary_defect(u) <= tol;
}

void require_hermitian(const Matrix& a, double tol) {
  require_square(a);
  require_finite(a);
  const double d = hermitian_defect(a);
  if (d > tol) {
    raise(ErrorCode::NotHermitian,
          "||A - A*|| = " + std::to_string(d) + " exceeds tolerance");
  }
}

void require_unitary(const Matrix& u, double tol) {
  require_square(u);
  require_finite(u);
  const double d = unitary_defect(u);
  if (d > tol) {
    raise(ErrorCode::NotUnitary,
          "||U*U - I|| = " + std::to_string(d) + " exceeds tolerance");
  }
}

double op_norm(const Matrix& a) {
  require_square(a);
  require_finite(a);
  return a.operatorNorm();
}

double hyponormal_defect(const Matrix& x) {
  require_square(x);
  require_finite(x);
  const Matrix c = x.adjoint() * x - x * x.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Complex normalized_trace(const Matrix& x) {
  require_square(x);
  require_finite(x);
  return x.trace() / static_cast<double>(x.rows());
}

HermEig herm_eig(const Matrix& h, const Tolerances& tol) {
  require_hermitian(h, tol.hermitian_tol);
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    raise(ErrorCode::InvalidArgument, "Hermitian eigendecomposition failed");
  }
  HermEig out{es.eigenvalues(), es.eigenvectors()};
  phase_normalize_columns(out.basis);
  return out;
}

UnitaryEig unitary_eig(const Matrix& u, const Tolerances& tol) {
  require_unitary(u, tol.unitary_tol);
  // A unitary matrix is normal, so its Schur form is diagonal up to
  // roundoff and the Schur basis serves as an orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    raise(ErrorCode::InvalidArgument, "Schur decomposition failed");
  }
  const Eigen::Index n = u.rows();
  RealVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    phases[i] = std::arg(schur.matrixT()(i, i));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return phases[a] < phases[b];
                   });
  UnitaryEig out;
  out.phases.resize(n);
  out.basis.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.phases[i] = phases[order[static_cast<std::size_t>(i)]];
    out.basis.col(i) = schur.matrixU().col(order[static_cast<std::size_t>(i)]);
  }
  phase_normalize_columns(out.basis);
  return out;
}

Matrix unitary_log(const Matrix& u, const Tolerances& tol) {
  const UnitaryEig ue = unitary_eig(u, tol);
  check_branch(ue.phases, tol.branch_margin);
  const Matrix theta =
      ue.basis * ue.phases.cast<Complex>().asDiagonal() * ue.basis.adjoint();
  return 0.5 * (theta + theta.adjoint());
}

Matrix psd_sqrt(const Matrix& p, const Tolerances& tol) {
  const HermEig he = herm_eig(p, tol);
  RealVector roots(he.values.size());
  for (Eigen::Index i = 0; i < he.values.size(); ++i) {
    const double lam = he.values[i];
    if (lam < -tol.psd_clip) {
      raise(ErrorCode::NotPSD,
            "eigenvalue " + std::to_string(lam) + " below -psd_clip");
    }
    roots[i] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  const Matrix s =
      he.basis * roots.cast<Complex>().asDiagonal() * he.basis.adjoint();
  return 0.5 * (s + s.adjoint());
}

Matrix unitary_power(const Matrix& u, double t, const Tolerances& tol) {
  if (!(t >= 0.0 && t <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "power exponent must lie in [0, 1]");
  }
  const UnitaryEig ue = unitary_eig(u, tol);
  check_branch(ue.phases, tol.branch_margin);
  Eigen::VectorXcd d(ue.phases.size());
  for (Eigen::Index i = 0; i < ue.phases.size(); ++i) {
    d[i] = std::polar(1.0, t * ue.phases[i]);
  }
  return ue.basis * d.asDiagonal() * ue.basis.adjoint();
}

Matrix exp_i_hermitian(const Matrix& h, double scale, const Tolerances& tol) {
  const HermEig he = herm_eig(h, tol);
  Eigen::VectorXcd d(he.values.size());
  for (Eigen::Index i = 0; i < he.values.size(); ++i) {
    d[i] = std::polar(1.0, scale * he.values[i]);
  }
  return he.basis * d.asDiagonal() * he.basis.adjoint();
}

Matrix random_complex_matrix(SeededRng& rng, int dim) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

Matrix random_unitary(SeededRng& rng, int dim) {
  const Matrix g = random_complex_matrix(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_hermitian(SeededRng& rng, int dim) {
  const Matrix g = random_complex_matrix(rng, dim);
  return 0.5 * (g + g.adjoint());
}

Matrix random_hermitian_ball(SeededRng& rng, int dim, double radius) {
  const Matrix h = random_hermitian(rng, dim);
  const double n = op_norm(h);
  const double target = radius * rng.uniform();
  if (n == 0.0) return h;
  return (target / n) * h;
}

}  // namespace softtorus
