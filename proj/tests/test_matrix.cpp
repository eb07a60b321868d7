#include <doctest.h>

#include <cmath>
#include <numbers>

#include "softtorus/matrix.hpp"
#include "test_util.hpp"

using namespace softtorus;
using softtorus::testing::branch_safe_unitary;
using softtorus::testing::dist;

namespace {
constexpr double kPi = std::numbers::pi;

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

TEST_CASE("op_norm on pinned examples") {
  Matrix d = mat2(1.0, 0.0, 0.0, -3.0);
  CHECK(op_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

  Matrix n = mat2(0.0, 2.0, 0.0, 0.0);
  CHECK(op_norm(n) == doctest::Approx(2.0).epsilon(1e-12));

  // Jordan block: the Gram matrix [[1,1],[1,2]] has largest eigenvalue
  // (3+sqrt 5)/2, so the norm is its square root, the golden ratio.
  Matrix jordan = mat2(1.0, 1.0, 0.0, 1.0);
  const double gram_route = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
  CHECK(gram_route ==
        doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK(op_norm(jordan) == doctest::Approx(gram_route).epsilon(1e-10));
}

TEST_CASE("op_norm rejects bad input") {
  Matrix bad = mat2(1.0, std::nan(""), 0.0, 1.0);
  CHECK_THROWS_AS(op_norm(bad), Error);
  Matrix rect(1, 2);
  rect << 1.0, 2.0;
  CHECK_THROWS_AS(op_norm(rect), Error);
}

TEST_CASE("herm_eig on pinned examples") {
  const HermEig d = herm_eig(mat2(2.0, 0.0, 0.0, 1.0));
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(2.0));
  CHECK(std::abs(d.basis(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.basis(0, 1)) == doctest::Approx(1.0));

  const HermEig z = herm_eig(Matrix::Zero(3, 3));
  CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(dist(z.basis, Matrix::Identity(3, 3)) == doctest::Approx(0.0));

  // hand eigensolve: eigenpairs (1, (1,-1)/sqrt2) and (3, (1,1)/sqrt2)
  const Matrix h = mat2(2.0, 1.0, 1.0, 2.0);
  const HermEig e = herm_eig(h);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(e.basis(0, 0) - Complex(s, 0)) < 1e-10);
  CHECK(std::abs(e.basis(1, 0) - Complex(-s, 0)) < 1e-10);
  CHECK(std::abs(e.basis(0, 1) - Complex(s, 0)) < 1e-10);
  CHECK(std::abs(e.basis(1, 1) - Complex(s, 0)) < 1e-10);

  const Matrix recon =
      e.basis * e.values.cast<Complex>().asDiagonal() * e.basis.adjoint();
  CHECK(dist(recon, h) <= 1e-10 * op_norm(h));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CHECK_THROWS_AS(herm_eig(mat2(0.0, 1.0, 0.0, 0.0)), Error);
  try {
    herm_eig(mat2(0.0, 1.0, 0.0, 0.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("herm_eig is deterministic") {
  SeededRng rng(11);
  const Matrix h = random_hermitian(rng, 6);
  const HermEig a = herm_eig(h);
  const HermEig b = herm_eig(h);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.basis - b.basis).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unitary_log on pinned examples") {
  CHECK(op_norm(unitary_log(Matrix::Identity(4, 4))) <= 1e-12);

  const Matrix u = mat2(Complex(0, 1), 0.0, 0.0, Complex(0, -1));
  const Matrix theta = unitary_log(u);
  CHECK(dist(theta, mat2(kPi / 2, 0.0, 0.0, -kPi / 2)) <= 1e-12);

  // rotation by pi/3 has eigenvalues exp(+-i pi/3)
  const double c = std::cos(kPi / 3), s = std::sin(kPi / 3);
  const Matrix rot = mat2(c, -s, s, c);
  const Matrix t2 = unitary_log(rot);
  const HermEig he = herm_eig(t2);
  CHECK(he.values[0] == doctest::Approx(-kPi / 3).epsilon(1e-12));
  CHECK(he.values[1] == doctest::Approx(kPi / 3).epsilon(1e-12));
  CHECK(dist(exp_i_hermitian(t2), rot) <= 1e-9);
}

TEST_CASE("branch margin rejects phases just below -pi, accepts -1") {
  Matrix near_cut(1, 1);
  near_cut(0, 0) = std::polar(1.0, -kPi + 5e-9);
  CHECK_THROWS_AS(unitary_log(near_cut), Error);
  try {
    unitary_log(near_cut);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BranchCut);
  }

  // the principal phase of -1 is +pi, which is fine
  Matrix minus_one(1, 1);
  minus_one(0, 0) = -1.0;
  const Matrix theta = unitary_log(minus_one);
  CHECK(theta(0, 0).real() == doctest::Approx(kPi));
}

TEST_CASE("unitary_log rejects non-unitary input") {
  CHECK_THROWS_AS(unitary_log(mat2(2.0, 0.0, 0.0, 1.0)), Error);
}

TEST_CASE("psd_sqrt on pinned examples") {
  CHECK(dist(psd_sqrt(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)) <=
        1e-12);
  CHECK(dist(psd_sqrt(mat2(4.0, 0.0, 0.0, 9.0)), mat2(2.0, 0.0, 0.0, 3.0)) <=
        1e-12);

  // spectral calculus on the eigenpairs (1, 3)
  const double p = (std::sqrt(3.0) + 1.0) / 2.0;
  const double q = (std::sqrt(3.0) - 1.0) / 2.0;
  const Matrix s = psd_sqrt(mat2(2.0, 1.0, 1.0, 2.0));
  CHECK(dist(s, mat2(p, q, q, p)) <= 1e-10);
  CHECK(dist(Matrix(s * s), mat2(2.0, 1.0, 1.0, 2.0)) <= 1e-9);
}

TEST_CASE("psd_sqrt rejects genuinely negative input") {
  CHECK_THROWS_AS(psd_sqrt(mat2(-1.0, 0.0, 0.0, 1.0)), Error);
  try {
    psd_sqrt(mat2(-1.0, 0.0, 0.0, 1.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
  // negatives inside the clip are clamped
  const Matrix tiny = mat2(-5e-11, 0.0, 0.0, 1.0);
  CHECK(psd_sqrt(tiny)(0, 0).real() == 0.0);
}

TEST_CASE("unitary_power on pinned examples") {
  CHECK(dist(unitary_power(Matrix::Identity(3, 3), 0.7),
             Matrix::Identity(3, 3)) <= 1e-12);

  Matrix u(1, 1);
  u(0, 0) = std::polar(1.0, kPi / 2);
  CHECK(std::abs(unitary_power(u, 0.5)(0, 0) - std::polar(1.0, kPi / 4)) <=
        1e-12);

  // principal phase of -1 is +pi, so the half power is +i
  Matrix minus_one(1, 1);
  minus_one(0, 0) = -1.0;
  CHECK(std::abs(unitary_power(minus_one, 0.5)(0, 0) - Complex(0.0, 1.0)) <=
        1e-12);
}

TEST_CASE("unitary_power endpoints and group property") {
  SeededRng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_index(5));
    const Matrix u = branch_safe_unitary(rng, dim);
    CHECK(dist(unitary_power(u, 1.0), u) <= 1e-9);
    CHECK(dist(unitary_power(u, 0.0), Matrix::Identity(dim, dim)) <= 1e-9);
    const double s = rng.uniform(0.0, 0.5);
    const double t = rng.uniform(0.0, 0.5);
    CHECK(dist(Matrix(unitary_power(u, s) * unitary_power(u, t)),
               unitary_power(u, s + t)) <= 1e-9);
  }
}

TEST_CASE("exp of log round trip on random unitaries") {
  SeededRng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_index(8));
    const Matrix u = branch_safe_unitary(rng, dim);
    const Matrix theta = unitary_log(u);
    CHECK(hermitian_defect(theta) <= 1e-12);
    CHECK(dist(exp_i_hermitian(theta), u) <= 1e-9);
  }
}

TEST_CASE("psd_sqrt round trip on random PSD matrices") {
  SeededRng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_index(8));
    const Matrix g = random_complex_matrix(rng, dim);
    const Matrix p = (g * g.adjoint()) / std::max(1.0, op_norm(g));
    const Matrix s = psd_sqrt(p);
    CHECK(dist(psd_sqrt(Matrix(s * s)), s) <= 1e-8);
  }
}

TEST_CASE("hyponormal_defect on pinned examples") {
  SeededRng rng(51);
  const Matrix h = random_hermitian(rng, 4);
  CHECK(hyponormal_defect(h) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(hyponormal_defect(mat2(0.0, 1.0, 0.0, 0.0)) ==
        doctest::Approx(-1.0).epsilon(1e-12));

  const Matrix u = branch_safe_unitary(rng, 5);
  CHECK(std::abs(hyponormal_defect(u)) <= 1e-12);
}

TEST_CASE("hyponormal floor controls the commutator norm") {
  // trace zero plus an eigenvalue floor of -delta forces
  // ||X*X - XX*|| <= (dim-1) delta
  SeededRng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_index(7));
    const Matrix x = random_complex_matrix(rng, dim);
    const double delta = std::max(0.0, -hyponormal_defect(x));
    const double norm = op_norm(Matrix(x.adjoint() * x - x * x.adjoint()));
    CHECK(norm <= (dim - 1) * delta + 1e-9);
  }
}

TEST_CASE("normalized_trace on pinned examples") {
  CHECK(std::abs(normalized_trace(Matrix::Identity(5, 5)) - 1.0) == 0.0);
  CHECK(std::abs(normalized_trace(mat2(1.0, 0.0, 0.0, 3.0)) - 2.0) <= 1e-15);

  SeededRng rng(71);
  const Matrix a = random_complex_matrix(rng, 6);
  const Matrix b = random_complex_matrix(rng, 6);
  CHECK(std::abs(normalized_trace(Matrix(a * b - b * a))) <= 1e-12);
}

TEST_CASE("op_norm is submultiplicative and unitarily invariant") {
  SeededRng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform_index(6));
    const Matrix a = random_complex_matrix(rng, dim);
    const Matrix b = random_complex_matrix(rng, dim);
    CHECK(op_norm(Matrix(a * b)) <= op_norm(a) * op_norm(b) + 1e-10);
    const Matrix u = branch_safe_unitary(rng, dim);
    const Matrix w = branch_safe_unitary(rng, dim);
    CHECK(std::abs(op_norm(Matrix(u * a * w)) - op_norm(a)) <= 1e-10);
  }
}

TEST_CASE("random_unitary is unitary and seed-stable") {
  SeededRng rng1(91);
  SeededRng rng2(91);
  const Matrix u1 = random_unitary(rng1, 7);
  const Matrix u2 = random_unitary(rng2, 7);
  CHECK(unitary_defect(u1) <= 1e-12);
  CHECK((u1 - u2).cwiseAbs().maxCoeff() == 0.0);
}
