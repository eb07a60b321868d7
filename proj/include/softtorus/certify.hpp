#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "softtorus/brep.hpp"
#include "softtorus/ncpoly.hpp"

namespace softtorus {

struct SearchParams {
  std::vector<int> dims{1, 2};
  int restarts = 16;
  std::uint64_t seed = 1;
  int ascent_steps = 200;
  int q = 0;  // 0 = auto: v_degree(a*a) + 1
};

// Self-contained witness record. Everything the verifier needs is here:
// the polynomial text, the matrices, and the claimed numbers.
struct Certificate {
  double eps = 0.0;
  std::string poly;
  int n = 0;  // total dimension, n = p * m
  int p = 0;  // period of the underlying family
  int m = 0;  // block size
  int q = 1;  // averaging order
  Complex lambda{1.0, 0.0};
  Matrix u;
  Matrix v;
  double achieved_norm = 0.0;
  double commutator_norm = 0.0;
  double lower_bound = 0.0;
  std::uint64_t seed = 0;
};

// U = rho(u_0), V = lambda * S for unimodular lambda.
std::pair<Matrix, Matrix> rep_of_ae(const CovariantRep& cr, Complex lambda,
                                    const Tolerances& tol = kDefaultTol);

// Chain letters of `poly` mapped into the covariant representation,
// with the shift assigned lambda * S.
Assignment covariant_assignment(const CovariantRep& cr, const NCPoly& poly,
                                Complex lambda);

// Chain letters mapped to the family members; shift letters stay
// unassigned, so evaluation demands a shift-free polynomial.
Assignment family_assignment(const BFamily& f, const NCPoly& poly);

// u -> U, v -> V, u_n -> V^n U V^{-n}
Assignment pair_assignment(const NCPoly& poly, const Matrix& u,
                           const Matrix& v);
Matrix eval_at_pair(const NCPoly& poly, const Matrix& u, const Matrix& v);

// ||rho(E(a*a))||, valid as a certified floor when q > v_degree(a*a):
// max over q-th roots of unity lambda_j of ||eval(a, U, lambda_j S)||
// is at least the square root of the returned value.
double averaging_lower_bound(const CovariantRep& cr, const NCPoly& a, int q,
                             const Tolerances& tol = kDefaultTol);

// Deterministic seeded search for a family maximizing ||eval(b, family)||
// over dims x restarts followed by local perturbation ascent.
BFamily search_brep(const NCPoly& b, double eps, const SearchParams& params,
                    const Tolerances& tol = kDefaultTol);

// The full pipeline: b = E(a*a), search, periodize, covariant
// representation, best root of unity, averaging floor.
Certificate certify(const NCPoly& a, double eps, const SearchParams& params,
                    const Tolerances& tol = kDefaultTol);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
  const VerifyCheck* find(const std::string& name) const;
};

// Re-checks a certificate trusting only the matrices and the polynomial
// text. Failures become report entries, never exceptions.
VerifyReport verify_certificate(const Certificate& c,
                                double tol = kDefaultTol.verify_tol);

}  // namespace softtorus
