#pragma once

#include <cstdint>
#include <vector>

#include "softtorus/matrix.hpp"

namespace softtorus {

// Finite chain of unitaries U_lo..U_hi of one size with consecutive
// steps ||U_{j+1} - U_j|| <= eps. Immutable once constructed; the
// constructor enforces the invariants.
class BFamily {
 public:
  BFamily(double eps, int lo, int hi, std::vector<Matrix> units,
          const Tolerances& tol = kDefaultTol);

  double eps() const { return eps_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int length() const { return hi_ - lo_ + 1; }
  int dim() const { return static_cast<int>(units_.front().rows()); }
  const Matrix& unit(int n) const;  // n in [lo, hi]
  const std::vector<Matrix>& units() const { return units_; }
  double max_step() const;

 private:
  double eps_;
  int lo_;
  int hi_;
  std::vector<Matrix> units_;
};

// Change of generators: one unitary v0 plus Hermitian increments H_j,
// j in [lo, hi-1], with ||H_j|| <= (2/pi) asin(eps/2).
class HFamily {
 public:
  HFamily(double eps, int lo, int hi, Matrix v0, std::vector<Matrix> hs,
          const Tolerances& tol = kDefaultTol);

  double eps() const { return eps_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int dim() const { return static_cast<int>(v0_.rows()); }
  int anchor() const { return (lo_ <= 0 && 0 <= hi_) ? 0 : lo_; }
  const Matrix& v0() const { return v0_; }
  const Matrix& h(int j) const;  // j in [lo, hi-1]

  static double norm_bound(double eps);

 private:
  double eps_;
  int lo_;
  int hi_;
  Matrix v0_;
  std::vector<Matrix> hs_;
};

// H_j = (1/pi) Log(U_{j+1} U_j*); v0 is U_0, or U_lo when 0 is outside
// the window.
HFamily hs_from_us(const BFamily& f, const Tolerances& tol = kDefaultTol);

// Inverse of hs_from_us: U_{j+1} = exp(i pi H_j) U_j anchored at v0.
BFamily us_from_hs(const HFamily& h, const Tolerances& tol = kDefaultTol);

// Scales every H_j by t in [0, 1]; t = 0 collapses to the constant family.
HFamily scale_homotopy(const HFamily& h, double t,
                       const Tolerances& tol = kDefaultTol);

// V = [[T, sqrt(I-TT*)], [sqrt(I-T*T), -T*]]; ||T|| <= 1 + 1e-10
// (norms inside the slack are rescaled to 1). Defect eigenvalues within
// psd_clip of zero are flushed to exactly zero, so unitary T gives
// exactly vanishing corners.
Matrix halmos_dilate(const Matrix& t, const Tolerances& tol = kDefaultTol);

// Compression to the leading m coordinates followed by the block
// dilation: T = P_m v0 P_m, K_j = P_m H_j P_m, and the returned family
// is generated by halmos_dilate(T) and diag(K_j, K_j) at dimension 2m.
BFamily compress_and_dilate(const BFamily& ref, int m,
                            const Tolerances& tol = kDefaultTol);

// Spectral path w_0 = W, ..., w_M = I along U^t with the minimal M
// keeping every step norm <= eps; M = 0 iff W = I.
std::vector<Matrix> path_to_identity(const Matrix& w, double eps,
                                     const Tolerances& tol = kDefaultTol);

// p-periodic chain read cyclically; the step bound holds for all p
// consecutive pairs including the wraparound.
class PeriodicFamily {
 public:
  PeriodicFamily(double eps, int period, int core_radius,
                 std::vector<Matrix> units,
                 const Tolerances& tol = kDefaultTol);

  double eps() const { return eps_; }
  int period() const { return period_; }
  int core_radius() const { return core_radius_; }
  int dim() const { return static_cast<int>(units_.front().rows()); }
  const Matrix& unit_slot(int j) const;  // j in [0, period)
  const Matrix& unit_at(std::int64_t n) const;  // cyclic
  double max_cyclic_step() const;

 private:
  double eps_;
  int period_;
  int core_radius_;
  std::vector<Matrix> units_;
};

// Extends a family on [-N, N] to period p = 2(N+M) by walking both
// endpoint unitaries to the identity along spectral paths; the larger
// of the two path lengths is used for both sides (shorter one padded
// with identity steps) and M is clamped to at least 1.
PeriodicFamily periodize(const BFamily& f, const Tolerances& tol = kDefaultTol);

// Block-cyclic covariant representation: rho(u_i) is the block diagonal
// of p consecutive periodic units starting at i, and the forward block
// shift S satisfies S rho(u_i) S* = rho(u_{i+1}) and S^p = I exactly.
class CovariantRep {
 public:
  explicit CovariantRep(PeriodicFamily base);

  const PeriodicFamily& base() const { return base_; }
  int total_dim() const { return base_.period() * base_.dim(); }
  const Matrix& shift() const { return shift_; }
  Matrix rho_u(std::int64_t n) const;

 private:
  PeriodicFamily base_;
  Matrix shift_;
};

CovariantRep covariant_rep(PeriodicFamily pf);

// Deterministic seeded family: Haar-like base unitary, then steps
// U_{j+1} = exp(i Theta_j) U_j with ||Theta_j|| <= 2 asin(eps/2).
BFamily random_brep(double eps, int dim, int lo, int hi, std::uint64_t seed,
                    const Tolerances& tol = kDefaultTol);

}  // namespace softtorus
