#include "softtorus/brep.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace softtorus {

namespace {

constexpr double kPi = std::numbers::pi;

void require_eps(double eps, double hi_limit) {
  if (!(eps > 0.0 && eps <= hi_limit) || !std::isfinite(eps)) {
    raise(ErrorCode::InvalidArgument,
          "eps = " + std::to_string(eps) + " outside (0, " +
              std::to_string(hi_limit) + "]");
  }
}

// sqrt of an almost-PSD defect; eigenvalues of magnitude <= psd_clip are
// flushed to exactly zero so vanishing defects stay identically zero
Matrix defect_sqrt(const Matrix& d, const Tolerances& tol) {
  const HermEig he = herm_eig(d, tol);
  RealVector roots(he.values.size());
  for (Eigen::Index i = 0; i < he.values.size(); ++i) {
    const double lam = he.values[i];
    if (lam < -tol.psd_clip) {
      raise(ErrorCode::NotPSD,
            "defect eigenvalue " + std::to_string(lam) + " below -psd_clip");
    }
    roots[i] = lam <= tol.psd_clip ? 0.0 : std::sqrt(lam);
  }
  const Matrix s =
      he.basis * roots.cast<Complex>().asDiagonal() * he.basis.adjoint();
  return 0.5 * (s + s.adjoint());
}

}  // namespace

// ---- BFamily --------------------------------------------------------------

BFamily::BFamily(double eps, int lo, int hi, std::vector<Matrix> units,
                 const Tolerances& tol)
    : eps_(eps), lo_(lo), hi_(hi), units_(std::move(units)) {
  require_eps(eps, 2.0);
  if (hi < lo) raise(ErrorCode::InvalidArgument, "window is empty");
  if (units_.size() != static_cast<std::size_t>(hi - lo + 1)) {
    raise(ErrorCode::InvalidArgument,
          "window length does not match the number of matrices");
  }
  const Eigen::Index d = units_.front().rows();
  if (d < 1) raise(ErrorCode::InvalidArgument, "dimension < 1");
  for (const Matrix& u : units_) {
    if (u.rows() != d || u.cols() != d) {
      raise(ErrorCode::DimensionMismatch, "family members differ in size");
    }
    require_unitary(u, tol.unitary_tol);
  }
  for (std::size_t j = 0; j + 1 < units_.size(); ++j) {
    const double step = op_norm(Matrix(units_[j + 1] - units_[j]));
    if (step > eps + tol.step_slack) {
      raise(ErrorCode::InvalidArgument,
            "step " + std::to_string(step) + " at index " +
                std::to_string(lo + static_cast<int>(j)) + " exceeds eps");
    }
  }
}

const Matrix& BFamily::unit(int n) const {
  if (n < lo_ || n > hi_) {
    raise(ErrorCode::InvalidArgument,
          "index " + std::to_string(n) + " outside the window");
  }
  return units_[static_cast<std::size_t>(n - lo_)];
}

double BFamily::max_step() const {
  double m = 0.0;
  for (std::size_t j = 0; j + 1 < units_.size(); ++j) {
    m = std::max(m, op_norm(Matrix(units_[j + 1] - units_[j])));
  }
  return m;
}

// ---- HFamily --------------------------------------------------------------

double HFamily::norm_bound(double eps) {
  return (2.0 / kPi) * std::asin(eps / 2.0);
}

HFamily::HFamily(double eps, int lo, int hi, Matrix v0, std::vector<Matrix> hs,
                 const Tolerances& tol)
    : eps_(eps), lo_(lo), hi_(hi), v0_(std::move(v0)), hs_(std::move(hs)) {
  require_eps(eps, 2.0);
  if (hi < lo) raise(ErrorCode::InvalidArgument, "window is empty");
  if (hs_.size() != static_cast<std::size_t>(hi - lo)) {
    raise(ErrorCode::InvalidArgument,
          "expected " + std::to_string(hi - lo) + " increments");
  }
  require_unitary(v0_, tol.unitary_tol);
  const Eigen::Index d = v0_.rows();
  const double bound = norm_bound(eps) + tol.step_slack;
  for (const Matrix& h : hs_) {
    if (h.rows() != d || h.cols() != d) {
      raise(ErrorCode::DimensionMismatch, "family members differ in size");
    }
    require_hermitian(h, tol.hermitian_tol);
    const double n = op_norm(h);
    if (n > bound) {
      raise(ErrorCode::InvalidArgument,
            "||H|| = " + std::to_string(n) + " exceeds (2/pi) asin(eps/2)");
    }
  }
}

const Matrix& HFamily::h(int j) const {
  if (j < lo_ || j >= hi_) {
    raise(ErrorCode::InvalidArgument,
          "increment index " + std::to_string(j) + " outside [lo, hi)");
  }
  return hs_[static_cast<std::size_t>(j - lo_)];
}

// ---- generator transforms ---------------------------------------------

HFamily hs_from_us(const BFamily& f, const Tolerances& tol) {
  require_eps(f.eps(), 2.0 - 1e-15);
  std::vector<Matrix> hs;
  hs.reserve(static_cast<std::size_t>(f.length() - 1));
  for (int j = f.lo(); j < f.hi(); ++j) {
    const Matrix ratio = f.unit(j + 1) * f.unit(j).adjoint();
    hs.push_back((1.0 / kPi) * unitary_log(ratio, tol));
  }
  const int anchor = (f.lo() <= 0 && 0 <= f.hi()) ? 0 : f.lo();
  return HFamily(f.eps(), f.lo(), f.hi(), f.unit(anchor), std::move(hs), tol);
}

BFamily us_from_hs(const HFamily& h, const Tolerances& tol) {
  const int lo = h.lo();
  const int hi = h.hi();
  const int anchor = h.anchor();
  std::vector<Matrix> units(static_cast<std::size_t>(hi - lo + 1));
  units[static_cast<std::size_t>(anchor - lo)] = h.v0();
  for (int n = anchor + 1; n <= hi; ++n) {
    units[static_cast<std::size_t>(n - lo)] =
        exp_i_hermitian(h.h(n - 1), kPi, tol) *
        units[static_cast<std::size_t>(n - 1 - lo)];
  }
  for (int n = anchor - 1; n >= lo; --n) {
    units[static_cast<std::size_t>(n - lo)] =
        exp_i_hermitian(h.h(n), -kPi, tol) *
        units[static_cast<std::size_t>(n + 1 - lo)];
  }
  return BFamily(h.eps(), lo, hi, std::move(units), tol);
}

HFamily scale_homotopy(const HFamily& h, double t, const Tolerances& tol) {
  if (!(t >= 0.0 && t <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "homotopy parameter must lie in [0, 1]");
  }
  std::vector<Matrix> hs;
  hs.reserve(static_cast<std::size_t>(h.hi() - h.lo()));
  for (int j = h.lo(); j < h.hi(); ++j) hs.push_back(t * h.h(j));
  return HFamily(h.eps(), h.lo(), h.hi(), h.v0(), std::move(hs), tol);
}

// ---- dilation ----------------------------------------------------------

Matrix halmos_dilate(const Matrix& t, const Tolerances& tol) {
  require_square(t);
  require_finite(t);
  Matrix contraction = t;
  const double n = op_norm(t);
  if (n > 1.0 + tol.unitary_tol) {
    raise(ErrorCode::NotContraction,
          "||T|| = " + std::to_string(n) + " exceeds 1");
  }
  // norms inside the slack are rescaled; roundoff-level excess is left
  // to the defect clamp so unitary inputs pass through bit-exact
  if (n > 1.0 + 1e-14) contraction /= n;

  const Eigen::Index m = contraction.rows();
  const Matrix id = Matrix::Identity(m, m);
  const Matrix row_defect =
      defect_sqrt(id - contraction * contraction.adjoint(), tol);
  const Matrix col_defect =
      defect_sqrt(id - contraction.adjoint() * contraction, tol);

  Matrix v(2 * m, 2 * m);
  v.topLeftCorner(m, m) = contraction;
  v.topRightCorner(m, m) = row_defect;
  v.bottomLeftCorner(m, m) = col_defect;
  v.bottomRightCorner(m, m) = -contraction.adjoint();
  return v;
}

BFamily compress_and_dilate(const BFamily& ref, int m, const Tolerances& tol) {
  if (m < 1 || m > ref.dim()) {
    raise(ErrorCode::RankTooLarge,
          "block size " + std::to_string(m) + " outside [1, " +
              std::to_string(ref.dim()) + "]");
  }
  const HFamily h = hs_from_us(ref, tol);
  const Matrix t = h.v0().topLeftCorner(m, m);
  const Matrix v0 = halmos_dilate(t, tol);
  std::vector<Matrix> hs;
  hs.reserve(static_cast<std::size_t>(h.hi() - h.lo()));
  for (int j = h.lo(); j < h.hi(); ++j) {
    const Matrix k = h.h(j).topLeftCorner(m, m);
    Matrix doubled = Matrix::Zero(2 * m, 2 * m);
    doubled.topLeftCorner(m, m) = k;
    doubled.bottomRightCorner(m, m) = k;
    hs.push_back(std::move(doubled));
  }
  return us_from_hs(HFamily(ref.eps(), h.lo(), h.hi(), v0, std::move(hs), tol),
                    tol);
}

// ---- interpolation -------------------------------------------------------

std::vector<Matrix> path_to_identity(const Matrix& w, double eps,
                                     const Tolerances& tol) {
  require_eps(eps, 2.0);
  const UnitaryEig ue = unitary_eig(w, tol);
  for (Eigen::Index i = 0; i < ue.phases.size(); ++i) {
    if (ue.phases[i] < -kPi + tol.branch_margin) {
      raise(ErrorCode::BranchCut, "eigenphase within the branch margin of -pi");
    }
  }
  const double theta_max = ue.phases.cwiseAbs().maxCoeff();
  if (theta_max <= 1e-14) return {w};

  // minimal M with 2 sin(theta_max / 2M) <= eps (+ slack); the closed
  // form ceil(theta_max / (2 asin(eps/2))) seeds the scan, the loop
  // settles boundary cases robustly
  const auto step_of = [&](int m) {
    return 2.0 * std::sin(theta_max / (2.0 * m));
  };
  int m = std::max(
      1, static_cast<int>(
             std::ceil(theta_max / (2.0 * std::asin(eps / 2.0)) - 1e-9)));
  while (step_of(m) > eps + tol.path_step_slack) ++m;
  while (m > 1 && step_of(m - 1) <= eps + tol.path_step_slack) --m;

  std::vector<Matrix> path;
  path.reserve(static_cast<std::size_t>(m) + 1);
  path.push_back(w);
  const Eigen::Index n = w.rows();
  for (int k = 1; k < m; ++k) {
    const double t = 1.0 - static_cast<double>(k) / m;
    Eigen::VectorXcd d(ue.phases.size());
    for (Eigen::Index i = 0; i < ue.phases.size(); ++i) {
      d[i] = std::polar(1.0, t * ue.phases[i]);
    }
    path.push_back(ue.basis * d.asDiagonal() * ue.basis.adjoint());
  }
  path.push_back(Matrix::Identity(n, n));
  return path;
}

// ---- periodic families -----------------------------------------------

PeriodicFamily::PeriodicFamily(double eps, int period, int core_radius,
                               std::vector<Matrix> units,
                               const Tolerances& tol)
    : eps_(eps),
      period_(period),
      core_radius_(core_radius),
      units_(std::move(units)) {
  require_eps(eps, 2.0);
  if (period < 2 || period % 2 != 0) {
    raise(ErrorCode::InvalidArgument, "period must be a positive even integer");
  }
  if (core_radius < 0) {
    raise(ErrorCode::InvalidArgument, "core radius must be nonnegative");
  }
  if (units_.size() != static_cast<std::size_t>(period)) {
    raise(ErrorCode::InvalidArgument, "expected one matrix per slot");
  }
  const Eigen::Index d = units_.front().rows();
  for (const Matrix& u : units_) {
    if (u.rows() != d || u.cols() != d) {
      raise(ErrorCode::DimensionMismatch, "family members differ in size");
    }
    require_unitary(u, tol.unitary_tol);
  }
  for (int j = 0; j < period; ++j) {
    const double step = op_norm(
        Matrix(units_[static_cast<std::size_t>((j + 1) % period)] -
               units_[static_cast<std::size_t>(j)]));
    if (step > eps + tol.step_slack) {
      raise(ErrorCode::InvalidArgument,
            "cyclic step " + std::to_string(step) + " at slot " +
                std::to_string(j) + " exceeds eps");
    }
  }
}

const Matrix& PeriodicFamily::unit_slot(int j) const {
  if (j < 0 || j >= period_) {
    raise(ErrorCode::InvalidArgument, "slot outside [0, period)");
  }
  return units_[static_cast<std::size_t>(j)];
}

const Matrix& PeriodicFamily::unit_at(std::int64_t n) const {
  std::int64_t r = n % period_;
  if (r < 0) r += period_;
  return units_[static_cast<std::size_t>(r)];
}

double PeriodicFamily::max_cyclic_step() const {
  double m = 0.0;
  for (int j = 0; j < period_; ++j) {
    m = std::max(m, op_norm(Matrix(unit_at(j + 1) - unit_at(j))));
  }
  return m;
}

PeriodicFamily periodize(const BFamily& f, const Tolerances& tol) {
  if (f.lo() != -f.hi()) {
    raise(ErrorCode::InvalidArgument,
          "periodization expects a symmetric window [-N, N]");
  }
  require_eps(f.eps(), 2.0);
  const int n_radius = f.hi();
  const int d = f.dim();

  std::vector<Matrix> up = path_to_identity(f.unit(n_radius), f.eps(), tol);
  std::vector<Matrix> down = path_to_identity(f.unit(-n_radius), f.eps(), tol);
  const int m = std::max<int>(
      {1, static_cast<int>(up.size()) - 1, static_cast<int>(down.size()) - 1});
  up.resize(static_cast<std::size_t>(m) + 1, Matrix::Identity(d, d));
  down.resize(static_cast<std::size_t>(m) + 1, Matrix::Identity(d, d));

  const int period = 2 * (n_radius + m);
  std::vector<Matrix> units;
  units.reserve(static_cast<std::size_t>(period));
  for (int slot = 0; slot < period; ++slot) {
    const int n = slot < n_radius + m ? slot : slot - period;
    if (n >= -n_radius && n <= n_radius) {
      units.push_back(f.unit(n));
    } else if (n > n_radius) {
      units.push_back(up[static_cast<std::size_t>(n - n_radius)]);
    } else {
      units.push_back(down[static_cast<std::size_t>(-n_radius - n)]);
    }
  }
  return PeriodicFamily(f.eps(), period, n_radius, std::move(units), tol);
}

// ---- covariant representation ---------------------------------------

CovariantRep::CovariantRep(PeriodicFamily base) : base_(std::move(base)) {
  const int p = base_.period();
  const int d = base_.dim();
  shift_ = Matrix::Zero(p * d, p * d);
  for (int j = 0; j < p; ++j) {
    const int k = (j + 1) % p;
    shift_.block(j * d, k * d, d, d) = Matrix::Identity(d, d);
  }
}

Matrix CovariantRep::rho_u(std::int64_t n) const {
  const int p = base_.period();
  const int d = base_.dim();
  Matrix rho = Matrix::Zero(p * d, p * d);
  for (int j = 0; j < p; ++j) {
    rho.block(j * d, j * d, d, d) = base_.unit_at(n + j);
  }
  return rho;
}

CovariantRep covariant_rep(PeriodicFamily pf) {
  return CovariantRep(std::move(pf));
}

// ---- seeded families -----------------------------------------------------

BFamily random_brep(double eps, int dim, int lo, int hi, std::uint64_t seed,
                    const Tolerances& tol) {
  require_eps(eps, 2.0 - 1e-15);
  if (dim < 1) raise(ErrorCode::InvalidArgument, "dimension < 1");
  if (hi < lo) raise(ErrorCode::InvalidArgument, "window is empty");
  SeededRng rng(scramble_seed(seed));
  const double theta_max = 2.0 * std::asin(eps / 2.0);
  std::vector<Matrix> units;
  units.reserve(static_cast<std::size_t>(hi - lo + 1));
  units.push_back(random_unitary(rng, dim));
  for (int j = lo; j < hi; ++j) {
    const Matrix theta = random_hermitian_ball(rng, dim, theta_max);
    units.push_back(exp_i_hermitian(theta, 1.0, tol) * units.back());
  }
  return BFamily(eps, lo, hi, std::move(units), tol);
}

}  // namespace softtorus
