#include "softtorus/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <set>

namespace softtorus {

namespace {

constexpr double kPi = std::numbers::pi;

std::set<int> chain_indices(const NCPoly& p) {
  std::set<int> out;
  for (const auto& [w, c] : p.terms()) {
    for (const Letter& l : w) {
      if (l.gen == Letter::Gen::ChainU) out.insert(l.index);
    }
  }
  return out;
}

bool uses_shift(const NCPoly& p) { return !p.shift_free(); }

}  // namespace

std::pair<Matrix, Matrix> rep_of_ae(const CovariantRep& cr, Complex lambda,
                                    const Tolerances& tol) {
  (void)tol;
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    raise(ErrorCode::NotUnitModulus,
          "|lambda| = " + std::to_string(std::abs(lambda)));
  }
  return {cr.rho_u(0), lambda * cr.shift()};
}

Assignment covariant_assignment(const CovariantRep& cr, const NCPoly& poly,
                                Complex lambda) {
  Assignment asg(cr.total_dim());
  for (int n : chain_indices(poly)) asg.set_chain(n, cr.rho_u(n));
  if (uses_shift(poly)) asg.set_shift(lambda * cr.shift());
  return asg;
}

Assignment family_assignment(const BFamily& f, const NCPoly& poly) {
  Assignment asg(f.dim());
  for (int n : chain_indices(poly)) {
    if (n >= f.lo() && n <= f.hi()) asg.set_chain(n, f.unit(n));
  }
  return asg;
}

Assignment pair_assignment(const NCPoly& poly, const Matrix& u,
                           const Matrix& v) {
  require_square(u);
  require_square(v);
  if (u.rows() != v.rows()) {
    raise(ErrorCode::DimensionMismatch, "U and V differ in size");
  }
  Assignment asg(static_cast<int>(u.rows()));
  if (uses_shift(poly)) asg.set_shift(v);
  for (int n : chain_indices(poly)) {
    Matrix conj = u;
    for (int k = 0; k < std::abs(n); ++k) {
      if (n > 0) {
        conj = v * conj * v.adjoint();
      } else {
        conj = v.adjoint() * conj * v;
      }
    }
    asg.set_chain(n, std::move(conj));
  }
  return asg;
}

Matrix eval_at_pair(const NCPoly& poly, const Matrix& u, const Matrix& v) {
  return eval_poly(poly, pair_assignment(poly, u, v));
}

double averaging_lower_bound(const CovariantRep& cr, const NCPoly& a, int q,
                             const Tolerances& tol) {
  (void)tol;
  if (a.is_zero()) raise(ErrorCode::ZeroPolynomial, "polynomial is zero");
  const NCPoly aa = a.adjoint() * a;
  const CrossedForm cf = normal_order(aa);
  if (q <= cf.max_shift_degree()) {
    raise(ErrorCode::QTooSmall,
          "q = " + std::to_string(q) + " must exceed v-degree " +
              std::to_string(cf.max_shift_degree()));
  }
  const NCPoly b = cf.component(0);
  if (b.support_radius() > cr.base().core_radius()) {
    raise(ErrorCode::WindowTooSmall,
          "E(a*a) spans indices up to " + std::to_string(b.support_radius()) +
              " but the family core covers " +
              std::to_string(cr.base().core_radius()));
  }
  Assignment asg(cr.total_dim());
  for (int n : chain_indices(b)) asg.set_chain(n, cr.rho_u(n));
  return op_norm(eval_poly(b, asg));
}

// ---- seeded search ---------------------------------------------------

namespace {

// chain parameterization: U_{j+1} = exp(i Theta_j) U_j from a base
struct ChainParams {
  Matrix base;  // U_lo
  std::vector<Matrix> thetas;

  std::vector<Matrix> build(const Tolerances& tol) const {
    std::vector<Matrix> units;
    units.reserve(thetas.size() + 1);
    units.push_back(base);
    for (const Matrix& th : thetas) {
      units.push_back(exp_i_hermitian(th, 1.0, tol) * units.back());
    }
    return units;
  }
};

double family_value(const NCPoly& b, const std::vector<Matrix>& units, int lo,
                    int dim) {
  Assignment asg(dim);
  for (std::size_t j = 0; j < units.size(); ++j) {
    asg.set_chain(lo + static_cast<int>(j), units[j]);
  }
  return op_norm(eval_poly(b, asg));
}

Matrix clip_to_ball(Matrix theta, double radius) {
  const double n = op_norm(theta);
  if (n > radius && n > 0.0) theta *= radius / n;
  return theta;
}

}  // namespace

BFamily search_brep(const NCPoly& b, double eps, const SearchParams& params,
                    const Tolerances& tol) {
  if (b.is_zero()) {
    raise(ErrorCode::ZeroPolynomial, "cannot search for a zero polynomial");
  }
  if (!b.shift_free()) {
    raise(ErrorCode::InvalidArgument,
          "search expects a polynomial in chain letters only");
  }
  if (params.dims.empty() || params.restarts < 1) {
    raise(ErrorCode::InvalidArgument, "need at least one dimension and restart");
  }
  const int radius = b.support_radius();
  const int lo = -radius;
  const int hi = radius;
  const double theta_max = 2.0 * std::asin(eps / 2.0);

  std::optional<ChainParams> best;
  double best_value = -1.0;
  for (int dim : params.dims) {
    if (dim < 1) raise(ErrorCode::InvalidArgument, "dimension < 1");
    for (int restart = 0; restart < params.restarts; ++restart) {
      SeededRng rng(mix_seed(mix_seed(params.seed, 0x5eedull + dim),
                             static_cast<std::uint64_t>(restart)));
      ChainParams chain;
      chain.base = random_unitary(rng, dim);
      for (int j = lo; j < hi; ++j) {
        chain.thetas.push_back(random_hermitian_ball(rng, dim, theta_max));
      }
      std::vector<Matrix> units = chain.build(tol);
      double value = family_value(b, units, lo, dim);

      // one slot at a time: slot 0 rotates the base, slot j+1 perturbs
      // Theta_j and projects back into the step ball
      const int slots = 1 + static_cast<int>(chain.thetas.size());
      for (int step = 0; step < params.ascent_steps; ++step) {
        const int slot = static_cast<int>(
            rng.uniform_index(static_cast<std::uint32_t>(slots)));
        const double u = rng.uniform();
        const double delta = theta_max * u * u;
        ChainParams trial = chain;
        if (slot == 0) {
          const Matrix rot =
              random_hermitian_ball(rng, dim, 0.5 * (u + 0.1));
          trial.base = exp_i_hermitian(rot, 1.0, tol) * trial.base;
        } else {
          Matrix& th = trial.thetas[static_cast<std::size_t>(slot - 1)];
          th = clip_to_ball(th + random_hermitian_ball(rng, dim, delta),
                            theta_max);
        }
        std::vector<Matrix> trial_units = trial.build(tol);
        const double trial_value = family_value(b, trial_units, lo, dim);
        if (trial_value > value) {
          chain = std::move(trial);
          units = std::move(trial_units);
          value = trial_value;
        }
      }
      if (value > best_value) {
        best_value = value;
        best = chain;
      }
    }
  }
  return BFamily(eps, lo, hi, best->build(tol), tol);
}

// ---- the pipeline ----------------------------------------------------

Certificate certify(const NCPoly& a, double eps, const SearchParams& params,
                    const Tolerances& tol) {
  if (a.is_zero()) {
    raise(ErrorCode::ZeroPolynomial, "the polynomial is formally zero");
  }
  if (!(eps > 0.0 && eps < 2.0)) {
    raise(ErrorCode::InvalidArgument,
          "eps = " + std::to_string(eps) + " outside (0, 2)");
  }
  const NCPoly aa = a.adjoint() * a;
  const CrossedForm cf = normal_order(aa);
  const int vdeg = cf.max_shift_degree();
  const NCPoly b = cf.component(0);
  if (b.is_zero()) {
    raise(ErrorCode::ZeroPolynomial, "conditional expectation of a*a is zero");
  }
  const int q = params.q > 0 ? params.q : vdeg + 1;
  if (q <= vdeg) {
    raise(ErrorCode::QTooSmall,
          "q = " + std::to_string(q) + " must exceed v-degree " +
              std::to_string(vdeg));
  }

  const BFamily family =
      b.is_constant()
          ? BFamily(eps, 0, 0, {Matrix::Identity(1, 1)}, tol)
          : search_brep(b, eps, params, tol);
  const CovariantRep cr = covariant_rep(periodize(family, tol));

  double achieved = -1.0;
  Complex best_lambda(1.0, 0.0);
  for (int j = 0; j < q; ++j) {
    const Complex lambda = std::polar(1.0, 2.0 * kPi * j / q);
    const Matrix x = eval_poly(a, covariant_assignment(cr, a, lambda));
    const double value = op_norm(x);
    if (value > achieved) {
      achieved = value;
      best_lambda = lambda;
    }
  }

  const double lower = std::sqrt(averaging_lower_bound(cr, a, q, tol));
  const auto [u, v] = rep_of_ae(cr, best_lambda, tol);
  const double commutator = op_norm(Matrix(u * v - v * u));

  if (achieved <= 1e-12) {
    raise(ErrorCode::NoWitnessFound,
          "search produced no representation separating the polynomial");
  }

  Certificate c;
  c.eps = eps;
  c.poly = a.to_string();
  c.n = cr.total_dim();
  c.p = cr.base().period();
  c.m = cr.base().dim();
  c.q = q;
  c.lambda = best_lambda;
  c.u = u;
  c.v = v;
  c.achieved_norm = achieved;
  c.commutator_norm = commutator;
  c.lower_bound = lower;
  c.seed = params.seed;
  return c;
}

// ---- verification ----------------------------------------------------

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

const VerifyCheck* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

VerifyReport verify_certificate(const Certificate& c, double tol) {
  VerifyReport report;
  const auto run = [&report](const std::string& name,
                             const std::function<std::pair<bool, std::string>()>& body) {
    VerifyCheck check;
    check.name = name;
    try {
      auto [ok, detail] = body();
      check.pass = ok;
      check.detail = std::move(detail);
    } catch (const std::exception& e) {
      check.pass = false;
      check.detail = e.what();
    }
    report.checks.push_back(std::move(check));
    return report.checks.back().pass;
  };

  const bool shapes_ok = run("ShapeConsistency", [&] {
    const bool ok = c.u.rows() == c.n && c.u.cols() == c.n &&
                    c.v.rows() == c.n && c.v.cols() == c.n && c.m >= 1 &&
                    c.p >= 2 && c.m * c.p == c.n && c.q >= 1 &&
                    c.u.allFinite() && c.v.allFinite();
    return std::make_pair(ok, std::string("n = ") + std::to_string(c.n));
  });

  run("EpsRange", [&] {
    return std::make_pair(c.eps > 0.0 && c.eps < 2.0, "eps = " + num(c.eps));
  });

  run("LambdaModulus", [&] {
    const double d = std::abs(std::abs(c.lambda) - 1.0);
    return std::make_pair(d <= tol, "| |lambda| - 1 | = " + num(d));
  });

  if (!shapes_ok) return report;

  run("UnitarityU", [&] {
    const double d = unitary_defect(c.u);
    return std::make_pair(d <= tol, "||U*U - I|| = " + num(d));
  });

  run("UnitarityV", [&] {
    const double d = unitary_defect(c.v);
    return std::make_pair(d <= tol, "||V*V - I|| = " + num(d));
  });

  NCPoly a;
  const bool poly_ok = run("PolySyntax", [&] {
    a = parse_poly(c.poly);
    return std::make_pair(!a.is_zero(), "parsed " +
                                            std::to_string(a.terms().size()) +
                                            " terms");
  });
  if (!poly_ok) return report;

  double recomputed_commutator = 0.0;
  run("CommutatorBound", [&] {
    recomputed_commutator = op_norm(Matrix(c.u * c.v - c.v * c.u));
    return std::make_pair(recomputed_commutator <= c.eps + tol,
                          "||UV - VU|| = " + num(recomputed_commutator));
  });

  run("CommutatorMatchesStored", [&] {
    const double d = std::abs(recomputed_commutator - c.commutator_norm);
    return std::make_pair(d <= tol, "difference = " + num(d));
  });

  Matrix x;
  double recomputed_achieved = 0.0;
  run("AchievedNormMatchesStored", [&] {
    x = eval_at_pair(a, c.u, c.v);
    recomputed_achieved = op_norm(x);
    const double d = std::abs(recomputed_achieved - c.achieved_norm);
    return std::make_pair(d <= tol, "||a(U,V)|| = " + num(recomputed_achieved) +
                                        ", difference = " + num(d));
  });
  if (x.size() == 0) return report;

  run("AchievedPositive", [&] {
    return std::make_pair(c.achieved_norm > 0.0,
                          "achieved = " + num(c.achieved_norm));
  });

  run("LowerBoundMatchesStored", [&] {
    const NCPoly aa = a.adjoint() * a;
    Matrix mean = Matrix::Zero(c.n, c.n);
    for (int j = 0; j < c.q; ++j) {
      const Complex root = std::polar(1.0, 2.0 * kPi * j / c.q);
      mean += eval_at_pair(aa, c.u, Matrix(root * c.v));
    }
    mean /= static_cast<double>(c.q);
    const double lb = std::sqrt(op_norm(mean));
    const double d = std::abs(lb - c.lower_bound);
    return std::make_pair(d <= tol,
                          "recomputed = " + num(lb) + ", difference = " + num(d));
  });

  run("FloorHolds", [&] {
    return std::make_pair(c.achieved_norm >= c.lower_bound - tol,
                          "achieved = " + num(c.achieved_norm) +
                              ", lower bound = " + num(c.lower_bound));
  });

  run("TraceCommutatorZero", [&] {
    const Matrix defect = x.adjoint() * x - x * x.adjoint();
    const double t = std::abs(defect.trace());
    return std::make_pair(t <= c.n * tol, "|tr(X*X - XX*)| = " + num(t));
  });

  run("HyponormalNormality", [&] {
    const double floor = hyponormal_defect(x);
    const double delta = std::max(0.0, -floor);
    const double norm = op_norm(Matrix(x.adjoint() * x - x * x.adjoint()));
    return std::make_pair(norm <= (c.n - 1) * delta + tol,
                          "||X*X - XX*|| = " + num(norm) +
                              ", (n-1) delta = " + num((c.n - 1) * delta));
  });

  run("TraceFaithfulness", [&] {
    const double trace = normalized_trace(Matrix(x.adjoint() * x)).real();
    const double witness = recomputed_achieved / c.n;
    const double floor = witness * witness / c.n;
    return std::make_pair(trace >= floor - tol,
                          "tr_n(X*X) = " + num(trace) + " >= " + num(floor));
  });

  return report;
}

}  // namespace softtorus
