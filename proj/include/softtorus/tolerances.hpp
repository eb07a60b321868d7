#pragma once

namespace softtorus {

// All numerical tolerances used across the library, in one record.
// The defaults are load-bearing: tests and the certificate verifier
// assume them unless a caller overrides.
struct Tolerances {
  double hermitian_tol = 1e-12;   // ||A - A*|| relative to max(1, ||A||)
  double unitary_tol = 1e-10;     // ||U*U - I||, absolute
  double branch_margin = 1e-8;    // angular gap demanded from the log cut at -pi
  double psd_clip = 1e-10;        // eigenvalue clamp for almost-PSD inputs
  double step_slack = 1e-9;       // slack on ||U_{j+1} - U_j|| <= eps
  double path_step_slack = 1e-12; // slack on interpolation step norms
  double covariance_tol = 1e-12;  // Ad(S) rho(u_i) vs rho(u_{i+1})
  double verify_tol = 1e-8;       // default certificate verification tolerance
};

inline constexpr Tolerances kDefaultTol{};

}  // namespace softtorus
