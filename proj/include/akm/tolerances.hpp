#pragma once

namespace akm {

/// Pass thresholds used by the verification checks. All overridable.
struct Tolerances {
  double tol_struct = 1e-9;        // pointwise structure axioms
  double tol_deriv = 1e-6;         // exterior-derivative identities
  double tol_curv_analytic = 1e-7; // curvature-level identities, analytic partials
  double tol_curv_numeric = 1e-4;  // same, numeric fallback
  double tol_nabla_r = 1e-5;       // local-symmetry residual
  double kmu_fit_analytic = 1e-5;  // is_kmu residual threshold
  double kmu_fit_numeric = 1e-3;
  double spectrum_gap = 1e-6;      // eigenvalue multiplicity grouping
  double check_scale = 100.0;      // nested checks pass at check_scale * tol_curv

  double tol_curv(bool analytic) const { return analytic ? tol_curv_analytic : tol_curv_numeric; }
  double nested_threshold(bool analytic) const { return check_scale * tol_curv(analytic); }
  double kmu_threshold(bool analytic) const { return analytic ? kmu_fit_analytic : kmu_fit_numeric; }
};

} // namespace akm
