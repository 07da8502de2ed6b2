#pragma once

#include "akm/config.hpp"
#include "akm/deformation.hpp"
#include "akm/nullity.hpp"

namespace akm {

/// Threshold set for the selftest grid; defaults are the release gate values.
struct SelftestThresholds {
  double axioms = 1e-12;
  double def_alpha = 1e-6;
  double spectrum_values = 1e-8;
  double spectrum_constancy = 1e-7;
  double hprime_residuals = 1e-9;
  double connection_identities = 1e-6;
  double xi_sectional = 1e-5;
  double leaf_planes = 1e-5;
  double canonical_parallel = 1e-5;
  double torsion_axioms = 1e-5;
  double r_tilde = 1e-4;
  double nabla_t_tilde = 1e-4;
  double cross_oracle = 1e-5;
  double deformation_laws = 1e-5;
  double r_xi_invariance = 1e-6;
  double gamma_invariance = 1e-6;
  double kmu_values = 1e-4;
  double kmu_residual = 1e-5;
  double kmu_reject = 0.1; // mixed-spectrum fits must exceed this residual
  double invariant_deform = 1e-8;
  double invariant_value = 1e-6;
  double nabla_r_symmetric = 1e-5;
  double nabla_r_asymmetric_min = 1e-3; // lambda = 2 models must exceed this
  double d_conformal_dphi = 1e-6;
  double kappa_c = 1e-4;

  void tighten(double factor);
};

Report run_validate(const RunConfig& cfg);
Report run_analyze(const RunConfig& cfg);
Report run_deform(const RunConfig& cfg);
Report run_compare(const RunConfig& cfg);
Report run_selftest(const RunConfig& cfg);

/// CSV table of per-plane sectional curvatures at the sample points.
std::string sectional_curvature_csv(const CatalogModel& m, const RunConfig& cfg);

} // namespace akm
