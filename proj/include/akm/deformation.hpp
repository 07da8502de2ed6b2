#pragma once

#include "akm/models.hpp"

namespace akm {

struct DeformationParams {
  double beta = 1.0;
};

/// D-homothetic deformation:
///   phi_ = phi,  xi_ = xi/beta,  eta_ = beta eta,
///   g_ = beta g + beta(beta-1) eta (x) eta,  alpha_ = alpha/beta.
/// Analytic partials are carried through by the chain rule.
AcmStructure deform(const AcmStructure& s, const DeformationParams& d);

struct LcRelationReport {
  double max_connection_residual = 0.0; // Levi-Civita transformation law
  double max_phi_residual = 0.0;        // (nabla_ phi) transformation law
  double max_h_residual = 0.0;          // (nabla_ h') transformation law
  double threshold = 0.0;
  bool pass = false;
};

/// Residual of
///   nabla__X Y = nabla_X Y + a (beta-1)/beta (g(X+h'X,Y) - eta(X)eta(Y)) xi
/// plus the covariant-derivative transformation identities for phi and h'.
LcRelationReport verify_lc_relation(const AcmStructure& s, double beta,
                                    std::span<const ChartPoint> samples,
                                    const Tolerances& tol = {});

struct CurvatureRelationReport {
  double max_curvature_residual = 0.0; // full transformation law
  double max_r_xi_residual = 0.0;      // R_XY xi is invariant
  double threshold = 0.0;
  bool pass = false;
};

CurvatureRelationReport verify_curvature_relation(const AcmStructure& s, double beta,
                                                  std::span<const ChartPoint> samples,
                                                  const Tolerances& tol = {});

/// (kappa, mu) -> (kappa/beta^2, mu/beta^2)
std::pair<double, double> transform_kmu(double kappa, double mu, double beta);

/// D-conformal change g' = e^{-2 a t} g + (1 - e^{-2 a t}) eta (x) eta on a
/// catalog model with all lambdas equal and positive. The result is almost
/// cosymplectic (alpha = 0) and kappa_c-null with kappa_c = kappa + alpha^2.
AcmStructure d_conformal_change(const CatalogModel& m);

} // namespace akm
