#pragma once

#include <optional>

#include "akm/canonical.hpp"

namespace akm {

/// Least-squares fit of (kappa, mu) in
///   R_XY xi = kappa (eta(Y)X - eta(X)Y) + mu (eta(Y)h'X - eta(X)h'Y).
/// mu is undefined when the regressor is rank-deficient (h' ~ 0; then only
/// kappa is fitted). The residual is the max frame-component defect over all
/// samples and frame pairs, including the D-pairs (which must give
/// R_XY xi = 0).
struct NullityFit {
  double kappa = 0.0;
  std::optional<double> mu;
  double residual = 0.0;
  bool is_kmu = false;
  bool degenerate = false; // h' ~ 0, kappa-only fit
  double threshold = 0.0;
};

NullityFit fit_kmu(const AcmStructure& s, std::span<const ChartPoint> samples,
                   const Tolerances& tol = {});

/// I = kappa / alpha^2, together with the h' spectrum; classifies
/// (kappa,mu)'-spaces of fixed dimension up to D-homothetic deformation.
struct ClassInvariant {
  double invariant = 0.0;
  int dim = 0;
  std::vector<double> spectrum;
};

ClassInvariant invariant(const AcmStructure& s, std::span<const ChartPoint> samples,
                         const Tolerances& tol = {});

/// lambda = sqrt(-1 - kappa/alpha^2); requires kappa <= -alpha^2.
double lambda_from_kappa(double kappa, double alpha);

struct KmuCurvatureReport {
  double max_formula_residual = 0.0;  // closed-form curvature law
  double max_r_tilde = 0.0;           // canonical curvature vanishes
  double max_plus_plane_dev = 0.0;    // K on [xi]+[lambda] planes vs kappa - 2 a^2 lambda
  double max_minus_plane_dev = 0.0;   // K on [xi]+[-lambda] planes vs kappa + 2 a^2 lambda
  double plus_plane_curvature = 0.0;
  double minus_plane_curvature = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

KmuCurvatureReport verify_kmu_curvature_formula(const AcmStructure& s,
                                                std::span<const ChartPoint> samples,
                                                const Tolerances& tol = {});

struct EquivalenceVerdict {
  bool equivalent = false;
  double witness_beta = 1.0; // alpha1 / alpha2 when equivalent
  int dim1 = 0, dim2 = 0;
  std::vector<double> spectrum1, spectrum2;
  std::optional<double> invariant1, invariant2;
  std::string reason;
};

/// Preconditions: both structures pass the parallelism gates
/// (nabla~ T = 0, R~ = 0); throws PreconditionFailed otherwise.
/// Verdict: equivalent up to D-homothetic deformation iff equal dimension and
/// equal h' spectra (spectra are deformation-invariant).
EquivalenceVerdict classify_pair(const AcmStructure& s1, const AcmStructure& s2, int sample_count,
                                 std::uint64_t seed, const Tolerances& tol = {});

} // namespace akm
