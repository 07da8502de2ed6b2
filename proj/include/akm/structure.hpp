#pragma once

#include <optional>
#include <span>
#include <vector>

#include "akm/connection.hpp"
#include "akm/curvature.hpp"
#include "akm/diff_ops.hpp"
#include "akm/sampling.hpp"
#include "akm/tolerances.hpp"

#include <nlohmann/json_fwd.hpp>

namespace akm {

/// Almost contact metric structure (phi, xi, eta, g) with structure constant
/// alpha. alpha == 0 marks an almost cosymplectic structure (reached by the
/// D-conformal change); every other constructor requires alpha != 0.
/// All evaluators are pure; a structure value is immutable and shareable.
struct AcmStructure {
  ChartSpec chart;
  EndoField phi;
  VectorField xi;
  OneFormField eta;
  MetricField g;
  double alpha = 1.0;
  DiffConfig diff{};

  bool analytic() const {
    return phi.has_analytic_partials() && xi.has_analytic_partials() &&
           eta.has_analytic_partials() && g.has_analytic_partials();
  }
};

/// g-orthonormal frame at a point, built by Gram-Schmidt on the coordinate
/// frame with xi first. Columns of e are the frame vectors; e_dual = e^T g,
/// so e_dual * e = I and frame components of a vector v are e_dual * v.
/// For a valid structure eta = g(., xi), hence columns 1..dim-1 span D.
struct FrameAtPoint {
  Mat e;
  Mat e_dual;
};

FrameAtPoint orthonormal_frame(const Mat& g, const Vec& xi);
FrameAtPoint orthonormal_frame(const AcmStructure& s, const ChartPoint& p);

struct ValidityReport {
  double res_phi_square = 0.0;  // phi^2 = -I + eta (x) xi
  double res_eta_xi = 0.0;      // eta(xi) = 1
  double res_phi_xi = 0.0;      // phi xi = 0
  double res_eta_phi = 0.0;     // eta o phi = 0
  double res_compat = 0.0;      // g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y)
  double min_metric_eigenvalue = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int sample_count = 0;
  bool pass = false;

  nlohmann::ordered_json to_json() const;
};

ValidityReport validate(const AcmStructure& s, std::span<const ChartPoint> samples,
                        const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Phi_ij = g(d_i, phi d_j)
Mat fundamental_form(const AcmStructure& s, const ChartPoint& p);

/// Phi as a field; carries analytic partials when g and phi do.
TwoFormField fundamental_form_field(const AcmStructure& s);

struct AlphaKenmotsuReport {
  double max_d_eta = 0.0;
  double max_d_phi_residual = 0.0; // |dPhi - 2 alpha eta ^ Phi|
  double alpha_hat = 0.0;          // best-fit alpha
  bool cosymplectic = false;       // dPhi itself vanishes
  bool pass = false;
};

AlphaKenmotsuReport check_alpha_kenmotsu(const AcmStructure& s, std::span<const ChartPoint> samples,
                                         const Tolerances& tol = {});

/// h' = 1/(2 alpha) (L_xi phi) o phi as a coordinate matrix.
Mat h_prime_matrix(const AcmStructure& s, const ChartPoint& p);

/// h' as a derived field (no analytic partials; nested stencils are used).
EndoField h_prime_field(const AcmStructure& s);

struct HPrimeReport {
  ChartPoint point;
  Mat matrix;
  std::vector<double> eigenvalues; // sorted ascending, from the g-orthonormal frame
  std::vector<int> multiplicities;
  bool spectrum_constant = true;   // across the sample set
  bool spectrum_symmetric = true;  // lambda <-> -lambda pairing
  double max_spectrum_drift = 0.0; // evidence for spectrum_constant
  double max_symmetry_defect = 0.0;
  double res_h_xi = 0.0;           // h' xi = 0
  double res_g_symmetry = 0.0;     // g h' = h'^T g
  double res_phi_anticommute = 0.0;
};

HPrimeReport h_prime(const AcmStructure& s, const ChartPoint& p);
HPrimeReport h_prime_report(const AcmStructure& s, std::span<const ChartPoint> samples,
                            double spectrum_gap = 1e-6);

/// N = [phi, phi] + 2 d eta (x) xi, components out(k, i, j) = N^k_ij.
Tensor3 nijenhuis(const AcmStructure& s, const ChartPoint& p);

/// Frame restriction of a (1,2) tensor; a,b >= 1 select the D block.
Tensor3 frame_components_1_2(const Tensor3& t, const FrameAtPoint& f);

/// Frame-normalized max abs component of a (1,3) curvature-like tensor
/// t(l, k, i, j): the upper index is contracted with e_dual, lower ones with e.
double frame_max_1_3(const Tensor4& t, const FrameAtPoint& f);

struct CrIntegrabilityReport {
  double max_nijenhuis_d = 0.0;     // |N(X,Y)| over the D frame
  double max_nabla_phi_residual = 0.0;
  double max_nijenhuis_full = 0.0;  // all frame pairs (normality witness)
  double threshold = 0.0;
  bool pass = false;
  bool normal = false;
};

CrIntegrabilityReport check_cr_integrable(const AcmStructure& s,
                                          std::span<const ChartPoint> samples,
                                          const Tolerances& tol = {});

struct ConnectionIdentityReport {
  double max_nabla_xi_residual = 0.0;  // nabla_X xi = a (X + h'X - eta(X) xi)
  double max_nabla_eta_residual = 0.0; // (nabla_X eta)(Y) = a g(X+h'X, Y) - a eta(X) eta(Y)
  double max_r_xi_identity = 0.0;      // R_{xi X} xi = a^2(-phi^2 X + 2h'X + h'^2 X) + a (nabla_xi h')X
  double max_metric_compat = 0.0;      // nabla g = 0 for the Levi-Civita connection
  double threshold = 0.0;
  bool pass = false;
};

ConnectionIdentityReport check_connection_identities(const AcmStructure& s,
                                                     std::span<const ChartPoint> samples,
                                                     const Tolerances& tol = {});

struct XiSectionalReport {
  double max_deviation = 0.0; // |K(xi, X) + a^2 (1+lambda)^2| over unit eigenvectors X
  double threshold = 0.0;
  bool pass = false;
};

/// K(xi, X) = -a^2 (1 + lambda)^2 for every unit h'-eigenvector X.
XiSectionalReport check_xi_sectional(const AcmStructure& s, std::span<const ChartPoint> samples,
                                     const Tolerances& tol = {});

struct EtaParallelReport {
  double max_d_residual = 0.0;  // g((nabla_X h')Y, Z), X,Y,Z in D
  double max_xi_residual = 0.0; // nabla_xi h'
  double threshold = 0.0;
  bool pass_eta_parallel = false;
  bool pass_nabla_xi = false;
};

EtaParallelReport check_eta_parallel_h(const AcmStructure& s, std::span<const ChartPoint> samples,
                                       const Tolerances& tol = {});

} // namespace akm
