#pragma once

#include <string>
#include <vector>

#include "akm/structure.hpp"

namespace akm {

/// Parameters of the solvable Lie-group model: coordinates (t, x_1..x_n,
/// y_1..y_n) on [-1,1]^(2n+1), xi = dt-dual, eta = dt,
///   phi dx_i = e^{2 a lam_i t} dy_i-dual,  phi dy_i = -e^{-2 a lam_i t} dx_i-dual,
///   g = dt^2 + sum e^{2 a (1+lam_i) t} dx_i^2 + sum e^{2 a (1-lam_i) t} dy_i^2.
/// alpha < 0 inputs are normalized through the sign flip (phi, -xi, -eta, g).
struct LieGroupModelParams {
  int n = 1;
  double alpha = 1.0;
  std::vector<double> lambdas;
};

struct CatalogModel {
  AcmStructure structure;
  LieGroupModelParams params; // as given (alpha may be negative)
  bool alpha_normalized = false;
};

CatalogModel build_model(const LieGroupModelParams& params);

/// Abstract Lie-algebra model: basis (xi, X_1..X_n, Y_1..Y_n), inner product
/// the identity, brackets [xi, X_i] = -a(1+lam_i) X_i, [xi, Y_i] = -a(1-lam_i) Y_i.
struct LieAlgebraModel {
  int dim = 0;
  double alpha = 0.0;
  std::vector<double> lambdas;
  std::vector<std::string> labels;
  std::vector<std::vector<Vec>> bracket; // bracket[i][j] in basis coordinates
  Mat phi;                               // phi X_i = Y_i, phi Y_i = -X_i
  Vec eta;
  Mat h_prime;                           // diag(0, lam_i, -lam_i)
  bool solvable = false;
  bool nilpotent = false;

  Vec bracket_of(const Vec& u, const Vec& v) const;
  double jacobi_residual() const;
  /// Left-invariant torsion 2T(u,v) = -[u,v], components T(k,i,j).
  Tensor3 left_invariant_torsion() const;
};

LieAlgebraModel build_lie_algebra(const LieGroupModelParams& params);

/// The g-orthonormal frame fields xi, X_i = e^{-a(1+lam_i)t} d/dx_i,
/// Y_i = e^{-a(1-lam_i)t} d/dy_i, with analytic partials.
std::vector<VectorField> frame_fields(const LieGroupModelParams& params);

} // namespace akm
