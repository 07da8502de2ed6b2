#pragma once

#include <cmath>

#include "akm/models.hpp"

namespace testing_helpers {

using namespace akm;

/// n=2 catalog model whose phi gets conjugated by a t-dependent rotation of
/// the (X1, X2) frame plane. Pointwise structure axioms survive (frame
/// conjugation), but the extra t-dependence destroys CR-integrability and the
/// almost alpha-Kenmotsu law. No analytic partials: exercises the numeric
/// fallback.
inline AcmStructure perturbed_phi_model(double alpha = 1.0, double rate = 0.7) {
  const LieGroupModelParams params{2, alpha, {1.0, 2.0}};
  CatalogModel m = build_model(params);
  AcmStructure s = m.structure;

  const auto lam = params.lambdas;
  s.phi.partial = nullptr;
  s.phi.value = [alpha, rate, lam](const ChartPoint& p) {
    const double t = p.coords[0];
    Vec scale(5);
    scale << 1.0, std::exp(-alpha * (1.0 + lam[0]) * t), std::exp(-alpha * (1.0 + lam[1]) * t),
        std::exp(-alpha * (1.0 - lam[0]) * t), std::exp(-alpha * (1.0 - lam[1]) * t);
    const Mat e = Mat(scale.asDiagonal());

    Mat phi_f = Mat::Zero(5, 5);
    phi_f(3, 1) = 1.0;
    phi_f(4, 2) = 1.0;
    phi_f(1, 3) = -1.0;
    phi_f(2, 4) = -1.0;

    Mat q = Mat::Identity(5, 5);
    const double th = rate * t;
    q(1, 1) = std::cos(th);
    q(1, 2) = -std::sin(th);
    q(2, 1) = std::sin(th);
    q(2, 2) = std::cos(th);

    const Mat e_inv = Mat(scale.cwiseInverse().asDiagonal());
    return Mat(e * q * phi_f * q.transpose() * e_inv);
  };
  return s;
}

} // namespace testing_helpers
