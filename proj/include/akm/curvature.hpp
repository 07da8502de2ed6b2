#pragma once

#include "akm/connection.hpp"

namespace akm {

/// Curvature components at a point with the convention
///   R_XY Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
///   (R_XY Z)^l = riem(l, k, i, j) X^i Y^j Z^k.
/// Antisymmetry riem(l,k,i,j) = -riem(l,k,j,i) holds exactly by construction.
struct CurvatureAtPoint {
  Tensor4 riem;
};

/// Curvature of an arbitrary connection from its coefficients:
///   R^l_kij = d_i Gamma^l_jk - d_j Gamma^l_ik
///           + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik.
/// Coordinate-frame brackets vanish, so torsion does not enter.
/// Coefficient derivatives use a central stencil of the given order at step h.
CurvatureAtPoint curvature_of_connection(const ConnectionField& conn, const ChartSpec& chart,
                                         const ChartPoint& p, double h, int order);

CurvatureAtPoint riemann(const MetricField& g, const ChartSpec& chart, const ChartPoint& p,
                         const DiffConfig& cfg = {});

/// (nabla_m R)^l_kij, direction index last: out(l, k, i, j, m).
Tensor5 curvature_covariant_derivative(const MetricField& g, const ChartSpec& chart,
                                       const ChartPoint& p, const DiffConfig& cfg = {});

/// K = g(R_uv v, u) / (g(u,u) g(v,v) - g(u,v)^2); throws DegeneratePlane
/// if the denominator is below 1e-12.
double sectional_curvature(const MetricField& g, const ChartSpec& chart, const ChartPoint& p,
                           const Vec& u, const Vec& v, const DiffConfig& cfg = {});

double sectional_curvature(const CurvatureAtPoint& r, const Mat& g, const Vec& u, const Vec& v);

/// (R_XY Z)^l contracted from components.
Vec curvature_apply(const CurvatureAtPoint& r, const Vec& x, const Vec& y, const Vec& z);

} // namespace akm
