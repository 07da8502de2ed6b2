#pragma once

#include <functional>

#include "akm/diff.hpp"
#include "akm/tensor.hpp"

namespace akm {

/// Connection coefficients at a point: gamma(k, i, j) = Gamma^k_ij, with
/// i the differentiation direction and j the argument, i.e.
/// nabla_{d_i} d_j = Gamma^k_ij d_k. Levi-Civita coefficients are symmetric
/// in (i, j); the canonical connection's are not.
struct ConnectionAtPoint {
  Tensor3 gamma;
};

using ConnectionField = std::function<ConnectionAtPoint(const ChartPoint&)>;

/// Koszul formula: Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).
ConnectionAtPoint christoffel(const MetricField& g, const ChartSpec& chart, const ChartPoint& p,
                              const DiffConfig& cfg = {});

ConnectionField levi_civita(const MetricField& g, const ChartSpec& chart,
                            const DiffConfig& cfg = {});

/// Inverse metric at p; throws SingularMetric if g is not positive definite.
Mat inverse_metric(const Mat& g);

// Full covariant derivatives; the LAST index is the differentiation direction.

/// (nabla V)(k, i) = d_i V^k + Gamma^k_il V^l
Mat cov_deriv_vector(const ConnectionAtPoint& conn, const VectorField& v, const ChartSpec& chart,
                     const ChartPoint& p, const DiffConfig& cfg = {});

/// (nabla w)(j, i) = d_i w_j - Gamma^l_ij w_l
Mat cov_deriv_oneform(const ConnectionAtPoint& conn, const OneFormField& w, const ChartSpec& chart,
                      const ChartPoint& p, const DiffConfig& cfg = {});

/// (nabla A)(k, j, i) = d_i A^k_j + Gamma^k_il A^l_j - Gamma^l_ij A^k_l
Tensor3 cov_deriv_endo(const ConnectionAtPoint& conn, const EndoField& a, const ChartSpec& chart,
                       const ChartPoint& p, const DiffConfig& cfg = {});

/// (nabla b)(j, k, i) = d_i b_jk - Gamma^l_ij b_lk - Gamma^l_ik b_jl
Tensor3 cov_deriv_bilinear(const ConnectionAtPoint& conn, const MetricField& b,
                           const ChartSpec& chart, const ChartPoint& p,
                           const DiffConfig& cfg = {});

// Directional versions, contracted with the components of X at p.
double cov_deriv_scalar_along(const ScalarField& f, const ChartSpec& chart, const ChartPoint& p,
                              const Vec& x, const DiffConfig& cfg = {});
Vec cov_deriv_vector_along(const ConnectionAtPoint& conn, const VectorField& v,
                           const ChartSpec& chart, const ChartPoint& p, const Vec& x,
                           const DiffConfig& cfg = {});
Vec cov_deriv_oneform_along(const ConnectionAtPoint& conn, const OneFormField& w,
                            const ChartSpec& chart, const ChartPoint& p, const Vec& x,
                            const DiffConfig& cfg = {});
Mat cov_deriv_endo_along(const ConnectionAtPoint& conn, const EndoField& a, const ChartSpec& chart,
                         const ChartPoint& p, const Vec& x, const DiffConfig& cfg = {});
Mat cov_deriv_bilinear_along(const ConnectionAtPoint& conn, const MetricField& b,
                             const ChartSpec& chart, const ChartPoint& p, const Vec& x,
                             const DiffConfig& cfg = {});

} // namespace akm
