#pragma once

#include "akm/diff.hpp"
#include "akm/tensor.hpp"

namespace akm {

/// (dw)_ij = d_i w_j - d_j w_i
Mat exterior_derivative(const OneFormField& w, const ChartSpec& chart, const ChartPoint& p,
                        const DiffConfig& cfg = {});

/// (dW)_ijk = d_i W_jk + d_j W_ki + d_k W_ij   (no 1/k! normalization)
Tensor3 exterior_derivative(const TwoFormField& w, const ChartSpec& chart, const ChartPoint& p,
                            const DiffConfig& cfg = {});

/// (eta ^ W)_ijk = eta_i W_jk + eta_j W_ki + eta_k W_ij, matching the
/// exterior-derivative convention above.
Tensor3 wedge_1_2(const Vec& eta, const Mat& w);

/// (L_X A)(Y) = [X, A Y] - A [X, Y], componentwise
/// (L_X A)^k_j = X^m d_m A^k_j - A^m_j d_m X^k + A^k_m d_j X^m.
Mat lie_derivative_endo(const VectorField& x, const EndoField& a, const ChartSpec& chart,
                        const ChartPoint& p, const DiffConfig& cfg = {});

/// [X, Y]^k = X^m d_m Y^k - Y^m d_m X^k
Vec lie_bracket(const VectorField& x, const VectorField& y, const ChartSpec& chart,
                const ChartPoint& p, const DiffConfig& cfg = {});

} // namespace akm
