#pragma once

#include <functional>

#include "akm/chart.hpp"
#include "akm/types.hpp"

namespace akm {

/// Pointwise evaluator with an optional analytic first-partial evaluator.
/// `partial(p, dir)` returns the full component array differentiated in
/// coordinate direction `dir`. Evaluators must be deterministic and safe
/// for concurrent invocation.
template <class Value, class Tag>
struct Field {
  std::function<Value(const ChartPoint&)> value;
  std::function<Value(const ChartPoint&, int)> partial; // may be empty

  bool has_analytic_partials() const { return static_cast<bool>(partial); }
};

using ScalarField = Field<double, struct ScalarTag>;   // f
using VectorField = Field<Vec, struct VectorTag>;      // X^k
using OneFormField = Field<Vec, struct OneFormTag>;    // omega_j
using EndoField = Field<Mat, struct EndoTag>;          // A^k_j  = A(k, j)
using MetricField = Field<Mat, struct MetricTag>;      // g_ij, symmetric positive definite
using TwoFormField = Field<Mat, struct TwoFormTag>;    // w_ij, antisymmetric

} // namespace akm
