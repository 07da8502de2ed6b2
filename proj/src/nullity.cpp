#include "akm/nullity.hpp"

#include <cmath>

namespace akm {

NullityFit fit_kmu(const AcmStructure& s, std::span<const ChartPoint> samples,
                   const Tolerances& tol) {
  NullityFit fit;
  fit.threshold = tol.kmu_threshold(s.analytic());
  const int d = s.chart.dim();

  struct Row {
    double a, b, y;
  };
  std::vector<Row> rows;
  std::vector<double> d_pair_defects;
  rows.reserve(samples.size() * static_cast<std::size_t>(d * d));

  for (const ChartPoint& p : samples) {
    const Tensor4 riem = riemann(s.g, s.chart, p, s.diff).riem;
    const Mat h = (s.alpha != 0.0) ? h_prime_matrix(s, p) : Mat::Zero(d, d);
    const Vec xi = s.xi.value(p);
    const FrameAtPoint fr = orthonormal_frame(s, p);

    auto r_apply_xi = [&](const Vec& x, const Vec& y) {
      Vec out = Vec::Zero(d);
      for (int l = 0; l < d; ++l) {
        double sum = 0.0;
        for (int k = 0; k < d; ++k) {
          if (xi[k] == 0.0) continue;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sum += riem(l, k, i, j) * x[i] * y[j] * xi[k];
        }
        out[l] = sum;
      }
      return out;
    };

    // informative rows: (xi, e_a); eta(xi)=1, eta(e_a)=0, so
    //   R_{xi e_a} xi = -kappa e_a - mu h' e_a
    for (int a = 1; a < d; ++a) {
      const Vec ea = fr.e.col(a);
      const Vec resp = fr.e_dual * r_apply_xi(xi, ea);
      const Vec areg = fr.e_dual * (-ea);
      const Vec breg = fr.e_dual * (-(h * ea));
      for (int c = 0; c < d; ++c) rows.push_back({areg[c], breg[c], resp[c]});
    }
    // D-pairs constrain nothing but must satisfy R_XY xi = 0
    for (int a = 1; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        const Vec w = fr.e_dual * r_apply_xi(fr.e.col(a), fr.e.col(b));
        d_pair_defects.push_back(w.cwiseAbs().maxCoeff());
      }
  }

  double na = 0.0, nb = 0.0;
  for (const Row& r : rows) {
    na += r.a * r.a;
    nb += r.b * r.b;
  }
  fit.degenerate = s.alpha == 0.0 || nb < 1e-16 * std::max(1.0, na);

  if (fit.degenerate) {
    double num = 0.0;
    for (const Row& r : rows) num += r.a * r.y;
    fit.kappa = na > 0 ? num / na : 0.0;
  } else {
    Mat m(static_cast<int>(rows.size()), 2);
    Vec y(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      m(static_cast<int>(i), 0) = rows[i].a;
      m(static_cast<int>(i), 1) = rows[i].b;
      y[static_cast<int>(i)] = rows[i].y;
    }
    const Vec sol = m.colPivHouseholderQr().solve(y);
    fit.kappa = sol[0];
    fit.mu = sol[1];
  }

  const double mu = fit.mu.value_or(0.0);
  for (const Row& r : rows)
    fit.residual = std::max(fit.residual, std::abs(r.y - fit.kappa * r.a - mu * r.b));
  for (double v : d_pair_defects) fit.residual = std::max(fit.residual, v);
  fit.is_kmu = fit.residual < fit.threshold;
  return fit;
}

ClassInvariant invariant(const AcmStructure& s, std::span<const ChartPoint> samples,
                         const Tolerances& tol) {
  const NullityFit fit = fit_kmu(s, samples, tol);
  if (!fit.is_kmu) throw NotKmuSpace("structure does not satisfy the nullity condition");
  if (fit.degenerate) throw NotKmuSpace("h' vanishes; the invariant requires h' != 0");
  if (s.alpha == 0.0) throw NotKmuSpace("invariant undefined for alpha = 0");
  ClassInvariant out;
  out.invariant = fit.kappa / (s.alpha * s.alpha);
  out.dim = s.chart.dim();
  out.spectrum = h_prime_report(s, samples).eigenvalues;
  return out;
}

double lambda_from_kappa(double kappa, double alpha) {
  if (alpha == 0.0) throw InvalidParams("alpha must be nonzero");
  const double ratio = -1.0 - kappa / (alpha * alpha);
  if (ratio < -1e-12)
    throw KappaOutOfRange("kappa exceeds -alpha^2; no such nullity space exists");
  return std::sqrt(std::max(0.0, ratio));
}

KmuCurvatureReport verify_kmu_curvature_formula(const AcmStructure& s,
                                                std::span<const ChartPoint> samples,
                                                const Tolerances& tol) {
  const NullityFit fit = fit_kmu(s, samples, tol);
  if (!fit.is_kmu || fit.degenerate)
    throw NotKmuSpace("curvature formula applies to nullity structures with h' != 0");

  KmuCurvatureReport r;
  r.threshold = tol.nested_threshold(s.analytic());
  const int d = s.chart.dim();
  const double a = s.alpha;
  const double kappa = fit.kappa;
  const double lambda = lambda_from_kappa(kappa, a);
  r.plus_plane_curvature = kappa - 2.0 * a * a * lambda;
  r.minus_plane_curvature = kappa + 2.0 * a * a * lambda;

  for (const ChartPoint& p : samples) {
    const CurvatureAtPoint rc = riemann(s.g, s.chart, p, s.diff);
    const Mat g = s.g.value(p);
    const Mat h = h_prime_matrix(s, p);
    const Vec xi = s.xi.value(p);
    const Vec eta = s.eta.value(p);
    const FrameAtPoint fr = orthonormal_frame(s, p);
    const Mat id = Mat::Identity(d, d);
    const Mat pl = id + h, mn = id - h;
    const Mat bp = pl.transpose() * g; // g(P d_i, d_j)
    const Mat bm = mn.transpose() * g; // g((I-h') d_i, d_j)

    Tensor4 res(d);
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            const double expected =
                kappa * (eta[k] * (eta[j] * id(l, i) - eta[i] * id(l, j)) +
                         (g(j, k) * eta[i] - g(i, k) * eta[j]) * xi[l]) +
                a * a * (bm(j, k) * eta[i] - bm(i, k) * eta[j]) * xi[l] +
                a * a * eta[k] * (eta[j] * mn(l, i) - eta[i] * mn(l, j)) -
                a * a * (bp(j, k) * pl(l, i) - bp(i, k) * pl(l, j));
            res(l, k, i, j) = rc.riem(l, k, i, j) - expected;
          }
    r.max_formula_residual = std::max(r.max_formula_residual, frame_max_1_3(res, fr));

    const CanonicalCurvature cc = canonical_curvature_both(s, p, tol);
    r.max_r_tilde = std::max(r.max_r_tilde, frame_max_1_3(cc.direct.riem, fr));

    // leaf planes: eigenvectors of the frame representative of h'
    Mat hf = fr.e_dual * h * fr.e;
    hf = 0.5 * (hf + hf.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(hf);
    std::vector<Vec> plus, minus;
    plus.push_back(xi / std::sqrt(xi.dot(g * xi)));
    minus.push_back(plus[0]);
    for (int c = 0; c < d; ++c) {
      const double ev = es.eigenvalues()[c];
      const Vec v = fr.e * es.eigenvectors().col(c);
      if (std::abs(ev - lambda) < 1e-6) plus.push_back(v);
      if (std::abs(ev + lambda) < 1e-6) minus.push_back(v);
    }
    auto check_planes = [&](const std::vector<Vec>& span, double expected, double& dev) {
      for (std::size_t u = 0; u < span.size(); ++u)
        for (std::size_t v = u + 1; v < span.size(); ++v) {
          const double k2 = sectional_curvature(rc, g, span[u], span[v]);
          dev = std::max(dev, std::abs(k2 - expected));
        }
    };
    check_planes(plus, r.plus_plane_curvature, r.max_plus_plane_dev);
    check_planes(minus, r.minus_plane_curvature, r.max_minus_plane_dev);
  }
  r.pass = r.max_formula_residual < r.threshold && r.max_r_tilde < r.threshold;
  return r;
}

EquivalenceVerdict classify_pair(const AcmStructure& s1, const AcmStructure& s2, int sample_count,
                                 std::uint64_t seed, const Tolerances& tol) {
  const std::vector<ChartPoint> p1 = sample_points(s1.chart, sample_count, seed);
  const std::vector<ChartPoint> p2 = sample_points(s2.chart, sample_count, seed);

  for (const auto* pair : {&s1, &s2}) {
    const auto& pts = (pair == &s1) ? p1 : p2;
    const ParallelismReport par = check_parallelism(*pair, pts, tol);
    if (!par.pass)
      throw PreconditionFailed("structure is not CR-integrable almost alpha-Kenmotsu "
                               "(canonical parallelism fails)");
    const CanonicalInvariantsReport ci = check_nabla_T_and_R(*pair, pts, tol, false);
    if (!ci.pass_r_tilde || !ci.pass_nabla_torsion)
      throw PreconditionFailed(
          "canonical connection lacks parallel torsion or vanishing curvature");
  }

  EquivalenceVerdict v;
  v.dim1 = s1.chart.dim();
  v.dim2 = s2.chart.dim();
  v.spectrum1 = h_prime_report(s1, p1).eigenvalues;
  v.spectrum2 = h_prime_report(s2, p2).eigenvalues;
  if (s2.alpha != 0.0) v.witness_beta = s1.alpha / s2.alpha;

  if (v.dim1 != v.dim2) {
    v.equivalent = false;
    v.reason = "dimensions differ";
  } else {
    double dev = 0.0;
    for (std::size_t i = 0; i < v.spectrum1.size(); ++i)
      dev = std::max(dev, std::abs(v.spectrum1[i] - v.spectrum2[i]));
    v.equivalent = dev < 1e-6;
    v.reason = v.equivalent ? "equal dimensions and h' spectra (deformation-invariant)"
                            : "h' spectra differ";
  }

  for (const auto* pair : {&s1, &s2}) {
    const auto& pts = (pair == &s1) ? p1 : p2;
    try {
      const ClassInvariant ci = invariant(*pair, pts, tol);
      (pair == &s1 ? v.invariant1 : v.invariant2) = ci.invariant;
    } catch (const NotKmuSpace&) {
      // not a nullity space; invariant stays unset
    }
  }
  return v;
}

} // namespace akm
