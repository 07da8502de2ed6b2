#include "akm/models.hpp"

#include <cmath>

namespace akm {

namespace {

void check_params(const LieGroupModelParams& p) {
  if (p.n < 1) throw InvalidParams("model requires n >= 1");
  if (p.alpha == 0.0) throw InvalidParams("model requires alpha != 0");
  if (static_cast<int>(p.lambdas.size()) != p.n)
    throw InvalidParams("lambdas must have length n");
  for (double l : p.lambdas)
    if (l < 0.0 || !std::isfinite(l)) throw InvalidParams("lambdas must be nonnegative reals");
}

ChartSpec model_chart(int n) {
  std::vector<std::string> names;
  names.push_back("t");
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  std::vector<Interval> box(static_cast<std::size_t>(2 * n + 1), Interval{-1.0, 1.0});
  return ChartSpec(std::move(names), std::move(box));
}

} // namespace

CatalogModel build_model(const LieGroupModelParams& params) {
  check_params(params);
  const int n = params.n;
  const int d = 2 * n + 1;
  const double a = params.alpha;            // raw, may be negative
  const double sign = a < 0.0 ? -1.0 : 1.0; // (phi, -xi, -eta, g) flip for a < 0
  const std::vector<double> lam = params.lambdas;

  auto ix = [](int i) { return 1 + i; };
  auto iy = [n](int i) { return 1 + n + i; };

  AcmStructure s;
  s.chart = model_chart(n);
  s.alpha = std::abs(a);

  s.phi.value = [=](const ChartPoint& p) {
    const double t = p.coords[0];
    Mat f = Mat::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      f(iy(i), ix(i)) = std::exp(2.0 * a * lam[static_cast<std::size_t>(i)] * t);
      f(ix(i), iy(i)) = -std::exp(-2.0 * a * lam[static_cast<std::size_t>(i)] * t);
    }
    return f;
  };
  s.phi.partial = [=](const ChartPoint& p, int dir) {
    Mat f = Mat::Zero(d, d);
    if (dir != 0) return f;
    const double t = p.coords[0];
    for (int i = 0; i < n; ++i) {
      const double c = 2.0 * a * lam[static_cast<std::size_t>(i)];
      f(iy(i), ix(i)) = c * std::exp(c * t);
      f(ix(i), iy(i)) = c * std::exp(-c * t);
    }
    return f;
  };

  s.g.value = [=](const ChartPoint& p) {
    const double t = p.coords[0];
    Vec diag(d);
    diag[0] = 1.0;
    for (int i = 0; i < n; ++i) {
      diag[ix(i)] = std::exp(2.0 * a * (1.0 + lam[static_cast<std::size_t>(i)]) * t);
      diag[iy(i)] = std::exp(2.0 * a * (1.0 - lam[static_cast<std::size_t>(i)]) * t);
    }
    return Mat(diag.asDiagonal());
  };
  s.g.partial = [=](const ChartPoint& p, int dir) {
    if (dir != 0) return Mat(Mat::Zero(d, d));
    const double t = p.coords[0];
    Vec diag = Vec::Zero(d);
    for (int i = 0; i < n; ++i) {
      const double cx = 2.0 * a * (1.0 + lam[static_cast<std::size_t>(i)]);
      const double cy = 2.0 * a * (1.0 - lam[static_cast<std::size_t>(i)]);
      diag[ix(i)] = cx * std::exp(cx * t);
      diag[iy(i)] = cy * std::exp(cy * t);
    }
    return Mat(diag.asDiagonal());
  };

  s.xi.value = [=](const ChartPoint&) { return Vec(sign * Vec::Unit(d, 0)); };
  s.xi.partial = [=](const ChartPoint&, int) { return Vec(Vec::Zero(d)); };
  s.eta.value = [=](const ChartPoint&) { return Vec(sign * Vec::Unit(d, 0)); };
  s.eta.partial = [=](const ChartPoint&, int) { return Vec(Vec::Zero(d)); };

  return CatalogModel{std::move(s), params, a < 0.0};
}

Vec LieAlgebraModel::bracket_of(const Vec& u, const Vec& v) const {
  Vec out = Vec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      if (v[j] == 0.0) continue;
      out += u[i] * v[j] * bracket[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return out;
}

double LieAlgebraModel::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const Vec ei = Vec::Unit(dim, i), ej = Vec::Unit(dim, j), ek = Vec::Unit(dim, k);
        const Vec cyc = bracket_of(ei, bracket_of(ej, ek)) + bracket_of(ej, bracket_of(ek, ei)) +
                        bracket_of(ek, bracket_of(ei, ej));
        r = std::max(r, cyc.cwiseAbs().maxCoeff());
      }
  return r;
}

Tensor3 LieAlgebraModel::left_invariant_torsion() const {
  Tensor3 t(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const Vec b = bracket[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < dim; ++k) t(k, i, j) = -0.5 * b[k];
    }
  return t;
}

namespace {

int span_rank(const std::vector<Vec>& gens, int dim) {
  if (gens.empty()) return 0;
  Mat m(dim, static_cast<int>(gens.size()));
  for (int c = 0; c < m.cols(); ++c) m.col(c) = gens[static_cast<std::size_t>(c)];
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-12);
  return static_cast<int>(lu.rank());
}

std::vector<Vec> span_basis(const std::vector<Vec>& gens, int dim) {
  std::vector<Vec> basis;
  for (const Vec& v : gens) {
    std::vector<Vec> trial = basis;
    trial.push_back(v);
    if (span_rank(trial, dim) > span_rank(basis, dim)) basis.push_back(v);
  }
  return basis;
}

} // namespace

LieAlgebraModel build_lie_algebra(const LieGroupModelParams& params) {
  check_params(params);
  const int n = params.n;
  const int d = 2 * n + 1;
  const double a = std::abs(params.alpha);

  LieAlgebraModel m;
  m.dim = d;
  m.alpha = a;
  m.lambdas = params.lambdas;
  m.labels.push_back("xi");
  for (int i = 1; i <= n; ++i) m.labels.push_back("X" + std::to_string(i));
  for (int i = 1; i <= n; ++i) m.labels.push_back("Y" + std::to_string(i));

  m.bracket.assign(static_cast<std::size_t>(d),
                   std::vector<Vec>(static_cast<std::size_t>(d), Vec::Zero(d)));
  for (int i = 0; i < n; ++i) {
    const int xi_i = 1 + i, yi_i = 1 + n + i;
    const double lx = -a * (1.0 + params.lambdas[static_cast<std::size_t>(i)]);
    const double ly = -a * (1.0 - params.lambdas[static_cast<std::size_t>(i)]);
    m.bracket[0][static_cast<std::size_t>(xi_i)] = lx * Vec::Unit(d, xi_i);
    m.bracket[static_cast<std::size_t>(xi_i)][0] = -lx * Vec::Unit(d, xi_i);
    m.bracket[0][static_cast<std::size_t>(yi_i)] = ly * Vec::Unit(d, yi_i);
    m.bracket[static_cast<std::size_t>(yi_i)][0] = -ly * Vec::Unit(d, yi_i);
  }

  m.phi = Mat::Zero(d, d);
  m.h_prime = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    m.phi(1 + n + i, 1 + i) = 1.0;  // phi X_i = Y_i
    m.phi(1 + i, 1 + n + i) = -1.0; // phi Y_i = -X_i
    m.h_prime(1 + i, 1 + i) = params.lambdas[static_cast<std::size_t>(i)];
    m.h_prime(1 + n + i, 1 + n + i) = -params.lambdas[static_cast<std::size_t>(i)];
  }
  m.eta = Vec::Unit(d, 0);

  // derived series for solvability, lower central series for nilpotency
  std::vector<Vec> full;
  for (int i = 0; i < d; ++i) full.push_back(Vec::Unit(d, i));
  auto bracket_span = [&](const std::vector<Vec>& u, const std::vector<Vec>& v) {
    std::vector<Vec> gens;
    for (const Vec& x : u)
      for (const Vec& y : v) {
        Vec b = m.bracket_of(x, y);
        if (b.cwiseAbs().maxCoeff() > 1e-14) gens.push_back(std::move(b));
      }
    return span_basis(gens, d);
  };

  std::vector<Vec> derived = full;
  for (int it = 0; it <= d; ++it) {
    std::vector<Vec> next = bracket_span(derived, derived);
    if (span_rank(next, d) == 0) {
      m.solvable = true;
      break;
    }
    if (span_rank(next, d) == span_rank(derived, d)) break;
    derived = std::move(next);
  }

  std::vector<Vec> central = full;
  bool vanished = false;
  for (int it = 0; it <= d; ++it) {
    std::vector<Vec> next = bracket_span(full, central);
    if (span_rank(next, d) == 0) {
      vanished = true;
      break;
    }
    if (span_rank(next, d) == span_rank(central, d)) break; // stabilized nonzero
    central = std::move(next);
  }
  m.nilpotent = vanished;
  return m;
}

std::vector<VectorField> frame_fields(const LieGroupModelParams& params) {
  check_params(params);
  const int n = params.n;
  const int d = 2 * n + 1;
  const double a = params.alpha;
  const double sign = a < 0.0 ? -1.0 : 1.0;

  std::vector<VectorField> out;
  VectorField xi;
  xi.value = [=](const ChartPoint&) { return Vec(sign * Vec::Unit(d, 0)); };
  xi.partial = [=](const ChartPoint&, int) { return Vec(Vec::Zero(d)); };
  out.push_back(std::move(xi));

  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < n; ++i) {
      const int idx = pass == 0 ? 1 + i : 1 + n + i;
      const double c = pass == 0 ? -a * (1.0 + params.lambdas[static_cast<std::size_t>(i)])
                                 : -a * (1.0 - params.lambdas[static_cast<std::size_t>(i)]);
      VectorField f;
      f.value = [=](const ChartPoint& p) {
        return Vec(std::exp(c * p.coords[0]) * Vec::Unit(d, idx));
      };
      f.partial = [=](const ChartPoint& p, int dir) {
        if (dir != 0) return Vec(Vec::Zero(d));
        return Vec(c * std::exp(c * p.coords[0]) * Vec::Unit(d, idx));
      };
      out.push_back(std::move(f));
    }
  return out;
}

} // namespace akm
