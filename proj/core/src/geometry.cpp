#include "entrogeo/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entrogeo/error.hpp"

namespace entrogeo {
namespace {

double inf_norm(std::span<const double> xi) {
  double m = 0.0;
  for (double v : xi) m = std::max(m, std::abs(v));
  return m;
}

// Evaluates D(p(xi + a) || p(xi + b)) for sparse displacements, checking that
// every stencil point stays inside the model's domain.
class StencilEvaluator {
 public:
  StencilEvaluator(const DivergenceFunctional& d, const StatModel& model,
                   std::span<const double> xi)
      : d_(d), model_(model), xi_(xi.begin(), xi.end()), a_(xi.size()), b_(xi.size()),
        p_(model.support()), q_(model.support()) {
    if (!model.contains(xi)) {
      throw Error(ErrorCode::ParamOutOfRange, "point outside the domain of " + model.name());
    }
  }

  // Displacements are given as (coordinate, step) lists.
  double operator()(std::initializer_list<std::pair<std::size_t, double>> first,
                    std::initializer_list<std::pair<std::size_t, double>> second) {
    a_ = xi_;
    b_ = xi_;
    for (auto [i, s] : first) a_[i] += s;
    for (auto [i, s] : second) b_[i] += s;
    if (!model_.contains(a_) || !model_.contains(b_)) {
      throw Error(ErrorCode::StepTooLarge,
                  "finite-difference stencil leaves the domain of " + model_.name());
    }
    model_.point_into(a_, p_);
    model_.point_into(b_, q_);
    return d_.evaluate(p_, q_);
  }

 private:
  const DivergenceFunctional& d_;
  const StatModel& model_;
  std::vector<double> xi_, a_, b_, p_, q_;
};

// d_i p and d_i d_j p by central differences.
struct ModelDerivatives {
  std::vector<double> p;                     // support
  std::vector<std::vector<double>> dp;       // [i][x]
  std::vector<std::vector<double>> d2p;      // [i*n+j][x]
};

ModelDerivatives model_derivatives(const StatModel& model, std::span<const double> xi,
                                   double h, bool second) {
  const std::size_t n = model.dim();
  ModelDerivatives out;
  out.p = model.point(xi);
  std::vector<double> y(xi.begin(), xi.end());
  auto eval = [&](std::span<const double> pt) {
    if (!model.contains(pt)) {
      throw Error(ErrorCode::StepTooLarge,
                  "finite-difference stencil leaves the domain of " + model.name());
    }
    std::vector<double> r(model.support());
    model.point_into(pt, r);
    return r;
  };
  out.dp.assign(n, std::vector<double>(model.support()));
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = xi[i] + h;
    const auto plus = eval(y);
    y[i] = xi[i] - h;
    const auto minus = eval(y);
    y[i] = xi[i];
    for (std::size_t x = 0; x < model.support(); ++x) out.dp[i][x] = (plus[x] - minus[x]) / (2 * h);
  }
  if (!second) return out;
  out.d2p.assign(n * n, std::vector<double>(model.support()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<double> v(model.support());
      if (i == j) {
        y[i] = xi[i] + h;
        const auto plus = eval(y);
        y[i] = xi[i] - h;
        const auto minus = eval(y);
        y[i] = xi[i];
        for (std::size_t x = 0; x < v.size(); ++x) {
          v[x] = (plus[x] - 2 * out.p[x] + minus[x]) / (h * h);
        }
      } else {
        std::array<std::vector<double>, 4> corners;
        const double si[4] = {h, h, -h, -h};
        const double sj[4] = {h, -h, h, -h};
        for (int c = 0; c < 4; ++c) {
          y[i] = xi[i] + si[c];
          y[j] = xi[j] + sj[c];
          corners[c] = eval(y);
        }
        y[i] = xi[i];
        y[j] = xi[j];
        for (std::size_t x = 0; x < v.size(); ++x) {
          v[x] = (corners[0][x] - corners[1][x] - corners[2][x] + corners[3][x]) / (4 * h * h);
        }
      }
      out.d2p[i * n + j] = v;
      out.d2p[j * n + i] = std::move(v);
    }
  }
  return out;
}

}  // namespace

std::vector<double> StatModel::point(std::span<const double> xi) const {
  if (!contains(xi)) {
    throw Error(ErrorCode::ParamOutOfRange, "point outside the domain of " + name_);
  }
  std::vector<double> p(support_);
  map_(xi, p);
  return p;
}

StatModel simplex_model(std::size_t w, double eps) {
  if (w == 0) throw Error(ErrorCode::ParamOutOfRange, "simplex model needs W >= 1");
  if (!(eps > 0.0) || !(eps * static_cast<double>(w + 1) < 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "simplex model guard must satisfy 0 < eps < 1/(W+1)",
                eps);
  }
  auto map = [](std::span<const double> xi, std::span<double> p) {
    double rest = 1.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
      p[i + 1] = xi[i];
      rest -= xi[i];
    }
    p[0] = rest;
  };
  auto domain = [eps](std::span<const double> xi) {
    double rest = 1.0;
    for (double v : xi) {
      if (!(v >= eps)) return false;
      rest -= v;
    }
    return rest >= eps;
  };
  return StatModel("simplex:" + std::to_string(w), w, w + 1, map, domain);
}

bool MetricTensor::positive_definite() const {
  if (g.rows() == 0) return false;
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  return llt.info() == Eigen::Success && min_eigenvalue() > 0.0;
}

double MetricTensor::min_eigenvalue() const {
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double ConnCoeffs::symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        worst = std::max(worst, std::abs((*this)(i, j, k) - (*this)(j, i, k)));
  return worst;
}

double ConnCoeffs::max_abs() const {
  double worst = 0.0;
  for (double v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

ConnCoeffs& ConnCoeffs::operator+=(const ConnCoeffs& other) {
  if (other.n_ != n_) throw Error(ErrorCode::LengthMismatch, "connection dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ConnCoeffs& ConnCoeffs::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

ConnCoeffs operator-(ConnCoeffs a, const ConnCoeffs& b) {
  a += -1.0 * b;
  return a;
}

double default_metric_step(std::span<const double> xi) { return 1e-4 * std::max(1.0, inf_norm(xi)); }

double default_connection_step(std::span<const double> xi) {
  return 5e-4 * std::max(1.0, inf_norm(xi));
}

MetricTensor fisher_metric(const StatModel& model, std::span<const double> xi, double step) {
  const double h = step > 0.0 ? step : default_metric_step(xi);
  const auto d = model_derivatives(model, xi, h, false);
  const std::size_t n = model.dim();
  MetricTensor m{Eigen::MatrixXd::Zero(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t x = 0; x < model.support(); ++x) s += d.dp[i][x] * d.dp[j][x] / d.p[x];
      m.g(i, j) = s;
    }
  }
  return m;
}

MetricTensor div_metric(const DivergenceFunctional& d, const StatModel& model,
                        std::span<const double> xi, double step) {
  const double h = step > 0.0 ? step : default_metric_step(xi);
  StencilEvaluator D(d, model, xi);
  const std::size_t n = model.dim();
  MetricTensor m{Eigen::MatrixXd::Zero(n, n)};
  const double center = D({}, {});
  for (std::size_t i = 0; i < n; ++i) {
    m.g(i, i) = (D({{i, h}}, {}) - 2 * center + D({{i, -h}}, {})) / (h * h);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = (D({{i, h}, {j, h}}, {}) - D({{i, h}, {j, -h}}, {}) -
                        D({{i, -h}, {j, h}}, {}) + D({{i, -h}, {j, -h}}, {})) /
                       (4 * h * h);
      m.g(i, j) = v;
      m.g(j, i) = v;
    }
  }
  return m;
}

ConnectionPair div_connections(const DivergenceFunctional& d, const StatModel& model,
                               std::span<const double> xi, double step) {
  double h = step > 0.0 ? step : default_connection_step(xi);
  StencilEvaluator D(d, model, xi);
  const std::size_t n = model.dim();
  ConnectionPair out{ConnCoeffs(n), ConnCoeffs(n)};

  // -d_i d_j (in slot `twice`) d_k (in slot `once`) of D, both slots at xi.
  auto third = [&](std::size_t i, std::size_t j, std::size_t k, bool first_twice) {
    auto eval = [&](std::initializer_list<std::pair<std::size_t, double>> two, double sk) {
      const std::initializer_list<std::pair<std::size_t, double>> one = {{k, sk}};
      return first_twice ? D(two, one) : D(one, two);
    };
    auto second_diff = [&](double sk) {
      if (i == j) {
        return (eval({{i, h}}, sk) - 2 * eval({}, sk) + eval({{i, -h}}, sk)) / (h * h);
      }
      return (eval({{i, h}, {j, h}}, sk) - eval({{i, h}, {j, -h}}, sk) -
              eval({{i, -h}, {j, h}}, sk) + eval({{i, -h}, {j, -h}}, sk)) /
             (4 * h * h);
    };
    return -(second_diff(h) - second_diff(-h)) / (2 * h);
  };

  // Richardson extrapolation over steps h and 2h cancels the O(h^2) term;
  // a plain third-order stencil is not accurate enough near the simplex faces.
  auto extrapolated = [&](std::size_t i, std::size_t j, std::size_t k, bool first_twice) {
    const double fine = third(i, j, k, first_twice);
    h *= 2;
    const double coarse = third(i, j, k, first_twice);
    h /= 2;
    return (4 * fine - coarse) / 3;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double g = extrapolated(i, j, k, true);
        const double gs = extrapolated(i, j, k, false);
        out.gamma(i, j, k) = out.gamma(j, i, k) = g;
        out.gamma_dual(i, j, k) = out.gamma_dual(j, i, k) = gs;
      }
    }
  }
  return out;
}

ConnCoeffs alpha_connection(const StatModel& model, std::span<const double> xi, double alpha,
                            double step) {
  const double h = step > 0.0 ? step : default_connection_step(xi);
  const auto d = model_derivatives(model, xi, h, true);
  const std::size_t n = model.dim();
  // d_i d_j l = d_ij p / p - d_i p d_j p / p^2 and d_i l = d_i p / p.
  const double cubic = (1.0 - alpha) / 2.0 - 1.0;
  ConnCoeffs out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t x = 0; x < model.support(); ++x) {
          const double p = d.p[x];
          s += d.d2p[i * n + j][x] * d.dp[k][x] / p +
               cubic * d.dp[i][x] * d.dp[j][x] * d.dp[k][x] / (p * p);
        }
        out(i, j, k) = s;
      }
  return out;
}

double hf_metric_scale(const HFPair& pair) {
  if (pair.role() != Role::Divergence) {
    throw Error(ErrorCode::ShapeMismatch, pair.name() + " is not a divergence pair");
  }
  return pair.h_prime_at_f_one() * pair.f_second_one();
}

MetricTensor hf_closed_metric(const HFPair& pair, std::span<const double> xi, std::size_t w) {
  const double c = hf_metric_scale(pair);
  if (xi.size() != w) {
    throw Error(ErrorCode::LengthMismatch,
                "point has " + std::to_string(xi.size()) + " coordinates, model has " +
                    std::to_string(w));
  }
  double p0 = 1.0;
  for (double v : xi) {
    if (!(v > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "point outside the open simplex", v);
    p0 -= v;
  }
  if (!(p0 > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "point outside the open simplex", p0);
  MetricTensor m{Eigen::MatrixXd::Constant(w, w, c / p0)};
  for (std::size_t i = 0; i < w; ++i) m.g(i, i) += c / xi[i];
  return m;
}

double hf_alpha_of(const HFPair& pair) {
  const double f2 = pair.f_second_one();
  if (!(std::abs(f2) > 1e-12)) {
    throw Error(ErrorCode::DegenerateSecondDerivative, pair.name() + ": f''(1) vanishes", f2);
  }
  return (2 * pair.f_third_one() + 3 * f2) / f2;
}

double duality_residual(const MetricField& g, const ConnectionField& gamma,
                        const ConnectionField& gamma_dual, const StatModel& model,
                        std::span<const double> xi, double h) {
  const std::size_t n = model.dim();
  const auto G = gamma(xi);
  const auto Gs = gamma_dual(xi);
  std::vector<double> y(xi.begin(), xi.end());
  auto metric_at = [&](std::size_t k, double s) {
    y[k] = xi[k] + s;
    if (!model.contains(y)) {
      throw Error(ErrorCode::StepTooLarge, "metric stencil leaves the domain of " + model.name());
    }
    auto m = g(y);
    y[k] = xi[k];
    return m.g;
  };
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::MatrixXd dg = (-metric_at(k, 2 * h) + 8 * metric_at(k, h) -
                                8 * metric_at(k, -h) + metric_at(k, -2 * h)) /
                               (12 * h);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(dg(i, j) - G(k, i, j) - Gs(k, j, i)));
  }
  return worst;
}

double duality_residual(const DivergenceFunctional& d, const StatModel& model,
                        std::span<const double> xi, double h) {
  MetricField g = [&](std::span<const double> y) { return div_metric(d, model, y); };
  auto conn = div_connections(d, model, xi);
  ConnectionField gamma = [&](std::span<const double>) { return conn.gamma; };
  ConnectionField gamma_dual = [&](std::span<const double>) { return conn.gamma_dual; };
  return duality_residual(g, gamma, gamma_dual, model, xi, h);
}

ConnCoeffs raise_index(const MetricTensor& g, const ConnCoeffs& lowered) {
  const std::size_t n = lowered.dim();
  if (g.dim() != n) throw Error(ErrorCode::LengthMismatch, "metric and connection dimensions differ");
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (g.g + g.g.transpose()));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::DomainError, "metric is not positive definite");
  }
  ConnCoeffs raised(n);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) rhs(k) = lowered(i, j, k);
      const Eigen::VectorXd up = llt.solve(rhs);
      for (std::size_t m = 0; m < n; ++m) raised(i, j, m) = up(m);
    }
  return raised;
}

Eigen::MatrixXd CombinedGeometry::mixing(std::size_t l) const {
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (metric.g + metric.g.transpose()));
  return weights.at(l) * llt.solve(metrics.at(l).g);
}

ConnCoeffs CombinedGeometry::mixed_raised_connection(bool dual) const {
  const std::size_t n = metric.dim();
  ConnCoeffs out(n);
  for (std::size_t l = 0; l < metrics.size(); ++l) {
    if (weights[l] == 0.0) continue;
    const Eigen::MatrixXd a = mixing(l);
    const auto& lowered = dual ? connections[l].gamma_dual : connections[l].gamma;
    const ConnCoeffs raised = raise_index(metrics[l], lowered);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
          double s = 0.0;
          for (std::size_t r = 0; r < n; ++r) s += a(m, r) * raised(i, j, r);
          out(i, j, m) += s;
        }
  }
  return out;
}

CombinedGeometry combine_geometry(std::span<const double> zeta_gradient,
                                  std::span<const MetricTensor> metrics,
                                  std::span<const ConnectionPair> connections) {
  if (zeta_gradient.empty() || metrics.size() != zeta_gradient.size() ||
      connections.size() != zeta_gradient.size()) {
    throw Error(ErrorCode::ArityMismatch, "gradient, metrics and connections must align");
  }
  bool any_positive = false;
  for (double w : zeta_gradient) {
    if (w < 0.0) {
      throw Error(ErrorCode::ParamOutOfRange, "zeta gradient at the origin must be non-negative", w);
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) {
    throw Error(ErrorCode::AllZeroGradient,
                "the origin is critical for zeta; only a semi-divergence geometry exists");
  }
  const std::size_t n = metrics[0].dim();
  CombinedGeometry out;
  out.weights.assign(zeta_gradient.begin(), zeta_gradient.end());
  out.metrics.assign(metrics.begin(), metrics.end());
  out.connections.assign(connections.begin(), connections.end());
  out.metric.g = Eigen::MatrixXd::Zero(n, n);
  out.connection = {ConnCoeffs(n), ConnCoeffs(n)};
  for (std::size_t l = 0; l < metrics.size(); ++l) {
    if (metrics[l].dim() != n || connections[l].gamma.dim() != n ||
        connections[l].gamma_dual.dim() != n) {
      throw Error(ErrorCode::LengthMismatch, "constituent geometries differ in dimension");
    }
    out.metric.g += zeta_gradient[l] * metrics[l].g;
    out.connection.gamma += zeta_gradient[l] * connections[l].gamma;
    out.connection.gamma_dual += zeta_gradient[l] * connections[l].gamma_dual;
  }
  return out;
}

}  // namespace entrogeo
