#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "entrogeo/divergence.hpp"
#include "entrogeo/hf_entropy.hpp"

namespace entrogeo {

using Point = std::vector<double>;

/// Parametrized family xi -> p(.; xi) on a finite support.
class StatModel {
 public:
  using PointMap = std::function<void(std::span<const double>, std::span<double>)>;
  using Domain = std::function<bool(std::span<const double>)>;

  StatModel(std::string name, std::size_t dim, std::size_t support, PointMap map, Domain domain)
      : name_(std::move(name)), dim_(dim), support_(support), map_(std::move(map)),
        domain_(std::move(domain)) {}

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t support() const noexcept { return support_; }
  bool contains(std::span<const double> xi) const { return xi.size() == dim_ && domain_(xi); }

  /// p(.; xi); throws ParamOutOfRange outside the domain.
  std::vector<double> point(std::span<const double> xi) const;
  void point_into(std::span<const double> xi, std::span<double> out) const { map_(xi, out); }

 private:
  std::string name_;
  std::size_t dim_;
  std::size_t support_;
  PointMap map_;
  Domain domain_;
};

/// Coordinates xi_i = p_i for i = 1..W, p_0 = 1 - sum xi; the domain keeps
/// every weight at least eps.
StatModel simplex_model(std::size_t w, double eps = 1e-3);

struct MetricTensor {
  Eigen::MatrixXd g;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(g.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double symmetry_residual() const { return (g - g.transpose()).cwiseAbs().maxCoeff(); }
  /// Certified by a Cholesky factorization of the symmetric part.
  bool positive_definite() const;
  double min_eigenvalue() const;
};

/// Lowered-index connection coefficients Gamma_{ij,k}, stored as (i, j, k).
class ConnCoeffs {
 public:
  ConnCoeffs() = default;
  explicit ConnCoeffs(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

  std::size_t dim() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  std::span<const double> data() const noexcept { return data_; }

  double symmetry_residual() const;  // max |G(i,j,k) - G(j,i,k)|
  double max_abs() const;

  ConnCoeffs& operator+=(const ConnCoeffs& other);
  ConnCoeffs& operator*=(double c);
  friend ConnCoeffs operator*(double c, ConnCoeffs g) { return g *= c; }
  friend ConnCoeffs operator-(ConnCoeffs a, const ConnCoeffs& b);

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Default stencil steps: 1e-4 * max(1, |xi|_inf) for second derivatives,
/// 5e-4 * max(1, |xi|_inf) for third derivatives.
double default_metric_step(std::span<const double> xi);
double default_connection_step(std::span<const double> xi);

/// Fisher metric sum_x d_i l d_j l p, with d_i p from central differences.
MetricTensor fisher_metric(const StatModel& model, std::span<const double> xi, double step = 0.0);

/// g_ij = d_i d_j D(p_xi || p_xi') at xi' = xi (derivatives in the first slot).
MetricTensor div_metric(const DivergenceFunctional& d, const StatModel& model,
                        std::span<const double> xi, double step = 0.0);

struct ConnectionPair {
  ConnCoeffs gamma;       // -d_i d_j d'_k D
  ConnCoeffs gamma_dual;  // -d'_i d'_j d_k D
};

ConnectionPair div_connections(const DivergenceFunctional& d, const StatModel& model,
                               std::span<const double> xi, double step = 0.0);

/// E[(d_i d_j l + (1 - alpha)/2 d_i l d_j l) d_k l] as an exact finite sum.
ConnCoeffs alpha_connection(const StatModel& model, std::span<const double> xi, double alpha,
                            double step = 0.0);

/// (delta_ij / p_j + 1 / p_0) h'(f(1)) f''(1) on the simplex model.
MetricTensor hf_closed_metric(const HFPair& pair, std::span<const double> xi, std::size_t w);

/// h'(f(1)) f''(1).
double hf_metric_scale(const HFPair& pair);

/// (2 f'''(1) + 3 f''(1)) / f''(1); the induced connections are c Gamma^(-alpha)
/// and c Gamma^(alpha).
double hf_alpha_of(const HFPair& pair);

using MetricField = std::function<MetricTensor(std::span<const double>)>;
using ConnectionField = std::function<ConnCoeffs(std::span<const double>)>;

/// max_{ijk} |d_k g_ij - Gamma_{ki,j} - Gamma*_{kj,i}|, with d_k g from a
/// fourth-order central stencil of step h.
double duality_residual(const MetricField& g, const ConnectionField& gamma,
                        const ConnectionField& gamma_dual, const StatModel& model,
                        std::span<const double> xi, double h = 1e-3);

/// Same, for the structure a divergence induces.
double duality_residual(const DivergenceFunctional& d, const StatModel& model,
                        std::span<const double> xi, double h = 1e-3);

/// Gamma^m_{ij} with sum_m Gamma^m_{ij} g_{mk} = Gamma_{ij,k}; stored as (i, j, m).
ConnCoeffs raise_index(const MetricTensor& g, const ConnCoeffs& lowered);

struct CombinedGeometry {
  std::vector<double> weights;
  std::vector<MetricTensor> metrics;
  std::vector<ConnectionPair> connections;
  MetricTensor metric;
  ConnectionPair connection;

  /// A^m_{l,n} = d_l zeta(0) (g^{-1} g^{(l)})^m_n, returned as an n x n matrix
  /// indexed (m, n) for constituent l.
  Eigen::MatrixXd mixing(std::size_t l) const;
  /// Gamma^m_{ij} = sum_{l,n} A^m_{l,n} Gamma^{n(l)}_{ij}.
  ConnCoeffs mixed_raised_connection(bool dual = false) const;
};

/// Linear combination of constituent geometries with weights grad zeta(0).
CombinedGeometry combine_geometry(std::span<const double> zeta_gradient,
                                  std::span<const MetricTensor> metrics,
                                  std::span<const ConnectionPair> connections);

}  // namespace entrogeo
