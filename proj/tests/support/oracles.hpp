#pragma once

// Reference implementations used only by tests. Entropies are evaluated in
// 50-digit arithmetic straight from their defining sums; geometry oracles
// use the closed forms for the simplex model worked out by hand.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;

inline Real power_sum(std::span<const double> p, const Real& a) {
  Real s = 0;
  for (double x : p) {
    if (x > 0) s += boost::multiprecision::pow(Real(x), a);
  }
  return s;
}

inline double shannon(std::span<const double> p) {
  Real s = 0;
  for (double x : p) {
    if (x > 0) s -= Real(x) * boost::multiprecision::log(Real(x));
  }
  return static_cast<double>(s);
}

inline Real renyi_mp(std::span<const double> p, double a) {
  return boost::multiprecision::log(power_sum(p, a)) / (1 - Real(a));
}
inline double renyi(std::span<const double> p, double a) { return static_cast<double>(renyi_mp(p, a)); }

inline Real tsallis_mp(std::span<const double> p, double q) {
  return (1 - power_sum(p, q)) / (Real(q) - 1);
}
inline double tsallis(std::span<const double> p, double q) { return static_cast<double>(tsallis_mp(p, q)); }

inline Real sharma_mittal_mp(std::span<const double> p, double a, double b) {
  const Real e = (1 - Real(b)) / (1 - Real(a));
  return (boost::multiprecision::pow(power_sum(p, a), e) - 1) / (1 - Real(b));
}
inline double sharma_mittal(std::span<const double> p, double a, double b) {
  return static_cast<double>(sharma_mittal_mp(p, a, b));
}

inline double kaniadakis(std::span<const double> p, double k) {
  return static_cast<double>((power_sum(p, 1 - Real(k)) - power_sum(p, 1 + Real(k))) / (2 * Real(k)));
}

inline Real q_add(const Real& x, const Real& y, double q) { return x + y + (1 - Real(q)) * x * y; }

/// S_{a1,b} (+)_b S_{a2,b}, from the two Sharma-Mittal values.
inline double ne1(std::span<const double> p, double a1, double a2, double b) {
  return static_cast<double>(q_add(sharma_mittal_mp(p, a1, b), sharma_mittal_mp(p, a2, b), b));
}

/// S_{a,q} (+)_q S_q, Sharma-Mittal composed with Tsallis.
inline double ne2(std::span<const double> p, double a, double q) {
  return static_cast<double>(q_add(sharma_mittal_mp(p, a, q), tsallis_mp(p, q), q));
}

inline double kl(std::span<const double> p, std::span<const double> q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) s += Real(p[i]) * boost::multiprecision::log(Real(p[i]) / Real(q[i]));
  }
  return static_cast<double>(s);
}

inline Real alpha_sum(std::span<const double> p, std::span<const double> q, double a) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) s += boost::multiprecision::pow(Real(p[i]), a) * boost::multiprecision::pow(Real(q[i]), 1 - Real(a));
  }
  return s;
}

inline double renyi_div(std::span<const double> p, std::span<const double> q, double a) {
  return static_cast<double>(boost::multiprecision::log(alpha_sum(p, q, a)) / (Real(a) - 1));
}

inline double sm_div(std::span<const double> p, std::span<const double> q, double a, double b) {
  const Real e = (1 - Real(b)) / (1 - Real(a));
  return static_cast<double>((boost::multiprecision::pow(alpha_sum(p, q, a), e) - 1) / (Real(b) - 1));
}

/// Tsallis relative entropy (sum p^a q^{1-a} - 1) / (a - 1).
inline double tsallis_rel(std::span<const double> p, std::span<const double> q, double a) {
  return static_cast<double>((alpha_sum(p, q, a) - 1) / (Real(a) - 1));
}

/// Simplex coordinates xi = (p_1..p_W) -> (p_0, p_1, ..., p_W).
inline Vec simplex_point(std::span<const double> xi) {
  Vec p{1.0};
  for (double x : xi) {
    p[0] -= x;
    p.push_back(x);
  }
  return p;
}

/// c * (delta_ij / p_j + 1 / p_0).
inline Mat simplex_metric(std::span<const double> xi, double c) {
  const auto p = simplex_point(xi);
  const std::size_t n = xi.size();
  Mat g(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g[i][j] = c * ((i == j ? 1.0 / p[j + 1] : 0.0) + 1.0 / p[0]);
  }
  return g;
}

/// Alpha-connection of the simplex model: the model is affine in xi, so
/// d_i d_j l = -d_i p d_j p / p^2 and the expectation collapses to
/// -(1 + alpha)/2 * (delta_ijk / p_i^2 - 1 / p_0^2).
inline double simplex_alpha_connection(std::span<const double> xi, double alpha, std::size_t i,
                                       std::size_t j, std::size_t k) {
  const auto p = simplex_point(xi);
  const double diag = (i == j && j == k) ? 1.0 / (p[i + 1] * p[i + 1]) : 0.0;
  return -(1.0 + alpha) / 2.0 * (diag - 1.0 / (p[0] * p[0]));
}

/// Brute-force alpha-connection for a one-parameter model: log-likelihood
/// derivatives by wide central stencils in long double, expectation as a sum.
inline double dense_alpha_connection_1d(const std::function<std::vector<long double>(long double)>& model,
                                        long double xi, long double alpha, long double h = 1e-4L) {
  const auto p = model(xi);
  const auto pp = model(xi + h), pm = model(xi - h);
  const auto p2p = model(xi + 2 * h), p2m = model(xi - 2 * h);
  long double total = 0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    auto l = [](long double v) { return std::log(v); };
    const long double dl = (-l(p2p[x]) + 8 * l(pp[x]) - 8 * l(pm[x]) + l(p2m[x])) / (12 * h);
    const long double ddl =
        (-l(p2p[x]) + 16 * l(pp[x]) - 30 * l(p[x]) + 16 * l(pm[x]) - l(p2m[x])) / (12 * h * h);
    total += (ddl + (1 - alpha) / 2 * dl * dl) * dl * p[x];
  }
  return static_cast<double>(total);
}

/// Gibbs distribution p_x ∝ exp(lambda a_x) with sum a_x p_x = target,
/// lambda found by bisection on the (increasing) mean.
inline Vec gibbs(std::span<const double> a, double target) {
  auto dist = [&](double lambda) {
    const double m = *std::max_element(a.begin(), a.end());
    Vec p(a.size());
    double z = 0;
    for (std::size_t i = 0; i < a.size(); ++i) z += p[i] = std::exp(lambda * (a[i] - m));
    for (auto& v : p) v /= z;
    return p;
  };
  auto mean = [&](double lambda) {
    const auto p = dist(lambda);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * p[i];
    return s;
  };
  double lo = -60, hi = 60;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean(mid) < target ? lo : hi) = mid;
  }
  return dist(0.5 * (lo + hi));
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

/// Flat Dirichlet draw; with probability 1/4 one weight is zeroed.
inline std::vector<double> distribution(Rng& rng, std::size_t w, bool allow_zero = true) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(w);
  for (auto& x : p) x = e(rng);
  if (allow_zero && w > 1 && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    p[std::uniform_int_distribution<std::size_t>(0, w - 1)(rng)] = 0.0;
  }
  double s = 0;
  for (double x : p) s += x;
  for (auto& x : p) x /= s;
  // Push the rounding error into the largest weight so the sum is 1 to ~1 ulp.
  double t = 0;
  for (double x : p) t += x;
  *std::max_element(p.begin(), p.end()) += 1.0 - t;
  return p;
}

inline std::vector<double> positive(Rng& rng, std::size_t w) { return distribution(rng, w, false); }

inline std::size_t size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Simplex coordinates with every weight (including p_0) at least 0.4/(W+1).
inline std::vector<double> interior(Rng& rng, std::size_t w) {
  auto p = distribution(rng, w + 1, false);
  for (auto& x : p) x = 0.6 * x + 0.4 / static_cast<double>(w + 1);
  return {p.begin() + 1, p.end()};
}

}  // namespace gen
