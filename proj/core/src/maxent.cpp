#include "entrogeo/maxent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "entrogeo/error.hpp"
#include "entrogeo/sampling.hpp"

namespace entrogeo {
namespace {

constexpr double kClip = 1e-12;
constexpr double kFdStep = 1e-6;

using Vec = Eigen::VectorXd;

// Euclidean projection onto the probability simplex (sort-based).
Vec project_simplex(const Vec& y) {
  std::vector<double> u(y.data(), y.data() + y.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (y.array() - theta).cwiseMax(0.0).matrix();
}

class FeasibleSet {
 public:
  FeasibleSet(std::size_t n, const ConstraintSet& cs) : n_(n) {
    if (cs.empty()) return;
    const auto k = static_cast<Eigen::Index>(cs.size() + 1);
    rows_ = Eigen::MatrixXd(k, n);
    rhs_ = Vec(k);
    rows_.row(0).setOnes();
    rhs_(0) = 1.0;
    for (std::size_t r = 0; r < cs.size(); ++r) {
      const auto& c = cs.constraints()[r];
      for (std::size_t j = 0; j < n; ++j) rows_(static_cast<Eigen::Index>(r + 1), j) = c.a[j];
      rhs_(static_cast<Eigen::Index>(r + 1)) = c.target;
    }
    gram_.compute(rows_ * rows_.transpose());
  }

  bool simplex_only() const { return rows_.size() == 0; }

  Vec project_affine(const Vec& x) const {
    return x - rows_.transpose() * gram_.solve(rows_ * x - rhs_);
  }

  double affine_residual(const Vec& x) const {
    if (simplex_only()) return std::abs(x.sum() - 1.0);
    return (rows_ * x - rhs_).cwiseAbs().maxCoeff();
  }

  // Exact projection onto {x >= 0, C x = d}. The minimizer is
  // x = max(0, y + C^T mu) where mu solves C max(0, y + C^T mu) = d; that
  // equation is the gradient of a convex piecewise-quadratic dual, minimized
  // here by semismooth Newton with an Armijo line search.
  Vec project(const Vec& y) const {
    if (simplex_only()) return project_simplex(y);
    const auto k = rows_.rows();
    Vec mu = gram_.solve(rhs_ - rows_ * y);  // unconstrained affine projection
    auto primal = [&](const Vec& m) { return (y + rows_.transpose() * m).cwiseMax(0.0).eval(); };
    auto dual = [&](const Vec& m) { return 0.5 * primal(m).squaredNorm() - m.dot(rhs_); };
    const double scale = 1.0 + rhs_.cwiseAbs().maxCoeff();
    for (int it = 0; it < 200; ++it) {
      const Vec x = primal(mu);
      const Vec grad = rows_ * x - rhs_;
      if (grad.lpNorm<Eigen::Infinity>() <= 1e-15 * scale) break;
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k);
      const Vec z = y + rows_.transpose() * mu;
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (z(i) > 0.0) h.noalias() += rows_.col(i) * rows_.col(i).transpose();
      }
      h.diagonal().array() += 1e-12 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
      const Vec dir = -h.ldlt().solve(grad);
      const double f0 = dual(mu);
      const double slope = grad.dot(dir);
      double t = 1.0;
      while (t > 1e-12 && dual(mu + t * dir) > f0 + 1e-4 * t * slope) t *= 0.5;
      const Vec next = mu + t * dir;
      if ((next - mu).lpNorm<Eigen::Infinity>() == 0.0) break;
      mu = next;
    }
    return primal(mu);
  }

 private:
  std::size_t n_;
  Eigen::MatrixXd rows_;
  Vec rhs_;
  Eigen::LDLT<Eigen::MatrixXd> gram_;
};

Vec clipped(const Vec& x) { return x.cwiseMax(kClip); }

double value_at(const EntropyFunctional& s, const Vec& x) {
  const Vec c = clipped(x);
  return s.evaluate(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())));
}

Vec gradient_at(const EntropyFunctional& s, const Vec& x) {
  Vec c = clipped(x);
  const auto n = static_cast<std::size_t>(c.size());
  Vec g(c.size());
  if (s.has_gradient()) {
    s.gradient(std::span<const double>(c.data(), n), std::span<double>(g.data(), n));
    return g;
  }
  auto eval = [&](const Vec& v) {
    return s.evaluate(std::span<const double>(v.data(), n));
  };
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double orig = c(i);
    if (orig > kFdStep) {
      c(i) = orig + kFdStep;
      const double up = eval(c);
      c(i) = orig - kFdStep;
      const double down = eval(c);
      g(i) = (up - down) / (2 * kFdStep);
    } else {
      const double here = eval(c);
      c(i) = orig + kFdStep;
      g(i) = (eval(c) - here) / kFdStep;
    }
    c(i) = orig;
  }
  return g;
}

struct Solve {
  Vec x;
  double value = 0.0;
  double stationarity = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

Solve ascend(const EntropyFunctional& s, const FeasibleSet& set, Vec x,
             const MaxEntOptions& opt) {
  Solve out;
  double step = 1.0;
  double fx = value_at(s, x);
  Vec g = gradient_at(s, x);
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    const double stat = (x - set.project(x + g)).norm();
    out.iterations = it;
    out.stationarity = stat;
    if (stat <= opt.tol) {
      out.converged = true;
      break;
    }
    bool moved = false;
    for (int bt = 0; bt < 80; ++bt) {
      const Vec cand = set.project(x + step * g);
      const Vec d = cand - x;
      const double fc = value_at(s, cand);
      const Vec gc = gradient_at(s, cand);
      // Near the optimum value differences are rounding noise; fall back to the slope.
      const bool armijo = fc >= fx + 1e-4 * g.dot(d);
      const bool forward = gc.dot(d) >= 0.0 && fc >= fx - 1e-14 * std::max(1.0, std::abs(fx));
      if (armijo || forward) {
        moved = d.lpNorm<Eigen::Infinity>() > 0.0;
        const double curvature = -d.dot(gc - g);
        // Barzilai-Borwein trial step for the next iteration.
        step = curvature > 0.0 ? std::clamp(d.squaredNorm() / curvature, 1e-10, 1e6)
                               : std::min(step * 2.0, 1e6);
        x = cand;
        fx = fc;
        g = gc;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      // No ascent possible at machine precision; report stationarity as is.
      out.iterations = it + 1;
      break;
    }
  }
  out.x = x;
  out.value = fx;
  return out;
}

}  // namespace

void ConstraintSet::validate(std::size_t outcomes) const {
  if (constraints_.empty()) return;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(constraints_.size() + 1),
                    static_cast<Eigen::Index>(outcomes));
  m.row(0).setOnes();
  for (std::size_t r = 0; r < constraints_.size(); ++r) {
    const auto& c = constraints_[r];
    if (c.a.size() != outcomes) {
      throw Error(ErrorCode::LengthMismatch, "constraint " + std::to_string(r) + " has " +
                                                 std::to_string(c.a.size()) +
                                                 " coefficients for " +
                                                 std::to_string(outcomes) + " outcomes");
    }
    for (std::size_t j = 0; j < outcomes; ++j) m(static_cast<Eigen::Index>(r + 1), j) = c.a[j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (lu.rank() != m.rows()) {
    throw Error(ErrorCode::RankDeficient,
                "constraint rows are linearly dependent with the normalization row");
  }
}

MaxEntResult maximize(const EntropyFunctional& entropy, std::size_t outcomes,
                      const ConstraintSet& constraints, const MaxEntOptions& options) {
  if (outcomes == 0) throw Error(ErrorCode::EmptyInput, "maximize over zero outcomes");
  constraints.validate(outcomes);
  const FeasibleSet set(outcomes, constraints);
  const auto n = static_cast<Eigen::Index>(outcomes);

  auto start_from = [&](Vec y) {
    Vec x = set.project(y);
    if (x.minCoeff() < -1e-9 || set.affine_residual(x) > 1e-9) {
      throw Error(ErrorCode::Infeasible, "no distribution satisfies the constraints",
                  std::min(x.minCoeff(), -set.affine_residual(x)));
    }
    return x;
  };

  Solve best = ascend(entropy, set, start_from(Vec::Constant(n, 1.0 / static_cast<double>(n))),
                      options);
  std::vector<double> values{best.value};
  Rng rng = make_rng(options.seed, 0x3e);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    const auto w = random_positive_distribution(rng, outcomes);
    Vec y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = w[static_cast<std::size_t>(i)];
    Solve s = ascend(entropy, set, start_from(y), options);
    values.push_back(s.value);
    if (s.value > best.value + 1e-14 || (!best.converged && s.converged)) best = std::move(s);
  }

  std::vector<double> w(best.x.data(), best.x.data() + best.x.size());
  for (auto& v : w) v = std::max(v, 0.0);
  MaxEntResult out{ProbDist::validate(std::move(w), 1e-9)};
  Vec px(n);
  for (Eigen::Index i = 0; i < n; ++i) px(i) = out.p[static_cast<std::size_t>(i)];
  out.value = entropy(out.p);
  out.constraint_residual = set.affine_residual(px);
  out.stationarity = best.stationarity;
  out.iterations = best.iterations;
  out.converged = best.converged;
  for (double v : values) out.restart_spread = std::max(out.restart_spread, std::abs(v - best.value));
  return out;
}

}  // namespace entrogeo
