#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entrogeo {

// Tolerance on |sum - 1| for distributions built in code.
inline constexpr double kSimplexTol = 1e-12;
// Looser tolerance used when parsing distributions from files.
inline constexpr double kInputSimplexTol = 1e-9;

/// Finite probability vector on W >= 1 outcomes. Weights are kept exactly as
/// given: construction validates but never renormalizes.
class ProbDist {
 public:
  static ProbDist validate(std::vector<double> weights, double tol = kSimplexTol);
  static ProbDist uniform(std::size_t outcomes);
  /// Point mass at `index` (0-based).
  static ProbDist certainty(std::size_t outcomes, std::size_t index);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  bool strictly_positive() const noexcept;

  friend bool operator==(const ProbDist&, const ProbDist&) = default;

 private:
  explicit ProbDist(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// A distribution in the open simplex (every weight > 0).
class PositiveProbDist {
 public:
  static PositiveProbDist from(ProbDist p);
  static PositiveProbDist validate(std::vector<double> weights, double tol = kSimplexTol);

  std::size_t size() const noexcept { return dist_.size(); }
  double operator[](std::size_t i) const { return dist_[i]; }
  std::span<const double> weights() const noexcept { return dist_.weights(); }
  const ProbDist& dist() const noexcept { return dist_; }
  operator const ProbDist&() const noexcept { return dist_; }

 private:
  explicit PositiveProbDist(ProbDist p) : dist_(std::move(p)) {}
  ProbDist dist_;
};

/// Joint distribution of independent systems, flattened row-major:
/// index (i, j) maps to i * q.size() + j.
ProbDist product(const ProbDist& p, const ProbDist& q);

/// Appends one impossible outcome.
ProbDist expand(const ProbDist& p);

/// lambda * p + (1 - lambda) * q.
ProbDist mix(const ProbDist& p, const ProbDist& q, double lambda);

}  // namespace entrogeo
