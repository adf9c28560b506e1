#pragma once

#include <cstdint>
#include <vector>

#include "entrogeo/hf_entropy.hpp"
#include "entrogeo/probability.hpp"

namespace entrogeo {

/// sum_x a_x p_x = target.
struct LinearConstraint {
  std::vector<double> a;
  double target = 0.0;
};

class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<LinearConstraint> constraints)
      : constraints_(std::move(constraints)) {}

  void add(LinearConstraint c) { constraints_.push_back(std::move(c)); }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  std::size_t size() const noexcept { return constraints_.size(); }
  bool empty() const noexcept { return constraints_.empty(); }

  /// Throws LengthMismatch for wrong-length rows and RankDeficient when the
  /// rows together with the normalization row are linearly dependent.
  void validate(std::size_t outcomes) const;

 private:
  std::vector<LinearConstraint> constraints_;
};

struct MaxEntOptions {
  std::size_t max_iter = 100000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  /// Extra solves from seeded random starts, used to report disagreement.
  std::size_t restarts = 2;
};

struct MaxEntResult {
  ProbDist p;
  double value = 0.0;
  double constraint_residual = 0.0;
  double stationarity = 0.0;  // |p - P(p + grad S)|_2
  std::size_t iterations = 0;
  bool converged = false;
  double restart_spread = 0.0;  // max |value_r - value| over restarts
};

/// Projected gradient ascent of S over {p >= 0, sum p = 1, A p = b}. The
/// Euclidean projection is sort-based for the bare simplex and a small
/// semismooth Newton solve on the dual otherwise. Throws Infeasible when the feasible set is empty;
/// a solve that runs out of iterations returns its best iterate with
/// converged = false.
MaxEntResult maximize(const EntropyFunctional& entropy, std::size_t outcomes,
                      const ConstraintSet& constraints, const MaxEntOptions& options = {});

}  // namespace entrogeo
