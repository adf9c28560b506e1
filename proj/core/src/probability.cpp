#include "entrogeo/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entrogeo/error.hpp"

namespace entrogeo {

ProbDist ProbDist::validate(std::vector<double> weights, double tol) {
  if (weights.empty()) throw Error(ErrorCode::EmptyInput, "distribution has no weights");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::NegativeWeight,
                  "weight " + std::to_string(i) + " is " + std::to_string(w), w);
    }
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double deviation = sum - 1.0;
  if (std::abs(deviation) > tol) {
    throw Error(ErrorCode::SumNotOne, "weights sum to " + std::to_string(sum), deviation);
  }
  return ProbDist(std::move(weights));
}

ProbDist ProbDist::uniform(std::size_t outcomes) {
  if (outcomes == 0) throw Error(ErrorCode::EmptyInput, "uniform over zero outcomes");
  return ProbDist(std::vector<double>(outcomes, 1.0 / static_cast<double>(outcomes)));
}

ProbDist ProbDist::certainty(std::size_t outcomes, std::size_t index) {
  if (index >= outcomes) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(index) + " with " + std::to_string(outcomes) +
                    " outcomes");
  }
  std::vector<double> w(outcomes, 0.0);
  w[index] = 1.0;
  return ProbDist(std::move(w));
}

bool ProbDist::strictly_positive() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

PositiveProbDist PositiveProbDist::from(ProbDist p) {
  if (!p.strictly_positive()) {
    throw Error(ErrorCode::NotStrictlyPositive, "distribution has a zero weight");
  }
  return PositiveProbDist(std::move(p));
}

PositiveProbDist PositiveProbDist::validate(std::vector<double> weights, double tol) {
  return from(ProbDist::validate(std::move(weights), tol));
}

ProbDist product(const ProbDist& p, const ProbDist& q) {
  std::vector<double> w;
  w.reserve(p.size() * q.size());
  for (double pi : p.weights()) {
    for (double qj : q.weights()) w.push_back(pi * qj);
  }
  return ProbDist::validate(std::move(w));
}

ProbDist expand(const ProbDist& p) {
  std::vector<double> w(p.weights().begin(), p.weights().end());
  w.push_back(0.0);
  return ProbDist::validate(std::move(w));
}

ProbDist mix(const ProbDist& p, const ProbDist& q, double lambda) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "mixing weight outside [0,1]", lambda);
  }
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = lambda * p[i] + (1.0 - lambda) * q[i];
  return ProbDist::validate(std::move(w));
}

}  // namespace entrogeo
