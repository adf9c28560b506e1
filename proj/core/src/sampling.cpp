#include "entrogeo/sampling.hpp"

#include <numeric>

namespace entrogeo {
namespace {

std::vector<double> dirichlet(Rng& rng, std::size_t n, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  do {
    for (auto& x : w) x = gamma(rng);
    sum = std::accumulate(w.begin(), w.end(), 0.0);
  } while (!(sum > 0.0));
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ProbDist random_distribution(Rng& rng, std::size_t outcomes) {
  std::uniform_int_distribution<int> kind(0, 5);
  const int k = outcomes > 1 ? kind(rng) : 0;
  std::vector<double> w;
  if (k <= 3) {
    w = dirichlet(rng, outcomes, 1.0);
  } else if (k == 4) {
    w = dirichlet(rng, outcomes, 0.2);
  } else {
    w = dirichlet(rng, outcomes, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, outcomes - 1);
    w[pick(rng)] = 0.0;
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= sum;
  }
  return ProbDist::validate(std::move(w));
}

PositiveProbDist random_positive_distribution(Rng& rng, std::size_t outcomes) {
  for (;;) {
    auto w = dirichlet(rng, outcomes, 1.0);
    bool positive = true;
    for (double x : w) positive = positive && x > 1e-300;
    if (positive) return PositiveProbDist::validate(std::move(w));
  }
}

std::vector<double> random_interior_weights(Rng& rng, std::size_t outcomes) {
  auto w = dirichlet(rng, outcomes, 1.0);
  const double u = 1.0 / static_cast<double>(outcomes);
  for (auto& x : w) x = 0.5 * u + 0.5 * x;
  return w;
}

}  // namespace entrogeo
