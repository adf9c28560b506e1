#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "entrogeo/probability.hpp"

namespace entrogeo {

using Rng = std::mt19937_64;

/// Independent, reproducible generator for (seed, stream).
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Flat Dirichlet draw mixed with peaked draws and draws with one zeroed
/// outcome, so boundary behaviour gets exercised.
ProbDist random_distribution(Rng& rng, std::size_t outcomes);

/// Flat Dirichlet draw, strictly positive.
PositiveProbDist random_positive_distribution(Rng& rng, std::size_t outcomes);

/// Half-uniform, half-Dirichlet weights: every weight is at least
/// 1 / (2 * outcomes). Used for interior points of statistical models.
std::vector<double> random_interior_weights(Rng& rng, std::size_t outcomes);

}  // namespace entrogeo
