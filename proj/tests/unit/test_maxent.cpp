#include <gtest/gtest.h>

#include <cmath>

#include "entrogeo/composition.hpp"
#include "entrogeo/error.hpp"
#include "entrogeo/maxent.hpp"
#include "support/oracles.hpp"

using namespace entrogeo;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no entrogeo::Error thrown";
  return ErrorCode::EmptyInput;
}

double sup_distance(const ProbDist& p, std::span<const double> q) {
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, std::abs(p[i] - q[i]));
  return d;
}

}  // namespace

TEST(Maximize, UnconstrainedIsUniform) {
  const std::vector<HFPair> strict{shannon(), renyi(0.5), renyi(3.0), tsallis(0.5), tsallis(2.0),
                                   sharma_mittal(0.5, 0.7), kaniadakis(0.3)};
  for (const auto& pair : strict) {
    for (std::size_t w : {2u, 4u, 7u}) {
      const auto r = maximize(as_functional(pair), w, {});
      EXPECT_TRUE(r.converged) << pair.name();
      const std::vector<double> u(w, 1.0 / static_cast<double>(w));
      EXPECT_LE(sup_distance(r.p, u), 1e-6) << pair.name() << " W=" << w;
      EXPECT_LE(std::abs(r.value - as_functional(pair)(r.p)), 1e-8);
    }
  }
}

TEST(Maximize, ConstraintPinsDistribution) {
  ConstraintSet c;
  c.add({{0.0, 1.0}, 0.25});
  const auto r = maximize(as_functional(shannon()), 2, c);
  EXPECT_NEAR(r.p[0], 0.75, 1e-9);
  EXPECT_NEAR(r.p[1], 0.25, 1e-9);
}

TEST(Maximize, GibbsMatchesRootFindingOracle) {
  const std::vector<double> a{0.0, 1.0, 2.0};
  ConstraintSet c;
  c.add({a, 1.2});
  const auto r = maximize(as_functional(shannon()), 3, c);
  const auto want = oracle::gibbs(a, 1.2);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(sup_distance(r.p, want), 1e-6);
  EXPECT_LE(r.constraint_residual, 1e-8);
  EXPECT_LE(r.stationarity, 1e-8);
}

TEST(Maximize, GibbsOnLargerSupport) {
  gen::Rng rng(71);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int s = 0; s < 10; ++s) {
    std::vector<double> a(6);
    for (auto& x : a) x = u(rng);
    const double lo = *std::min_element(a.begin(), a.end()), hi = *std::max_element(a.begin(), a.end());
    const double target = lo + (hi - lo) * (0.2 + 0.6 * (s / 10.0));
    ConstraintSet c;
    c.add({a, target});
    const auto r = maximize(as_functional(shannon()), 6, c, {.seed = static_cast<std::uint64_t>(s)});
    EXPECT_LE(sup_distance(r.p, oracle::gibbs(a, target)), 1e-6);
  }
}

TEST(Maximize, ExtraConstraintNeverIncreasesMaximum) {
  gen::Rng rng(72);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& pair : {shannon(), tsallis(2.0), renyi(0.5)}) {
    const auto fn = as_functional(pair);
    for (int s = 0; s < 5; ++s) {
      const auto feasible = gen::positive(rng, 5);
      std::vector<double> a1(5), a2(5);
      for (auto& x : a1) x = u(rng);
      for (auto& x : a2) x = u(rng);
      auto mean = [&](const std::vector<double>& a) {
        double m = 0;
        for (std::size_t i = 0; i < 5; ++i) m += a[i] * feasible[i];
        return m;
      };
      ConstraintSet one, two;
      one.add({a1, mean(a1)});
      two.add({a1, mean(a1)});
      two.add({a2, mean(a2)});
      const double v0 = maximize(fn, 5, {}).value;
      const double v1 = maximize(fn, 5, one).value;
      const double v2 = maximize(fn, 5, two).value;
      EXPECT_LE(v1, v0 + 1e-9) << pair.name();
      EXPECT_LE(v2, v1 + 1e-9) << pair.name();
      EXPECT_GE(v2, fn(ProbDist::validate(feasible, 1e-9)) - 1e-9);
    }
  }
}

TEST(Maximize, DeterministicGivenSeed) {
  ConstraintSet c;
  c.add({{1.0, 0.0, 2.0, 0.5}, 0.9});
  const auto fn = ne2_functional(0.3, 0.7);
  const auto a = maximize(fn, 4, c, {.seed = 5});
  const auto b = maximize(fn, 4, c, {.seed = 5});
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_LE(a.restart_spread, 1e-7);
}

TEST(Maximize, OpaqueFunctionalUsesNumericGradient) {
  const auto& pair = tsallis(2.0);
  const EntropyFunctional opaque("opaque", [pair](std::span<const double> w) { return pair.evaluate(w); });
  ASSERT_FALSE(opaque.has_gradient());
  ConstraintSet c;
  c.add({{0.0, 1.0, 2.0}, 0.6});
  const auto r = maximize(opaque, 3, c);
  const auto ref = maximize(as_functional(pair), 3, c);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(sup_distance(r.p, ref.p.weights()), 1e-6);
}

TEST(Maximize, IterationCapReportsNotConverged) {
  ConstraintSet c;
  c.add({{0.0, 1.0, 2.0}, 1.2});
  const auto r = maximize(as_functional(shannon()), 3, c, {.max_iter = 2, .restarts = 0});
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.iterations, 2u);
}

TEST(Constraints, Errors) {
  const auto fn = as_functional(shannon());
  ConstraintSet bad_len;
  bad_len.add({{1.0, 2.0}, 1.0});
  EXPECT_EQ(code_of([&] { maximize(fn, 3, bad_len); }), ErrorCode::LengthMismatch);
  ConstraintSet dependent;
  dependent.add({{1.0, 1.0, 1.0}, 1.0});
  EXPECT_EQ(code_of([&] { maximize(fn, 3, dependent); }), ErrorCode::RankDeficient);
  ConstraintSet twice;
  twice.add({{0.0, 1.0, 2.0}, 1.0});
  twice.add({{0.0, 2.0, 4.0}, 2.0});
  EXPECT_EQ(code_of([&] { maximize(fn, 3, twice); }), ErrorCode::RankDeficient);
  ConstraintSet infeasible;
  infeasible.add({{0.0, 1.0, 2.0}, 3.0});
  EXPECT_EQ(code_of([&] { maximize(fn, 3, infeasible); }), ErrorCode::Infeasible);
}
