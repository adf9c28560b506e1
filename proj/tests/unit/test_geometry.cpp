#include <gtest/gtest.h>

#include <cmath>

#include "entrogeo/divergence.hpp"
#include "entrogeo/error.hpp"
#include "entrogeo/geometry.hpp"
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

// Divergence with its scale c = h'(f(1)) f''(1) and alpha, both by hand.
struct Case {
  DivergenceFunctional d;
  double c;
  double alpha;
};

std::vector<Case> cases() {
  return {{kl_functional(), 1.0, 1.0},
          {hf_functional(chi2_pair()), 2.0, 3.0},
          {sm_functional(0.5, 0.7), 0.5, 0.0},
          {sm_functional(2.0, 0.3), 2.0, 3.0},
          {hf_functional(renyi_divergence_pair(0.3)), 0.3, -0.4},
          {hf_functional(tsallis_relative_pair(1.5)), 1.5, 2.0}};
}

double metric_rel_error(const MetricTensor& g, const oracle::Mat& want) {
  double worst = 0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) worst = std::max(worst, std::abs(g(i, j) - want[i][j]) / std::abs(want[i][j]));
  }
  return worst;
}

}  // namespace

TEST(SimplexModel, Examples) {
  EXPECT_EQ(simplex_model(1).point(std::vector<double>{0.5}), (std::vector<double>{0.5, 0.5}));
  const auto p = simplex_model(2).point(std::vector<double>{0.2, 0.3});
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_EQ(p[1], 0.2);
  EXPECT_EQ(p[2], 0.3);
  EXPECT_EQ(code_of([] { simplex_model(2).point(std::vector<double>{0.7, 0.3}); }), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code_of([] { simplex_model(1).point(std::vector<double>{0.2, 0.3}); }), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code_of([] { simplex_model(0); }), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code_of([] { simplex_model(2, 0.0); }), ErrorCode::ParamOutOfRange);
}

TEST(FisherMetric, Examples) {
  const auto m1 = simplex_model(1);
  EXPECT_NEAR(fisher_metric(m1, std::vector<double>{0.5})(0, 0), 4.0, 1e-8);
  EXPECT_NEAR(fisher_metric(m1, std::vector<double>{0.9})(0, 0), 1 / 0.9 + 1 / 0.1, 1e-6);
  const auto g = fisher_metric(simplex_model(2), std::vector<double>{1.0 / 3, 1.0 / 3});
  EXPECT_NEAR(g(0, 0), 6, 1e-7);
  EXPECT_NEAR(g(0, 1), 3, 1e-7);
  EXPECT_NEAR(g(1, 0), 3, 1e-7);
  EXPECT_NEAR(g(1, 1), 6, 1e-7);
}

TEST(FisherMetric, MatchesClosedForm) {
  gen::Rng rng(61);
  for (std::size_t w = 1; w <= 5; ++w) {
    const auto model = simplex_model(w);
    for (int s = 0; s < 20; ++s) {
      const auto xi = gen::interior(rng, w);
      const auto g = fisher_metric(model, xi);
      EXPECT_LE(metric_rel_error(g, oracle::simplex_metric(xi, 1.0)), 1e-6);
      EXPECT_TRUE(g.positive_definite());
    }
  }
}

TEST(DivMetric, KlAtMidpoint) {
  EXPECT_NEAR(div_metric(kl_functional(), simplex_model(1), std::vector<double>{0.5})(0, 0), 4.0, 4e-5);
}

TEST(DivMetric, HfFamilyIsScaledFisher) {
  gen::Rng rng(62);
  for (const auto& c : cases()) {
    for (std::size_t w = 1; w <= 5; ++w) {
      const auto model = simplex_model(w);
      for (int s = 0; s < 20; ++s) {
        const auto xi = gen::interior(rng, w);
        const auto g = div_metric(c.d, model, xi);
        EXPECT_LE(metric_rel_error(g, oracle::simplex_metric(xi, c.c)), 1e-5) << c.d.name();
        EXPECT_LE(g.symmetry_residual(), 1e-10);
        EXPECT_TRUE(g.positive_definite()) << c.d.name();
      }
    }
  }
}

TEST(HfClosedMetric, Examples) {
  EXPECT_DOUBLE_EQ(hf_closed_metric(kl_pair(), std::vector<double>{0.5}, 1)(0, 0), 4.0);
  const std::vector<double> third{1.0 / 3, 1.0 / 3};
  const auto chi = hf_closed_metric(chi2_pair(), third, 2);
  EXPECT_NEAR(chi(0, 0), 12, 1e-12);
  EXPECT_NEAR(chi(0, 1), 6, 1e-12);
  const auto smg = hf_closed_metric(sm_divergence_pair(0.5, 0.7), third, 2);
  EXPECT_NEAR(smg(1, 1), 3, 1e-12);
  EXPECT_NEAR(smg(1, 0), 1.5, 1e-12);
  EXPECT_TRUE(smg.positive_definite());
  EXPECT_EQ(code_of([] { hf_closed_metric(shannon(), std::vector<double>{0.5}, 1); }), ErrorCode::ShapeMismatch);
}

TEST(HfAlpha, Examples) {
  EXPECT_NEAR(hf_alpha_of(kl_pair()), 1.0, 1e-14);
  EXPECT_NEAR(hf_alpha_of(chi2_pair()), 3.0, 1e-14);
  for (double a : {0.3, 0.5, 1.5, 2.0, 4.0}) {
    EXPECT_NEAR(hf_alpha_of(tsallis_relative_pair(a)), 2 * a - 1, 1e-12);
    EXPECT_NEAR(hf_alpha_of(sm_divergence_pair(a, 0.7)), 2 * a - 1, 1e-12);
  }
  HFSpec spec;
  spec.name = "(t-1)^4";
  spec.role = Role::Divergence;
  spec.curvature = Curvature::Convex;
  spec.f = [](double t) { return std::pow(t - 1, 4); };
  spec.f_prime = [](double t) { return 4 * std::pow(t - 1, 3); };
  spec.f_second = [](double t) { return 12 * (t - 1) * (t - 1); };
  spec.f_third = [](double t) { return 24 * (t - 1); };
  spec.h = [](double x) { return x; };
  spec.h_inverse = [](double x) { return x; };
  EXPECT_EQ(code_of([&] { hf_alpha_of(HFPair(spec)); }), ErrorCode::DegenerateSecondDerivative);
}

TEST(AlphaConnection, MatchesHandFormula) {
  gen::Rng rng(63);
  for (std::size_t w = 1; w <= 4; ++w) {
    const auto model = simplex_model(w);
    for (int s = 0; s < 10; ++s) {
      const auto xi = gen::interior(rng, w);
      for (double a : {-3.0, -1.0, 0.0, 0.5, 1.0}) {
        const auto g = alpha_connection(model, xi, a);
        for (std::size_t i = 0; i < w; ++i)
          for (std::size_t j = 0; j < w; ++j)
            for (std::size_t k = 0; k < w; ++k) {
              const double want = oracle::simplex_alpha_connection(xi, a, i, j, k);
              EXPECT_NEAR(g(i, j, k), want, 1e-6 * (1 + std::abs(want)));
            }
      }
    }
  }
}

TEST(AlphaConnection, DenseStencilOracle) {
  const auto model = simplex_model(1);
  auto p = [](long double xi) { return std::vector<long double>{1 - xi, xi}; };
  for (double xi : {0.5, 0.3, 0.8}) {
    for (double a : {0.0, 1.0, -1.0, 2.5}) {
      const double got = alpha_connection(model, std::vector<double>{xi}, a)(0, 0, 0);
      EXPECT_NEAR(got, oracle::dense_alpha_connection_1d(p, xi, a), 1e-6 * (1 + std::abs(got))) << xi << " " << a;
    }
  }
  // Affine in alpha: the +-1 difference is E[dl dl dl], the midpoint is alpha = 0.
  gen::Rng rng(64);
  const auto m3 = simplex_model(3);
  const auto xi = gen::interior(rng, 3);
  const auto plus = alpha_connection(m3, xi, 1.0), minus = alpha_connection(m3, xi, -1.0);
  const auto zero = alpha_connection(m3, xi, 0.0);
  const auto p3 = oracle::simplex_point(xi);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const double t = (i == j && j == k ? 1 / (p3[i + 1] * p3[i + 1]) : 0.0) - 1 / (p3[0] * p3[0]);
        EXPECT_NEAR(minus(i, j, k) - plus(i, j, k), t, 1e-6 * (1 + std::abs(t)));
        EXPECT_NEAR(0.5 * (plus(i, j, k) + minus(i, j, k)), zero(i, j, k), 1e-9 * (1 + std::abs(zero(i, j, k))));
      }
}

TEST(DivConnections, MatchAlphaConnections) {
  gen::Rng rng(65);
  for (const auto& c : cases()) {
    for (std::size_t w = 1; w <= 4; ++w) {
      const auto model = simplex_model(w);
      for (int s = 0; s < 8; ++s) {
        const auto xi = gen::interior(rng, w);
        const auto conn = div_connections(c.d, model, xi);
        EXPECT_LE(conn.gamma.symmetry_residual(), 1e-8 * (1 + conn.gamma.max_abs()));
        for (std::size_t i = 0; i < w; ++i)
          for (std::size_t j = 0; j < w; ++j)
            for (std::size_t k = 0; k < w; ++k) {
              const double g = c.c * oracle::simplex_alpha_connection(xi, -c.alpha, i, j, k);
              const double gs = c.c * oracle::simplex_alpha_connection(xi, c.alpha, i, j, k);
              EXPECT_NEAR(conn.gamma(i, j, k), g, 1e-4 * (1 + std::abs(g))) << c.d.name();
              EXPECT_NEAR(conn.gamma_dual(i, j, k), gs, 1e-4 * (1 + std::abs(gs))) << c.d.name();
            }
      }
    }
  }
}

TEST(DivConnections, SymmetricDivergenceIsSelfDual) {
  const DivergenceFunctional jeffreys("jeffreys", [](std::span<const double> p, std::span<const double> q) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * std::log(p[i] / q[i]);
    return s;
  });
  gen::Rng rng(66);
  for (std::size_t w = 1; w <= 3; ++w) {
    const auto xi = gen::interior(rng, w);
    const auto conn = div_connections(jeffreys, simplex_model(w), xi);
    const auto a = conn.gamma.data(), b = conn.gamma_dual.data();
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-6 * (1 + std::abs(a[i])));
  }
}

TEST(Duality, DivergenceInducedStructures) {
  gen::Rng rng(67);
  for (const auto& c : cases()) {
    for (std::size_t w = 1; w <= 3; ++w) {
      const auto model = simplex_model(w);
      for (int s = 0; s < 10; ++s) EXPECT_LE(duality_residual(c.d, model, gen::interior(rng, w)), 5e-4) << c.d.name();
    }
  }
}

TEST(Duality, SelfDualAlphaZeroAndMismatch) {
  const auto model = simplex_model(2);
  const MetricField fisher = [&](std::span<const double> x) { return fisher_metric(model, x); };
  const ConnectionField levi = [&](std::span<const double> x) { return alpha_connection(model, x, 0.0); };
  const ConnectionField zero = [](std::span<const double>) { return ConnCoeffs(2); };
  const std::vector<double> xi{0.2, 0.5};
  EXPECT_LE(duality_residual(fisher, levi, levi, model, xi), 5e-4);
  EXPECT_GT(duality_residual(fisher, zero, zero, model, xi), 1.0);
}

TEST(Steps, StencilMustFitDomain) {
  const auto model = simplex_model(1);
  EXPECT_EQ(code_of([&] { div_metric(kl_functional(), model, std::vector<double>{0.0015}, 0.01); }),
            ErrorCode::StepTooLarge);
  EXPECT_EQ(code_of([&] { div_connections(kl_functional(), model, std::vector<double>{0.998}, 0.01); }),
            ErrorCode::StepTooLarge);
  EXPECT_DOUBLE_EQ(default_metric_step(std::vector<double>{0.5}), 1e-4);
  EXPECT_DOUBLE_EQ(default_connection_step(std::vector<double>{2.0, -3.0}), 1.5e-3);
}

TEST(CombineGeometry, Examples) {
  const auto model = simplex_model(2);
  const std::vector<double> xi{0.3, 0.25};
  const auto g_kl = div_metric(kl_functional(), model, xi);
  const auto c_kl = div_connections(kl_functional(), model, xi);
  const auto g_chi = div_metric(hf_functional(chi2_pair()), model, xi);
  const auto c_chi = div_connections(hf_functional(chi2_pair()), model, xi);

  const auto single = combine_geometry(std::vector<double>{1.0}, std::vector{g_kl}, std::vector{c_kl});
  EXPECT_EQ(single.metric.g, g_kl.g);
  EXPECT_EQ(single.connection.gamma.data()[3], c_kl.gamma.data()[3]);

  const auto twice = combine_geometry(std::vector<double>{0.5, 2.0}, std::vector{g_kl, g_kl}, std::vector{c_kl, c_kl});
  EXPECT_LE((twice.metric.g - 2.5 * g_kl.g).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXd a0 = twice.mixing(0);
  EXPECT_LE((a0 - 0.2 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);

  const auto mixed = combine_geometry(std::vector<double>{1.0, 3.0}, std::vector{g_kl, g_chi}, std::vector{c_kl, c_chi});
  EXPECT_LE(metric_rel_error(mixed.metric, oracle::simplex_metric(xi, 1.0 + 3.0 * 2.0)), 1e-5);

  // Raised mixed connection lowers back to the combined lowered connection.
  const auto raised = mixed.mixed_raised_connection();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        double lowered = 0;
        for (std::size_t m = 0; m < 2; ++m) lowered += raised(i, j, m) * mixed.metric(m, k);
        EXPECT_NEAR(lowered, mixed.connection.gamma(i, j, k), 1e-9 * (1 + std::abs(lowered)));
      }

  EXPECT_EQ(code_of([&] { combine_geometry(std::vector<double>{0.0, 0.0}, std::vector{g_kl, g_chi},
                                           std::vector{c_kl, c_chi}); }),
            ErrorCode::AllZeroGradient);
  EXPECT_EQ(code_of([&] { combine_geometry(std::vector<double>{1.0, -1.0}, std::vector{g_kl, g_chi},
                                           std::vector{c_kl, c_chi}); }),
            ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code_of([&] { combine_geometry(std::vector<double>{1.0}, std::vector{g_kl, g_chi},
                                           std::vector{c_kl, c_chi}); }),
            ErrorCode::ArityMismatch);
}

TEST(RaiseIndex, InvertsLowering) {
  const auto model = simplex_model(3);
  const std::vector<double> xi{0.2, 0.3, 0.15};
  const auto g = fisher_metric(model, xi);
  const auto low = alpha_connection(model, xi, 0.5);
  const auto up = raise_index(g, low);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        double s = 0;
        for (std::size_t m = 0; m < 3; ++m) s += up(i, j, m) * g(m, k);
        EXPECT_NEAR(s, low(i, j, k), 1e-9 * (1 + std::abs(s)));
      }
}

TEST(ComposedGeometry, IsLinearInConstituents) {
  gen::Rng rng(68);
  const std::vector<DivergenceFunctional> parts{kl_functional(), sm_functional(0.5, 0.7)};
  const std::vector<DivergenceFunctional> composed{
      zeta_compose_div(parts, linear_composer({0.7, 2.0})),
      zeta_compose_div(parts, polynomial_composer(2, {{1.0, {1, 0}}, {0.5, {0, 1}}, {3.0, {2, 0}}, {1.0, {1, 1}}}))};
  for (const auto& d : composed) {
    for (std::size_t w = 1; w <= 3; ++w) {
      const auto model = simplex_model(w);
      for (int s = 0; s < 5; ++s) {
        const auto xi = gen::interior(rng, w);
        std::vector<MetricTensor> gs;
        std::vector<ConnectionPair> cs;
        for (const auto& part : parts) {
          gs.push_back(div_metric(part, model, xi));
          cs.push_back(div_connections(part, model, xi));
        }
        const auto comb = combine_geometry(*d.zeta_gradient(), gs, cs);
        const auto g = div_metric(d, model, xi);
        const auto conn = div_connections(d, model, xi);
        for (std::size_t i = 0; i < w; ++i)
          for (std::size_t j = 0; j < w; ++j) EXPECT_NEAR(g(i, j), comb.metric(i, j), 1e-5 * std::abs(comb.metric(i, j)));
        const auto a = conn.gamma.data(), b = comb.connection.gamma.data();
        const auto ad = conn.gamma_dual.data(), bd = comb.connection.gamma_dual.data();
        for (std::size_t i = 0; i < a.size(); ++i) {
          EXPECT_NEAR(a[i], b[i], 1e-4 * (1 + std::abs(b[i])));
          EXPECT_NEAR(ad[i], bd[i], 1e-4 * (1 + std::abs(bd[i])));
        }
      }
    }
  }
}

TEST(ComposedGeometry, CriticalOriginGivesDegenerateMetric) {
  const std::vector<DivergenceFunctional> one{kl_functional()};
  const auto sq = zeta_compose_div(one, polynomial_composer(1, {{1.0, {2}}}));
  const auto g = div_metric(sq, simplex_model(2), std::vector<double>{0.3, 0.3});
  EXPECT_LE(g.g.cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_FALSE(g.positive_definite());
}
