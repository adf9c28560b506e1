#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entrogeo/error.hpp"
#include "entrogeo/formal_group.hpp"
#include "support/oracles.hpp"

using namespace entrogeo;

TEST(QSum, Examples) {
  EXPECT_EQ(q_sum(1.0)(3, 5), 8);
  EXPECT_EQ(q_sum(0.5)(1, 2), 4);
  for (double q : {-1.0, 0.0, 0.3, 2.5}) EXPECT_EQ(q_sum(q)(0.37, 0.0), 0.37);
}

TEST(GroupAxioms, BuiltinLawsPass) {
  for (double q : {0.0, 0.5, 1.0, 2.0}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto r = check_group_axioms(q_sum(q), {0.0, 1.0}, 1000, seed);
      EXPECT_TRUE(r.pass()) << q;
      EXPECT_LE(std::max({r.commutativity, r.associativity, r.identity}), 1e-12);
      EXPECT_EQ(r.samples, 1000u);
    }
  }
}

TEST(GroupAxioms, DetectsAsymmetricLaw) {
  const BinaryLaw law("x+y^2", [](double x, double y) { return x + y * y; });
  const auto r = check_group_axioms(law, {0.0, 1.0}, 1000, 4);
  EXPECT_GT(r.commutativity, 0.0);
  EXPECT_FALSE(r.commutativity_pass());
  EXPECT_FALSE(r.pass());
}

TEST(GroupAxioms, DetectsMissingIdentity) {
  const BinaryLaw law("x+y+1", [](double x, double y) { return x + y + 1; });
  const auto r = check_group_axioms(law, {0.0, 1.0}, 1000, 5);
  EXPECT_DOUBLE_EQ(r.identity, 1.0);
  EXPECT_TRUE(r.commutativity_pass());
  EXPECT_FALSE(r.identity_pass());
}

TEST(GroupAxioms, DomainEscapeIsAnError) {
  const BinaryLaw law("bounded sum", [](double x, double y) { return x + y; }, {0.0, 1.0});
  try {
    check_group_axioms(law, {0.0, 1.0}, 1000, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainEscape);
  }
}

TEST(GroupAxioms, SeedDeterminesResult) {
  const BinaryLaw law("x+2y", [](double x, double y) { return x + 2 * y; });
  const auto a = check_group_axioms(law, {0.0, 1.0}, 200, 9);
  const auto b = check_group_axioms(law, {0.0, 1.0}, 200, 9);
  EXPECT_EQ(a.commutativity, b.commutativity);
  EXPECT_EQ(a.associativity, b.associativity);
}

TEST(IteratePow2, Examples) {
  const auto add = q_sum(1.0);
  const std::vector<double> seven{7};
  EXPECT_EQ(iterate_pow2(add, 0)(seven), 7);
  const auto phi = q_sum(0.3);
  const std::vector<double> two{0.4, 0.9};
  EXPECT_EQ(iterate_pow2(phi, 1)(two), phi(0.4, 0.9));
  const std::vector<double> four{1, 2, 3, 4};
  EXPECT_EQ(iterate_pow2(add, 2)(four), 10);
  EXPECT_EQ(iterate_pow2(add, 3).arity(), 8u);
}

TEST(IteratePow2, BalancedTree) {
  const BinaryLaw law("x+2y", [](double x, double y) { return x + 2 * y; });
  const std::vector<double> four{1, 2, 3, 4};
  // Phi(Phi(1,2), Phi(3,4)) = (1 + 4) + 2 (3 + 8)
  EXPECT_EQ(iterate_pow2(law, 2)(four), 27);
}

TEST(IteratePow2, ArityMismatch) {
  const std::vector<double> three{1, 2, 3};
  try {
    iterate_pow2(q_sum(1.0), 2)(three);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST(IteratePow2, PermutationInvariantForGroupLaws) {
  gen::Rng rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double q : {0.0, 0.5, 2.0}) {
    const auto phi = q_sum(q);
    for (unsigned m = 1; m <= 2; ++m) {
      const auto tree = iterate_pow2(phi, m);
      for (int s = 0; s < 50; ++s) {
        std::vector<double> x(tree.arity());
        for (auto& v : x) v = u(rng);
        std::sort(x.begin(), x.end());
        const double base = tree(x);
        do {
          EXPECT_NEAR(tree(x), base, 1e-12);
        } while (std::next_permutation(x.begin(), x.end()));
      }
    }
    const auto tree8 = iterate_pow2(phi, 3);
    std::vector<double> x(8);
    for (auto& v : x) v = u(rng);
    const double base = tree8(x);
    for (int s = 0; s < 100; ++s) {
      std::shuffle(x.begin(), x.end(), rng);
      EXPECT_NEAR(tree8(x), base, 1e-10);
    }
  }
}

TEST(Phi4Symmetry, Examples) {
  EXPECT_LE(check_phi4_symmetry(q_sum(0.5), 1000, 1), 1e-10);
  EXPECT_LE(check_phi4_symmetry(q_sum(1.0), 1000, 2), 1e-15);
  const BinaryLaw law("x+2y", [](double x, double y) { return x + 2 * y; });
  EXPECT_GT(check_phi4_symmetry(law, 100, 3), 0.1);
}

TEST(Conjugate, Examples) {
  const auto add = q_sum(1.0);
  const auto phi = q_sum(0.4);
  const auto same = conjugate(phi, identity_conjugator());
  EXPECT_EQ(same(0.3, 0.8), phi(0.3, 0.8));
  const auto scaled = conjugate(add, scale_conjugator(2.0));
  EXPECT_NEAR(scaled(0.3, 0.8), 1.1, 1e-15);
  const double e1 = std::exp(1.0) - 1;
  EXPECT_NEAR(conjugate(add, expm1_conjugator())(e1, e1), std::exp(2.0) - 1, 1e-14);
}

TEST(Conjugate, PreservesGroupLaw) {
  for (const auto& xi : {scale_conjugator(3.0), expm1_conjugator()}) {
    for (double q : {0.0, 0.5, 2.0}) {
      const auto r = check_group_axioms(conjugate(q_sum(q), xi), {0.0, 1.0}, 1000, 8);
      EXPECT_TRUE(r.pass()) << xi.name << " " << q;
    }
  }
}

TEST(Conjugate, RejectsWrongInverse) {
  const Conjugator bad{"bad", [](double x) { return 2 * x; }, [](double x) { return x; }};
  try {
    conjugate(q_sum(1.0), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InversionFailure);
  }
}

TEST(Conjugate, ScaleMustBePositive) {
  EXPECT_THROW(scale_conjugator(0.0), Error);
  EXPECT_THROW(scale_conjugator(-1.0), Error);
}
