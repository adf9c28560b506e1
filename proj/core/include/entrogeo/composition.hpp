#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entrogeo/formal_group.hpp"
#include "entrogeo/hf_entropy.hpp"
#include "entrogeo/probability.hpp"

namespace entrogeo {

/// zeta: R^m -> R used to combine m entropies (or divergences).
struct Composer {
  std::string name;
  std::size_t arity = 1;
  std::function<double(std::span<const double>)> fn;
  /// Increasing for the componentwise order.
  bool monotone = false;
  bool zero_at_origin = false;
  /// Gradient at the origin when known analytically.
  std::optional<std::vector<double>> gradient_at_origin;

  double operator()(std::span<const double> x) const { return fn(x); }
  /// Analytic gradient at the origin if supplied, otherwise forward
  /// differences into the non-negative orthant.
  std::vector<double> origin_gradient() const;
};

Composer identity_composer();
/// sum_k c_k x_k.
Composer linear_composer(std::vector<double> coefficients);

/// One term coefficient * prod_j x_j^{exponents_j}.
struct Monomial {
  double coefficient = 0.0;
  std::vector<unsigned> exponents;
};
/// Polynomial with non-negative coefficients and no constant term.
Composer polynomial_composer(std::size_t arity, std::vector<Monomial> terms);

/// S(p) = zeta(S_1(p), ..., S_m(p)). Monotonicity of zeta is spot-checked
/// on 100 seeded componentwise-ordered pairs.
EntropyFunctional zeta_compose(std::span<const EntropyFunctional> entropies,
                               const Composer& zeta, std::uint64_t seed = 0);

struct GroupComposition {
  EntropyFunctional entropy;
  BinaryLaw law;
};

inline constexpr double kLawShareTol = 1e-9;

/// Z(p) = xi(Phi^{2^m}(S_1(p), ..., S_{2^m}(p))) with composition law
/// omega = conjugate(Phi, xi). Phi is the law attached to the first
/// constituent; every constituent is probed against it on seeded pairs.
GroupComposition group_compose(std::span<const EntropyFunctional> entropies,
                               const Conjugator& xi, unsigned m);

/// Closed form of S_{a1,beta} (+)_beta S_{a2,beta}.
double ne1_closed_form(double alpha1, double alpha2, double beta, const ProbDist& p);
/// Closed form of S_{alpha,q} (+)_q S_q (Sharma-Mittal with Tsallis).
double ne2_closed_form(double alpha, double q, const ProbDist& p);

EntropyFunctional ne1_functional(double alpha1, double alpha2, double beta);
EntropyFunctional ne2_functional(double alpha, double q);

struct ConcavityReport {
  std::size_t triples = 0;
  double tol = 1e-9;
  double min_margin = 0.0;  // min Z(mix) - [lambda Z(p) + (1 - lambda) Z(q)]
  struct Counterexample {
    std::vector<double> p;
    std::vector<double> q;
    double lambda = 0.0;
    double margin = 0.0;
  };
  std::optional<Counterexample> counterexample;

  bool pass() const { return !counterexample; }
};

/// Seeded midpoint-concavity probe over (p, q, lambda) with W drawn from
/// [2, w_max].
ConcavityReport concavity_probe(const EntropyFunctional& entropy, std::size_t w_max,
                                std::size_t samples, std::uint64_t seed, double tol = 1e-9);

}  // namespace entrogeo
