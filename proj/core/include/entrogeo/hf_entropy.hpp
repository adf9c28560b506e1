#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entrogeo/formal_group.hpp"
#include "entrogeo/probability.hpp"

namespace entrogeo {

using ScalarFn = std::function<double(double)>;
using ParamMap = std::map<std::string, double>;

enum class Curvature { Concave, Convex };
enum class Monotonicity { Increasing, Decreasing };

/// Which functional an (h, f) pair feeds. Entropies pair concave f with
/// increasing h; divergences pair concave f with decreasing h. A pair is
/// checked against its role once, at construction.
enum class Role { Entropy, Divergence };

/// Construction data for a custom pair. Missing derivatives are filled in
/// with five-point central differences.
struct HFSpec {
  std::string name;
  Role role = Role::Entropy;
  Curvature curvature = Curvature::Concave;
  Monotonicity monotonicity = Monotonicity::Increasing;
  ScalarFn f;
  ScalarFn h;
  ScalarFn h_inverse;
  ScalarFn f_prime;
  ScalarFn f_second;
  ScalarFn f_third;
  ScalarFn h_prime;
  ParamMap params;
  std::optional<BinaryLaw> law;
};

class HFPair {
 public:
  explicit HFPair(HFSpec spec);

  const std::string& name() const noexcept { return spec_.name; }
  Role role() const noexcept { return spec_.role; }
  Curvature curvature() const noexcept { return spec_.curvature; }
  Monotonicity monotonicity() const noexcept { return spec_.monotonicity; }
  const ParamMap& params() const noexcept { return spec_.params; }
  /// Composition law known in closed form for built-in entropies.
  const std::optional<BinaryLaw>& law() const noexcept { return spec_.law; }
  bool analytic_derivatives() const noexcept { return analytic_; }

  double f(double t) const { return spec_.f(t); }
  double f_prime(double t) const { return spec_.f_prime(t); }
  double f_second(double t) const { return spec_.f_second(t); }
  double f_third(double t) const { return spec_.f_third(t); }
  double h(double x) const { return spec_.h(x); }
  double h_inverse(double s) const { return spec_.h_inverse(s); }
  double h_prime(double x) const { return spec_.h_prime(x); }

  double f_one() const { return f(1.0); }
  double f_second_one() const { return f_second(1.0); }
  double f_third_one() const { return f_third(1.0); }
  double h_prime_at_f_one() const { return h_prime(f(1.0)); }

  /// h(sum_i f(w_i)) on raw weights, with f(0) taken as 0 by branching.
  /// Throws DomainError when h is undefined at the sum.
  double evaluate(std::span<const double> weights) const;

 private:
  HFSpec spec_;
  bool analytic_ = true;
};

inline constexpr double kParamGuard = 1e-8;

HFPair shannon();
HFPair renyi(double alpha);
HFPair tsallis(double q);
HFPair sharma_mittal(double alpha, double beta);
HFPair kaniadakis(double kappa);

/// Builds a built-in entropy pair from a lowercase family name
/// (shannon, renyi, tsallis, sharma_mittal, kaniadakis) and its parameters
/// (alpha, beta, q, kappa).
HFPair make_builtin(std::string_view family, const ParamMap& params = {});

/// S_{h,f}(p) = h(sum_i f(p_i)).
double eval_entropy(const HFPair& pair, const ProbDist& p);

/// An entropy as an opaque functional on the simplex, optionally carrying its
/// composition law and an analytic gradient with respect to raw weights.
class EntropyFunctional {
 public:
  using Eval = std::function<double(std::span<const double>)>;
  using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

  EntropyFunctional(std::string name, Eval eval, std::optional<BinaryLaw> law = std::nullopt,
                    Gradient gradient = {})
      : name_(std::move(name)),
        eval_(std::move(eval)),
        law_(std::move(law)),
        gradient_(std::move(gradient)) {}

  double operator()(const ProbDist& p) const { return eval_(p.weights()); }
  double evaluate(std::span<const double> weights) const { return eval_(weights); }

  const std::string& name() const noexcept { return name_; }
  const std::optional<BinaryLaw>& law() const noexcept { return law_; }
  bool has_gradient() const noexcept { return static_cast<bool>(gradient_); }
  void gradient(std::span<const double> weights, std::span<double> out) const {
    gradient_(weights, out);
  }

 private:
  std::string name_;
  Eval eval_;
  std::optional<BinaryLaw> law_;
  Gradient gradient_;
};

/// Wraps an entropy-role pair. The attached law defaults to pair.law().
EntropyFunctional as_functional(const HFPair& pair,
                                std::optional<BinaryLaw> law = std::nullopt);

struct SkReport {
  std::size_t distributions = 0;
  double tol = 1e-10;
  double max_excess_over_uniform = 0.0;  // max S(p) - S(uniform)
  double max_expansion_gap = 0.0;        // max |S(expand p) - S(p)|
  double min_value = 0.0;
  double max_certainty_value = 0.0;      // max |S(certainty)|
  std::size_t strict_max_violations = 0; // non-uniform p with S(p) >= S(uniform)
  bool strict = false;
  std::optional<std::vector<double>> sk2_counterexample;

  bool sk2_pass() const { return max_excess_over_uniform <= tol; }
  bool sk3_pass() const { return max_expansion_gap <= tol; }
  bool nonnegative_pass() const { return min_value >= -1e-12; }
  bool strict_pass() const {
    return !strict || (strict_max_violations == 0 && max_certainty_value <= tol);
  }
  bool pass() const { return sk2_pass() && sk3_pass() && nonnegative_pass() && strict_pass(); }
};

/// Shannon-Khinchin checks (maximum at uniform, expansibility,
/// non-negativity) on `samples` seeded distributions per W in [2, w_max],
/// plus every certainty distribution. Failures are reported, not thrown.
SkReport sk_suite(const EntropyFunctional& entropy, std::size_t w_max, std::size_t samples,
                  std::uint64_t seed, bool strict = false);
SkReport sk_suite(const HFPair& pair, std::size_t w_max, std::size_t samples,
                  std::uint64_t seed);

/// chi with sum_{ij} f(p_i q_j) = chi(sum_i f(p_i), sum_j f(q_j)).
struct ChiLaw {
  std::string name;
  std::function<double(double, double)> fn;
  double operator()(double x, double y) const { return fn(x, y); }
};

ChiLaw chi_product();
ChiLaw chi_sum();
ChiLaw chi_q_sum(double q);

/// Phi(x, y) = h(chi(h^{-1}(x), h^{-1}(y))).
BinaryLaw phi_from_chi(const HFPair& pair, const ChiLaw& chi);

/// |S(p (x) q) - Phi(S(p), S(q))|.
double composability_residual(const EntropyFunctional& entropy, const BinaryLaw& law,
                              const ProbDist& p, const ProbDist& q);
double composability_residual(const HFPair& pair, const BinaryLaw& law, const ProbDist& p,
                              const ProbDist& q);

}  // namespace entrogeo
