#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entrogeo/composition.hpp"
#include "entrogeo/hf_entropy.hpp"
#include "entrogeo/probability.hpp"

namespace entrogeo {

/// Two-point function D(p || q) on the open simplex. Carries the data the
/// geometry code needs: the (h, f) pair for D_{h,f} instances, or the
/// constituents and zeta gradient at the origin for composed divergences.
class DivergenceFunctional {
 public:
  using Eval = std::function<double(std::span<const double>, std::span<const double>)>;

  DivergenceFunctional(std::string name, Eval eval) : name_(std::move(name)), eval_(std::move(eval)) {}

  double operator()(const ProbDist& p, const PositiveProbDist& q) const;
  /// Raw evaluation; callers guarantee equal lengths and q > 0.
  double evaluate(std::span<const double> p, std::span<const double> q) const {
    return eval_(p, q);
  }

  const std::string& name() const noexcept { return name_; }
  const std::optional<HFPair>& pair() const noexcept { return pair_; }
  const std::vector<DivergenceFunctional>& constituents() const noexcept { return constituents_; }
  const std::optional<std::vector<double>>& zeta_gradient() const noexcept { return zeta_gradient_; }

  DivergenceFunctional& with_pair(HFPair pair);
  DivergenceFunctional& with_constituents(std::vector<DivergenceFunctional> parts,
                                          std::vector<double> zeta_gradient);

 private:
  std::string name_;
  Eval eval_;
  std::optional<HFPair> pair_;
  std::vector<DivergenceFunctional> constituents_;
  std::optional<std::vector<double>> zeta_gradient_;
};

// Divergence-role (h, f) pairs.
/// f(t) = t ln t, h = id.
HFPair kl_pair();
/// f(t) = t^2, h(x) = x - 1 (Pearson chi-square).
HFPair chi2_pair();
/// f(t) = t^alpha, h(x) = (x^{(1-beta)/(1-alpha)} - 1) / (beta - 1).
HFPair sm_divergence_pair(double alpha, double beta);
/// f(t) = t^alpha, h(x) = ln(x) / (alpha - 1).
HFPair renyi_divergence_pair(double alpha);
/// f(t) = t^alpha, h(x) = (x - 1) / (alpha - 1).
HFPair tsallis_relative_pair(double alpha);

/// h(sum_i q_i f(p_i / q_i)).
double hf_divergence(const HFPair& pair, const ProbDist& p, const PositiveProbDist& q);
/// Sharma-Mittal divergence in closed form.
double sm_divergence(double alpha, double beta, const ProbDist& p, const PositiveProbDist& q);
double renyi_divergence(double alpha, const ProbDist& p, const PositiveProbDist& q);
double kl(const ProbDist& p, const PositiveProbDist& q);

DivergenceFunctional hf_functional(const HFPair& pair);
DivergenceFunctional kl_functional();
DivergenceFunctional sm_functional(double alpha, double beta);

/// Names: kl, chi2, sm (alpha, beta), renyi (alpha), tsallis_rel (alpha).
DivergenceFunctional make_divergence(std::string_view family, const ParamMap& params = {});

/// D(p || q) = zeta(D_1(p || q), ..., D_m(p || q)). zeta is sampled on the
/// open positive orthant and at the origin; it must vanish exactly at the
/// origin and be positive elsewhere.
DivergenceFunctional zeta_compose_div(std::span<const DivergenceFunctional> divergences,
                                      const Composer& zeta, std::uint64_t seed = 0);

}  // namespace entrogeo
