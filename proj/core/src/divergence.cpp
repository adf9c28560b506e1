#include "entrogeo/divergence.hpp"

#include <cmath>
#include <sstream>

#include "entrogeo/error.hpp"
#include "entrogeo/sampling.hpp"

namespace entrogeo {
namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || std::abs(alpha - 1.0) < kParamGuard) {
    throw Error(ErrorCode::ParamOutOfRange,
                std::string(who) + ": alpha must be positive and differ from 1", alpha);
  }
}

void require_beta(double beta, const char* who) {
  if (!std::isfinite(beta) || std::abs(beta - 1.0) < kParamGuard) {
    throw Error(ErrorCode::ParamOutOfRange, std::string(who) + ": beta must differ from 1", beta);
  }
}

std::string label(const char* family, const ParamMap& params) {
  std::ostringstream os;
  os << family << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

void set_power_f(HFSpec& s, double a) {
  s.f = [a](double t) { return t == 0.0 ? 0.0 : std::pow(t, a); };
  s.f_prime = [a](double t) { return a * std::pow(t, a - 1); };
  s.f_second = [a](double t) { return a * (a - 1) * std::pow(t, a - 2); };
  s.f_third = [a](double t) { return a * (a - 1) * (a - 2) * std::pow(t, a - 3); };
  s.curvature = a < 1.0 ? Curvature::Concave : Curvature::Convex;
  s.monotonicity = a < 1.0 ? Monotonicity::Decreasing : Monotonicity::Increasing;
}

double alpha_power_sum(double alpha, std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0.0) s += std::pow(p[i], alpha) * std::pow(q[i], 1 - alpha);
  }
  return s;
}

double hf_raw(const HFPair& pair, std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += q[i] * pair.f(p[i] / q[i]);
  const double v = pair.h(s);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::DomainError, pair.name() + ": h undefined at " + std::to_string(s), s);
  }
  return v;
}

double sm_raw(double alpha, double beta, std::span<const double> p, std::span<const double> q) {
  const double s = alpha_power_sum(alpha, p, q);
  return std::expm1((1 - beta) / (1 - alpha) * std::log(s)) / (beta - 1);
}

double kl_raw(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0.0) s += p[i] * std::log(p[i] / q[i]);
  }
  return s;
}

}  // namespace

double DivergenceFunctional::operator()(const ProbDist& p, const PositiveProbDist& q) const {
  require_same_length(p.size(), q.size());
  return eval_(p.weights(), q.weights());
}

DivergenceFunctional& DivergenceFunctional::with_pair(HFPair pair) {
  pair_ = std::move(pair);
  return *this;
}

DivergenceFunctional& DivergenceFunctional::with_constituents(
    std::vector<DivergenceFunctional> parts, std::vector<double> zeta_gradient) {
  constituents_ = std::move(parts);
  zeta_gradient_ = std::move(zeta_gradient);
  return *this;
}

HFPair kl_pair() {
  HFSpec s;
  s.name = "kl";
  s.role = Role::Divergence;
  s.curvature = Curvature::Convex;
  s.monotonicity = Monotonicity::Increasing;
  s.f = [](double t) { return t == 0.0 ? 0.0 : t * std::log(t); };
  s.f_prime = [](double t) { return std::log(t) + 1.0; };
  s.f_second = [](double t) { return 1.0 / t; };
  s.f_third = [](double t) { return -1.0 / (t * t); };
  s.h = [](double x) { return x; };
  s.h_inverse = [](double x) { return x; };
  s.h_prime = [](double) { return 1.0; };
  return HFPair(std::move(s));
}

HFPair chi2_pair() {
  HFSpec s;
  s.name = "chi2";
  s.role = Role::Divergence;
  set_power_f(s, 2.0);
  s.h = [](double x) { return x - 1.0; };
  s.h_inverse = [](double y) { return y + 1.0; };
  s.h_prime = [](double) { return 1.0; };
  return HFPair(std::move(s));
}

HFPair sm_divergence_pair(double alpha, double beta) {
  require_alpha(alpha, "sm divergence");
  require_beta(beta, "sm divergence");
  HFSpec s;
  s.params = {{"alpha", alpha}, {"beta", beta}};
  s.name = label("sm", s.params);
  s.role = Role::Divergence;
  set_power_f(s, alpha);
  const double e = (1 - beta) / (1 - alpha);
  s.h = [e, beta](double x) { return std::expm1(e * std::log(x)) / (beta - 1); };
  s.h_inverse = [e, beta](double y) { return std::exp(std::log1p((beta - 1) * y) / e); };
  s.h_prime = [e, alpha](double x) { return std::pow(x, e - 1) / (alpha - 1); };
  return HFPair(std::move(s));
}

HFPair renyi_divergence_pair(double alpha) {
  require_alpha(alpha, "renyi divergence");
  HFSpec s;
  s.params = {{"alpha", alpha}};
  s.name = label("renyi", s.params);
  s.role = Role::Divergence;
  set_power_f(s, alpha);
  s.h = [alpha](double x) { return std::log(x) / (alpha - 1); };
  s.h_inverse = [alpha](double y) { return std::exp((alpha - 1) * y); };
  s.h_prime = [alpha](double x) { return 1.0 / ((alpha - 1) * x); };
  return HFPair(std::move(s));
}

HFPair tsallis_relative_pair(double alpha) {
  require_alpha(alpha, "tsallis relative");
  HFSpec s;
  s.params = {{"alpha", alpha}};
  s.name = label("tsallis_rel", s.params);
  s.role = Role::Divergence;
  set_power_f(s, alpha);
  s.h = [alpha](double x) { return (x - 1) / (alpha - 1); };
  s.h_inverse = [alpha](double y) { return 1 + (alpha - 1) * y; };
  s.h_prime = [alpha](double) { return 1.0 / (alpha - 1); };
  return HFPair(std::move(s));
}

double hf_divergence(const HFPair& pair, const ProbDist& p, const PositiveProbDist& q) {
  if (pair.role() != Role::Divergence) {
    throw Error(ErrorCode::ShapeMismatch, pair.name() + " is not a divergence pair");
  }
  require_same_length(p.size(), q.size());
  return hf_raw(pair, p.weights(), q.weights());
}

double sm_divergence(double alpha, double beta, const ProbDist& p, const PositiveProbDist& q) {
  require_alpha(alpha, "sm divergence");
  require_beta(beta, "sm divergence");
  require_same_length(p.size(), q.size());
  return sm_raw(alpha, beta, p.weights(), q.weights());
}

double renyi_divergence(double alpha, const ProbDist& p, const PositiveProbDist& q) {
  require_alpha(alpha, "renyi divergence");
  require_same_length(p.size(), q.size());
  return std::log(alpha_power_sum(alpha, p.weights(), q.weights())) / (alpha - 1);
}

double kl(const ProbDist& p, const PositiveProbDist& q) {
  require_same_length(p.size(), q.size());
  return kl_raw(p.weights(), q.weights());
}

DivergenceFunctional hf_functional(const HFPair& pair) {
  if (pair.role() != Role::Divergence) {
    throw Error(ErrorCode::ShapeMismatch, pair.name() + " is not a divergence pair");
  }
  DivergenceFunctional d(pair.name(), [pair](std::span<const double> p,
                                             std::span<const double> q) {
    return hf_raw(pair, p, q);
  });
  d.with_pair(pair);
  return d;
}

DivergenceFunctional kl_functional() {
  DivergenceFunctional d("kl", kl_raw);
  d.with_pair(kl_pair());
  return d;
}

DivergenceFunctional sm_functional(double alpha, double beta) {
  auto pair = sm_divergence_pair(alpha, beta);
  DivergenceFunctional d(pair.name(), [alpha, beta](std::span<const double> p,
                                                    std::span<const double> q) {
    return sm_raw(alpha, beta, p, q);
  });
  d.with_pair(std::move(pair));
  return d;
}

DivergenceFunctional make_divergence(std::string_view family, const ParamMap& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw Error(ErrorCode::ParamOutOfRange,
                  std::string(family) + " requires parameter '" + key + "'");
    }
    return it->second;
  };
  if (family == "kl") return kl_functional();
  if (family == "chi2") return hf_functional(chi2_pair());
  if (family == "sm") return sm_functional(get("alpha"), get("beta"));
  if (family == "renyi") return hf_functional(renyi_divergence_pair(get("alpha")));
  if (family == "tsallis_rel") return hf_functional(tsallis_relative_pair(get("alpha")));
  throw Error(ErrorCode::ParamOutOfRange,
              "unknown divergence family '" + std::string(family) + "'");
}

DivergenceFunctional zeta_compose_div(std::span<const DivergenceFunctional> divergences,
                                      const Composer& zeta, std::uint64_t seed) {
  if (divergences.size() != zeta.arity) {
    throw Error(ErrorCode::ArityMismatch, "composer " + zeta.name + " takes " +
                                              std::to_string(zeta.arity) + " divergences, got " +
                                              std::to_string(divergences.size()));
  }
  std::vector<double> x(zeta.arity, 0.0);
  const double at_origin = zeta(x);
  if (at_origin != 0.0) {
    throw Error(ErrorCode::ZetaRangeViolation, zeta.name + " does not vanish at the origin",
                at_origin);
  }
  Rng rng = make_rng(seed, 0xd1);
  std::uniform_real_distribution<double> coord(0.0, 5.0);
  for (int s = 0; s < 100; ++s) {
    for (auto& v : x) {
      do { v = coord(rng); } while (v == 0.0);
    }
    const double z = zeta(x);
    if (!(z > 0.0)) {
      throw Error(ErrorCode::ZetaRangeViolation,
                  zeta.name + " is not positive on the open orthant", z);
    }
  }

  std::vector<DivergenceFunctional> parts(divergences.begin(), divergences.end());
  std::string name = zeta.name + "[";
  for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "," : "") + parts[i].name();
  name += "]";
  DivergenceFunctional d(name, [parts, zeta](std::span<const double> p,
                                             std::span<const double> q) {
    std::vector<double> values(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) values[i] = parts[i].evaluate(p, q);
    return zeta(values);
  });
  d.with_constituents(std::move(parts), zeta.origin_gradient());
  return d;
}

}  // namespace entrogeo
