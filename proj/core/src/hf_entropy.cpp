#include "entrogeo/hf_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entrogeo/error.hpp"
#include "entrogeo/sampling.hpp"

namespace entrogeo {
namespace {

constexpr double kFirstStep = 1e-4;
constexpr double kThirdStep = 2e-3;

ScalarFn central_first(ScalarFn g) {
  return [g](double t) {
    const double s = kFirstStep;
    return (-g(t + 2 * s) + 8 * g(t + s) - 8 * g(t - s) + g(t - 2 * s)) / (12 * s);
  };
}

ScalarFn central_second(ScalarFn g) {
  return [g](double t) {
    const double s = kFirstStep;
    return (-g(t + 2 * s) + 16 * g(t + s) - 30 * g(t) + 16 * g(t - s) - g(t - 2 * s)) /
           (12 * s * s);
  };
}

// Third derivatives lose three digits to cancellation, so this stencil uses a
// wider step than the others.
ScalarFn central_third(ScalarFn g) {
  return [g](double t) {
    const double s = kThirdStep;
    return (g(t + 2 * s) - 2 * g(t + s) + 2 * g(t - s) - g(t - 2 * s)) / (2 * s * s * s);
  };
}

void require(bool ok, const std::string& what, double value) {
  if (!ok) throw Error(ErrorCode::ParamOutOfRange, what, value);
}

void require_off_one(double v, const char* name) {
  require(std::isfinite(v) && std::abs(v - 1.0) >= kParamGuard,
          std::string(name) + " must differ from 1 by at least 1e-8", v);
}

std::string label(std::string_view family, const ParamMap& params) {
  std::ostringstream os;
  os << family;
  if (!params.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [k, v] : params) {
      os << (first ? "" : ",") << k << '=' << v;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

// t^a, f(0) = 0.
double power(double t, double a) { return t == 0.0 ? 0.0 : std::pow(t, a); }

}  // namespace

HFPair::HFPair(HFSpec spec) : spec_(std::move(spec)) {
  if (!spec_.f || !spec_.h || !spec_.h_inverse) {
    throw Error(ErrorCode::ParamOutOfRange, "pair " + spec_.name + " needs f, h and h^-1");
  }
  if (!spec_.f_prime) { spec_.f_prime = central_first(spec_.f); analytic_ = false; }
  if (!spec_.f_second) { spec_.f_second = central_second(spec_.f); analytic_ = false; }
  if (!spec_.f_third) { spec_.f_third = central_third(spec_.f); analytic_ = false; }
  if (!spec_.h_prime) { spec_.h_prime = central_first(spec_.h); analytic_ = false; }

  const double anchor = spec_.h(spec_.f(1.0));
  if (!(std::abs(anchor) <= 1e-12)) {
    throw Error(ErrorCode::ShapeMismatch, spec_.name + ": h(f(1)) must vanish", anchor);
  }
  if (spec_.role == Role::Entropy && spec_.f(0.0) != 0.0) {
    throw Error(ErrorCode::ShapeMismatch, spec_.name + ": f(0) must be exactly 0",
                spec_.f(0.0));
  }

  const bool concave = spec_.curvature == Curvature::Concave;
  const bool increasing = spec_.monotonicity == Monotonicity::Increasing;
  const bool entropy_pairing = concave == increasing;
  if ((spec_.role == Role::Entropy) != entropy_pairing) {
    throw Error(ErrorCode::ShapeMismatch,
                spec_.name + ": curvature of f and monotonicity of h do not match the " +
                    (spec_.role == Role::Entropy ? "entropy" : "divergence") + " role");
  }

  // Sampled second differences of f on (0, 1) must carry the declared sign.
  const double step = 0.01;
  for (double t = 0.02; t < 0.99; t += 0.03) {
    const double d2 = spec_.f(t + step) - 2 * spec_.f(t) + spec_.f(t - step);
    const bool ok = concave ? d2 < 0.0 : d2 > 0.0;
    if (!ok) {
      throw Error(ErrorCode::ShapeMismatch,
                  spec_.name + ": f is not strictly " + (concave ? "concave" : "convex") +
                      " near t=" + std::to_string(t),
                  d2);
    }
  }
  const double slope = spec_.h_prime(spec_.f(1.0));
  if (!(increasing ? slope > 0.0 : slope < 0.0)) {
    throw Error(ErrorCode::ShapeMismatch,
                spec_.name + ": h'(f(1)) has the wrong sign for the declared monotonicity",
                slope);
  }
}

double HFPair::evaluate(std::span<const double> weights) const {
  double sum = 0.0;
  for (double w : weights) {
    if (w != 0.0) sum += spec_.f(w);
  }
  const double value = spec_.h(sum);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::DomainError,
                spec_.name + ": h is undefined at " + std::to_string(sum), sum);
  }
  return value;
}

HFPair shannon() {
  HFSpec s;
  s.name = "shannon";
  s.f = [](double t) { return t == 0.0 ? 0.0 : -t * std::log(t); };
  s.f_prime = [](double t) { return -std::log(t) - 1.0; };
  s.f_second = [](double t) { return -1.0 / t; };
  s.f_third = [](double t) { return 1.0 / (t * t); };
  s.h = [](double x) { return x; };
  s.h_inverse = [](double x) { return x; };
  s.h_prime = [](double) { return 1.0; };
  s.law = q_sum(1.0);
  return HFPair(std::move(s));
}

HFPair renyi(double alpha) {
  require(alpha > 0.0, "renyi: alpha must be positive", alpha);
  require_off_one(alpha, "renyi: alpha");
  HFSpec s;
  s.params = {{"alpha", alpha}};
  s.name = label("renyi", s.params);
  s.curvature = alpha < 1.0 ? Curvature::Concave : Curvature::Convex;
  s.monotonicity = alpha < 1.0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
  const double a = alpha;
  s.f = [a](double t) { return power(t, a); };
  s.f_prime = [a](double t) { return a * std::pow(t, a - 1); };
  s.f_second = [a](double t) { return a * (a - 1) * std::pow(t, a - 2); };
  s.f_third = [a](double t) { return a * (a - 1) * (a - 2) * std::pow(t, a - 3); };
  s.h = [a](double x) { return std::log(x) / (1 - a); };
  s.h_inverse = [a](double y) { return std::exp((1 - a) * y); };
  s.h_prime = [a](double x) { return 1.0 / ((1 - a) * x); };
  s.law = q_sum(1.0);
  return HFPair(std::move(s));
}

HFPair tsallis(double q) {
  require(q > 0.0, "tsallis: q must be positive", q);
  require_off_one(q, "tsallis: q");
  HFSpec s;
  s.params = {{"q", q}};
  s.name = label("tsallis", s.params);
  s.f = [q](double t) { return t == 0.0 ? 0.0 : (t - std::pow(t, q)) / (q - 1); };
  s.f_prime = [q](double t) { return (1 - q * std::pow(t, q - 1)) / (q - 1); };
  s.f_second = [q](double t) { return -q * std::pow(t, q - 2); };
  s.f_third = [q](double t) { return -q * (q - 2) * std::pow(t, q - 3); };
  s.h = [](double x) { return x; };
  s.h_inverse = [](double x) { return x; };
  s.h_prime = [](double) { return 1.0; };
  s.law = q_sum(q);
  return HFPair(std::move(s));
}

HFPair sharma_mittal(double alpha, double beta) {
  require(alpha > 0.0, "sharma_mittal: alpha must be positive", alpha);
  require_off_one(alpha, "sharma_mittal: alpha");
  require_off_one(beta, "sharma_mittal: beta");
  HFSpec s;
  s.params = {{"alpha", alpha}, {"beta", beta}};
  s.name = label("sharma_mittal", s.params);
  s.curvature = alpha < 1.0 ? Curvature::Concave : Curvature::Convex;
  s.monotonicity = alpha < 1.0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
  const double a = alpha;
  const double b = beta;
  const double e = (1 - b) / (1 - a);
  s.f = [a](double t) { return power(t, a); };
  s.f_prime = [a](double t) { return a * std::pow(t, a - 1); };
  s.f_second = [a](double t) { return a * (a - 1) * std::pow(t, a - 2); };
  s.f_third = [a](double t) { return a * (a - 1) * (a - 2) * std::pow(t, a - 3); };
  s.h = [b, e](double x) { return std::expm1(e * std::log(x)) / (1 - b); };
  s.h_inverse = [b, e](double y) { return std::exp(std::log1p((1 - b) * y) / e); };
  s.h_prime = [a, e](double x) { return std::pow(x, e - 1) / (1 - a); };
  s.law = q_sum(beta);
  return HFPair(std::move(s));
}

HFPair kaniadakis(double kappa) {
  require(std::isfinite(kappa) && std::abs(kappa) < 1.0 && std::abs(kappa) >= kParamGuard,
          "kaniadakis: kappa must lie in (-1, 1) away from 0", kappa);
  HFSpec s;
  s.params = {{"kappa", kappa}};
  s.name = label("kaniadakis", s.params);
  const double k = kappa;
  s.f = [k](double t) {
    return t == 0.0 ? 0.0 : (std::pow(t, 1 - k) - std::pow(t, 1 + k)) / (2 * k);
  };
  s.f_prime = [k](double t) {
    return ((1 - k) * std::pow(t, -k) - (1 + k) * std::pow(t, k)) / (2 * k);
  };
  s.f_second = [k](double t) {
    return -((1 - k) * std::pow(t, -k - 1) + (1 + k) * std::pow(t, k - 1)) / 2;
  };
  s.f_third = [k](double t) {
    return (1 - k * k) * (std::pow(t, -k - 2) + std::pow(t, k - 2)) / 2;
  };
  s.h = [](double x) { return x; };
  s.h_inverse = [](double x) { return x; };
  s.h_prime = [](double) { return 1.0; };
  return HFPair(std::move(s));
}

HFPair make_builtin(std::string_view family, const ParamMap& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw Error(ErrorCode::ParamOutOfRange,
                  std::string(family) + " requires parameter '" + key + "'");
    }
    return it->second;
  };
  auto only = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw Error(ErrorCode::ParamOutOfRange,
                    std::string(family) + " does not take parameter '" + k + "'", v);
      }
    }
  };
  if (family == "shannon") { only({}); return shannon(); }
  if (family == "renyi") { only({"alpha"}); return renyi(get("alpha")); }
  if (family == "tsallis") { only({"q"}); return tsallis(get("q")); }
  if (family == "sharma_mittal" || family == "sm") {
    only({"alpha", "beta"});
    return sharma_mittal(get("alpha"), get("beta"));
  }
  if (family == "kaniadakis") { only({"kappa"}); return kaniadakis(get("kappa")); }
  throw Error(ErrorCode::ParamOutOfRange, "unknown entropy family '" + std::string(family) + "'");
}

double eval_entropy(const HFPair& pair, const ProbDist& p) {
  if (pair.role() != Role::Entropy) {
    throw Error(ErrorCode::ShapeMismatch, pair.name() + " is not an entropy pair");
  }
  return pair.evaluate(p.weights());
}

EntropyFunctional as_functional(const HFPair& pair, std::optional<BinaryLaw> law) {
  if (pair.role() != Role::Entropy) {
    throw Error(ErrorCode::ShapeMismatch, pair.name() + " is not an entropy pair");
  }
  if (!law) law = pair.law();
  EntropyFunctional::Gradient gradient;
  if (pair.analytic_derivatives()) {
    gradient = [pair](std::span<const double> w, std::span<double> out) {
      double sum = 0.0;
      for (double x : w) {
        if (x != 0.0) sum += pair.f(x);
      }
      const double outer = pair.h_prime(sum);
      for (std::size_t i = 0; i < w.size(); ++i) out[i] = outer * pair.f_prime(w[i]);
    };
  }
  return EntropyFunctional(
      pair.name(), [pair](std::span<const double> w) { return pair.evaluate(w); },
      std::move(law), std::move(gradient));
}

SkReport sk_suite(const EntropyFunctional& entropy, std::size_t w_max, std::size_t samples,
                  std::uint64_t seed, bool strict) {
  if (samples == 0) throw Error(ErrorCode::ParamOutOfRange, "need at least one sample");
  if (w_max < 2) throw Error(ErrorCode::ParamOutOfRange, "w_max must be at least 2");
  SkReport report;
  report.strict = strict;
  report.min_value = std::numeric_limits<double>::infinity();
  report.max_excess_over_uniform = -std::numeric_limits<double>::infinity();

  auto check = [&](const ProbDist& p, double at_uniform, const ProbDist& uniform) {
    const double s = entropy(p);
    ++report.distributions;
    report.min_value = std::min(report.min_value, s);
    const double excess = s - at_uniform;
    if (excess > report.max_excess_over_uniform) {
      report.max_excess_over_uniform = excess;
      if (excess > report.tol) {
        report.sk2_counterexample = std::vector<double>(p.weights().begin(), p.weights().end());
      }
    }
    report.max_expansion_gap = std::max(report.max_expansion_gap, std::abs(entropy(expand(p)) - s));
    if (strict) {
      double dist = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) dist = std::max(dist, std::abs(p[i] - uniform[i]));
      if (dist > 1e-3 && !(s < at_uniform)) ++report.strict_max_violations;
    }
  };

  for (std::size_t w = 2; w <= w_max; ++w) {
    const auto uniform = ProbDist::uniform(w);
    const double at_uniform = entropy(uniform);
    for (std::size_t i = 0; i < w; ++i) {
      const auto c = ProbDist::certainty(w, i);
      check(c, at_uniform, uniform);
      report.max_certainty_value = std::max(report.max_certainty_value, std::abs(entropy(c)));
    }
    Rng rng = make_rng(seed, w);
    for (std::size_t s = 0; s < samples; ++s) check(random_distribution(rng, w), at_uniform, uniform);
  }
  return report;
}

SkReport sk_suite(const HFPair& pair, std::size_t w_max, std::size_t samples,
                  std::uint64_t seed) {
  return sk_suite(as_functional(pair), w_max, samples, seed, true);
}

ChiLaw chi_product() {
  return {"product", [](double x, double y) { return x * y; }};
}

ChiLaw chi_sum() {
  return {"sum", [](double x, double y) { return x + y; }};
}

ChiLaw chi_q_sum(double q) {
  const double k = 1 - q;
  return {"q-sum", [k](double x, double y) { return x + y + k * x * y; }};
}

BinaryLaw phi_from_chi(const HFPair& pair, const ChiLaw& chi) {
  for (double s = 0.0; s <= 2.0; s += 0.25) {
    const double back = pair.h(pair.h_inverse(s));
    if (!(std::abs(back - s) <= 1e-10 * std::max(1.0, std::abs(s)))) {
      throw Error(ErrorCode::InversionFailure,
                  pair.name() + ": h^-1 does not invert h at " + std::to_string(s), s);
    }
  }
  return BinaryLaw(pair.name() + "/" + chi.name, [pair, chi](double x, double y) {
    const double a = pair.h_inverse(x);
    const double b = pair.h_inverse(y);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw Error(ErrorCode::InversionFailure, pair.name() + ": h^-1 undefined", x);
    }
    return pair.h(chi(a, b));
  });
}

double composability_residual(const EntropyFunctional& entropy, const BinaryLaw& law,
                              const ProbDist& p, const ProbDist& q) {
  return std::abs(entropy(product(p, q)) - law(entropy(p), entropy(q)));
}

double composability_residual(const HFPair& pair, const BinaryLaw& law, const ProbDist& p,
                              const ProbDist& q) {
  return composability_residual(as_functional(pair), law, p, q);
}

}  // namespace entrogeo
