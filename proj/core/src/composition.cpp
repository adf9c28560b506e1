#include "entrogeo/composition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entrogeo/error.hpp"
#include "entrogeo/sampling.hpp"

namespace entrogeo {

std::vector<double> Composer::origin_gradient() const {
  if (gradient_at_origin) return *gradient_at_origin;
  // Second-order one-sided stencil: exact for quadratics, so a zeta whose
  // origin is critical reports a zero gradient rather than O(step).
  constexpr double step = 1e-5;
  std::vector<double> x(arity, 0.0);
  const double at_zero = fn(x);
  std::vector<double> grad(arity);
  for (std::size_t k = 0; k < arity; ++k) {
    x[k] = step;
    const double one = fn(x);
    x[k] = 2 * step;
    const double two = fn(x);
    x[k] = 0.0;
    grad[k] = (4 * one - two - 3 * at_zero) / (2 * step);
  }
  return grad;
}

Composer identity_composer() {
  Composer c;
  c.name = "id";
  c.arity = 1;
  c.fn = [](std::span<const double> x) { return x[0]; };
  c.monotone = true;
  c.zero_at_origin = true;
  c.gradient_at_origin = std::vector<double>{1.0};
  return c;
}

Composer linear_composer(std::vector<double> coefficients) {
  if (coefficients.empty()) throw Error(ErrorCode::ArityMismatch, "linear composer needs terms");
  Composer c;
  std::ostringstream name;
  name << "linear(";
  for (std::size_t i = 0; i < coefficients.size(); ++i) name << (i ? "," : "") << coefficients[i];
  name << ")";
  c.name = name.str();
  c.arity = coefficients.size();
  c.monotone = std::all_of(coefficients.begin(), coefficients.end(),
                           [](double a) { return a >= 0.0; });
  c.zero_at_origin = true;
  c.gradient_at_origin = coefficients;
  c.fn = [coefficients](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) s += coefficients[i] * x[i];
    return s;
  };
  return c;
}

Composer polynomial_composer(std::size_t arity, std::vector<Monomial> terms) {
  std::vector<double> linear(arity, 0.0);
  bool nonnegative = true;
  for (const auto& t : terms) {
    if (t.exponents.size() != arity) {
      throw Error(ErrorCode::ArityMismatch, "monomial exponent vector has the wrong length");
    }
    unsigned degree = 0;
    for (unsigned e : t.exponents) degree += e;
    if (degree == 0) {
      throw Error(ErrorCode::ParamOutOfRange, "polynomial composer has a constant term",
                  t.coefficient);
    }
    if (degree == 1) {
      for (std::size_t k = 0; k < arity; ++k) {
        if (t.exponents[k] == 1) linear[k] += t.coefficient;
      }
    }
    nonnegative = nonnegative && t.coefficient >= 0.0;
  }
  Composer c;
  c.name = "polynomial";
  c.arity = arity;
  c.monotone = nonnegative;
  c.zero_at_origin = true;
  c.gradient_at_origin = linear;
  c.fn = [terms](std::span<const double> x) {
    double s = 0.0;
    for (const auto& t : terms) {
      double prod = t.coefficient;
      for (std::size_t k = 0; k < t.exponents.size(); ++k) {
        for (unsigned e = 0; e < t.exponents[k]; ++e) prod *= x[k];
      }
      s += prod;
    }
    return s;
  };
  return c;
}

EntropyFunctional zeta_compose(std::span<const EntropyFunctional> entropies,
                               const Composer& zeta, std::uint64_t seed) {
  if (entropies.size() != zeta.arity) {
    throw Error(ErrorCode::ArityMismatch, "composer " + zeta.name + " takes " +
                                              std::to_string(zeta.arity) + " entropies, got " +
                                              std::to_string(entropies.size()));
  }
  if (!zeta.monotone) {
    throw Error(ErrorCode::MonotonicityViolation, zeta.name + " is not declared increasing");
  }
  Rng rng = make_rng(seed, 0x7a);
  std::uniform_real_distribution<double> coord(0.0, 5.0);
  std::uniform_real_distribution<double> bump(0.0, 1.0);
  std::vector<double> x(zeta.arity), y(zeta.arity);
  for (int s = 0; s < 100; ++s) {
    for (std::size_t k = 0; k < zeta.arity; ++k) {
      x[k] = coord(rng);
      y[k] = x[k] + bump(rng);
    }
    const double zx = zeta(x);
    const double zy = zeta(y);
    if (zx < 0.0) {
      throw Error(ErrorCode::ZetaRangeViolation, zeta.name + " is negative on the orthant", zx);
    }
    if (zx > zy + 1e-12) {
      throw Error(ErrorCode::MonotonicityViolation,
                  zeta.name + " decreases along an ordered pair", zx - zy);
    }
  }

  std::vector<EntropyFunctional> parts(entropies.begin(), entropies.end());
  std::string name = zeta.name + "[";
  for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "," : "") + parts[i].name();
  name += "]";
  return EntropyFunctional(name, [parts, zeta](std::span<const double> w) {
    std::vector<double> values(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) values[i] = parts[i].evaluate(w);
    return zeta(values);
  });
}

GroupComposition group_compose(std::span<const EntropyFunctional> entropies,
                               const Conjugator& xi, unsigned m) {
  if (m >= 16) throw Error(ErrorCode::ParamOutOfRange, "composition depth too large", m);
  const std::size_t n = std::size_t{1} << m;
  if (entropies.size() != n) {
    throw Error(ErrorCode::ArityMismatch, "depth " + std::to_string(m) + " needs " +
                                              std::to_string(n) + " entropies, got " +
                                              std::to_string(entropies.size()));
  }
  if (!entropies[0].law()) {
    throw Error(ErrorCode::LawMismatch, entropies[0].name() + " carries no composition law");
  }
  const BinaryLaw phi = *entropies[0].law();

  for (double x = -2.0; x < 2.0; x += 0.25) {
    if (!(xi.forward(x + 0.25) > xi.forward(x))) {
      throw Error(ErrorCode::ParamOutOfRange, "conjugator " + xi.name + " is not increasing", x);
    }
  }

  Rng rng = make_rng(0x1a5, m);
  std::vector<std::pair<ProbDist, ProbDist>> probes;
  for (std::size_t wa : {2, 3}) {
    for (std::size_t wb : {2, 3}) {
      for (int r = 0; r < 2; ++r) {
        probes.emplace_back(random_distribution(rng, wa), random_distribution(rng, wb));
      }
    }
  }
  for (const auto& s : entropies) {
    for (const auto& [p, q] : probes) {
      const double r = composability_residual(s, phi, p, q);
      if (!(r <= kLawShareTol)) {
        throw Error(ErrorCode::LawMismatch,
                    s.name() + " does not compose under " + phi.name(), r);
      }
    }
  }

  std::vector<EntropyFunctional> parts(entropies.begin(), entropies.end());
  const IteratedLaw tree(phi, m);
  std::string name = xi.name + "(" + phi.name() + "^" + std::to_string(n) + "[";
  for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "," : "") + parts[i].name();
  name += "])";
  BinaryLaw omega = conjugate(phi, xi);
  EntropyFunctional z(
      name,
      [parts, tree, xi](std::span<const double> w) {
        std::vector<double> values(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) values[i] = parts[i].evaluate(w);
        return xi.forward(tree(values));
      },
      omega);
  return {std::move(z), std::move(omega)};
}

namespace {

double power_sum(std::span<const double> w, double a) {
  double s = 0.0;
  for (double x : w) {
    if (x != 0.0) s += std::pow(x, a);
  }
  return s;
}

void check_param(double v, const char* name, bool positive) {
  if (!std::isfinite(v) || std::abs(v - 1.0) < kParamGuard || (positive && !(v > 0.0))) {
    throw Error(ErrorCode::ParamOutOfRange, std::string(name) + " outside its admissible range",
                v);
  }
}

double ne1_raw(double a1, double a2, double b, std::span<const double> w) {
  const double t1 = std::pow(power_sum(w, a1), (b - 1) / (a1 - 1));
  const double t2 = std::pow(power_sum(w, a2), (b - 1) / (a2 - 1));
  return (1.0 - t1 * t2) / (b - 1);
}

double ne2_raw(double a, double q, std::span<const double> w) {
  const double t = power_sum(w, q) * std::pow(power_sum(w, a), (q - 1) / (a - 1));
  return (1.0 - t) / (q - 1);
}

}  // namespace

double ne1_closed_form(double alpha1, double alpha2, double beta, const ProbDist& p) {
  check_param(alpha1, "alpha1", true);
  check_param(alpha2, "alpha2", true);
  check_param(beta, "beta", false);
  return ne1_raw(alpha1, alpha2, beta, p.weights());
}

double ne2_closed_form(double alpha, double q, const ProbDist& p) {
  check_param(alpha, "alpha", true);
  check_param(q, "q", true);
  return ne2_raw(alpha, q, p.weights());
}

EntropyFunctional ne1_functional(double alpha1, double alpha2, double beta) {
  check_param(alpha1, "alpha1", true);
  check_param(alpha2, "alpha2", true);
  check_param(beta, "beta", false);
  std::ostringstream name;
  name << "ne1(" << alpha1 << "," << alpha2 << "," << beta << ")";
  return EntropyFunctional(
      name.str(),
      [=](std::span<const double> w) { return ne1_raw(alpha1, alpha2, beta, w); },
      q_sum(beta));
}

EntropyFunctional ne2_functional(double alpha, double q) {
  check_param(alpha, "alpha", true);
  check_param(q, "q", true);
  std::ostringstream name;
  name << "ne2(" << alpha << "," << q << ")";
  return EntropyFunctional(
      name.str(), [=](std::span<const double> w) { return ne2_raw(alpha, q, w); }, q_sum(q));
}

ConcavityReport concavity_probe(const EntropyFunctional& entropy, std::size_t w_max,
                                std::size_t samples, std::uint64_t seed, double tol) {
  if (samples == 0) throw Error(ErrorCode::ParamOutOfRange, "need at least one sample");
  if (w_max < 2) throw Error(ErrorCode::ParamOutOfRange, "w_max must be at least 2");
  ConcavityReport report;
  report.tol = tol;
  report.min_margin = std::numeric_limits<double>::infinity();
  Rng rng = make_rng(seed, 0xc0);
  std::uniform_int_distribution<std::size_t> pick_w(2, w_max);
  std::uniform_real_distribution<double> pick_lambda(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t w = pick_w(rng);
    const auto p = random_distribution(rng, w);
    const auto q = random_distribution(rng, w);
    const double lambda = pick_lambda(rng);
    const double margin =
        entropy(mix(p, q, lambda)) - (lambda * entropy(p) + (1 - lambda) * entropy(q));
    ++report.triples;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      if (margin < -tol) {
        report.counterexample = ConcavityReport::Counterexample{
            {p.weights().begin(), p.weights().end()},
            {q.weights().begin(), q.weights().end()},
            lambda,
            margin};
      }
    }
  }
  return report;
}

}  // namespace entrogeo
