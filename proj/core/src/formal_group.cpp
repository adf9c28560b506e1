#include "entrogeo/formal_group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "entrogeo/error.hpp"
#include "entrogeo/sampling.hpp"

namespace entrogeo {

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

Conjugator identity_conjugator() {
  return {"id", [](double x) { return x; }, [](double y) { return y; }};
}

Conjugator scale_conjugator(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::ParamOutOfRange, "scale conjugator needs c > 0", c);
  }
  std::ostringstream name;
  name << "scale(" << c << ")";
  return {name.str(), [c](double x) { return c * x; }, [c](double y) { return y / c; }};
}

Conjugator expm1_conjugator() {
  return {"expm1", [](double x) { return std::expm1(x); },
          [](double y) { return std::log1p(y); }};
}

BinaryLaw q_sum(double q) {
  std::ostringstream name;
  name << "q-sum(" << q << ")";
  const double k = 1.0 - q;
  return BinaryLaw(name.str(), [k](double x, double y) { return x + y + k * x * y; });
}

LawReport check_group_axioms(const BinaryLaw& law, Interval sample_domain, std::size_t samples,
                             std::uint64_t seed, double tol) {
  if (samples == 0) throw Error(ErrorCode::ParamOutOfRange, "need at least one sample");
  if (!sample_domain.bounded() || !(sample_domain.lo <= sample_domain.hi)) {
    throw Error(ErrorCode::ParamOutOfRange, "sample domain must be a bounded interval");
  }
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> draw(sample_domain.lo, sample_domain.hi);
  const Interval& dom = law.domain();
  auto compose = [&](double a, double b) {
    const double v = law(a, b);
    if (!std::isfinite(v) || !dom.contains(v)) {
      std::ostringstream msg;
      msg << law.name() << "(" << a << ", " << b << ") = " << v << " leaves the law's domain";
      throw Error(ErrorCode::DomainEscape, msg.str(), v);
    }
    return v;
  };

  LawReport report;
  report.samples = samples;
  report.tol = tol;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = draw(rng);
    const double y = draw(rng);
    const double z = draw(rng);
    report.commutativity = std::max(report.commutativity, std::abs(compose(x, y) - compose(y, x)));
    const double left = compose(x, compose(y, z));
    const double right = compose(compose(x, y), z);
    report.associativity = std::max(report.associativity, std::abs(left - right));
    report.identity = std::max(report.identity, std::abs(compose(x, 0.0) - x));
  }
  return report;
}

IteratedLaw::IteratedLaw(BinaryLaw law, unsigned m) : law_(std::move(law)), m_(m) {
  if (m >= 31) throw Error(ErrorCode::ParamOutOfRange, "iteration depth too large", m);
}

double IteratedLaw::operator()(std::span<const double> args) const {
  if (args.size() != arity()) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(arity()) +
                                              " arguments, got " + std::to_string(args.size()));
  }
  return eval(args);
}

double IteratedLaw::eval(std::span<const double> args) const {
  if (args.size() == 1) return args[0];
  const std::size_t half = args.size() / 2;
  return law_(eval(args.first(half)), eval(args.subspan(half)));
}

IteratedLaw iterate_pow2(const BinaryLaw& law, unsigned m) { return IteratedLaw(law, m); }

double check_phi4_symmetry(const BinaryLaw& law, std::size_t samples, std::uint64_t seed,
                           Interval sample_domain) {
  if (!sample_domain.bounded()) {
    throw Error(ErrorCode::ParamOutOfRange, "sample domain must be a bounded interval");
  }
  const IteratedLaw phi4(law, 2);
  Rng rng = make_rng(seed, 4);
  std::uniform_real_distribution<double> draw(sample_domain.lo, sample_domain.hi);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::array<double, 4> x{draw(rng), draw(rng), draw(rng), draw(rng)};
    const double base = phi4(x);
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
      std::array<double, 4> xs{x[perm[0]], x[perm[1]], x[perm[2]], x[perm[3]]};
      worst = std::max(worst, std::abs(phi4(xs) - base));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return worst;
}

BinaryLaw conjugate(const BinaryLaw& law, const Conjugator& xi) {
  for (double x = -2.0; x <= 2.0; x += 0.125) {
    const double back = xi.inverse(xi.forward(x));
    if (!(std::abs(back - x) <= 1e-10 * std::max(1.0, std::abs(x)))) {
      throw Error(ErrorCode::InversionFailure,
                  "conjugator " + xi.name + " does not invert at " + std::to_string(x), x);
    }
  }
  auto invert = [xi](double y) {
    const double x = xi.inverse(y);
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::InversionFailure,
                  "conjugator " + xi.name + " has no preimage for " + std::to_string(y), y);
    }
    return x;
  };
  Interval dom{xi.forward(law.domain().lo), xi.forward(law.domain().hi)};
  return BinaryLaw(xi.name + "*" + law.name(),
                   [law, xi, invert](double x, double y) {
                     return xi.forward(law(invert(x), invert(y)));
                   },
                   dom);
}

}  // namespace entrogeo
