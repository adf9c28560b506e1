#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>

namespace entrogeo {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  bool bounded() const noexcept;
  static Interval real_line() { return {}; }
};

/// A composition map Phi(x, y) on entropy values. Nothing about the group
/// axioms is assumed; use check_group_axioms to test them.
class BinaryLaw {
 public:
  using Fn = std::function<double(double, double)>;

  BinaryLaw(std::string name, Fn fn, Interval domain = Interval::real_line())
      : name_(std::move(name)), fn_(std::move(fn)), domain_(domain) {}

  double operator()(double x, double y) const { return fn_(x, y); }
  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }

 private:
  std::string name_;
  Fn fn_;
  Interval domain_;
};

/// Strictly increasing map xi with its closed-form inverse.
struct Conjugator {
  std::string name;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
};

Conjugator identity_conjugator();
Conjugator scale_conjugator(double c);
/// xi(x) = e^x - 1.
Conjugator expm1_conjugator();

/// Multiplicative formal group law x + y + (1 - q) x y. q = 1 is addition.
BinaryLaw q_sum(double q);

struct LawReport {
  double commutativity = 0.0;
  double associativity = 0.0;
  double identity = 0.0;
  std::size_t samples = 0;
  double tol = 1e-10;

  bool commutativity_pass() const { return commutativity <= tol; }
  bool associativity_pass() const { return associativity <= tol; }
  bool identity_pass() const { return identity <= tol; }
  bool pass() const {
    return commutativity_pass() && associativity_pass() && identity_pass();
  }
};

inline constexpr double kGroupAxiomTol = 1e-10;
inline constexpr double kPhi4SymmetryTol = 1e-9;

/// Max residuals of the three group-law axioms over `samples` seeded triples
/// drawn uniformly from `sample_domain`. Throws DomainEscape when an
/// intermediate composition leaves the law's own domain.
LawReport check_group_axioms(const BinaryLaw& law, Interval sample_domain, std::size_t samples,
                             std::uint64_t seed, double tol = kGroupAxiomTol);

/// Phi^{2^m}: balanced binary tree of Phi over 2^m arguments.
class IteratedLaw {
 public:
  IteratedLaw(BinaryLaw law, unsigned m);

  std::size_t arity() const noexcept { return std::size_t{1} << m_; }
  unsigned depth() const noexcept { return m_; }
  const BinaryLaw& law() const noexcept { return law_; }
  double operator()(std::span<const double> args) const;

 private:
  double eval(std::span<const double> args) const;
  BinaryLaw law_;
  unsigned m_;
};

IteratedLaw iterate_pow2(const BinaryLaw& law, unsigned m);

/// max |Phi^4(x) - Phi^4(x_sigma)| over all 24 permutations sigma and
/// `samples` seeded 4-tuples from `sample_domain`.
double check_phi4_symmetry(const BinaryLaw& law, std::size_t samples, std::uint64_t seed,
                           Interval sample_domain = {0.0, 1.0});

/// omega(x, y) = xi(Phi(xi^{-1}(x), xi^{-1}(y))).
BinaryLaw conjugate(const BinaryLaw& law, const Conjugator& xi);

}  // namespace entrogeo
