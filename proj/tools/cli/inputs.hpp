#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entrogeo/composition.hpp"
#include "entrogeo/formal_group.hpp"
#include "entrogeo/hf_entropy.hpp"
#include "entrogeo/maxent.hpp"
#include "entrogeo/probability.hpp"

namespace entrogeo::cli {

/// Bad flags or unreadable input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family name with its parameters, written "name" or "name:k=v,k=v".
struct FamilySpec {
  std::string name;
  ParamMap params;
};

double parse_real(std::string_view text, std::string_view what);
std::uint64_t parse_seed(std::string_view text);
std::vector<double> parse_reals(std::string_view text, std::string_view what);

/// "k=v" items into a map; duplicate keys are rejected.
ParamMap parse_params(const std::vector<std::string>& items, ParamMap into = {});
FamilySpec parse_family(std::string_view text);

/// JSON {"weights": [...]} (or a bare array), or one real per line.
ProbDist read_distribution(const std::string& path, double tol);

/// "id", "scale:c" or "expm1".
Conjugator parse_conjugator(std::string_view text);

/// "linear:c1,...,cm" or "quadratic:a1,...,am:b1,...,bm"
/// (sum a_k x_k + sum b_k x_k^2).
Composer parse_composer(std::string_view text);

/// "a1,...,aW:target".
LinearConstraint parse_constraint(std::string_view text);

/// "simplex:W".
std::size_t parse_simplex_model(std::string_view text);

}  // namespace entrogeo::cli
