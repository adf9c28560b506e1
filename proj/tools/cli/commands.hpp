#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/json_out.hpp"

namespace entrogeo::cli {

struct Outcome {
  Json doc;
  bool pass = true;
};

struct EntropyOptions {
  std::string family;
  std::vector<std::string> params;
  std::string dist;
  double input_tol = 1e-9;
};

struct DivergenceOptions {
  std::string family;
  std::string pair;
  std::vector<std::string> params;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string p;
  std::string q;
  std::vector<std::string> constituents;
  std::string zeta;
  double input_tol = 1e-9;
};

struct ComposeOptions {
  std::vector<std::string> constituents;
  std::string xi = "id";
  unsigned m = 0;
  std::string dist;
  std::size_t samples = 200;
  std::size_t w_max = 4;
  double law_tol = 1e-10;
  double tol = 1e-9;
  double input_tol = 1e-9;
};

struct GeometryOptions {
  std::string model;
  std::vector<double> point;
  std::string divergence = "kl";
  std::vector<std::string> constituents;
  std::string zeta;
  double step = 0.0;
  double metric_tol = 1e-5;
  double connection_tol = 1e-4;
  double duality_tol = 5e-4;
};

struct GroupLawOptions {
  std::string law = "q-sum";
  double q = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t samples = 10000;
  std::size_t phi4_samples = 1000;
  double tol = 1e-10;
  double phi4_tol = 1e-9;
};

struct SkOptions {
  std::string family;
  std::vector<std::string> params;
  std::size_t w_max = 6;
  std::size_t samples = 1000;
  double tol = 1e-10;
};

struct ComposabilityOptions {
  std::string family;
  std::vector<std::string> params;
  std::optional<double> q;
  std::size_t samples = 1000;
  std::size_t w_max = 4;
  double tol = 1e-10;
};

struct GeometryVerifyOptions {
  std::vector<std::string> divergences{"kl", "chi2", "sm:alpha=0.5,beta=0.7"};
  std::size_t w_max = 3;
  std::size_t points = 10;
  double metric_tol = 1e-5;
  double connection_tol = 1e-4;
  double duality_tol = 5e-4;
};

struct VerifyAllOptions {
  std::size_t samples = 200;
};

struct MaxentOptions {
  std::string family;
  std::vector<std::string> params;
  std::size_t w = 0;
  std::vector<std::string> constraints;
  std::size_t max_iter = 100000;
  double tol = 1e-8;
  std::size_t restarts = 2;
};

Outcome run_entropy(const EntropyOptions& o);
Outcome run_divergence(const DivergenceOptions& o);
Outcome run_compose(const ComposeOptions& o, std::uint64_t seed);
Outcome run_metric(const GeometryOptions& o);
Outcome run_connection(const GeometryOptions& o);
Outcome run_verify_group_law(const GroupLawOptions& o, std::uint64_t seed);
Outcome run_verify_sk(const SkOptions& o, std::uint64_t seed);
Outcome run_verify_composability(const ComposabilityOptions& o, std::uint64_t seed);
Outcome run_verify_geometry(const GeometryVerifyOptions& o, std::uint64_t seed);
Outcome run_verify_all(const VerifyAllOptions& o, std::uint64_t seed);
Outcome run_maxent(const MaxentOptions& o, std::uint64_t seed);

}  // namespace entrogeo::cli
