#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "cli/inputs.hpp"
#include "entrogeo/composition.hpp"
#include "entrogeo/divergence.hpp"
#include "entrogeo/error.hpp"
#include "entrogeo/formal_group.hpp"
#include "entrogeo/geometry.hpp"
#include "entrogeo/hf_entropy.hpp"
#include "entrogeo/maxent.hpp"
#include "entrogeo/sampling.hpp"

namespace entrogeo::cli {
namespace {

Json params_json(const ParamMap& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

Json check(const std::string& name, double value, double tol, bool pass) {
  return Json{{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}};
}

Json le_check(const std::string& name, double value, double tol) {
  return check(name, value, tol, value <= tol);
}

// Appends a check and folds its verdict into the outcome.
void add(Outcome& out, Json c) {
  out.pass = out.pass && c["pass"].get<bool>();
  out.doc["checks"].push_back(std::move(c));
}

void finish(Outcome& out) { out.doc["pass"] = out.pass; }

double param(const FamilySpec& s, const char* key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) throw UsageError(s.name + " requires parameter '" + key + "'");
  return it->second;
}

void only(const FamilySpec& s, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : s.params) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw UsageError(s.name + " does not take parameter '" + k + "'");
    }
  }
}

EntropyFunctional make_entropy(const FamilySpec& s) {
  if (s.name == "ne1") {
    only(s, {"alpha1", "alpha2", "beta"});
    return ne1_functional(param(s, "alpha1"), param(s, "alpha2"), param(s, "beta"));
  }
  if (s.name == "ne2") {
    only(s, {"alpha", "q"});
    return ne2_functional(param(s, "alpha"), param(s, "q"));
  }
  return as_functional(make_builtin(s.name, s.params));
}

DivergenceFunctional make_div(const FamilySpec& s) {
  if (s.name == "kl" || s.name == "chi2") only(s, {});
  else if (s.name == "sm") only(s, {"alpha", "beta"});
  else only(s, {"alpha"});
  return make_divergence(s.name, s.params);
}

DivergenceFunctional resolve_divergence(const std::string& spec,
                                        const std::vector<std::string>& constituents,
                                        const std::string& zeta) {
  if (spec != "composed") return make_div(parse_family(spec));
  if (constituents.empty() || zeta.empty()) {
    throw UsageError("composed divergence needs --constituent and --zeta");
  }
  std::vector<DivergenceFunctional> parts;
  for (const auto& c : constituents) parts.push_back(make_div(parse_family(c)));
  return zeta_compose_div(parts, parse_composer(zeta));
}

Json vec_json(std::span<const double> v) { return Json(std::vector<double>(v.begin(), v.end())); }

Json matrix_json(const MetricTensor& g) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < g.dim(); ++j) row.push_back(g(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json tensor_json(const ConnCoeffs& c) {
  Json out = Json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Json a = Json::array();
    for (std::size_t j = 0; j < c.dim(); ++j) {
      Json b = Json::array();
      for (std::size_t k = 0; k < c.dim(); ++k) b.push_back(c(i, j, k));
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

// max_ij |a - b| / |b|
double metric_rel_error(const MetricTensor& a, const MetricTensor& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::abs(b(i, j)));
    }
  }
  return worst;
}

// max_ijk |a - b| / (1 + |b|)
double connection_error(const ConnCoeffs& a, const ConnCoeffs& b) {
  double worst = 0.0;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(x[i] - y[i]) / (1.0 + std::abs(y[i])));
  }
  return worst;
}

std::vector<double> interior_point(Rng& rng, std::size_t w) {
  const auto weights = random_interior_weights(rng, w + 1);
  return {weights.begin() + 1, weights.end()};
}

CombinedGeometry constituent_geometry(const DivergenceFunctional& d, const StatModel& model,
                                      std::span<const double> xi, double step) {
  std::vector<MetricTensor> metrics;
  std::vector<ConnectionPair> conns;
  for (const auto& part : d.constituents()) {
    metrics.push_back(div_metric(part, model, xi, step));
    conns.push_back(div_connections(part, model, xi, step));
  }
  return combine_geometry(*d.zeta_gradient(), metrics, conns);
}

struct GeometryContext {
  std::size_t w;
  StatModel model;
  std::vector<double> xi;
};

GeometryContext geometry_context(const GeometryOptions& o) {
  const auto w = parse_simplex_model(o.model);
  auto model = simplex_model(w);
  if (o.point.size() != w) {
    throw UsageError("--point needs " + std::to_string(w) + " coordinates for " + o.model);
  }
  if (!model.contains(o.point)) throw UsageError("--point lies outside " + o.model);
  return {w, std::move(model), o.point};
}

Json geometry_header(const GeometryOptions& o, const std::string& divergence) {
  return Json{{"model", o.model}, {"point", o.point}, {"divergence", divergence}};
}

}  // namespace

Outcome run_entropy(const EntropyOptions& o) {
  FamilySpec spec{o.family, parse_params(o.params)};
  const auto entropy = make_entropy(spec);
  const auto p = read_distribution(o.dist, o.input_tol);
  Outcome out;
  out.doc = Json{{"family", spec.name},
                 {"params", params_json(spec.params)},
                 {"outcomes", p.size()},
                 {"value", entropy(p)}};
  return out;
}

Outcome run_divergence(const DivergenceOptions& o) {
  ParamMap params = parse_params(o.params);
  auto set = [&](const char* key, const std::optional<double>& v) {
    if (v && !params.emplace(key, *v).second) throw UsageError(std::string("parameter given twice: ") + key);
  };
  set("alpha", o.alpha);
  set("beta", o.beta);
  const auto p = read_distribution(o.p, o.input_tol);
  const auto q = PositiveProbDist::from(read_distribution(o.q, o.input_tol));
  if (p.size() != q.size()) throw UsageError("--p and --q have different lengths");

  double value = 0.0;
  std::string name = o.family;
  if (o.family == "kl") {
    value = kl(p, q);
  } else if (o.family == "sm") {
    FamilySpec s{"sm", params};
    only(s, {"alpha", "beta"});
    value = sm_divergence(param(s, "alpha"), param(s, "beta"), p, q);
  } else if (o.family == "renyi") {
    FamilySpec s{"renyi", params};
    only(s, {"alpha"});
    value = renyi_divergence(param(s, "alpha"), p, q);
  } else if (o.family == "hf") {
    if (o.pair.empty()) throw UsageError("--family hf needs --pair");
    const auto d = make_div(FamilySpec{o.pair, params});
    name = d.name();
    value = hf_divergence(*d.pair(), p, q);
  } else if (o.family == "composed") {
    const auto d = resolve_divergence("composed", o.constituents, o.zeta);
    name = d.name();
    value = d(p, q);
  } else {
    const auto d = make_div(FamilySpec{o.family, params});
    value = d(p, q);
  }
  Outcome out;
  out.doc = Json{{"family", o.family}, {"divergence", name}, {"params", params_json(params)},
                 {"value", value}};
  return out;
}

Outcome run_compose(const ComposeOptions& o, std::uint64_t seed) {
  std::vector<EntropyFunctional> parts;
  for (const auto& c : o.constituents) parts.push_back(make_entropy(parse_family(c)));
  const auto xi = parse_conjugator(o.xi);
  const auto composed = group_compose(parts, xi, o.m);

  Outcome out;
  out.doc = Json{{"entropy", composed.entropy.name()}, {"law", composed.law.name()}, {"xi", xi.name},
                 {"m", o.m}};
  if (!o.dist.empty()) out.doc["value"] = composed.entropy(read_distribution(o.dist, o.input_tol));

  out.doc["checks"] = Json::array();
  const auto axioms = check_group_axioms(composed.law, {0.0, 1.0}, o.samples, seed, o.law_tol);
  add(out, le_check("commutativity", axioms.commutativity, o.law_tol));
  add(out, le_check("associativity", axioms.associativity, o.law_tol));
  add(out, le_check("identity", axioms.identity, o.law_tol));

  Rng rng = make_rng(seed, 1);
  std::uniform_int_distribution<std::size_t> pick(2, std::max<std::size_t>(2, o.w_max));
  double worst = 0.0;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const auto p = random_distribution(rng, pick(rng));
    const auto q = random_distribution(rng, pick(rng));
    worst = std::max(worst, composability_residual(composed.entropy, composed.law, p, q));
  }
  add(out, le_check("composability", worst, o.tol));
  finish(out);
  return out;
}

Outcome run_metric(const GeometryOptions& o) {
  const auto ctx = geometry_context(o);
  Outcome out;
  if (o.divergence == "fisher") {
    const auto g = fisher_metric(ctx.model, ctx.xi, o.step);
    out.doc = geometry_header(o, "fisher");
    out.doc["metric"] = matrix_json(g);
    out.doc["checks"] = Json::array();
    add(out, check("positive_definite", g.min_eigenvalue(), 0.0, g.positive_definite()));
    finish(out);
    return out;
  }
  const auto d = resolve_divergence(o.divergence, o.constituents, o.zeta);
  const auto g = div_metric(d, ctx.model, ctx.xi, o.step);
  out.doc = geometry_header(o, d.name());
  out.doc["metric"] = matrix_json(g);
  out.doc["symmetry_residual"] = g.symmetry_residual();
  out.doc["checks"] = Json::array();
  add(out, check("positive_definite", g.min_eigenvalue(), 0.0, g.positive_definite()));
  if (d.pair()) {
    const auto closed = hf_closed_metric(*d.pair(), ctx.xi, ctx.w);
    out.doc["scale"] = hf_metric_scale(*d.pair());
    out.doc["closed_form"] = matrix_json(closed);
    add(out, le_check("closed_form", metric_rel_error(g, closed), o.metric_tol));
  }
  if (!d.constituents().empty()) {
    const auto combined = constituent_geometry(d, ctx.model, ctx.xi, o.step);
    out.doc["combined"] = matrix_json(combined.metric);
    add(out, le_check("linearity", metric_rel_error(g, combined.metric), o.metric_tol));
  }
  finish(out);
  return out;
}

Outcome run_connection(const GeometryOptions& o) {
  if (o.divergence == "fisher") throw UsageError("connection needs a divergence, not fisher");
  const auto ctx = geometry_context(o);
  const auto d = resolve_divergence(o.divergence, o.constituents, o.zeta);
  const auto conn = div_connections(d, ctx.model, ctx.xi, o.step);
  Outcome out;
  out.doc = geometry_header(o, d.name());
  out.doc["gamma"] = tensor_json(conn.gamma);
  out.doc["gamma_dual"] = tensor_json(conn.gamma_dual);
  out.doc["checks"] = Json::array();
  if (d.pair()) {
    const double alpha = hf_alpha_of(*d.pair());
    const double c = hf_metric_scale(*d.pair());
    out.doc["alpha"] = alpha;
    out.doc["scale"] = c;
    add(out, le_check("closed_form", connection_error(conn.gamma, c * alpha_connection(ctx.model, ctx.xi, -alpha)),
                      o.connection_tol));
    add(out, le_check("closed_form_dual",
                      connection_error(conn.gamma_dual, c * alpha_connection(ctx.model, ctx.xi, alpha)),
                      o.connection_tol));
  }
  if (!d.constituents().empty()) {
    const auto combined = constituent_geometry(d, ctx.model, ctx.xi, o.step);
    add(out, le_check("linearity", connection_error(conn.gamma, combined.connection.gamma), o.connection_tol));
    add(out, le_check("linearity_dual",
                      connection_error(conn.gamma_dual, combined.connection.gamma_dual), o.connection_tol));
  }
  add(out, le_check("duality", duality_residual(d, ctx.model, ctx.xi), o.duality_tol));
  finish(out);
  return out;
}

Outcome run_verify_group_law(const GroupLawOptions& o, std::uint64_t seed) {
  if (o.law != "q-sum") throw UsageError("unknown law '" + o.law + "' (q-sum)");
  if (!(o.lo <= o.hi)) throw UsageError("--lo must not exceed --hi");
  const auto law = q_sum(o.q);
  const auto report = check_group_axioms(law, {o.lo, o.hi}, o.samples, seed, o.tol);
  Outcome out;
  out.doc = Json{{"law", law.name()}, {"domain", {o.lo, o.hi}}, {"samples", o.samples}, {"seed", seed},
                 {"checks", Json::array()}};
  add(out, le_check("commutativity", report.commutativity, o.tol));
  add(out, le_check("associativity", report.associativity, o.tol));
  add(out, le_check("identity", report.identity, o.tol));
  add(out, le_check("phi4_symmetry", check_phi4_symmetry(law, o.phi4_samples, seed, {o.lo, o.hi}),
                    o.phi4_tol));
  finish(out);
  return out;
}

namespace {

void sk_checks(Outcome& out, const std::string& prefix, const SkReport& r) {
  add(out, check(prefix + "sk2", r.max_excess_over_uniform, r.tol, r.sk2_pass()));
  add(out, check(prefix + "sk3", r.max_expansion_gap, r.tol, r.sk3_pass()));
  add(out, check(prefix + "nonnegative", r.min_value, -1e-12, r.nonnegative_pass()));
  add(out, check(prefix + "strict_maximum", static_cast<double>(r.strict_max_violations), 0.0,
                 r.strict_pass()));
}

double composability_worst(const EntropyFunctional& entropy, const BinaryLaw& law, std::size_t samples,
                           std::size_t w_max, std::uint64_t seed) {
  Rng rng = make_rng(seed, 2);
  std::uniform_int_distribution<std::size_t> pick(2, std::max<std::size_t>(2, w_max));
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto p = random_distribution(rng, pick(rng));
    const auto q = random_distribution(rng, pick(rng));
    worst = std::max(worst, composability_residual(entropy, law, p, q));
  }
  return worst;
}

void geometry_checks(Outcome& out, const DivergenceFunctional& d, const GeometryVerifyOptions& o,
                     std::uint64_t seed) {
  if (!d.pair()) throw UsageError(d.name() + " has no (h, f) closed form to compare against");
  const auto& pair = *d.pair();
  const double alpha = hf_alpha_of(pair);
  const double c = hf_metric_scale(pair);
  double metric = 0.0, gamma = 0.0, gamma_dual = 0.0, duality = 0.0;
  for (std::size_t w = 1; w <= o.w_max; ++w) {
    const auto model = simplex_model(w);
    Rng rng = make_rng(seed, 100 + w);
    for (std::size_t s = 0; s < o.points; ++s) {
      const auto xi = interior_point(rng, w);
      metric = std::max(metric, metric_rel_error(div_metric(d, model, xi), hf_closed_metric(pair, xi, w)));
      const auto conn = div_connections(d, model, xi);
      gamma = std::max(gamma, connection_error(conn.gamma, c * alpha_connection(model, xi, -alpha)));
      gamma_dual = std::max(gamma_dual, connection_error(conn.gamma_dual, c * alpha_connection(model, xi, alpha)));
      duality = std::max(duality, duality_residual(d, model, xi));
    }
  }
  const std::string p = d.name() + ".";
  add(out, le_check(p + "metric", metric, o.metric_tol));
  add(out, le_check(p + "connection", gamma, o.connection_tol));
  add(out, le_check(p + "connection_dual", gamma_dual, o.connection_tol));
  add(out, le_check(p + "duality", duality, o.duality_tol));
}

}  // namespace

Outcome run_verify_sk(const SkOptions& o, std::uint64_t seed) {
  FamilySpec spec{o.family, parse_params(o.params)};
  auto report = sk_suite(make_builtin(spec.name, spec.params), o.w_max, o.samples, seed);
  report.tol = o.tol;
  Outcome out;
  out.doc = Json{{"family", spec.name}, {"params", params_json(spec.params)},
                 {"distributions", report.distributions}, {"seed", seed}, {"checks", Json::array()}};
  sk_checks(out, "", report);
  if (report.sk2_counterexample && !report.sk2_pass()) out.doc["sk2_counterexample"] = *report.sk2_counterexample;
  finish(out);
  return out;
}

Outcome run_verify_composability(const ComposabilityOptions& o, std::uint64_t seed) {
  FamilySpec spec{o.family, parse_params(o.params)};
  const auto pair = make_builtin(spec.name, spec.params);
  std::optional<BinaryLaw> law = o.q ? std::optional<BinaryLaw>(q_sum(*o.q)) : pair.law();
  if (!law) throw UsageError(spec.name + " has no known law; pass --q to probe a q-sum law");
  const double worst = composability_worst(as_functional(pair), *law, o.samples, o.w_max, seed);
  Outcome out;
  out.doc = Json{{"family", spec.name}, {"params", params_json(spec.params)}, {"law", law->name()},
                 {"samples", o.samples}, {"seed", seed}, {"checks", Json::array()}};
  add(out, le_check("composability", worst, o.tol));
  finish(out);
  return out;
}

Outcome run_verify_geometry(const GeometryVerifyOptions& o, std::uint64_t seed) {
  Outcome out;
  out.doc = Json{{"w_max", o.w_max}, {"points", o.points}, {"seed", seed}, {"checks", Json::array()}};
  for (const auto& spec : o.divergences) geometry_checks(out, make_div(parse_family(spec)), o, seed);
  finish(out);
  return out;
}

Outcome run_verify_all(const VerifyAllOptions& o, std::uint64_t seed) {
  Outcome out;
  out.doc = Json{{"samples", o.samples}, {"seed", seed}, {"checks", Json::array()}};
  for (double q : {0.0, 0.5, 1.0, 2.0}) {
    const auto law = q_sum(q);
    const auto r = check_group_axioms(law, {0.0, 1.0}, o.samples, seed);
    const std::string p = law.name() + ".";
    add(out, le_check(p + "commutativity", r.commutativity, kGroupAxiomTol));
    add(out, le_check(p + "associativity", r.associativity, kGroupAxiomTol));
    add(out, le_check(p + "identity", r.identity, kGroupAxiomTol));
    add(out, le_check(p + "phi4_symmetry", check_phi4_symmetry(law, o.samples, seed), kPhi4SymmetryTol));
  }
  const std::vector<HFPair> entropies{shannon(), renyi(0.5), tsallis(2.0), sharma_mittal(0.5, 0.7),
                                      kaniadakis(0.3)};
  for (const auto& pair : entropies) {
    sk_checks(out, pair.name() + ".", sk_suite(pair, 6, o.samples, seed));
    if (pair.law()) {
      add(out, le_check(pair.name() + ".composability",
                        composability_worst(as_functional(pair), *pair.law(), o.samples, 4, seed), 1e-10));
    }
  }
  GeometryVerifyOptions geo;
  geo.points = std::max<std::size_t>(1, o.samples / 20);
  for (const auto& spec : geo.divergences) geometry_checks(out, make_div(parse_family(spec)), geo, seed);
  finish(out);
  return out;
}

Outcome run_maxent(const MaxentOptions& o, std::uint64_t seed) {
  if (o.w == 0) throw UsageError("--w must be at least 1");
  FamilySpec spec{o.family, parse_params(o.params)};
  const auto entropy = make_entropy(spec);
  ConstraintSet constraints;
  for (const auto& c : o.constraints) constraints.add(parse_constraint(c));
  entrogeo::MaxEntOptions opts;
  opts.max_iter = o.max_iter;
  opts.tol = o.tol;
  opts.seed = seed;
  opts.restarts = o.restarts;
  const auto r = maximize(entropy, o.w, constraints, opts);
  Outcome out;
  out.doc = Json{{"family", spec.name},
                 {"params", params_json(spec.params)},
                 {"p", vec_json(r.p.weights())},
                 {"value", r.value},
                 {"constraint_residual", r.constraint_residual},
                 {"stationarity", r.stationarity},
                 {"iterations", r.iterations},
                 {"restart_spread", r.restart_spread},
                 {"checks", Json::array()}};
  add(out, check("converged", r.stationarity, o.tol, r.converged));
  finish(out);
  return out;
}

}  // namespace entrogeo::cli
