#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/inputs.hpp"
#include "entrogeo/error.hpp"

namespace entrogeo::cli {
namespace {

constexpr const char* kSeedEnv = "ENTROGEO_SEED";

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  return env ? parse_seed(env) : 0;
}

// Help for `app` followed by the help of every nested subcommand.
std::string full_help(CLI::App& app) {
  std::string text = app.help();
  for (auto* sub : app.get_subcommands({})) text += "\n" + full_help(*sub);
  return text;
}

}  // namespace

Result execute(const std::vector<std::string>& args) {
  Result result;
  CLI::App app{"Generalized entropies, divergences and their information geometry", "entrogeo"};
  app.require_subcommand(1);
  app.fallthrough();

  bool pretty = false;
  std::string seed_text;
  app.add_flag("--pretty", pretty, "Print a flat path/value table instead of JSON");
  app.add_option("--seed", seed_text, "RNG seed (default: $ENTROGEO_SEED, else 0)");

  std::function<Outcome(std::uint64_t)> run;

  EntropyOptions ent;
  auto* c_ent = app.add_subcommand("entropy", "Evaluate an entropy on a distribution file");
  c_ent->add_option("--family", ent.family,
                    "shannon, renyi, tsallis, sharma_mittal, kaniadakis, ne1, ne2")->required();
  c_ent->add_option("--params", ent.params, "Family parameters as k=v (repeatable)");
  c_ent->add_option("--dist", ent.dist, "Distribution file (JSON or one value per line)")->required();
  c_ent->add_option("--input-tol", ent.input_tol, "Tolerance on |sum p - 1|")->capture_default_str();
  c_ent->callback([&] { run = [&](std::uint64_t) { return run_entropy(ent); }; });

  DivergenceOptions div;
  auto* c_div = app.add_subcommand("divergence", "Evaluate D(p || q)");
  c_div->add_option("--family", div.family, "kl, sm, renyi, chi2, tsallis_rel, hf, composed")->required();
  c_div->add_option("--pair", div.pair, "(h, f) pair for --family hf: kl, chi2, sm, renyi, tsallis_rel");
  c_div->add_option("--alpha", div.alpha, "Order alpha");
  c_div->add_option("--beta", div.beta, "Order beta (sm)");
  c_div->add_option("--params", div.params, "Family parameters as k=v (repeatable)");
  c_div->add_option("--p", div.p, "First distribution file")->required();
  c_div->add_option("--q", div.q, "Second distribution file (strictly positive)")->required();
  c_div->add_option("--constituent", div.constituents, "Divergence spec name[:k=v,...] (composed)");
  c_div->add_option("--zeta", div.zeta, "linear:c1,...,cm or quadratic:a1,...,am:b1,...,bm (composed)");
  c_div->add_option("--input-tol", div.input_tol, "Tolerance on |sum p - 1|")->capture_default_str();
  c_div->callback([&] { run = [&](std::uint64_t) { return run_divergence(div); }; });

  ComposeOptions comp;
  auto* c_comp = app.add_subcommand("compose", "Build a group entropy from 2^m constituents");
  c_comp->add_option("--constituent", comp.constituents, "Entropy spec family[:k=v,...] (repeatable)")
      ->required();
  c_comp->add_option("--xi", comp.xi, "id, scale:c or expm1")->capture_default_str();
  c_comp->add_option("--m", comp.m, "Tree depth; 2^m constituents")->capture_default_str();
  c_comp->add_option("--dist", comp.dist, "Distribution file to evaluate the composed entropy on");
  c_comp->add_option("--samples", comp.samples, "Seeded samples for the law checks")->capture_default_str();
  c_comp->add_option("--w-max", comp.w_max, "Largest W in composability samples")->capture_default_str();
  c_comp->add_option("--law-tol", comp.law_tol, "Group-axiom tolerance")->capture_default_str();
  c_comp->add_option("--tol", comp.tol, "Composability tolerance")->capture_default_str();
  c_comp->add_option("--input-tol", comp.input_tol, "Tolerance on |sum p - 1|")->capture_default_str();
  c_comp->callback([&] { run = [&](std::uint64_t seed) { return run_compose(comp, seed); }; });

  GeometryOptions met;
  auto* c_met = app.add_subcommand("metric", "Metric induced by a divergence at a model point");
  GeometryOptions con;
  auto* c_con = app.add_subcommand("connection", "Dual connections induced by a divergence");
  for (auto [cmd, o] : {std::pair{c_met, &met}, std::pair{c_con, &con}}) {
    cmd->add_option("--model", o->model, "simplex:W")->required();
    cmd->add_option("--point", o->point, "Coordinates xi_1,...,xi_W")->delimiter(',')->required();
    cmd->add_option("--divergence", o->divergence,
                    "kl, chi2, sm:alpha=a,beta=b, renyi:alpha=a, tsallis_rel:alpha=a, composed"
                    + std::string(cmd == c_met ? ", fisher" : ""))
        ->capture_default_str();
    cmd->add_option("--constituent", o->constituents, "Constituent divergence spec (composed)");
    cmd->add_option("--zeta", o->zeta, "Composer for --divergence composed");
    cmd->add_option("--step", o->step, "Stencil step; 0 picks the default")->capture_default_str();
    cmd->add_option("--metric-tol", o->metric_tol, "Metric relative tolerance")->capture_default_str();
    cmd->add_option("--connection-tol", o->connection_tol, "Connection tolerance, scaled by 1 + |Gamma|")
        ->capture_default_str();
    cmd->add_option("--duality-tol", o->duality_tol, "Duality residual tolerance")->capture_default_str();
  }
  c_met->callback([&] { run = [&](std::uint64_t) { return run_metric(met); }; });
  c_con->callback([&] { run = [&](std::uint64_t) { return run_connection(con); }; });

  auto* c_ver = app.add_subcommand("verify", "Property checks with a pass flag per check");
  c_ver->require_subcommand(1);

  GroupLawOptions gl;
  auto* v_gl = c_ver->add_subcommand("group-law", "Group axioms and Phi^4 symmetry of a law");
  v_gl->add_option("--law", gl.law, "q-sum")->capture_default_str();
  v_gl->add_option("--q", gl.q, "q of the q-sum law")->capture_default_str();
  v_gl->add_option("--lo", gl.lo, "Lower end of the sampling interval")->capture_default_str();
  v_gl->add_option("--hi", gl.hi, "Upper end of the sampling interval")->capture_default_str();
  v_gl->add_option("--samples", gl.samples, "Seeded triples")->capture_default_str();
  v_gl->add_option("--phi4-samples", gl.phi4_samples, "Seeded 4-tuples")->capture_default_str();
  v_gl->add_option("--tol", gl.tol, "Axiom tolerance")->capture_default_str();
  v_gl->add_option("--phi4-tol", gl.phi4_tol, "Permutation tolerance")->capture_default_str();
  v_gl->callback([&] { run = [&](std::uint64_t seed) { return run_verify_group_law(gl, seed); }; });

  SkOptions sk;
  auto* v_sk = c_ver->add_subcommand("sk", "Maximum at uniform, expansibility, non-negativity");
  v_sk->add_option("--family", sk.family, "Built-in entropy family")->required();
  v_sk->add_option("--params", sk.params, "Family parameters as k=v (repeatable)");
  v_sk->add_option("--w-max", sk.w_max, "Largest W")->capture_default_str();
  v_sk->add_option("--samples", sk.samples, "Random distributions per W")->capture_default_str();
  v_sk->add_option("--tol", sk.tol, "Tolerance")->capture_default_str();
  v_sk->callback([&] { run = [&](std::uint64_t seed) { return run_verify_sk(sk, seed); }; });

  ComposabilityOptions cp;
  auto* v_cp = c_ver->add_subcommand("composability", "|S(p x q) - Phi(S(p), S(q))| on seeded pairs");
  v_cp->add_option("--family", cp.family, "Built-in entropy family")->required();
  v_cp->add_option("--params", cp.params, "Family parameters as k=v (repeatable)");
  v_cp->add_option("--q", cp.q, "Probe q-sum(q) instead of the family's own law");
  v_cp->add_option("--samples", cp.samples, "Seeded pairs")->capture_default_str();
  v_cp->add_option("--w-max", cp.w_max, "Largest W per factor")->capture_default_str();
  v_cp->add_option("--tol", cp.tol, "Tolerance")->capture_default_str();
  v_cp->callback([&] { run = [&](std::uint64_t seed) { return run_verify_composability(cp, seed); }; });

  GeometryVerifyOptions gv;
  auto* v_gv = c_ver->add_subcommand("geometry", "Closed-form metric, connections and duality");
  v_gv->add_option("--divergence", gv.divergences, "Divergence specs (repeatable)")->capture_default_str();
  v_gv->add_option("--w-max", gv.w_max, "Largest simplex dimension")->capture_default_str();
  v_gv->add_option("--points", gv.points, "Interior points per dimension")->capture_default_str();
  v_gv->add_option("--metric-tol", gv.metric_tol, "Metric relative tolerance")->capture_default_str();
  v_gv->add_option("--connection-tol", gv.connection_tol, "Connection tolerance")->capture_default_str();
  v_gv->add_option("--duality-tol", gv.duality_tol, "Duality tolerance")->capture_default_str();
  v_gv->callback([&] { run = [&](std::uint64_t seed) { return run_verify_geometry(gv, seed); }; });

  VerifyAllOptions all;
  auto* v_all = c_ver->add_subcommand("all", "Every suite with default settings");
  v_all->add_option("--samples", all.samples, "Samples per suite")->capture_default_str();
  v_all->callback([&] { run = [&](std::uint64_t seed) { return run_verify_all(all, seed); }; });

  MaxentOptions me;
  auto* c_me = app.add_subcommand("maxent", "Maximize an entropy under linear constraints");
  c_me->add_option("--family", me.family, "Entropy family")->required();
  c_me->add_option("--params", me.params, "Family parameters as k=v (repeatable)");
  c_me->add_option("--w", me.w, "Number of outcomes")->required();
  c_me->add_option("--constraint", me.constraints, "a1,...,aW:target (repeatable)")->allow_extra_args(false);
  c_me->add_option("--max-iter", me.max_iter, "Iteration cap per start")->capture_default_str();
  c_me->add_option("--tol", me.tol, "Stationarity tolerance")->capture_default_str();
  c_me->add_option("--restarts", me.restarts, "Extra seeded starts")->capture_default_str();
  c_me->callback([&] { run = [&](std::uint64_t seed) { return run_maxent(me, seed); }; });

  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    // Top-level help lists every subcommand with its flags.
    const bool top = !args.empty() && (args.front() == "--help" || args.front() == "-h");
    result.out = top ? full_help(app) : (app.exit(e, out, err), out.str());
    return result;
  } catch (const CLI::CallForAllHelp& e) {
    result.exit_code = app.exit(e, out, err);
    result.out = out.str();
    return result;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    result.exit_code = kExitUsage;
    result.err = err.str() + out.str();
    return result;
  }

  try {
    const std::uint64_t seed = seed_text.empty() ? default_seed() : parse_seed(seed_text);
    const Outcome outcome = run(seed);
    result.out = pretty ? to_table(outcome.doc) : to_json(outcome.doc);
    result.exit_code = outcome.pass ? kExitOk : kExitCheckFailed;
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace entrogeo::cli
