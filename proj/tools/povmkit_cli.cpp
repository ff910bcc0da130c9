/* povmkit command-line front end.

   Exit codes: 0 property holds / success, 1 property definitively fails,
   2 input or solver error, 3 borderline or ambiguous verdict. */

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "povmkit/divergences.hpp"
#include "povmkit/errors.hpp"
#include "povmkit/fuzzy_order.hpp"
#include "povmkit/generators.hpp"
#include "povmkit/instruments.hpp"
#include "povmkit/io.hpp"
#include "povmkit/reduction.hpp"
#include "povmkit/selftest.hpp"

namespace {

using namespace povmkit;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;
constexpr int kExitBorderline = 3;

struct RunConfig {
  Tolerances tol;
  uint64_t seed = 1;
  std::string format = "json";
};

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol-psd", cfg.tol.psd, "PSD slack for effects and states");
  sub->add_option("--tol-comp", cfg.tol.comp, "completeness tolerance");
  sub->add_option("--tol-prop", cfg.tol.prop, "proportionality tolerance");
  sub->add_option("--tol-lsb", cfg.tol.lsb, "likelihood-ratio grouping tolerance");
  sub->add_option("--tol-lp", cfg.tol.lp, "Markov feasibility threshold");
  sub->add_option("--tol-iso", cfg.tol.iso, "isomorphism matching tolerance");
  sub->add_option("--tol-zero", cfg.tol.zero, "vanishing-outcome trace threshold");
  sub->add_option("--seed", cfg.seed, "PRNG seed");
  sub->add_option("--format", cfg.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
}

bool text_mode(const RunConfig& cfg) { return cfg.format == "text"; }

DiscretePovm load_povm(const std::string& path, const RunConfig& cfg) {
  return povm_from_json(read_file(path), cfg.tol);
}

int run_validate(const std::string& path, const RunConfig& cfg) {
  const auto outcomes = povm_outcomes_from_json(read_file(path));
  const auto violations = check_povm(outcomes, cfg.tol);
  if (text_mode(cfg)) {
    if (violations.empty()) {
      std::cout << "valid POVM: " << outcomes.size() << " outcomes, dim "
                << outcomes.front().second.dim() << "\n";
    } else {
      for (const auto& v : violations)
        std::cout << "violation [" << v.axiom << "] magnitude " << v.magnitude << ": "
                  << v.detail << "\n";
    }
  } else {
    std::cout << "{\n  \"valid\": " << (violations.empty() ? "true" : "false")
              << ",\n  \"violations\": [";
    for (size_t i = 0; i < violations.size(); ++i) {
      std::cout << (i ? "," : "") << "\n    {\"axiom\": \"" << violations[i].axiom
                << "\", \"magnitude\": " << violations[i].magnitude << "}";
    }
    std::cout << (violations.empty() ? "" : "\n  ") << "]\n}\n";
  }
  return violations.empty() ? kExitHolds : kExitFails;
}

int run_reduce(const std::string& path, const RunConfig& cfg) {
  const ReductionReport rep = reduce(load_povm(path, cfg), cfg.tol);
  if (text_mode(cfg)) {
    std::cout << "reduced to " << rep.reduced->size() << " outcomes, dropped "
              << rep.dropped.size() << "\n";
    for (const auto& [label, group] : rep.groups)
      std::cout << "  " << label << " -> " << group << "  (h = " << rep.h.at(label) << ")\n";
  } else {
    std::cout << reduction_report_to_json(rep) << "\n";
  }
  return kExitHolds;
}

int order_exit(const OrderVerdict& v) {
  if (v.holds) return kExitHolds;
  return v.borderline ? kExitBorderline : kExitFails;
}

int run_order(const std::string& a_path, const std::string& b_path, const RunConfig& cfg) {
  const OrderVerdict v = preceq(load_povm(a_path, cfg), load_povm(b_path, cfg), cfg.tol);
  if (text_mode(cfg)) {
    std::cout << (v.holds ? "A is a post-processing of B"
                          : v.borderline ? "borderline: residual near the threshold"
                                         : "A is not a post-processing of B")
              << " (residual " << v.residual << ")\n";
  } else {
    std::cout << order_verdict_to_json(v) << "\n";
  }
  return order_exit(v);
}

int run_equiv(const std::string& a_path, const std::string& b_path,
              const std::string& method, const RunConfig& cfg) {
  const EquivalenceVerdict v =
      equivalent(load_povm(a_path, cfg), load_povm(b_path, cfg),
                 method == "reduce" ? EquivMethod::reduce : EquivMethod::lp, cfg.tol);
  if (text_mode(cfg)) {
    std::cout << (v.equivalent ? "equivalent" : "not equivalent") << " (method " << method
              << ")\n";
  } else {
    std::cout << equivalence_verdict_to_json(v) << "\n";
  }
  if (v.equivalent) return kExitHolds;
  return v.borderline ? kExitBorderline : kExitFails;
}

int run_divergence(const std::string& f_tag, const std::string& a_path,
                   const std::string& rho_path, const std::string& sigma_path,
                   const RunConfig& cfg) {
  const FGenerator& gen = f_generator_by_tag(f_tag);
  const DiscretePovm a = load_povm(a_path, cfg);
  const DensityMatrix rho = density_from_json(read_file(rho_path), cfg.tol);
  const DensityMatrix sigma = density_from_json(read_file(sigma_path), cfg.tol);
  const double value = divergence_between_states(gen, a, rho, sigma);
  if (text_mode(cfg)) {
    std::cout << "D_" << f_tag << " = ";
    if (std::isinf(value)) std::cout << "inf";
    else std::cout << value;
    std::cout << "\n";
  } else if (std::isinf(value)) {
    std::cout << "{\n  \"f\": \"" << f_tag << "\",\n  \"divergence\": \"inf\"\n}\n";
  } else {
    std::cout << "{\n  \"f\": \"" << f_tag << "\",\n  \"divergence\": " << value << "\n}\n";
  }
  return kExitHolds;
}

int run_compose(const std::string& inst_path, const std::string& b_path,
                const RunConfig& cfg) {
  const KrausInstrument inst = instrument_from_json(read_file(inst_path), cfg.tol);
  const DiscretePovm composed = compose(inst, load_povm(b_path, cfg), cfg.tol);
  std::cout << (text_mode(cfg)
                    ? "composed POVM with " + std::to_string(composed.size()) + " outcomes\n"
                    : povm_to_json(composed) + "\n");
  return kExitHolds;
}

int run_conserve(const std::string& inst_path, const std::string& b_path,
                 uint64_t exhaustive_limit, const RunConfig& cfg) {
  const KrausInstrument inst = instrument_from_json(read_file(inst_path), cfg.tol);
  const ConservationVerdict v =
      check_conservation(inst, load_povm(b_path, cfg), exhaustive_limit, cfg.tol);
  if (text_mode(cfg)) {
    std::cout << "condition1 (projection): "
              << (v.condition1.holds_for_projection ? "true" : "false") << "\n"
              << "condition1 (exhaustive): "
              << (v.condition1.exhaustive_search
                      ? (*v.condition1.exhaustive_search ? "true" : "false")
                      : "not attempted")
              << "\n"
              << "condition2: " << (v.condition2 ? "true" : "false") << "\n";
  } else {
    std::cout << conservation_verdict_to_json(v) << "\n";
  }
  if (!v.condition2) return kExitFails;
  const bool condition1_unknown = !v.condition1.holds_for_projection &&
                                  !v.condition1.exhaustive_search.has_value();
  return condition1_unknown ? kExitBorderline : kExitHolds;
}

int run_selftest_cmd(int trials, const RunConfig& cfg) {
  SelftestConfig scfg;
  scfg.seed = cfg.seed;
  scfg.trials = trials;
  scfg.tol = cfg.tol;
  const auto results = run_selftest(scfg);
  int failures = 0;
  if (text_mode(cfg)) {
    for (const auto& r : results) {
      std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
      if (!r.detail.empty()) std::cout << " -- " << r.detail;
      std::cout << "\n";
      failures += r.passed ? 0 : 1;
    }
  } else {
    std::cout << "[";
    for (size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      std::cout << (i ? "," : "") << "\n  {\"property\": \"" << r.name
                << "\", \"passed\": " << (r.passed ? "true" : "false")
                << ", \"trials\": " << r.trials;
      if (!r.detail.empty()) {
        std::string escaped;
        for (char ch : r.detail) {
          if (ch == '"' || ch == '\\') escaped += '\\';
          escaped += ch;
        }
        std::cout << ", \"detail\": \"" << escaped << "\"";
      }
      std::cout << "}";
      failures += r.passed ? 0 : 1;
    }
    std::cout << "\n]\n";
  }
  return failures == 0 ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.precision(std::numeric_limits<double>::max_digits10);
  CLI::App app{"redundancy order and minimal sufficient reduction of discrete POVMs"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string path_a, path_b, path_rho, path_sigma, f_tag, equiv_method = "lp";
  uint64_t exhaustive_limit = 1000000;
  int trials = 20;
  int gen_dim = 2, gen_outcomes = 4, gen_rows = 2, gen_cols = 2, gen_kraus = 1;
  int ensemble_dim = 2;

  auto* validate = app.add_subcommand("validate", "check the POVM axioms of a file");
  validate->add_option("povm", path_a, "POVM JSON file")->required();
  add_common_options(validate, cfg);

  auto* reduce_cmd = app.add_subcommand("reduce", "minimal sufficient reduction");
  reduce_cmd->add_option("povm", path_a)->required();
  add_common_options(reduce_cmd, cfg);

  auto* order = app.add_subcommand("order", "decide A <= B (post-processing order)");
  order->add_option("A", path_a)->required();
  order->add_option("B", path_b)->required();
  add_common_options(order, cfg);

  auto* equiv = app.add_subcommand("equiv", "decide fuzzy equivalence of two POVMs");
  equiv->add_option("A", path_a)->required();
  equiv->add_option("B", path_b)->required();
  equiv->add_option("--method", equiv_method, "lp or reduce")
      ->check(CLI::IsMember({"lp", "reduce"}));
  add_common_options(equiv, cfg);

  auto* divergence = app.add_subcommand("divergence", "f-divergence between two states");
  divergence->add_option("f", f_tag, "hellinger, kl or chi2")->required();
  divergence->add_option("povm", path_a)->required();
  divergence->add_option("rho", path_rho)->required();
  divergence->add_option("sigma", path_sigma)->required();
  add_common_options(divergence, cfg);

  auto* compose_cmd = app.add_subcommand("compose", "instrument composed with a POVM");
  compose_cmd->add_option("instrument", path_a)->required();
  compose_cmd->add_option("povm", path_b)->required();
  add_common_options(compose_cmd, cfg);

  auto* conserve = app.add_subcommand("conserve", "information conservation conditions");
  conserve->add_option("instrument", path_a)->required();
  conserve->add_option("povm", path_b)->required();
  conserve->add_option("--exhaustive-limit", exhaustive_limit,
                       "largest statistic-search space to enumerate");
  add_common_options(conserve, cfg);

  auto* gen = app.add_subcommand("gen", "seeded random artifacts");
  gen->require_subcommand(1);
  auto* gen_povm = gen->add_subcommand("povm");
  gen_povm->add_option("--dim", gen_dim);
  gen_povm->add_option("--outcomes", gen_outcomes);
  add_common_options(gen_povm, cfg);
  auto* gen_state = gen->add_subcommand("state");
  gen_state->add_option("--dim", gen_dim);
  add_common_options(gen_state, cfg);
  auto* gen_markov = gen->add_subcommand("markov");
  gen_markov->add_option("--rows", gen_rows);
  gen_markov->add_option("--cols", gen_cols);
  add_common_options(gen_markov, cfg);
  auto* gen_split = gen->add_subcommand("split");
  gen_split->add_option("povm", path_a)->required();
  gen_split->add_option("--rows", gen_rows);
  add_common_options(gen_split, cfg);
  auto* gen_inst = gen->add_subcommand("instrument");
  gen_inst->add_option("--dim", gen_dim);
  gen_inst->add_option("--outcomes", gen_outcomes);
  gen_inst->add_option("--kraus", gen_kraus);
  add_common_options(gen_inst, cfg);

  auto* ensemble = app.add_subcommand("ensemble", "tomographic state ensemble");
  ensemble->add_option("dim", ensemble_dim)->required();
  add_common_options(ensemble, cfg);

  auto* selftest = app.add_subcommand("selftest", "run the full invariant suite");
  selftest->add_option("--trials", trials, "random trials per property (0 = vacuous)");
  add_common_options(selftest, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (validate->parsed()) return run_validate(path_a, cfg);
    if (reduce_cmd->parsed()) return run_reduce(path_a, cfg);
    if (order->parsed()) return run_order(path_a, path_b, cfg);
    if (equiv->parsed()) return run_equiv(path_a, path_b, equiv_method, cfg);
    if (divergence->parsed())
      return run_divergence(f_tag, path_a, path_rho, path_sigma, cfg);
    if (compose_cmd->parsed()) return run_compose(path_a, path_b, cfg);
    if (conserve->parsed()) return run_conserve(path_a, path_b, exhaustive_limit, cfg);
    if (gen->parsed()) {
      if (gen_povm->parsed())
        std::cout << povm_to_json(random_povm(gen_dim, gen_outcomes, cfg.seed, cfg.tol))
                  << "\n";
      else if (gen_state->parsed())
        std::cout << density_to_json(random_density(gen_dim, cfg.seed, cfg.tol)) << "\n";
      else if (gen_markov->parsed())
        std::cout << markov_to_json(random_markov(gen_rows, gen_cols, cfg.seed)) << "\n";
      else if (gen_split->parsed())
        std::cout << povm_to_json(
                         split_povm(load_povm(path_a, cfg), gen_rows, cfg.seed, cfg.tol))
                  << "\n";
      else if (gen_inst->parsed())
        std::cout << instrument_to_json(
                         random_instrument(gen_dim, gen_outcomes, gen_kraus, cfg.seed, cfg.tol))
                  << "\n";
      return kExitHolds;
    }
    if (ensemble->parsed()) {
      std::cout << ensemble_to_json(tomographic_ensemble(ensemble_dim, cfg.tol)) << "\n";
      return kExitHolds;
    }
    if (selftest->parsed()) return run_selftest_cmd(trials, cfg);
  } catch (const ToleranceAmbiguity& e) {
    std::cerr << "ambiguous: " << e.what() << "\n";
    return kExitBorderline;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
