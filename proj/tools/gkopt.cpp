#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gk/errors.hpp"
#include "gk/gap.hpp"
#include "gk/io.hpp"
#include "gk/oracle.hpp"
#include "gk/rank_reduction.hpp"
#include "gk/rng.hpp"
#include "gk/rounding.hpp"
#include "gk/solver.hpp"

namespace {

struct Options {
  std::uint64_t seed = 0;
  long long trials = 100000;
  int workers = 1;
  double tol_obj = 1e-9;
  int max_sweeps = 10000;
  int factor_width = gk::SolverConfig::kAutoWidth;
  double tau_psd = gk::kDefaultPsdTol;
  double tau_rank = gk::kDefaultRankTol;
  bool strict = false;
  bool exploit_rank_a = false;
  std::string output;  // resolved per command: csv for gap, json elsewhere

  // per-command
  std::string file;
  std::string matrix;
  bool from_gram = false;
  bool renormalize_subunit = false;
  bool with_oracle = false;
  bool timings = false;
  int oracle_limit = gk::kDefaultOracleLimit;
  int p = 1;
  int n = gk::kAutoInstanceSize;
  int seeds = 1;
  int directions = gk::kDefaultDirections;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

gk::SolverConfig solver_config(const Options& opt) {
  gk::SolverConfig cfg;
  cfg.factor_width = opt.factor_width;
  cfg.tol_obj = opt.tol_obj;
  cfg.max_sweeps = opt.max_sweeps;
  cfg.seed = opt.seed;
  return cfg;
}

gk::FactoredSolution solve_checked(const gk::ProblemInstance& inst, const Options& opt) {
  gk::FactoredSolution sol = gk::solve_relaxation(inst, solver_config(opt));
  if (!sol.stats.converged) {
    if (opt.strict)
      throw gk::NumericalError("solver did not converge within " +
                               std::to_string(opt.max_sweeps) + " sweeps");
    std::cerr << "warning: solver hit max_sweeps = " << opt.max_sweeps
              << " without converging; emitting best-so-far solution\n";
  }
  return sol;
}

void require_json_output(const Options& opt) {
  if (!opt.output.empty() && opt.output != "json")
    throw gk::ConfigError("--output " + opt.output + " is only available for the gap command");
}

void print(const gk::Json& j) { std::cout << j.dump(2) << "\n"; }

bool looks_like_solution(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

gk::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gk::InputError("cannot open " + path);
  try {
    return gk::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw gk::ParseError(path + ": " + e.what());
  }
}

void cmd_validate(const Options& opt) {
  require_json_output(opt);
  const Eigen::MatrixXd raw = gk::read_matrix(opt.file);
  const gk::ProblemInstance inst = gk::validate(raw, opt.tau_psd);
  gk::Json j;
  j["n"] = inst.n();
  j["valid"] = true;
  j["max_asymmetry"] = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  j["symmetrized"] = true;
  print(j);
}

void cmd_solve(const Options& opt) {
  require_json_output(opt);
  if (opt.from_gram) {
    const Eigen::MatrixXd s = gk::read_matrix(opt.file);
    gk::FactoredSolution sol = gk::gram_to_factor(s, opt.tau_rank);
    if (!opt.matrix.empty()) {
      const gk::ProblemInstance inst = gk::validate(gk::read_matrix(opt.matrix), opt.tau_psd);
      sol.objective = gk::objective(inst, sol);
    }
    print(gk::solution_to_json(sol));
    return;
  }
  const gk::ProblemInstance inst = gk::validate(gk::read_matrix(opt.file), opt.tau_psd);
  print(gk::solution_to_json(solve_checked(inst, opt)));
}

void cmd_reduce(const Options& opt) {
  require_json_output(opt);
  gk::FactoredSolution sol;
  const gk::ProblemInstance inst = [&] {
    if (looks_like_solution(opt.file)) {
      if (opt.matrix.empty())
        throw gk::ConfigError("reducing a solution JSON requires --matrix for the instance");
      sol = gk::solution_from_json(load_json(opt.file));
      return gk::validate(gk::read_matrix(opt.matrix), opt.tau_psd);
    }
    gk::ProblemInstance loaded = gk::validate(gk::read_matrix(opt.file), opt.tau_psd);
    sol = solve_checked(loaded, opt);
    return loaded;
  }();

  auto [reduced, report] = gk::reduce_rank(sol, inst, opt.tau_rank);
  gk::Json rank_a_report;  // null unless the low-rank path ran
  if (opt.exploit_rank_a) {
    const int rank_a = gk::detail::numerical_rank(inst.a(), opt.tau_rank);
    if (rank_a < reduced.k()) {
      auto [low, low_report] =
          gk::reduce_to_rank_of_A(reduced, inst, opt.tau_rank, opt.renormalize_subunit);
      reduced = std::move(low);
      rank_a_report = gk::report_to_json(low_report);
    }
  }

  gk::Json j;
  j["solution"] = gk::solution_to_json(reduced);
  j["report"] = gk::report_to_json(report);
  j["rank_a_report"] = std::move(rank_a_report);
  print(j);
}

void cmd_round(const Options& opt) {
  require_json_output(opt);
  if (opt.matrix.empty())
    throw gk::ConfigError("round requires --matrix: the solution JSON does not carry A");
  const gk::FactoredSolution sol = gk::solution_from_json(load_json(opt.file));
  const gk::ProblemInstance inst = gk::validate(gk::read_matrix(opt.matrix), opt.tau_psd);
  print(gk::summary_to_json(
      gk::monte_carlo_round(sol, inst, opt.trials, opt.seed, opt.workers)));
}

void cmd_oracle(const Options& opt) {
  require_json_output(opt);
  const gk::ProblemInstance inst = gk::validate(gk::read_matrix(opt.file), opt.tau_psd);
  print(gk::sign_vector_to_json(gk::brute_force_max(inst, opt.oracle_limit)));
}

void cmd_gap(const Options& opt) {
  const bool csv = opt.output.empty() || opt.output == "csv";
  if (opt.seeds < 1) throw gk::ConfigError("--seeds must be at least 1");

  gk::SolverConfig cfg = solver_config(opt);
  gk::Json records = gk::Json::array();
  if (csv) std::cout << gk::gap_csv_header() << "\n";
  for (int idx = 0; idx < opt.seeds; ++idx) {
    const gk::GapRecord rec = gk::empirical_gap(opt.p, opt.n, opt.seed + idx, cfg,
                                                opt.directions, opt.oracle_limit);
    if (csv)
      std::cout << gk::gap_record_csv(rec) << "\n";
    else
      records.push_back(gk::gap_record_to_json(rec));
  }
  if (!csv) print(records);
}

void cmd_pipeline(const Options& opt) {
  require_json_output(opt);
  using clock = std::chrono::steady_clock;
  gk::Json times = gk::Json::object();

  auto t = clock::now();
  const gk::ProblemInstance inst = gk::validate(gk::read_matrix(opt.file), opt.tau_psd);
  if (opt.timings) times["validate"] = seconds_since(t);

  t = clock::now();
  const gk::FactoredSolution sol = solve_checked(inst, opt);
  if (opt.timings) times["solve"] = seconds_since(t);

  t = clock::now();
  auto [reduced, report] = gk::reduce_rank(sol, inst, opt.tau_rank);
  const double sdp_value = reduced.objective;
  if (opt.exploit_rank_a) {
    const int rank_a = gk::detail::numerical_rank(inst.a(), opt.tau_rank);
    if (rank_a < reduced.k()) {
      auto [low, low_report] =
          gk::reduce_to_rank_of_A(reduced, inst, opt.tau_rank, opt.renormalize_subunit);
      reduced = std::move(low);
      report = low_report;
    }
  }
  if (opt.timings) times["reduce"] = seconds_since(t);

  t = clock::now();
  const gk::RoundingSummary summary =
      gk::monte_carlo_round(reduced, inst, opt.trials, opt.seed, opt.workers);
  if (opt.timings) times["round"] = seconds_since(t);

  gk::Json oracle_value;  // null unless requested
  if (opt.with_oracle) {
    t = clock::now();
    oracle_value = gk::brute_force_max(inst, opt.oracle_limit).value;
    if (opt.timings) times["oracle"] = seconds_since(t);
  }

  gk::Json j;
  j["n"] = inst.n();
  j["rank_after_reduction"] = reduced.k();
  j["sdp_value"] = sdp_value;
  j["rounding"] = gk::summary_to_json(summary);
  j["guaranteed_ratio"] = gk::guaranteed_ratio(reduced.k());
  j["oracle_value"] = std::move(oracle_value);
  j["wall_times"] = std::move(times);
  print(j);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Approximate solver for the PSD Grothendieck problem: SDP relaxation, "
               "rank reduction, and hyperplane rounding"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--seed", opt.seed, "RNG seed (seed 0 is a valid fixed seed)")
      ->envname("GK_DEFAULT_SEED");
  app.add_option("--trials", opt.trials, "Monte Carlo rounding trials");
  app.add_option("--workers", opt.workers, "parallel rounding workers");
  app.add_option("--tol-obj", opt.tol_obj, "solver per-sweep relative improvement threshold");
  app.add_option("--max-sweeps", opt.max_sweeps, "solver sweep budget");
  app.add_option("--factor-width", opt.factor_width, "factor width k (0 = auto)");
  app.add_option("--tau-psd", opt.tau_psd, "relative PSD acceptance tolerance");
  app.add_option("--tau-rank", opt.tau_rank, "relative numerical-zero eigenvalue cutoff");
  app.add_flag("--strict", opt.strict, "treat solver non-convergence as a fatal error");
  app.add_flag("--exploit-rank-a", opt.exploit_rank_a,
               "also reduce to rank(A) when A is low-rank");
  app.add_option("--output", opt.output, "output format: json or csv (csv: gap only)")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* validate = app.add_subcommand("validate", "check a matrix file is symmetric PSD");
  validate->add_option("file", opt.file, "matrix file")->required();

  CLI::App* solve = app.add_subcommand("solve", "solve the diag-constrained SDP relaxation");
  solve->add_option("file", opt.file, "matrix file (or Gram matrix with --from-gram)")
      ->required();
  solve->add_flag("--from-gram", opt.from_gram,
                  "factor an externally computed Gram solution instead of solving");
  solve->add_option("--matrix", opt.matrix,
                    "instance file for the objective (with --from-gram)");

  CLI::App* reduce = app.add_subcommand("reduce", "rank-reduce a solution");
  reduce->add_option("file", opt.file, "matrix file, or solution JSON (needs --matrix)")
      ->required();
  reduce->add_option("--matrix", opt.matrix, "instance file when reducing a solution JSON");
  reduce->add_flag("--renormalize-subunit", opt.renormalize_subunit,
                   "renormalize rows after the low-rank-A reduction (experimental)");

  CLI::App* round = app.add_subcommand("round", "Monte Carlo hyperplane rounding");
  round->add_option("file", opt.file, "solution JSON")->required();
  round->add_option("--matrix", opt.matrix, "instance file")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "exact brute-force optimum (small n)");
  oracle->add_option("file", opt.file, "matrix file")->required();
  oracle->add_option("--limit", opt.oracle_limit, "max n the oracle will enumerate");

  CLI::App* gap = app.add_subcommand("gap", "integrality-gap experiment sweep");
  gap->add_option("--p", opt.p, "ambient dimension of the random unit vectors")->required();
  gap->add_option("--n", opt.n, "instance size (default: p^3)");
  gap->add_option("--seeds", opt.seeds, "number of seeded cells (seed, seed+1, ...)");
  gap->add_option("--directions", opt.directions, "sampled directions for the heuristic");
  gap->add_option("--limit", opt.oracle_limit, "largest n solved exactly by the oracle");

  CLI::App* pipeline = app.add_subcommand("pipeline", "validate, solve, reduce, round");
  pipeline->add_option("file", opt.file, "matrix file")->required();
  pipeline->add_flag("--with-oracle", opt.with_oracle, "also compute the exact optimum");
  pipeline->add_flag("--timings", opt.timings, "include wall-clock stage timings");
  pipeline->add_option("--limit", opt.oracle_limit, "max n for --with-oracle");
  pipeline->add_flag("--renormalize-subunit", opt.renormalize_subunit,
                     "renormalize rows after the low-rank-A reduction (experimental)");

  try {
    app.parse(argc, argv);
    if (validate->parsed()) cmd_validate(opt);
    if (solve->parsed()) cmd_solve(opt);
    if (reduce->parsed()) cmd_reduce(opt);
    if (round->parsed()) cmd_round(opt);
    if (oracle->parsed()) cmd_oracle(opt);
    if (gap->parsed()) cmd_gap(opt);
    if (pipeline->parsed()) cmd_pipeline(opt);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const gk::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gk::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gk::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
