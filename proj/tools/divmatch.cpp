#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "divmatch/instance.hpp"
#include "divmatch/oracle.hpp"
#include "divmatch/report.hpp"
#include "divmatch/solver.hpp"

using namespace divmatch;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;
constexpr int kExitBudget = 3;
constexpr int kExitDisagree = 4;

struct SolveFlags {
  std::string instance;
  std::string out;
  std::string detector = "gr";
  std::size_t max_iters = 0;
  std::string mode;
  std::string log = "quiet";
  std::optional<Count> lambda0;
  std::vector<Count> lambdas;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("instance", f.instance, "instance JSON file")->required();
  cmd->add_option("--detector", f.detector, "negative cycle detector")->check(CLI::IsMember({"bf", "gr"}));
  cmd->add_option("--max-iters", f.max_iters, "stop after this many exchanges")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", f.mode, "class or worker ports (default: class when costs allow)")
      ->check(CLI::IsMember({"class", "worker"}));
  cmd->add_option("--log", f.log, "iteration log level")->check(CLI::IsMember({"quiet", "iter", "debug"}));
  cmd->add_option("--lambda0", f.lambda0, "override the utility weight");
  cmd->add_option("--lambdas", f.lambdas, "override the per-feature weights")->delimiter(',');
}

Instance load_with_overrides(const SolveFlags& f) {
  Instance inst;
  try {
    inst = load_instance(f.instance);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(f.instance + ": " + e.what());
  } catch (const InputError& e) {
    const std::string msg = e.what();
    throw InputError(msg.find(f.instance) == std::string::npos ? f.instance + ": " + msg : msg);
  }
  if (f.lambda0) inst.weights.lambda0 = *f.lambda0;
  if (!f.lambdas.empty()) inst.weights.lambdas = f.lambdas;
  validate(inst);
  return inst;
}

SolverConfig make_config(const Instance& inst, const SolveFlags& f) {
  SolverConfig cfg;
  cfg.detector = *parse_detector(f.detector);
  if (f.max_iters > 0) cfg.max_iterations = f.max_iters;
  if (f.mode.empty()) {
    cfg.mode = inst.costs_class_constant() ? CostMode::kClass : CostMode::kWorker;
  } else {
    cfg.mode = f.mode == "class" ? CostMode::kClass : CostMode::kWorker;
  }
  cfg.log_level = *parse_log_level(f.log);
  if (cfg.log_level != LogLevel::kQuiet) cfg.log = &std::cout;
  return cfg;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw InputError("cannot write '" + path + "'");
}

std::string summary(const SolveReport& r) {
  std::ostringstream os;
  os << "objective=" << r.breakdown.objective << " utility=" << r.breakdown.total_utility << " iterations="
     << r.iterations << " termination=" << to_string(r.termination);
  return os.str();
}

int cmd_solve(const SolveFlags& f) {
  const Instance inst = load_with_overrides(f);
  const SolveReport r = solve(inst, make_config(inst, f));
  const json doc = solution_to_json(inst, r);
  if (f.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(f.out, doc);
    std::cout << summary(r) << '\n';
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return r.termination == Termination::kIterationCap ? kExitCap : kExitOk;
}

int cmd_verify(const SolveFlags& f, std::size_t budget) {
  const Instance inst = load_with_overrides(f);
  const SolveReport r = solve(inst, make_config(inst, f));
  OracleResult o;
  try {
    o = enumerate_optimal(inst, budget);
  } catch (const OracleBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  }
  const bool agree = r.breakdown.objective == o.optimum;
  std::cout << "solver=" << r.breakdown.objective << " oracle=" << o.optimum << " evaluated=" << o.evaluated
            << " termination=" << to_string(r.termination) << ' ' << (agree ? "agree" : "DISAGREE") << '\n';
  if (!f.out.empty()) {
    json doc = solution_to_json(inst, r);
    doc["oracle"] = {{"optimum", o.optimum}, {"optima", o.optima}, {"evaluated", o.evaluated}};
    write_json(f.out, doc);
  }
  if (r.termination == Termination::kIterationCap) return kExitCap;
  return agree ? kExitOk : kExitDisagree;
}

int cmd_report(const std::string& path, const std::string& out) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read solution file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": malformed solution: " + e.what());
  }
  BalanceReport r;
  try {
    r = balance_report(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  std::cout << to_text(r);
  if (!out.empty()) write_json(out, to_json(r));
  return kExitOk;
}

std::vector<std::size_t> parse_clusters(const std::string& text) {
  std::vector<std::size_t> sizes;
  try {
    const auto x = text.find('x');
    if (x != std::string::npos) {
      sizes.assign(std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1)));
    } else {
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ',')) sizes.push_back(std::stoul(part));
    }
  } catch (const std::exception&) {
    throw InputError("bad --clusters '" + text + "': expected COUNTxSIZE or a comma list");
  }
  if (sizes.empty()) throw InputError("bad --clusters '" + text + "': no clusters");
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diverse team formation by negative cycle cancellation"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
  add_solve_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--out", solve_flags.out, "solution JSON path (default: stdout)");

  SolveFlags verify_flags;
  std::size_t budget = kDefaultOracleBudget;
  auto* verify_cmd = app.add_subcommand("verify", "solve and compare against exhaustive search");
  add_solve_flags(verify_cmd, verify_flags);
  verify_cmd->add_option("--out", verify_flags.out, "solution JSON path");
  verify_cmd->add_option("--budget", budget, "maximum matrices the oracle may visit")->check(CLI::PositiveNumber);

  std::string report_in, report_out;
  auto* report_cmd = app.add_subcommand("report", "gender/feature balance of a solution");
  report_cmd->add_option("solution", report_in, "solution JSON file")->required();
  report_cmd->add_option("--out", report_out, "report JSON path");

  ReviewerParams gen;
  std::string clusters = "5x4";
  std::string genders = "balanced";
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a reviewer assignment instance");
  gen_cmd->add_option("--papers", gen.papers, "number of papers (teams)")->required();
  gen_cmd->add_option("--clusters", clusters, "COUNTxSIZE or comma-separated cluster sizes");
  gen_cmd->add_option("--demand", gen.demand_per_paper, "reviewers per paper");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--genders", genders, "gender labelling")->check(CLI::IsMember({"balanced", "alternating", "same"}));
  gen_cmd->add_option("--max-cost", gen.max_cost, "largest relevance cost");
  gen_cmd->add_option("--lambda0", gen.lambda0, "utility weight");
  gen_cmd->add_option("--lambda-cluster", gen.lambda_cluster, "cluster diversity weight");
  gen_cmd->add_option("--lambda-gender", gen.lambda_gender, "gender diversity weight");
  gen_cmd->add_option("--out", gen_out, "instance JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_flags);
    if (*verify_cmd) return cmd_verify(verify_flags, budget);
    if (*report_cmd) return cmd_report(report_in, report_out);
    gen.reviewers_per_cluster = parse_clusters(clusters);
    gen.genders = *parse_gender_balance(genders);
    const json doc = to_json(generate_reviewer_instance(gen));
    if (gen_out.empty()) {
      std::cout << doc.dump(2) << '\n';
    } else {
      write_json(gen_out, doc);
    }
    return kExitOk;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
